#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gxcalc/protocols.hpp"
#include "support.hpp"

using namespace gxcalc;
using namespace testing;

namespace {

const SkeletalCategory& bilayer() { return cat("bilayer_ising_z2x_partial"); }

Diagram protocol_script() {
    std::ifstream in(std::filesystem::path(GXCALC_SOURCE_DIR) / "corpus" / "t_gate_protocol.dsl");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_diagram(ss.str());
}

const char* kHeader = "strands 8 : sigma.1 sigma.1 sigma.1 sigma.1 X1 X1 X1 X1\n";

const ChannelTerm& term(const ProtocolResult& r, const char* c) {
    for (const auto& t : r.terms)
        if (t.c == bilayer().L(c)) return t;
    throw std::logic_error("no channel");
}

}  // namespace

TEST_CASE("closed form") {
    ProtocolResult r = tgate_closed_form(bilayer());
    CHECK(r.method == TGateMethod::ClosedForm);
    CHECK(r.scale == doctest::Approx(std::sqrt(2.0) * 2.0 * 2.0).epsilon(1e-12));
    REQUIRE(r.terms.size() == 3);
    CHECK(std::abs(term(r, "1.1").one - 0.5) < 1e-12);
    CHECK(std::abs(term(r, "sigma.sigma").one) < 1e-12);
    CHECK(std::abs(term(r, "psi.psi").one - 0.5) < 1e-12);
    CHECK(std::abs(term(r, "1.1").psi) < 1e-12);
    CHECK(std::abs(term(r, "psi.psi").psi) < 1e-12);
    CHECK(std::abs(term(r, "sigma.sigma").psi - ei(kPi / 4)) < 1e-12);
    CHECK(std::abs(r.t11 - r.scale) < 1e-12);
    CHECK(std::abs(r.ratio - ei(kPi / 4)) < 1e-12);
    CHECK(r.offdiag_max == 0.0);
}

TEST_CASE("closed form against the formula evaluated by hand from the data") {
    const auto& c = bilayer();
    Label X = c.L("X1"), s1 = c.L("sigma.1"), p1 = c.L("psi.1"), v = c.L("1.1");
    Complex one = 0, psi = 0;
    for (Label ch : c.ring().channels(X, X)) {
        Complex R2 = c.r(X, X, ch) * c.r(X, X, ch);
        double F2 = std::norm(c.f(X, X, X, X, ch, v));
        Complex ls = c.s(s1, ch) / c.s(v, ch);
        Complex lp = c.s(p1, ch) / c.s(v, ch);
        one += R2 * F2 * ls * ls;
        psi += R2 * F2 * (1.0 - lp);
    }
    double scale = c.d(s1) * c.d(X) * c.d(X);
    ProtocolResult r = tgate_closed_form(c);
    CHECK(std::abs(r.t11 - scale * one) < 1e-12);
    CHECK(std::abs(r.tpsipsi - scale * psi) < 1e-12);
}

TEST_CASE("unsimplified psi path agrees with the factored form") {
    // F-move over d in {1, psi} in the middle of the diagram, then each
    // addend resolved separately before collapsing to (1 - S_psi,c / S_1,c)
    const auto& c = bilayer();
    Label X = c.L("X1"), s = c.L("sigma.1"), p = c.L("psi.1"), v = c.L("1.1");
    double dX = c.d(X), ds = c.d(s), dp = c.d(p);
    Complex f11 = c.f(s, s, s, s, v, v), fp1 = c.f(s, s, s, s, p, v), fpp = c.f(s, s, s, s, p, p);
    Complex total = 0;
    for (Label ch : c.ring().channels(X, X)) {
        double dc = c.d(ch);
        Complex R2 = c.r(X, X, ch) * c.r(X, X, ch);
        double F2 = std::norm(c.f(X, X, X, X, ch, v));
        Complex outer = std::sqrt(dc) / dX * R2 * F2 * (dX * dX / dc);
        Complex vac = f11 * (ds * ds * std::sqrt(dc) * dX);
        Complex odd = c.s(p, ch) / c.s(v, ch) * fp1 * fpp * (ds * ds / dp) * (ds * std::sqrt(dc) * dX);
        total += outer * (vac + odd);
    }
    CHECK(std::abs(total - tgate_closed_form(c).tpsipsi) < 1e-12);
}

TEST_CASE("diagrammatic evaluation") {
    const auto& c = bilayer();
    TGateOptions o;
    if (!c.trivial_u_eta) {
        CHECK(error_kind([&] { tgate_diagrammatic(c, o); }) == ErrorKind::UnsupportedConfiguration);
    }
    SkeletalCategory strict = c;
    strict.trivial_u_eta = false;
    CHECK(error_kind([&] { tgate_diagrammatic(strict, o); }) == ErrorKind::UnsupportedConfiguration);

    o.assume_trivial_u_eta = true;
    ProtocolResult d = tgate_diagrammatic(c, o);
    ProtocolResult f = tgate_closed_form(c);
    CHECK(d.method == TGateMethod::Diagrammatic);
    CHECK(std::abs(d.ratio - ei(kPi / 4)) < 1e-9);
    CHECK(d.offdiag_max < 1e-12);
    CHECK(std::abs(d.tpsipsi / d.t11 - f.tpsipsi / f.t11) < 1e-9);
    CHECK(std::abs(d.t11 - f.t11) < 1e-9);
    for (const auto& t : d.terms) {
        REQUIRE(t.steps.size() >= 2);
        CHECK(std::abs(t.steps[1] - 1.0) < 1e-12);
    }
}

TEST_CASE("ratio is invariant under a common phase on the defect R") {
    SkeletalCategory c = bilayer();
    Label X = c.L("X1");
    Complex base = tgate_closed_form(c).ratio;
    for (Label ch : c.ring().channels(X, X)) c.setR(X, X, ch, Scalar(c.r(X, X, ch) * ei(0.813)));
    ProtocolResult r = tgate_closed_form(c);
    CHECK(std::abs(r.ratio - base) < 1e-12);
    TGateOptions o;
    o.assume_trivial_u_eta = true;
    CHECK(std::abs(tgate_diagrammatic(c, o).ratio - base) < 1e-12);
}

TEST_CASE("full protocol script") {
    ProtocolRun run = run_protocol(protocol_script(), bilayer());
    REQUIRE(run.logical.rows() == 2);
    ProjectiveMatch m = projectively_equal(run.normalized, diag({1.0, ei(kPi / 4)}));
    CHECK(m.equal);
    CHECK(max_abs_diff(run.normalized, diag({1.0, ei(kPi / 4)})) < 1e-9);
    CHECK(run.leakage < 1e-9);
    CHECK(run.pre_annihilation_leakage == doctest::Approx(0.5).epsilon(1e-9));
    // two effective full exchanges of the middle pair
    CHECK(run.defect_exchanges == 2);
}

TEST_CASE("empty script is the identity") {
    ProtocolRun run = run_protocol(parse_diagram(kHeader), bilayer());
    CHECK(max_abs_diff(run.normalized, Matrix::Identity(2, 2)) < 1e-12);
    CHECK(run.leakage == 0.0);
}

TEST_CASE("exchanging the middle defects twice") {
    const auto& c = bilayer();
    Label X = c.L("X1");
    ProtocolRun run = run_protocol(parse_diagram(std::string(kHeader) + "braid- 6\nbraid- 6\n"), c);
    TreeBasis b = enumerate_basis(c, {X, X, X, X}, c.L("1.1"));
    CrossingOp x = crossing_operator(c, b, 2, generator_crossing(c.orientation, false));
    Matrix sq = x.m * x.m;
    int ny = b.dimension();
    REQUIRE(run.physical.rows() % ny == 0);
    int nx = static_cast<int>(run.physical.rows()) / ny;
    for (int xi = 0; xi < nx; ++xi)
        for (int y1 = 0; y1 < ny; ++y1)
            for (int y0 = 0; y0 < ny; ++y0)
                CHECK(std::abs(run.physical(y1 * nx + xi, y0 * nx + xi) - sq(y1, y0)) < 1e-12);
    // each channel picks up the squared defect R
    Matrix F = recouple(c, b, 2);
    Matrix expect = F.adjoint() *
                    diag({std::pow(c.r(X, X, c.L("1.1")), 2), std::pow(c.r(X, X, c.L("sigma.sigma")), 2),
                          std::pow(c.r(X, X, c.L("psi.psi")), 2)}) *
                    F;
    CHECK(max_abs_diff(sq, expect) < 1e-12);
}

TEST_CASE("unsupported scripts") {
    const auto& c = bilayer();
    // an outer-defect crossing that is never undone
    CHECK(error_kind([&] { run_protocol(parse_diagram(std::string(kHeader) + "braid+ 4\n"), c); }) ==
          ErrorKind::UnsupportedConfiguration);
    // a defect projection in the middle of the braid
    CHECK(error_kind([&] {
              run_protocol(parse_diagram(std::string(kHeader) + "braid+ 1\nproject 5 X1 X1 1.1\nbraid+ 1\n"), c);
          }) == ErrorKind::UnsupportedConfiguration);
    CHECK(error_kind([&] { run_protocol(parse_diagram("strands 2 : sigma.1 sigma.1\n"), c); }) ==
          ErrorKind::UnsupportedConfiguration);
}
