#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gxcalc/diagrams.hpp"
#include "support.hpp"

using namespace gxcalc;
using namespace testing;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::filesystem::path> corpus_files() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(GXCALC_SOURCE_DIR) / "corpus"))
        if (e.path().extension() == ".dsl") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

EvalResult run(const std::string& cat_name, const std::string& text, const char* total = nullptr,
               EvalOptions o = {}) {
    const auto& c = cat(cat_name);
    if (total) o.total = c.L(total);
    return evaluate(parse_diagram(text), c, o);
}

Complex value(const EvalResult& r) {
    if (r.closed) return r.scalar;
    REQUIRE(r.matrix.rows() == 1);
    REQUIRE(r.matrix.cols() == 1);
    return r.matrix(0, 0);
}

}  // namespace

TEST_CASE("parse") {
    Diagram d = parse_diagram("strands 4 : sigma sigma sigma sigma\nbraid+ 2; braid+ 2;");
    REQUIRE(d.strands.has_value());
    CHECK(d.strands->size() == 4);
    REQUIRE(d.ops.size() == 2);
    CHECK(d.ops[0].kind == OpKind::BraidPos);
    CHECK(d.ops[1].i == 2);

    Diagram e = parse_diagram("# cat: ising1\nloop sigma 1 3\nproject 2 a b c\n");
    CHECK(e.meta.at("cat") == "ising1");
    CHECK(e.ops[0].kind == OpKind::Loop);
    CHECK(e.ops[0].i == 1);
    CHECK(e.ops[0].j == 3);
    CHECK(e.ops[1].names == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_diagram("strands 2 : a b\nbraid+ 1\nbraid* 1\n");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK(error_kind([] { parse_diagram("braid+ x"); }) == ErrorKind::SyntaxError);
    CHECK(error_kind([] { parse_diagram("split 1 a b"); }) == ErrorKind::SyntaxError);
    CHECK(error_kind([] { parse_diagram("strands 3 : a b"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("protocol script parses and emits losslessly") {
    Diagram d = parse_diagram(slurp(std::filesystem::path(GXCALC_SOURCE_DIR) / "corpus" / "t_gate_protocol.dsl"));
    CHECK(d.ops.size() == 19);
    CHECK(d.strands->size() == 8);
    Diagram again = parse_diagram(emit_diagram(d));
    CHECK(emit_diagram(again) == emit_diagram(d));
    REQUIRE(again.ops.size() == d.ops.size());
    for (std::size_t k = 0; k < d.ops.size(); ++k) {
        CHECK(again.ops[k].kind == d.ops[k].kind);
        CHECK(again.ops[k].i == d.ops[k].i);
        CHECK(again.ops[k].names == d.ops[k].names);
    }
    CHECK(again.meta == d.meta);
}

TEST_CASE("typecheck") {
    const auto& is = cat("ising1");
    TypedDiagram t = typecheck(parse_diagram("strands 1 : psi\nsplit 1 sigma sigma psi"), is);
    CHECK(t.source == std::vector<Label>{is.L("psi")});
    CHECK(t.target == std::vector<Label>{is.L("sigma"), is.L("sigma")});
    CHECK(error_kind([&] { typecheck(parse_diagram("strands 1 : sigma\nsplit 1 sigma sigma sigma"), is); }) ==
          ErrorKind::AdmissibilityError);
    CHECK(error_kind([&] { typecheck(parse_diagram("strands 1 : psi\nsplit 1 sigma sigma 1"), is); }) ==
          ErrorKind::SectorError);
    // a cap needs two legs
    CHECK(error_kind([&] { typecheck(parse_diagram("strands 1 : sigma\ncap 1 sigma"), is); }) ==
          ErrorKind::SyntaxError);
    CHECK(error_kind([&] { typecheck(parse_diagram("strands 1 : nothing"), is); }) == ErrorKind::UnknownName);
}

TEST_CASE("defect crossing that moves a label is a sector error") {
    SkeletalCategory c = cat("toric_code");
    FusionRing& r = c.mutable_ring();
    std::vector<int> perm;
    for (Label l : r.labels()) perm.push_back(l.id);
    std::swap(perm[static_cast<std::size_t>(c.L("sigma+").id)], perm[static_cast<std::size_t>(c.L("sigma-").id)]);
    r.set_action(1, perm);
    CHECK(error_kind([&] { typecheck(parse_diagram("strands 2 : sigma+ sigma+\nbraid+ 1"), c); }) ==
          ErrorKind::SectorError);
}

TEST_CASE("elementary values") {
    for (const char* name : {"ising1", "z3", "bilayer_ising"}) {
        const auto& c = cat(name);
        for (Label a : c.ring().sector(0)) {
            EvalResult r = run(name, "strands 0\nloop " + c.ring().name(a) + " 0 0");
            CHECK(r.closed);
            CHECK(std::abs(r.scalar - c.d(a)) < 1e-12);
        }
    }
    CHECK(std::abs(value(run("ising1", "strands 1 : sigma\ntwist 1", "sigma")) - ei(2 * kPi / 16)) < 1e-12);
    CHECK(std::abs(value(run("ising1", "strands 1 : 1\nsplit 1 sigma sigma 1\nfuse 1 sigma sigma 1", "1")) -
                   std::sqrt(2.0)) < 1e-12);
    EvalResult r = run("ising1", "strands 2 : sigma sigma\nbraid+ 1", "psi");
    CHECK(std::find(r.consumed.begin(), r.consumed.end(), "R") != r.consumed.end());
}

TEST_CASE("measurement projectors") {
    const auto& is = cat("ising1");
    Label s = is.L("sigma");
    TreeBasis b4 = enumerate_basis(is, std::vector<Label>(4, s), is.L("1"));
    Matrix p1 = measurement_projector(is, s, s, is.L("1"), b4, 1);
    CHECK(max_abs_diff(p1, diag({1.0, 0.0})) < 1e-12);
    CHECK(error_kind([&] { measurement_projector(is, s, s, s, b4, 1); }) == ErrorKind::AdmissibilityError);

    struct Case {
        const char* cat;
        const char* x;
        int n;
        const char* total;
    };
    for (auto [cn, xn, n, tn] : {Case{"ising1", "sigma", 6, "1"}, Case{"ty_z3", "X1", 4, "1"},
                                 Case{"bilayer_ising", "sigma.sigma", 4, "1.1"}, Case{"z3", "w", 3, "1"}}) {
        const auto& c = cat(cn);
        Label x = c.L(xn);
        TreeBasis b = enumerate_basis(c, std::vector<Label>(static_cast<std::size_t>(n), x), c.L(tn));
        for (int pos = 1; pos < n; ++pos) {
            Matrix sum = Matrix::Zero(b.dimension(), b.dimension());
            for (Label ch : c.ring().channels(x, x)) {
                Matrix p = measurement_projector(c, x, x, ch, b, pos);
                CHECK(max_abs_diff(p * p, p) < 1e-9);
                sum += p;
            }
            CHECK(max_abs_diff(sum, Matrix::Identity(b.dimension(), b.dimension())) < 1e-9);
        }
    }
}

TEST_CASE("corpus evaluates confluently and matches recorded values") {
    auto files = corpus_files();
    int evaluated = 0;
    for (const auto& f : files) {
        Diagram d = parse_diagram(slurp(f));
        if (d.meta.count("kind") && d.meta.at("kind") == "protocol") continue;
        CAPTURE(f.filename().string());
        const auto& c = cat(d.meta.at("cat"));
        EvalOptions o;
        if (d.meta.count("total")) o.total = c.L(d.meta.at("total"));
        EvalResult a = evaluate(d, c, o);
        o.strategy = Strategy::PentagonDetour;
        EvalResult b = evaluate(d, c, o);
        if (a.closed) {
            CHECK(std::abs(a.scalar - b.scalar) < 1e-9);
        } else {
            CHECK(max_abs_diff(a.matrix, b.matrix) < 1e-9);
        }
        o.cross_check = true;
        CHECK_NOTHROW(evaluate(d, c, o));
        if (d.meta.count("expect")) CHECK(std::abs(value(a) - std::stod(d.meta.at("expect"))) < 1e-8);
        ++evaluated;
    }
    CHECK(evaluated >= 20);
}

TEST_CASE("braid diagrams reproduce the braid group representation") {
    const auto& is = cat("ising1");
    BraidRep rep = build_rep(is, is.L("sigma"), 4, is.L("1"));
    const auto& g = rep.generators;
    EvalResult r = run("ising1", "strands 4 : sigma sigma sigma sigma\nbraid+ 1\nbraid- 3\nbraid+ 2", "1");
    CHECK(max_abs_diff(r.matrix, g[1] * g[2].inverse() * g[0]) < 1e-12);

    const auto& ty = cat("ty_z3");
    BraidRep q = build_rep(ty, ty.L("X1"), 4, ty.L("1"));
    EvalResult s = run("ty_z3", "strands 4 : X1 X1 X1 X1\nbraid+ 2\nbraid+ 3\nbraid- 1", "1");
    CHECK(max_abs_diff(s.matrix, q.generators[0].inverse() * q.generators[2] * q.generators[1]) < 1e-12);
}

TEST_CASE("mirrored braid diagrams give the adjoint") {
    for (const char* file : {"ising_five_strand_word.dsl", "ty_z3_defect_braids.dsl", "ising_braid_relation_lhs.dsl"}) {
        Diagram d = parse_diagram(slurp(std::filesystem::path(GXCALC_SOURCE_DIR) / "corpus" / file));
        const auto& c = cat(d.meta.at("cat"));
        EvalOptions o;
        o.total = c.L(d.meta.at("total"));
        Matrix m = evaluate(d, c, o).matrix;
        Matrix w = evaluate(mirror(d, c), c, o).matrix;
        CAPTURE(file);
        CHECK(max_abs_diff(w, m.adjoint()) < 1e-9);
    }
}

TEST_CASE("a slide followed by its inverse changes nothing") {
    SkeletalCategory c = cat("ty_z3");
    Label X = c.L("X1");
    for (Label a : c.ring().sector(0))
        for (Label b : c.ring().sector(0))
            for (Label ch : c.ring().channels(a, b))
                c.U[UKey{1, a.id, b.id, ch.id}] = Scalar(ei(0.3 * a.id + 0.7 * b.id + 0.11 * ch.id));
    EvalOptions o;
    o.total = c.L("1");
    Matrix m = evaluate(parse_diagram("strands 4 : X1 X1 X1 X1\nbraid+ 2\nbraid- 1"), c, o).matrix;
    for (Label a : c.ring().sector(0))
        for (Label b : c.ring().sector(0))
            for (Label ch : c.ring().channels(a, b)) {
                Complex u = u_slide(c, 1, a, b, ch);
                CHECK(std::abs(std::abs(u) - 1.0) < 1e-12);
                Matrix slid = m * u * (1.0 / u);
                CHECK(max_abs_diff(slid, m) < 1e-9);
            }
    CHECK(u_slide(c, 1, c.L("w"), c.L("w"), c.L("w*"), true) == Complex(1.0));
    CHECK(eta_slide(c, X, 1, 1, true) == Complex(1.0));
}

TEST_CASE("loops around defects need trivial U and eta") {
    SkeletalCategory c = cat("toric_code");
    c.trivial_u_eta = false;
    std::string text = "strands 2 : sigma+ sigma+\nloop e 1 2";
    EvalOptions o;
    o.total = c.L("1");
    CHECK(error_kind([&] { evaluate(parse_diagram(text), c, o); }) == ErrorKind::UnsupportedConfiguration);
    o.assume_trivial_u_eta = true;
    EvalResult r = evaluate(parse_diagram(text), c, o);
    // the pair fuses to the vacuum, so the loop reads d_e = 1
    CHECK(std::abs(value(r) - 1.0) < 1e-12);
    CHECK(std::find(r.consumed.begin(), r.consumed.end(), "U=eta=1") != r.consumed.end());
    // a single defect inside the loop is never supported
    o.total = c.L("sigma+");
    CHECK(error_kind([&] { evaluate(parse_diagram("strands 1 : sigma+\nloop e 1 1"), c, o); }) ==
          ErrorKind::UnsupportedConfiguration);
}

TEST_CASE("elementary move helpers") {
    const auto& is = cat("ising1");
    Label s = is.L("sigma"), p = is.L("psi"), one = is.L("1");
    CHECK(std::abs(bubble(is, s, s, one) - std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(bubble(is, s, s, p) - std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(loop_factor(is, s, p) + std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(loop_factor(is, s, s)) < 1e-12);
    CHECK(std::abs(loop_factor(is, p, s) + 1.0) < 1e-12);
    CHECK(std::abs(crossing_factor(is, s, s, one, true) * crossing_factor(is, s, s, one, false) - 1.0) < 1e-12);
}
