#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gxcalc/trees.hpp"
#include "support.hpp"

using namespace gxcalc;
using namespace testing;

namespace {

std::vector<Label> labels(const SkeletalCategory& c, std::initializer_list<const char*> names) {
    std::vector<Label> out;
    for (const char* n : names) out.push_back(c.L(n));
    return out;
}

std::vector<Label> repeat(Label x, int n) { return std::vector<Label>(static_cast<std::size_t>(n), x); }

// Integer count of left-combed paths, independent of the enumerator.
long count_paths(const FusionRing& r, const std::vector<Label>& leaves, Label root) {
    std::vector<long> ways(r.size(), 0);
    ways[r.unit().id] = 1;
    for (Label x : leaves) {
        std::vector<long> next(r.size(), 0);
        for (Label a : r.labels())
            for (Label b : r.labels()) next[b.id] += ways[a.id] * r.N(a, x, b);
        ways = next;
    }
    return ways[root.id];
}

}  // namespace

TEST_CASE("basis dimensions") {
    const auto& tc = cat("tc_z2x_restricted");
    TreeBasis b = enumerate_basis(tc, repeat(tc.L("sigma+"), 4), tc.L("1"));
    REQUIRE(b.dimension() == 2);
    CHECK(b.trees()[0].internal[0] == tc.L("1"));
    CHECK(b.trees()[1].internal[0] == tc.L("psi"));

    const auto& ty = cat("ty_z3");
    TreeBasis q = enumerate_basis(ty, repeat(ty.L("X1"), 4), ty.L("1"));
    REQUIRE(q.dimension() == 3);
    // first internal edge carries the qutrit label: 1, w, w*
    CHECK(q.trees()[0].internal[0] == ty.L("1"));
    CHECK(q.trees()[1].internal[0] == ty.L("w"));
    CHECK(q.trees()[2].internal[0] == ty.L("w*"));

    const auto& is = cat("ising1");
    CHECK(enumerate_basis(is, {is.L("sigma")}, is.L("psi")).dimension() == 0);
}

TEST_CASE("enumeration is lexicographic and paths are found again") {
    const auto& is = cat("ising1");
    TreeBasis b = enumerate_basis(is, repeat(is.L("sigma"), 6), is.L("1"));
    CHECK(b.dimension() == 4);
    for (int i = 0; i < b.dimension(); ++i) {
        CHECK(b.find(b.trees()[i].path(is.ring().unit())) == i);
        if (i > 0) CHECK(b.trees()[i - 1].internal < b.trees()[i].internal);
    }
}

TEST_CASE("dimension equals fusion matrix power entry") {
    for (const char* name : {"ising1", "z3", "toric_code", "ty_z3", "bilayer_ising"}) {
        const auto& c = cat(name);
        for (Label x : c.ring().labels())
            for (int n = 1; n <= 5; ++n)
                for (Label root : c.ring().labels()) {
                    long expect = count_paths(c.ring(), repeat(x, n), root);
                    CHECK(hom_dimension(c.ring(), x, n, root) == expect);
                    CHECK(enumerate_basis(c, repeat(x, n), root).dimension() == expect);
                }
    }
}

TEST_CASE("Ising recoupling is the printed F block") {
    const auto& is = cat("ising1");
    TreeBasis b = enumerate_basis(is, repeat(is.L("sigma"), 3), is.L("sigma"));
    Matrix m = recouple(is, b, 2);
    double s = 1 / std::sqrt(2.0);
    CHECK(max_abs_diff(m, mat({{s, s}, {s, -s}})) < 1e-12);
}

TEST_CASE("recoupling at a unit leaf is the identity") {
    const auto& is = cat("ising1");
    for (int pos = 2; pos <= 3; ++pos) {
        auto leaves = labels(is, {"sigma", "sigma", "sigma", "sigma"});
        leaves[pos - 1] = is.L("1");
        for (Label root : is.ring().labels()) {
            TreeBasis b = enumerate_basis(is, leaves, root);
            if (b.dimension() == 0) continue;
            Matrix m = recouple(is, b, pos);
            CHECK(max_abs_diff(m, Matrix::Identity(m.rows(), m.cols())) < 1e-12);
        }
    }
}

TEST_CASE("bilayer recoupling factorizes over the layers") {
    const auto& bi = cat("bilayer_ising");
    const auto& is = cat("ising1");
    Label ss = bi.L("sigma.sigma");
    TreeBasis b = enumerate_basis(bi, repeat(ss, 3), ss);
    REQUIRE(b.dimension() == 4);
    Recoupling rk = recouple_keyed(bi, b, 2);
    auto layer = [&](Label l, int k) {
        const std::string& n = bi.ring().name(l);
        auto dot = n.find('.');
        return is.L(k == 0 ? n.substr(0, dot) : n.substr(dot + 1));
    };
    Label s = is.L("sigma");
    for (int j = 0; j < b.dimension(); ++j) {
        Label e = b.trees()[j].internal[0];
        for (std::size_t i = 0; i < rk.keys.size(); ++i) {
            Label f = rk.keys[i].f;
            Complex expect = is.f(s, s, s, s, layer(e, 0), layer(f, 0)) * is.f(s, s, s, s, layer(e, 1), layer(f, 1));
            CHECK(std::abs(rk.m(static_cast<Eigen::Index>(i), j) - expect) < 1e-12);
        }
    }
}

TEST_CASE("recouplings are unitary and strategies agree") {
    for (const auto& name : catalog_names()) {
        const auto& c = cat(name);
        for (Label x : c.ring().labels()) {
            if (c.ring().act(c.ring().grade(x), x) != x) continue;
            for (Label root : c.ring().labels()) {
                TreeBasis b;
                try {
                    b = enumerate_basis(c, repeat(x, 4), root);
                } catch (const Error& e) {
                    if (e.kind() == ErrorKind::MultiplicityUnsupported) continue;
                    throw;
                }
                if (b.dimension() == 0) continue;
                for (int pos = 1; pos <= 3; ++pos) {
                    Recoupling d;
                    try {
                        d = recouple_keyed(c, b, pos, Strategy::Direct);
                    } catch (const Error& e) {
                        // partial data covers only the protocol's objects
                        if (c.partial && e.kind() == ErrorKind::MissingSymbol) continue;
                        throw;
                    }
                    CAPTURE(name);
                    CAPTURE(c.ring().name(x));
                    CHECK(unitarity_defect(d.m) < 1e-9);
                    // reversing the move returns the comb basis
                    Matrix back = d.m.adjoint() * d.m;
                    CHECK(max_abs_diff(back, Matrix::Identity(back.rows(), back.cols())) < 1e-9);
                    Recoupling p = recouple_keyed(c, b, pos, Strategy::PentagonDetour);
                    REQUIRE(p.keys == d.keys);
                    CHECK(max_abs_diff(p.m, d.m) < 1e-9);
                }
            }
        }
    }
}
