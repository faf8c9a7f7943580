#include "gxcalc/catalog.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gxcalc/catfile.hpp"
#include "gxcalc/error.hpp"

namespace gxcalc {

namespace {

Scalar ex(std::int64_t n) { return Scalar(Exact::integer(n)); }
Scalar ph(std::int64_t p, std::int64_t q) { return Scalar(Exact::phase(p, q)); }
Scalar half() { return Scalar(Exact(Rational::make(1, 2), 1, {})); }
Scalar inv_sqrt2() { return Scalar(Exact::inv_sqrt(2)); }

FusionRing ising_ring(GroupSpec g, std::vector<std::string> names) {
    FusionRing r(std::move(g), std::move(names));
    Label one{0}, s{1}, p{2};
    for (Label a : {one, s, p}) {
        r.set_N(one, a, a, 1);
        r.set_N(a, one, a, 1);
    }
    r.set_N(s, s, one, 1);
    r.set_N(s, s, p, 1);
    r.set_N(s, p, s, 1);
    r.set_N(p, s, s, 1);
    r.set_N(p, p, one, 1);
    r.infer_duals();
    return r;
}

// F and R of the Ising category on labels (1, sigma, psi) = (0, 1, 2).
void ising_symbols(SkeletalCategory& c) {
    Label one{0}, s{1}, p{2};
    c.setF(s, s, s, s, one, one, inv_sqrt2());
    c.setF(s, s, s, s, one, p, inv_sqrt2());
    c.setF(s, s, s, s, p, one, inv_sqrt2());
    c.setF(s, s, s, s, p, p, Scalar(Exact::inv_sqrt(2) * Exact::integer(-1)));
    c.setF(s, p, s, p, s, s, ex(-1));
    c.setF(p, s, p, s, s, s, ex(-1));
    fill_trivial_F(c);
    c.setR(s, s, one, ph(-1, 8));
    c.setR(s, s, p, ph(3, 8));
    c.setR(s, p, s, ph(-1, 2));
    c.setR(p, s, s, ph(-1, 2));
    c.setR(p, p, one, ex(-1));
}

std::vector<std::vector<Scalar>> ising_S() {
    Scalar r2 = Scalar(Exact(Rational::make(1, 2), 2, {}));
    Scalar mr2 = Scalar(Exact(Rational::make(-1, 2), 2, {}));
    return {{half(), r2, half()}, {r2, ex(0), mr2}, {half(), mr2, half()}};
}

SkeletalCategory build_ising1() {
    SkeletalCategory c("ising1", ising_ring(GroupSpec{}, {"1", "sigma", "psi"}));
    ising_symbols(c);
    c.twists = {{0, ex(1)}, {1, ph(1, 8)}, {2, ex(-1)}};
    c.S = ising_S();
    c.finalize();
    return c;
}

SkeletalCategory build_z3() {
    FusionRing r(GroupSpec::cyclic(2), {"1", "w", "w*"});
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) r.set_N(Label{a}, Label{b}, Label{(a + b) % 3}, 1);
    r.infer_duals();
    r.set_action(1, {0, 2, 1});
    SkeletalCategory c("z3", r);
    fill_trivial_F(c);
    std::vector<std::vector<Scalar>> S(3, std::vector<Scalar>(3));
    for (int a = 0; a < 3; ++a) {
        c.twists[a] = ph(2 * a * a, 3);
        for (int b = 0; b < 3; ++b) {
            c.setR(Label{a}, Label{b}, Label{(a + b) % 3}, ph(2 * a * b, 3));
            S[a][b] = Scalar(Exact::inv_sqrt(3) * Exact::phase(2 * a * b, 3));
        }
    }
    c.S = S;
    c.trivial_u_eta = true;
    c.finalize();
    return c;
}

// Toric code extension realised inside Ising x Vec(Z2):
// 1=(1,0) e=(1,1) m=(psi,1) psi=(psi,0) sigma+=(sigma,0) sigma-=(sigma,1).
SkeletalCategory build_toric_code() {
    std::vector<std::string> names{"1", "e", "m", "psi", "sigma+", "sigma-"};
    const int ising_of[6] = {0, 0, 2, 2, 1, 1};
    const int z2_of[6] = {0, 1, 1, 0, 0, 1};
    auto find = [&](int is, int z) {
        for (int k = 0; k < 6; ++k)
            if (ising_of[k] == is && z2_of[k] == z) return Label{k};
        return Label{-1};
    };
    SkeletalCategory ising = build_ising1();
    FusionRing r(GroupSpec::cyclic(2), names);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            for (Label x : ising.ring().channels(Label{ising_of[a]}, Label{ising_of[b]}))
                r.set_N(Label{a}, Label{b}, find(x.id, (z2_of[a] + z2_of[b]) % 2), 1);
    r.infer_duals();
    r.set_grade(Label{4}, 1);
    r.set_grade(Label{5}, 1);
    r.set_action(1, {0, 2, 1, 3, 4, 5});
    SkeletalCategory c("toric_code", r);
    for (const auto& [k, v] : ising.F)
        for (int za = 0; za < 2; ++za)
            for (int zb = 0; zb < 2; ++zb)
                for (int zc = 0; zc < 2; ++zc) {
                    Label a = find(k[0], za), b = find(k[1], zb), x = find(k[2], zc);
                    Label d = find(k[3], (za + zb + zc) % 2);
                    Label e = find(k[4], (za + zb) % 2), f = find(k[5], (zb + zc) % 2);
                    c.setF(a, b, x, d, e, f, v);
                }
    // trivial sector: bicharacter braiding of Z2 x Z2, (e-bit, m-bit)
    const int ebit[4] = {0, 1, 0, 1};
    const int mbit[4] = {0, 0, 1, 1};
    std::vector<std::vector<Scalar>> S(4, std::vector<Scalar>(4));
    for (int a = 0; a < 4; ++a) {
        c.twists[a] = ex((ebit[a] & mbit[a]) ? -1 : 1);
        for (int b = 0; b < 4; ++b) {
            Label ab = r.channels(Label{a}, Label{b}).front();
            c.setR(Label{a}, Label{b}, ab, ex((ebit[a] & mbit[b]) ? -1 : 1));
            int s = (ebit[a] * mbit[b] + mbit[a] * ebit[b]) % 2;
            S[a][b] = Scalar(Exact(Rational::make(s ? -1 : 1, 2), 1, {}));
        }
    }
    c.S = S;
    c.finalize();
    return c;
}

SkeletalCategory build_tc_restricted() {
    GroupSpec z2 = GroupSpec::cyclic(2);
    FusionRing r = ising_ring(z2, {"1", "sigma+", "psi"});
    r.set_grade(Label{1}, 1);
    r.set_action(1, {0, 1, 2});
    // keep the toric code label order {1, psi, sigma+}
    FusionRing ordered(z2, {"1", "psi", "sigma+"});
    const int to_new[3] = {0, 2, 1};
    for (Label a : r.labels())
        for (Label b : r.labels())
            for (Label x : r.channels(a, b)) ordered.set_N(Label{to_new[a.id]}, Label{to_new[b.id]}, Label{to_new[x.id]}, 1);
    ordered.infer_duals();
    ordered.set_grade(Label{2}, 1);
    ordered.set_action(1, {0, 1, 2});
    SkeletalCategory tmp("tmp", r);
    ising_symbols(tmp);
    SkeletalCategory c("tc_z2x_restricted", ordered);
    for (const auto& [k, v] : tmp.F)
        c.F[{to_new[k[0]], to_new[k[1]], to_new[k[2]], to_new[k[3]], to_new[k[4]], to_new[k[5]]}] = v;
    for (const auto& [k, v] : tmp.R) c.R[{to_new[k[0]], to_new[k[1]], to_new[k[2]]}] = v;
    c.twists = {{0, ex(1)}, {1, ex(-1)}, {2, ph(1, 8)}};
    c.trivial_u_eta = true;
    c.finalize();
    return c;
}

SkeletalCategory build_ty_z3() {
    SkeletalCategory c = make_tambara_yamagami(Bicharacter::cyclic(3, 1, 1), "ty_z3", {"1", "w", "w*"}, "X1");
    c.mutable_ring().add_alias("Xw", Label{3});
    Label X{3};
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) c.setR(Label{j}, Label{k}, Label{(j + k) % 3}, ph(2 * j * k, 3));
        c.setR(Label{j}, X, X, ph(2 * j * j, 3));
        c.setR(X, Label{j}, X, ph(2 * j * j, 3));
        c.setR(X, X, Label{j}, Scalar(Exact::phase(1, 4) * Exact::phase(-2 * j * j, 3)));
        c.twists[j] = ph(2 * j * j, 3);
    }
    std::vector<std::vector<Scalar>> S(3, std::vector<Scalar>(3));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) S[a][b] = Scalar(Exact::inv_sqrt(3) * Exact::phase(2 * a * b, 3));
    c.S = S;
    c.finalize();
    return c;
}

SkeletalCategory build_bilayer() { return deligne_product(build_ising1(), build_ising1(), "bilayer_ising"); }

SkeletalCategory build_bilayer_partial() {
    SkeletalCategory bl = build_bilayer();
    SkeletalCategory is = build_ising1();
    const FusionRing& r0 = bl.ring();
    const FusionRing& ri = is.ring();
    std::vector<std::string> names = r0.names();
    for (const char* x : {"X1", "Xsigma", "Xpsi"}) names.emplace_back(x);
    FusionRing r(GroupSpec::cyclic(2), names);
    auto pair_of = [](Label ab) { return std::pair{Label{ab.id / 3}, Label{ab.id % 3}}; };
    auto X = [](Label a) { return Label{9 + a.id}; };
    auto L = ri.labels();
    for (Label a : r0.labels())
        for (Label b : r0.labels())
            for (Label x : r0.labels()) r.set_N(a, b, x, r0.N(a, b, x));
    for (Label ab : r0.labels()) {
        auto [a, b] = pair_of(ab);
        for (Label c : L)
            for (Label d : L) {
                int n = 0;
                for (Label e : L) n += ri.N(a, b, e) * ri.N(e, c, d);
                if (n) {
                    r.set_N(ab, X(c), X(d), n);
                    r.set_N(X(c), ab, X(d), n);
                }
            }
    }
    for (Label a : L)
        for (Label b : L)
            for (Label xy : r0.labels()) {
                auto [x, y] = pair_of(xy);
                int n = 0;
                for (Label e : L) n += ri.N(x, y, e) * ri.N(a, b, e);
                if (n) r.set_N(X(a), X(b), xy, n);
            }
    r.infer_duals();
    std::vector<int> swap(12);
    for (int k = 0; k < 9; ++k) swap[k] = (k % 3) * 3 + k / 3;
    for (int k = 9; k < 12; ++k) {
        swap[k] = k;
        r.set_grade(Label{k}, 1);
    }
    r.set_action(1, swap);

    SkeletalCategory c("bilayer_ising_z2x_partial", r);
    c.F = bl.F;
    c.R = bl.R;
    c.twists = bl.twists;
    c.S = bl.S;
    const Label X1{9};
    const Label diag[3] = {Label{0}, Label{4}, Label{8}};  // 1.1, sigma.sigma, psi.psi
    auto S_is = ising_S();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) c.setF(X1, X1, X1, X1, diag[i], diag[j], S_is[i][j]);
        c.setR(X1, X1, diag[i], is.twists.at(i));
    }
    c.orientation = Orientation::Inverse;
    c.partial = true;
    c.trivial_u_eta = true;
    c.finalize();
    return c;
}

}  // namespace

void fill_trivial_F(SkeletalCategory& c) {
    auto L = c.ring().labels();
    for (Label a : L)
        for (Label b : L)
            for (Label x : L)
                for (Label e : c.ring().channels(a, b))
                    for (Label d : c.ring().channels(e, x))
                        for (Label f : c.ring().channels(b, x))
                            if (c.ring().N(a, f, d) > 0) c.F.try_emplace(FKey{a.id, b.id, x.id, d.id, e.id, f.id}, Exact::integer(1));
}

std::vector<std::string> catalog_names() {
    return {"ising1", "z3", "toric_code", "tc_z2x_restricted", "ty_z3", "bilayer_ising", "bilayer_ising_z2x_partial"};
}

SkeletalCategory catalog_builtin(const std::string& name) {
    if (name == "ising1") return build_ising1();
    if (name == "z3") return build_z3();
    if (name == "toric_code") return build_toric_code();
    if (name == "tc_z2x_restricted") return build_tc_restricted();
    if (name == "ty_z3") return build_ty_z3();
    if (name == "bilayer_ising") return build_bilayer();
    if (name == "bilayer_ising_z2x_partial") return build_bilayer_partial();
    throw Error(ErrorKind::UnknownName, "no catalog entry '" + name + "'");
}

SkeletalCategory catalog_load(const std::string& name) {
    if (const char* dir = std::getenv("GXCALC_CATALOG_DIR"); dir && *dir) {
        std::filesystem::path p = std::filesystem::path(dir) / (name + ".cat");
        std::ifstream in(p);
        if (!in) throw Error(ErrorKind::UnknownName, "no catalog file " + p.string());
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_category(ss.str());
    }
    return catalog_builtin(name);
}

}  // namespace gxcalc
