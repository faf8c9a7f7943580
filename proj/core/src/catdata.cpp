#include "gxcalc/catdata.hpp"

#include <cmath>

#include "gxcalc/error.hpp"

namespace gxcalc {

SkeletalCategory::SkeletalCategory(std::string name, FusionRing ring)
    : name_(std::move(name)), ring_(std::move(ring)) {}

void SkeletalCategory::setF(Label a, Label b, Label c, Label d, Label e, Label f, Scalar v) {
    F[{a.id, b.id, c.id, d.id, e.id, f.id}] = std::move(v);
}

void SkeletalCategory::setR(Label a, Label b, Label c, Scalar v) { R[{a.id, b.id, c.id}] = std::move(v); }

bool SkeletalCategory::f_admissible(Label a, Label b, Label c, Label d, Label e, Label f) const {
    return ring_.N(a, b, e) > 0 && ring_.N(e, c, d) > 0 && ring_.N(b, c, f) > 0 && ring_.N(a, f, d) > 0;
}

Complex SkeletalCategory::f(Label a, Label b, Label c, Label d, Label e, Label f) const {
    if (!f_admissible(a, b, c, d, e, f)) return 0.0;
    auto it = F.find({a.id, b.id, c.id, d.id, e.id, f.id});
    if (it != F.end()) return it->second.value;
    Label one = ring_.unit();
    if (a == one || b == one || c == one) return 1.0;
    auto n = [&](Label x) { return ring_.name(x); };
    throw Error(ErrorKind::MissingSymbol,
                "F^{" + n(a) + "," + n(b) + "," + n(c) + "}_" + n(d) + "[" + n(e) + "," + n(f) + "]");
}

bool SkeletalCategory::has_r(Label a, Label b, Label c) const {
    return R.count({a.id, b.id, c.id}) || a == ring_.unit() || b == ring_.unit();
}

Complex SkeletalCategory::r(Label a, Label b, Label c) const {
    auto it = R.find({a.id, b.id, c.id});
    if (it != R.end()) return it->second.value;
    if (a == ring_.unit() || b == ring_.unit()) return 1.0;
    throw Error(ErrorKind::MissingSymbol,
                "R^{" + ring_.name(a) + "," + ring_.name(b) + "}_" + ring_.name(c));
}

Complex SkeletalCategory::u(int k, Label a, Label b, Label c) const {
    if (k == ring_.group().identity()) return 1.0;
    auto it = U.find({k, a.id, b.id, c.id});
    if (it != U.end()) return it->second.value;
    if (trivial_u_eta || a == ring_.unit() || b == ring_.unit()) return 1.0;
    throw Error(ErrorKind::MissingSymbol, "U_" + ring_.group().name(k) + "(" + ring_.name(a) + "," +
                                              ring_.name(b) + ";" + ring_.name(c) + ")");
}

Complex SkeletalCategory::eta_of(Label x, int g, int h) const {
    const GroupSpec& G = ring_.group();
    if (g == G.identity() || h == G.identity()) return 1.0;
    auto it = eta.find({x.id, g, h});
    if (it != eta.end()) return it->second.value;
    if (trivial_u_eta) return 1.0;
    throw Error(ErrorKind::MissingSymbol,
                "eta_" + ring_.name(x) + "(" + G.name(g) + "," + G.name(h) + ")");
}

Complex SkeletalCategory::theta(Label a) const {
    auto it = twists.find(a.id);
    if (it != twists.end()) return it->second.value;
    if (a == ring_.unit()) return 1.0;
    throw Error(ErrorKind::MissingSymbol, "theta_" + ring_.name(a));
}

int SkeletalCategory::sector_index(Label a) const {
    int k = 0;
    for (Label x : ring_.sector(ring_.group().identity())) {
        if (x == a) return k;
        ++k;
    }
    return -1;
}

Complex SkeletalCategory::s(Label a, Label b) const {
    int i = sector_index(a);
    int j = sector_index(b);
    if (!S || i < 0 || j < 0)
        throw Error(ErrorKind::MissingSymbol, "S_{" + ring_.name(a) + "," + ring_.name(b) + "}");
    return (*S)[i][j].value;
}

FBlock SkeletalCategory::f_block(Label a, Label b, Label c, Label d) const {
    FBlock blk;
    for (Label e : ring_.labels()) {
        int m1 = ring_.N(a, b, e);
        int m2 = ring_.N(e, c, d);
        if (m1 > 0 && m2 > 0) {
            if (m1 > 1 || m2 > 1) throw Error(ErrorKind::MultiplicityUnsupported, "vertex with N > 1");
            blk.rows.push_back(e);
        }
        int m3 = ring_.N(b, c, e);
        int m4 = ring_.N(a, e, d);
        if (m3 > 0 && m4 > 0) {
            if (m3 > 1 || m4 > 1) throw Error(ErrorKind::MultiplicityUnsupported, "vertex with N > 1");
            blk.cols.push_back(e);
        }
    }
    blk.m.resize(static_cast<Eigen::Index>(blk.rows.size()), static_cast<Eigen::Index>(blk.cols.size()));
    for (std::size_t i = 0; i < blk.rows.size(); ++i)
        for (std::size_t j = 0; j < blk.cols.size(); ++j)
            blk.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f(a, b, c, d, blk.rows[i], blk.cols[j]);
    return blk;
}

FBlock SkeletalCategory::f_block_inverse(Label a, Label b, Label c, Label d) const {
    FBlock fwd = f_block(a, b, c, d);
    FBlock inv;
    inv.rows = fwd.cols;
    inv.cols = fwd.rows;
    if (fwd.rows.size() != fwd.cols.size())
        throw Error(ErrorKind::InvalidData, "non-square F block");
    inv.m = fwd.m.size() ? Matrix(fwd.m.inverse()) : Matrix(0, 0);
    return inv;
}

void SkeletalCategory::finalize() { dims_ = quantum_dimensions(ring_); }

const Dimensions& SkeletalCategory::dims() const {
    if (!dims_) throw Error(ErrorKind::InvalidData, "category '" + name_ + "' used before finalize()");
    return *dims_;
}

bool Bicharacter::nondegenerate(double tol) const {
    int n = group.order();
    for (int a = 1; a < n; ++a) {
        bool trivial_row = true;
        for (int b = 0; b < n; ++b) trivial_row &= std::abs(chi[a][b].value - 1.0) < tol;
        if (trivial_row) return false;
    }
    return true;
}

std::vector<std::string> Bicharacter::validate(double tol) const {
    std::vector<std::string> out;
    int n = group.order();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (std::abs(chi[a][b].value - chi[b][a].value) > tol) out.push_back("not symmetric");
            for (int c = 0; c < n; ++c)
                if (std::abs(chi[group.mul(a, b)][c].value - chi[a][c].value * chi[b][c].value) > tol)
                    out.push_back("not multiplicative");
        }
    if (!nondegenerate(tol)) out.push_back("degenerate");
    if (std::abs(tau.value * tau.value - 1.0 / n) > tol) out.push_back("tau^2 != 1/|A|");
    return out;
}

Bicharacter Bicharacter::cyclic(int n, int k, int tau_sign) {
    Bicharacter b;
    b.group = GroupSpec::cyclic(n);
    b.chi.assign(n, std::vector<Scalar>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) b.chi[x][y] = Scalar(Exact::phase(2L * k * x * y, n));
    b.tau = Scalar(Exact::inv_sqrt(n) * Exact::integer(tau_sign));
    return b;
}

SkeletalCategory make_tambara_yamagami(const Bicharacter& chi, const std::string& name,
                                       std::vector<std::string> label_names, const std::string& m_name) {
    if (!chi.nondegenerate()) throw Error(ErrorKind::DegenerateBicharacter, "bicharacter is degenerate");
    const GroupSpec& A = chi.group;
    int n = A.order();
    if (label_names.empty()) label_names = A.names();
    label_names.push_back(m_name);
    FusionRing ring(GroupSpec::cyclic(2), label_names);
    Label m{n};
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) ring.set_N(Label{a}, Label{b}, Label{A.mul(a, b)}, 1);
        ring.set_N(Label{a}, m, m, 1);
        ring.set_N(m, Label{a}, m, 1);
        ring.set_N(m, m, Label{a}, 1);
        ring.set_dual(Label{a}, Label{A.inv(a)});
    }
    ring.set_dual(m, m);
    ring.set_grade(m, 1);
    std::vector<int> inv(n + 1);
    for (int a = 0; a < n; ++a) inv[a] = A.inv(a);
    inv[n] = n;
    ring.set_action(1, inv);

    SkeletalCategory c(name, ring);
    auto all = c.ring().labels();
    for (Label a : all)
        for (Label b : all)
            for (Label x : all)
                for (Label d : all)
                    for (Label e : all)
                        for (Label f : all) {
                            if (!c.f_admissible(a, b, x, d, e, f)) continue;
                            Scalar v(Exact::integer(1));
                            if (a != m && b == m && x != m && d == m)
                                v = chi.chi[a.id][x.id];
                            else if (a == m && b != m && x == m && d != m)
                                v = chi.chi[b.id][d.id];
                            else if (a == m && b == m && x == m && d == m)
                                v = chi.tau * conj(chi.chi[e.id][f.id]);
                            c.setF(a, b, x, d, e, f, v);
                        }
    c.trivial_u_eta = true;
    c.finalize();
    return c;
}

SkeletalCategory deligne_product(const SkeletalCategory& c1, const SkeletalCategory& c2, const std::string& name) {
    const FusionRing& r1 = c1.ring();
    const FusionRing& r2 = c2.ring();
    if (r1.group().order() != 1 || r2.group().order() != 1)
        throw Error(ErrorKind::InvalidData, "deligne_product needs trivially graded inputs");
    int n1 = r1.size();
    int n2 = r2.size();
    auto pair = [n2](int i, int j) { return Label{i * n2 + j}; };
    std::vector<std::string> names;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) names.push_back(r1.name(Label{i}) + "." + r2.name(Label{j}));
    FusionRing ring(GroupSpec{}, names);
    for (int a1 = 0; a1 < n1; ++a1)
        for (int a2 = 0; a2 < n2; ++a2) {
            ring.set_dual(pair(a1, a2), pair(r1.dual(Label{a1}).id, r2.dual(Label{a2}).id));
            for (int b1 = 0; b1 < n1; ++b1)
                for (int b2 = 0; b2 < n2; ++b2)
                    for (int x1 = 0; x1 < n1; ++x1)
                        for (int x2 = 0; x2 < n2; ++x2)
                            ring.set_N(pair(a1, a2), pair(b1, b2), pair(x1, x2),
                                       r1.N(Label{a1}, Label{b1}, Label{x1}) * r2.N(Label{a2}, Label{b2}, Label{x2}));
        }
    SkeletalCategory c(name.empty() ? c1.name() + "x" + c2.name() : name, ring);
    c.trivial_u_eta = true;
    c.orientation = c1.orientation;

    auto split = [n2](int x) { return std::pair{Label{x / n2}, Label{x % n2}}; };
    auto get_scalar = [](const auto& table, const auto& key, Complex fallback) -> Scalar {
        auto it = table.find(key);
        if (it != table.end()) return it->second;
        return Scalar(Exact::integer(1)).value == fallback ? Scalar(Exact::integer(1)) : Scalar(fallback);
    };
    auto labels = c.ring().labels();
    for (Label a : labels)
        for (Label b : labels)
            for (Label x : labels)
                for (Label d : labels)
                    for (Label e : labels)
                        for (Label f : labels) {
                            if (!c.f_admissible(a, b, x, d, e, f)) continue;
                            auto [a1, a2] = split(a.id);
                            auto [b1, b2] = split(b.id);
                            auto [x1, x2] = split(x.id);
                            auto [d1, d2] = split(d.id);
                            auto [e1, e2] = split(e.id);
                            auto [f1, f2] = split(f.id);
                            Scalar s1 = get_scalar(c1.F, FKey{a1.id, b1.id, x1.id, d1.id, e1.id, f1.id},
                                                   c1.f(a1, b1, x1, d1, e1, f1));
                            Scalar s2 = get_scalar(c2.F, FKey{a2.id, b2.id, x2.id, d2.id, e2.id, f2.id},
                                                   c2.f(a2, b2, x2, d2, e2, f2));
                            c.setF(a, b, x, d, e, f, s1 * s2);
                        }
    for (Label a : labels)
        for (Label b : labels)
            for (Label x : c.ring().channels(a, b)) {
                auto [a1, a2] = split(a.id);
                auto [b1, b2] = split(b.id);
                auto [x1, x2] = split(x.id);
                if (!c1.has_r(a1, b1, x1) || !c2.has_r(a2, b2, x2)) continue;
                Scalar s1 = get_scalar(c1.R, RKey{a1.id, b1.id, x1.id}, c1.r(a1, b1, x1));
                Scalar s2 = get_scalar(c2.R, RKey{a2.id, b2.id, x2.id}, c2.r(a2, b2, x2));
                c.setR(a, b, x, s1 * s2);
            }
    for (Label a : labels) {
        auto [a1, a2] = split(a.id);
        auto t1 = c1.twists.find(a1.id);
        auto t2 = c2.twists.find(a2.id);
        Scalar s1 = t1 != c1.twists.end() ? t1->second : Scalar(Exact::integer(1));
        Scalar s2 = t2 != c2.twists.end() ? t2->second : Scalar(Exact::integer(1));
        if ((t1 != c1.twists.end() || a1 == r1.unit()) && (t2 != c2.twists.end() || a2 == r2.unit()))
            c.twists[a.id] = s1 * s2;
    }
    if (c1.S && c2.S) {
        std::vector<std::vector<Scalar>> S(n1 * n2, std::vector<Scalar>(n1 * n2));
        for (int i = 0; i < n1 * n2; ++i)
            for (int j = 0; j < n1 * n2; ++j) S[i][j] = (*c1.S)[i / n2][j / n2] * (*c2.S)[i % n2][j % n2];
        c.S = std::move(S);
    }
    c.finalize();
    return c;
}

std::vector<std::string> verify_unitarity(const SkeletalCategory& c, double tol) {
    std::vector<std::string> out;
    const FusionRing& r = c.ring();
    auto L = r.labels();
    auto nm = [&](Label x) { return r.name(x); };
    for (Label a : L)
        for (Label b : L)
            for (Label x : L)
                for (Label d : L) {
                    FBlock blk;
                    try {
                        blk = c.f_block(a, b, x, d);
                    } catch (const Error& e) {
                        // partial data: only blocks that are present are checked
                        if (e.kind() == ErrorKind::MissingSymbol || e.kind() == ErrorKind::MultiplicityUnsupported) continue;
                        throw;
                    }
                    if (blk.rows.empty() && blk.cols.empty()) continue;
                    if (!is_unitary(blk.m, tol))
                        out.push_back("F^{" + nm(a) + "," + nm(b) + "," + nm(x) + "}_" + nm(d) + " not unitary");
                }
    for (const auto& [k, v] : c.R)
        if (std::abs(std::abs(v.value) - 1.0) > tol)
            out.push_back("R^{" + nm(Label{k[0]}) + "," + nm(Label{k[1]}) + "}_" + nm(Label{k[2]}) + " not unit modulus");
    for (const auto& [k, v] : c.twists)
        if (std::abs(std::abs(v.value) - 1.0) > tol) out.push_back("theta_" + nm(Label{k}) + " not unit modulus");
    if (std::abs(c.theta(r.unit()) - 1.0) > tol) out.push_back("theta_1 != 1");
    for (const auto& [k, v] : c.U)
        if (std::abs(std::abs(v.value) - 1.0) > tol) out.push_back("U entry not unit modulus");
    for (const auto& [k, v] : c.eta)
        if (std::abs(std::abs(v.value) - 1.0) > tol) out.push_back("eta entry not unit modulus");
    if (c.S) {
        auto n = static_cast<Eigen::Index>(c.S->size());
        Matrix S(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) S(i, j) = (*c.S)[i][j].value;
        if (max_abs_diff(S, S.transpose()) > tol) out.push_back("S not symmetric");
        if (!is_unitary(S, tol)) out.push_back("S not unitary");
    }
    return out;
}

}  // namespace gxcalc
