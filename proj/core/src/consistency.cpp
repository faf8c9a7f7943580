#include "gxcalc/consistency.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "gxcalc/error.hpp"

namespace gxcalc {

namespace {

// Laurent polynomial in the unknown phases z_0..z_{n-1}.
struct Poly {
    struct Term {
        Complex c;
        std::vector<int> p;
    };
    std::vector<Term> terms;

    Poly() = default;
    Poly(Complex v) {  // NOLINT(google-explicit-constructor)
        if (v != 0.0) terms.push_back({v, {}});
    }
    static Poly var(int k, int power) {
        Poly out;
        Term t{1.0, std::vector<int>(static_cast<std::size_t>(k) + 1, 0)};
        t.p[k] = power;
        out.terms.push_back(std::move(t));
        return out;
    }

    static bool same_powers(const std::vector<int>& a, const std::vector<int>& b) {
        std::size_t n = std::max(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i)
            if ((i < a.size() ? a[i] : 0) != (i < b.size() ? b[i] : 0)) return false;
        return true;
    }

    void add_term(const Term& t) {
        for (auto& u : terms)
            if (same_powers(u.p, t.p)) {
                u.c += t.c;
                return;
            }
        terms.push_back(t);
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly out = a;
        for (const auto& t : b.terms) out.add_term(t);
        return out;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly out = a;
        for (auto t : b.terms) {
            t.c = -t.c;
            out.add_term(t);
        }
        return out;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly out;
        for (const auto& s : a.terms)
            for (const auto& t : b.terms) {
                Term u{s.c * t.c, std::vector<int>(std::max(s.p.size(), t.p.size()), 0)};
                for (std::size_t i = 0; i < s.p.size(); ++i) u.p[i] += s.p[i];
                for (std::size_t i = 0; i < t.p.size(); ++i) u.p[i] += t.p[i];
                out.add_term(u);
            }
        return out;
    }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
};

template <class T>
struct Sym {
    std::function<T(Label, Label, Label)> R;
    std::function<T(Label, Label, Label)> Rinv;
};

template <class T>
using Emit = std::function<void(const std::vector<int>& instance, const T& lhs, const T& rhs)>;

// Coefficients keyed by the final edge label; at most a handful of keys.
template <class T>
using Side = std::vector<std::pair<int, T>>;

template <class T>
void add_to(Side<T>& m, int k, const T& v) {
    for (auto& [key, val] : m)
        if (key == k) {
            val += v;
            return;
        }
    m.emplace_back(k, v);
}

template <class T>
void compare(Side<T>& seq, Side<T>& comp, std::vector<int>& inst, const Emit<T>& emit) {
    auto by_key = [](const auto& a, const auto& b) { return a.first < b.first; };
    std::sort(seq.begin(), seq.end(), by_key);
    std::sort(comp.begin(), comp.end(), by_key);
    inst.push_back(0);
    std::size_t i = 0, j = 0;
    while (i < seq.size() || j < comp.size()) {
        int ks = i < seq.size() ? seq[i].first : INT_MAX;
        int kc = j < comp.size() ? comp[j].first : INT_MAX;
        int k = std::min(ks, kc);
        inst.back() = k;
        emit(inst, ks == k ? seq[i].second : T(0.0), kc == k ? comp[j].second : T(0.0));
        if (ks == k) ++i;
        if (kc == k) ++j;
    }
    inst.pop_back();
}

// Inverse F-blocks, memoized per (a, b, x, d) for the duration of a sweep.
class FinvCache {
public:
    explicit FinvCache(const SkeletalCategory& c) : c_(c) {}

    Complex operator()(Label a, Label b, Label x, Label d, Label from, Label to) {
        std::array<int, 4> key{a.id, b.id, x.id, d.id};
        auto it = blocks_.find(key);
        if (it == blocks_.end()) it = blocks_.emplace(key, c_.f_block_inverse(a, b, x, d)).first;
        const FBlock& inv = it->second;
        for (std::size_t i = 0; i < inv.rows.size(); ++i)
            if (inv.rows[i] == from)
                for (std::size_t j = 0; j < inv.cols.size(); ++j)
                    if (inv.cols[j] == to) return inv.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        return 0.0;
    }

private:
    const SkeletalCategory& c_;
    std::map<std::array<int, 4>, FBlock> blocks_;
};

// Both sides of the four G-crossed hexagon identities (two crossing
// orientations, strand over pair and pair over strand). Each side moves
// ((x y)_e z)_d to a common left-combed shape; the sequential side uses
// two elementary crossings, the composite side one crossing of the fused
// pair plus the U or eta factor for the vertex it drags along.
template <class T>
void heptagon_sides(const SkeletalCategory& c, bool trivial_only, const Sym<T>& S, const Emit<T>& emit) {
    const FusionRing& r = c.ring();
    const GroupSpec& G = r.group();
    std::vector<Label> L = trivial_only ? r.sector(G.identity()) : r.labels();
    auto act = [&](int g, Label a) { return r.act(g, a); };
    FinvCache finv(c);
    const int n = r.size();
    std::vector<std::vector<Label>> table(static_cast<std::size_t>(n * n));
    for (Label a : r.labels())
        for (Label b : r.labels()) table[static_cast<std::size_t>(a.id * n + b.id)] = r.channels(a, b);
    auto channels = [&](Label a, Label b) -> const std::vector<Label>& {
        return table[static_cast<std::size_t>(a.id * n + b.id)];
    };
    for (Label x : L)
        for (Label y : L)
            for (Label z : L) {
                int gx = r.grade(x);
                int gy = r.grade(y);
                int gz = r.grade(z);
                for (Label e : channels(x, y))
                    for (Label d : channels(e, z)) {
                        std::vector<int> base{0, x.id, y.id, z.id, d.id, e.id};
                        // H1: x over (y z)
                        {
                            Label y1 = act(gx, y);
                            Label z1 = act(gx, z);
                            Side<T> seq, comp;
                            T r1 = S.R(y1, x, e);
                            for (Label h : channels(x, z1)) {
                                Complex fv = c.f(y1, x, z, d, e, h);
                                if (fv == 0.0) continue;
                                Label h2 = h;
                                // x z -> z1 x keeps the fused edge
                                T r2 = S.R(z1, x, h2);
                                for (Label k : channels(y1, z1)) {
                                    Complex fi = finv(y1, z1, x, d, h2, k);
                                    if (fi != 0.0) add_to(seq, k.id, r1 * T(fv) * r2 * T(fi));
                                }
                            }
                            for (Label f : channels(y, z)) {
                                Complex fv = c.f(x, y, z, d, e, f);
                                if (fv == 0.0) continue;
                                Label f1 = act(gx, f);
                                add_to(comp, f1.id, T(fv * c.u(gx, y, z, f)) * S.R(f1, x, d));
                            }
                            base[0] = 1;
                            compare(seq, comp, base, emit);
                        }
                        // H2: (x y) over z
                        {
                            Label z1 = act(gy, z);
                            Label z2 = act(gx, z1);
                            Side<T> seq, comp;
                            for (Label f : channels(y, z)) {
                                Complex fv = c.f(x, y, z, d, e, f);
                                if (fv == 0.0) continue;
                                T r1 = S.R(z1, y, f);
                                for (Label h : channels(x, z1)) {
                                    Complex fi = finv(x, z1, y, d, f, h);
                                    if (fi == 0.0) continue;
                                    add_to(seq, h.id, T(fv) * r1 * T(fi) * S.R(z2, x, h));
                                }
                            }
                            T rc = S.R(z2, e, d) * T(c.eta_of(z, gx, gy));
                            for (Label h : channels(z2, x)) {
                                Complex fi = finv(z2, x, y, d, e, h);
                                if (fi != 0.0) add_to(comp, h.id, rc * T(fi));
                            }
                            base[0] = 2;
                            compare(seq, comp, base, emit);
                        }
                        // H3: x under (y z)
                        {
                            Side<T> seq, comp;
                            Label x1 = act(G.inv(gy), x);
                            Label x2 = act(G.inv(gz), x1);
                            T r1 = S.Rinv(x, y, e);
                            for (Label h : channels(x1, z)) {
                                Complex fv = c.f(y, x1, z, d, e, h);
                                if (fv == 0.0) continue;
                                T r2 = S.Rinv(x1, z, h);
                                for (Label k : channels(y, z)) {
                                    Complex fi = finv(y, z, x2, d, h, k);
                                    if (fi != 0.0) add_to(seq, k.id, r1 * T(fv) * r2 * T(fi));
                                }
                            }
                            for (Label f : channels(y, z)) {
                                Complex fv = c.f(x, y, z, d, e, f);
                                if (fv == 0.0) continue;
                                add_to(comp, f.id, T(fv * std::conj(c.eta_of(x, gy, gz))) * S.Rinv(x, f, d));
                            }
                            base[0] = 3;
                            compare(seq, comp, base, emit);
                        }
                        // H4: (x y) under z
                        {
                            Side<T> seq, comp;
                            int gzi = G.inv(gz);
                            Label x1 = act(gzi, x);
                            Label y1 = act(gzi, y);
                            Label e1 = act(gzi, e);
                            for (Label f : channels(y, z)) {
                                Complex fv = c.f(x, y, z, d, e, f);
                                if (fv == 0.0) continue;
                                T r1 = S.Rinv(y, z, f);
                                for (Label h : channels(x, z)) {
                                    Complex fi = finv(x, z, y1, d, f, h);
                                    if (fi == 0.0) continue;
                                    add_to(seq, h.id, T(fv) * r1 * T(fi) * S.Rinv(x, z, h));
                                }
                            }
                            T rc = S.Rinv(e, z, d) * T(std::conj(c.u(gzi, x1, y1, e1)));
                            for (Label h : channels(z, x1)) {
                                Complex fi = finv(z, x1, y1, d, e1, h);
                                if (fi != 0.0) add_to(comp, h.id, rc * T(fi));
                            }
                            base[0] = 4;
                            compare(seq, comp, base, emit);
                        }
                    }
            }
}

std::string describe(const SkeletalCategory& c, const std::vector<int>& inst) {
    static const char* names[] = {"pentagon", "strand over pair", "pair over strand", "strand under pair",
                                  "pair under strand"};
    std::string s = names[inst.empty() ? 0 : inst[0]];
    s += " (";
    for (std::size_t k = 1; k < inst.size(); ++k) s += (k > 1 ? "," : "") + c.ring().name(Label{inst[k]});
    return s + ")";
}

ResidualReport heptagon_report(const SkeletalCategory& c, bool trivial_only) {
    ResidualReport rep;
    Sym<Complex> S{[&](Label a, Label b, Label x) { return c.r(a, b, x); },
                   [&](Label a, Label b, Label x) { return 1.0 / c.r(a, b, x); }};
    heptagon_sides<Complex>(c, trivial_only, S, [&](const std::vector<int>& inst, const Complex& a, const Complex& b) {
        ++rep.count_checked;
        double res = std::abs(a - b);
        if (res > rep.max_residual || rep.worst_instance.empty()) {
            if (res > rep.max_residual) rep.max_residual = res;
            rep.worst_instance = inst;
        }
    });
    if (!rep.worst_instance.empty()) rep.worst_description = describe(c, rep.worst_instance);
    return rep;
}

}  // namespace

ResidualReport check_pentagon(const SkeletalCategory& c) {
    const FusionRing& r = c.ring();
    ResidualReport rep;
    auto L = r.labels();
    for (Label a : L)
        for (Label b : L)
            for (Label x : L)
                for (Label d : L)
                    for (Label f : r.channels(a, b))
                        for (Label g : r.channels(f, x))
                            for (Label e : r.channels(g, d)) {
                                // (((a b)_f x)_g d)_e -> (a (b (x d)_h)_k)_e two ways
                                std::map<std::pair<int, int>, Complex> p1, p2;
                                for (Label h : r.channels(x, d)) {
                                    Complex v1 = c.f(f, x, d, e, g, h);
                                    if (v1 == 0.0) continue;
                                    for (Label k : r.channels(b, h)) {
                                        Complex v2 = c.f(a, b, h, e, f, k);
                                        if (v2 != 0.0) p1[{h.id, k.id}] += v1 * v2;
                                    }
                                }
                                for (Label l : r.channels(b, x)) {
                                    Complex v1 = c.f(a, b, x, g, f, l);
                                    if (v1 == 0.0) continue;
                                    for (Label k : r.channels(l, d)) {
                                        Complex v2 = c.f(a, l, d, e, g, k);
                                        if (v2 == 0.0) continue;
                                        for (Label h : r.channels(x, d)) {
                                            Complex v3 = c.f(b, x, d, k, l, h);
                                            if (v3 != 0.0) p2[{h.id, k.id}] += v1 * v2 * v3;
                                        }
                                    }
                                }
                                std::map<std::pair<int, int>, bool> keys;
                                for (auto& [k, v] : p1) keys[k] = true;
                                for (auto& [k, v] : p2) keys[k] = true;
                                for (auto& [k, unused] : keys) {
                                    ++rep.count_checked;
                                    double res = std::abs(p1[k] - p2[k]);
                                    if (res > rep.max_residual || rep.worst_instance.empty()) {
                                        if (res > rep.max_residual) rep.max_residual = res;
                                        rep.worst_instance = {0, a.id, b.id, x.id, d.id, e.id, f.id, g.id, k.first, k.second};
                                    }
                                }
                            }
    if (!rep.worst_instance.empty()) rep.worst_description = describe(c, rep.worst_instance);
    return rep;
}

ResidualReport check_hexagon(const SkeletalCategory& c) { return heptagon_report(c, true); }

ResidualReport check_heptagon(const SkeletalCategory& c) { return heptagon_report(c, false); }

SkeletalCategory apply_ansatz(const SkeletalCategory& c, const PhaseAnsatz& a) {
    SkeletalCategory out = c;
    for (std::size_t k = 0; k < a.unknowns.size(); ++k) out.R[a.unknowns[k]] = Scalar(a.values[k]);
    return out;
}

namespace {

// Residual system compiled once; each residual is a Laurent polynomial in
// the unknown phases, stored as flat term arrays.
constexpr int kMaxPower = 4;
constexpr int kPowers = 2 * kMaxPower + 1;
using SliceRow = std::array<Complex, kPowers>;  // coefficient of z_k^(p - kMaxPower)

struct System {
    int n = 0;
    std::vector<Complex> coeff;     // one per term
    std::vector<int> powers;        // n per term
    std::vector<std::size_t> start; // residual r owns terms [start[r], start[r+1])

    void add(const Poly& p) {
        if (start.empty()) start.push_back(0);
        for (const auto& t : p.terms) {
            coeff.push_back(t.c);
            for (int i = 0; i < n; ++i) {
                int e = i < static_cast<int>(t.p.size()) ? t.p[i] : 0;
                if (std::abs(e) > kMaxPower) throw Error(ErrorKind::InvalidData, "unknown appears with power > 4");
                powers.push_back(e);
            }
        }
        start.push_back(coeff.size());
    }
    std::size_t size() const { return start.empty() ? 0 : start.size() - 1; }

    Complex term(std::size_t t, const std::vector<Complex>& z, int skip) const {
        Complex m = coeff[t];
        for (int i = 0; i < n; ++i) {
            int e = powers[t * n + i];
            if (i == skip || e == 0) continue;
            Complex f = e > 0 ? z[i] : std::conj(z[i]);
            for (int k = std::abs(e); k > 0; --k) m *= f;
        }
        return m;
    }

    double objective(const std::vector<Complex>& z) const {
        double f = 0.0;
        for (std::size_t r = 0; r < size(); ++r) {
            Complex v = 0.0;
            for (std::size_t t = start[r]; t < start[r + 1]; ++t) v += term(t, z, -1);
            f += std::norm(v);
        }
        return f;
    }

    // f restricted to coordinate k: per residual, coefficients of z_k^p.
    std::vector<SliceRow> slice(const std::vector<Complex>& z, int k) const {
        std::vector<SliceRow> out(size(), SliceRow{});
        for (std::size_t r = 0; r < size(); ++r)
            for (std::size_t t = start[r]; t < start[r + 1]; ++t)
                out[r][powers[t * n + k] + kMaxPower] += term(t, z, k);
        return out;
    }
};

double slice_value(const std::vector<SliceRow>& s, double theta) {
    std::array<Complex, kPowers> w;
    for (int p = 0; p < kPowers; ++p) w[p] = std::polar(1.0, (p - kMaxPower) * theta);
    double f = 0.0;
    for (const auto& row : s) {
        Complex v = 0.0;
        for (int p = 0; p < kPowers; ++p) v += row[p] * w[p];
        f += std::norm(v);
    }
    return f;
}

double minimize_slice(const std::vector<SliceRow>& s, double theta0) {
    constexpr int grid = 64;
    double best = theta0;
    double fbest = slice_value(s, theta0);
    for (int k = 0; k < grid; ++k) {
        double th = 2.0 * kPi * k / grid;
        double fv = slice_value(s, th);
        if (fv < fbest) {
            fbest = fv;
            best = th;
        }
    }
    // golden section around the best grid point
    double lo = best - 2.0 * kPi / grid;
    double hi = best + 2.0 * kPi / grid;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - gr * (hi - lo);
    double b = lo + gr * (hi - lo);
    double fa = slice_value(s, a);
    double fb = slice_value(s, b);
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - gr * (hi - lo);
            fa = slice_value(s, a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + gr * (hi - lo);
            fb = slice_value(s, b);
        }
    }
    double mid = 0.5 * (lo + hi);
    double th = slice_value(s, mid) < fbest ? mid : best;
    // Newton on f' polishes past the sqrt(eps) limit of the bracket
    for (int it = 0; it < 8; ++it) {
        std::array<Complex, kPowers> w;
        for (int p = 0; p < kPowers; ++p) w[p] = std::polar(1.0, (p - kMaxPower) * th);
        double d1 = 0.0, d2 = 0.0;
        for (const auto& row : s) {
            Complex v = 0.0, v1 = 0.0, v2 = 0.0;
            for (int p = 0; p < kPowers; ++p) {
                double q = p - kMaxPower;
                Complex t = row[p] * w[p];
                v += t;
                v1 += Complex(0.0, q) * t;
                v2 -= q * q * t;
            }
            d1 += 2.0 * std::real(std::conj(v) * v1);
            d2 += 2.0 * (std::norm(v1) + std::real(std::conj(v) * v2));
        }
        if (d2 <= 0.0) break;
        double step = d1 / d2;
        double next = th - step;
        if (slice_value(s, next) > slice_value(s, th)) break;
        th = next;
        if (std::abs(step) < 1e-16) break;
    }
    return th;
}

}  // namespace

PhaseAnsatz solve_defect_R(const SkeletalCategory& c, const std::vector<RKey>& unknowns, const SolverOptions& opts) {
    System sys;
    sys.n = static_cast<int>(unknowns.size());
    auto index_of = [&](Label a, Label b, Label x) {
        for (int k = 0; k < sys.n; ++k)
            if (unknowns[k] == RKey{a.id, b.id, x.id}) return k;
        return -1;
    };
    Sym<Poly> S{[&](Label a, Label b, Label x) -> Poly {
                    int k = index_of(a, b, x);
                    return k >= 0 ? Poly::var(k, 1) : Poly(c.r(a, b, x));
                },
                [&](Label a, Label b, Label x) -> Poly {
                    int k = index_of(a, b, x);
                    return k >= 0 ? Poly::var(k, -1) : Poly(1.0 / c.r(a, b, x));
                }};
    heptagon_sides<Poly>(c, opts.trivial_sector_only, S, [&](const std::vector<int>&, const Poly& a, const Poly& b) {
        Poly d = a - b;
        bool touches = false;
        for (const auto& t : d.terms)
            for (int p : t.p) touches |= p != 0;
        if (touches) sys.add(d);
    });

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    std::vector<double> best_theta;
    double best_f = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < opts.restarts; ++restart) {
        std::vector<double> th(sys.n);
        for (auto& t : th) t = angle(rng);
        std::vector<Complex> z(sys.n);
        for (int k = 0; k < sys.n; ++k) z[k] = std::polar(1.0, th[k]);
        double f = sys.objective(z);
        for (int it = 0; it < opts.max_iterations && f > 1e-28; ++it) {
            double before = f;
            for (int k = 0; k < sys.n; ++k) {
                th[k] = minimize_slice(sys.slice(z, k), th[k]);
                z[k] = std::polar(1.0, th[k]);
            }
            f = sys.objective(z);
            if (before - f <= 1e-10 * before) break;
        }
        if (f < best_f) {
            best_f = f;
            best_theta = th;
        }
        if (best_f < 1e-26) break;
    }
    PhaseAnsatz out;
    out.unknowns = unknowns;
    for (double t : best_theta) out.values.push_back(std::polar(1.0, t));
    SkeletalCategory fitted = apply_ansatz(c, out);
    out.residual = (opts.trivial_sector_only ? check_hexagon(fitted) : check_heptagon(fitted)).max_residual;
    if (out.residual > 1e-6)
        throw Error(ErrorKind::NoConvergence, "best heptagon residual " + std::to_string(out.residual));
    return out;
}

}  // namespace gxcalc
