#include "gxcalc/braids.hpp"

#include <cmath>
#include <deque>
#include <unordered_map>

#include "gxcalc/error.hpp"

namespace gxcalc {

Crossing generator_crossing(Orientation o, bool positive) {
    bool over = (o == Orientation::Standard) == positive;
    return over ? Crossing::Over : Crossing::Under;
}

std::pair<Label, Label> crossing_labels(const SkeletalCategory& c, Label A, Label B, Crossing x) {
    const FusionRing& r = c.ring();
    if (x == Crossing::Over) return {r.act(r.grade(A), B), A};
    return {B, r.act(r.group().inv(r.grade(B)), A)};
}

Complex crossing_coefficient(const SkeletalCategory& c, Label A, Label B, Label f, Crossing x) {
    if (x == Crossing::Over) {
        auto [Bp, Ap] = crossing_labels(c, A, B, x);
        return c.r(Bp, Ap, f);
    }
    return 1.0 / c.r(A, B, f);
}

CrossingOp crossing_operator(const SkeletalCategory& c, const TreeBasis& in, int pos, Crossing x, Strategy s) {
    std::vector<Label> leaves = in.leaves();
    Label A = leaves[pos - 1];
    Label B = leaves[pos];
    auto [Ap, Bp] = crossing_labels(c, A, B, x);
    leaves[pos - 1] = Ap;
    leaves[pos] = Bp;
    CrossingOp op{enumerate_basis(c, leaves, in.root()), {}};
    op.m = pair_operator(c, in, op.out, pos, [&](Label f) { return crossing_coefficient(c, A, B, f, x); }, s);
    return op;
}

BraidRep build_rep(const SkeletalCategory& c, Label x, int n, Label total) {
    const FusionRing& r = c.ring();
    if (r.act(r.grade(x), x) != x)
        throw Error(ErrorKind::NotFixedPoint, r.name(x) + " is not fixed by its own flux");
    BraidRep rep;
    rep.n = n;
    rep.convention = c.orientation;
    rep.basis = enumerate_basis(c, std::vector<Label>(n, x), total);
    Crossing cr = generator_crossing(c.orientation, true);
    for (int i = 1; i < n; ++i) rep.generators.push_back(crossing_operator(c, rep.basis, i, cr).m);
    return rep;
}

double check_braid_relations(const BraidRep& r) {
    double worst = 0.0;
    const auto& g = r.generators;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (j == i + 1) {
                worst = std::max(worst, projective_distance(g[i] * g[j] * g[i], g[j] * g[i] * g[j]));
            } else {
                worst = std::max(worst, projective_distance(g[i] * g[j], g[j] * g[i]));
            }
        }
    return worst;
}

namespace {

struct GridKey {
    std::vector<long long> v;
    bool operator==(const GridKey&) const = default;
};

struct GridHash {
    std::size_t operator()(const GridKey& k) const {
        std::size_t h = 1469598103934665603ull;
        for (long long x : k.v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

GridKey grid_key(const Matrix& m, double step) {
    GridKey k;
    k.v.reserve(static_cast<std::size_t>(2 * m.size()));
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        k.v.push_back(std::llround(m.data()[i].real() / step));
        k.v.push_back(std::llround(m.data()[i].imag() / step));
    }
    return k;
}

}  // namespace

ClosureResult projective_closure(const BraidRep& r, long bound, const Tolerance& tol) {
    ClosureResult res;
    res.bound = bound;
    Eigen::Index dim = r.generators.empty() ? r.basis.dimension() : r.generators.front().rows();
    std::unordered_map<GridKey, std::vector<std::size_t>, GridHash> seen;
    auto insert = [&](const Matrix& m) -> bool {
        Matrix canon = phase_canonicalize(m, tol);
        GridKey key = grid_key(canon, tol.dedup_tol);
        auto& bucket = seen[key];
        for (std::size_t idx : bucket)
            if (max_abs_diff(res.elements[idx], canon) <= tol.dedup_tol) return false;
        bucket.push_back(res.elements.size());
        res.elements.push_back(std::move(canon));
        return true;
    };
    if (dim == 0) {
        res.order = 1;
        return res;
    }
    std::vector<Matrix> gens;
    for (const auto& g : r.generators) gens.push_back(phase_canonicalize(g, tol));
    insert(Matrix::Identity(dim, dim));
    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::size_t idx = frontier.front();
        frontier.pop_front();
        for (const auto& g : gens) {
            Matrix prod = g * res.elements[idx];
            if (insert(prod)) {
                if (static_cast<long>(res.elements.size()) > bound) return res;
                frontier.push_back(res.elements.size() - 1);
            }
        }
    }
    res.order = static_cast<long>(res.elements.size());
    return res;
}

std::string DensityVerdict::describe() const {
    if (closure_found) return "closure_found(" + std::to_string(order) + ")";
    return "no_closure_within(" + std::to_string(steps) +
           "); this is not a proof that the image is dense";
}

DensityVerdict density_probe(const BraidRep& r, long steps, const Tolerance& tol) {
    ClosureResult c = projective_closure(r, steps, tol);
    DensityVerdict v;
    v.steps = steps;
    v.closure_found = !c.exceeds_bound();
    v.order = c.order.value_or(0);
    return v;
}

}  // namespace gxcalc
