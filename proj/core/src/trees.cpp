#include "gxcalc/trees.hpp"

#include "gxcalc/error.hpp"

namespace gxcalc {

std::vector<Label> FusionTree::path(Label unit) const {
    std::size_t n = leaves.size();
    std::vector<Label> p(n + 1, unit);
    for (std::size_t k = 1; k < n; ++k) p[k] = k == 1 ? leaves[0] : internal[k - 2];
    p[n] = root;
    return p;
}

TreeBasis::TreeBasis(std::vector<Label> leaves, Label root, std::vector<FusionTree> trees)
    : leaves_(std::move(leaves)), root_(root), trees_(std::move(trees)) {
    for (std::size_t k = 0; k < trees_.size(); ++k) {
        std::vector<Label> key(trees_[k].internal);
        index_[key] = static_cast<int>(k);
    }
}

int TreeBasis::find(const std::vector<Label>& path) const {
    // the internal edges identify a tree within a fixed leaf list
    if (path.size() != leaves_.size() + 1) return -1;
    std::vector<Label> key;
    for (std::size_t k = 2; k + 1 < path.size(); ++k) key.push_back(path[k]);
    if (!leaves_.empty() && path.back() != root_) return -1;
    if (leaves_.size() >= 2 && path[1] != leaves_[0]) return -1;
    auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
}

TreeBasis enumerate_basis(const SkeletalCategory& c, const std::vector<Label>& leaves, Label root) {
    const FusionRing& r = c.ring();
    std::size_t n = leaves.size();
    std::vector<FusionTree> out;
    if (n == 0) {
        if (root == r.unit()) out.push_back({{}, {}, root});
        return TreeBasis(leaves, root, std::move(out));
    }
    std::vector<Label> path(n + 1, r.unit());
    std::function<void(std::size_t)> walk = [&](std::size_t k) {
        if (k > n) {
            FusionTree t{leaves, {}, root};
            for (std::size_t j = 2; j < n; ++j) t.internal.push_back(path[j]);
            out.push_back(std::move(t));
            return;
        }
        for (Label e : r.channels(path[k - 1], leaves[k - 1])) {
            if (k == n && e != root) continue;
            if (r.N(path[k - 1], leaves[k - 1], e) > 1)
                throw Error(ErrorKind::MultiplicityUnsupported,
                            r.name(path[k - 1]) + " x " + r.name(leaves[k - 1]) + " -> " + r.name(e));
            path[k] = e;
            walk(k + 1);
        }
    };
    walk(1);
    return TreeBasis(leaves, root, std::move(out));
}

namespace {

std::vector<Label> drop_edge(const std::vector<Label>& path, int pos) {
    std::vector<Label> p;
    for (int k = 0; k < static_cast<int>(path.size()); ++k)
        if (k != pos) p.push_back(path[k]);
    return p;
}

}  // namespace

PairExpansion decompose_pair(const SkeletalCategory& c, const std::vector<Label>& leaves,
                             const std::vector<Label>& path, int pos, Strategy s) {
    const FusionRing& r = c.ring();
    int n = static_cast<int>(leaves.size());
    if (pos < 1 || pos >= n) throw Error(ErrorKind::InvalidData, "pair position out of range");
    Label A = leaves[pos - 1];
    Label B = leaves[pos];
    std::map<PairKey, Complex> acc;
    if (pos == 1) {
        // leaves 1 and 2 already fuse first
        acc[{path[2], drop_edge(path, 1)}] = 1.0;
    } else if (s == Strategy::Direct || pos == 2) {
        Label g = path[pos - 1];
        Label h = path[pos];
        Label e = path[pos + 1];
        for (Label f : r.channels(A, B)) {
            Complex v = c.f(g, A, B, e, h, f);
            if (v != 0.0) acc[{f, drop_edge(path, pos)}] += v;
        }
    } else {
        // (((a b)_g A)_h B)_e -> ((a (b A)_l)_h B)_e -> (a ((b A)_l B)_k)_e
        //   -> (a (b (A B)_f)_k)_e -> ((a b)_g' (A B)_f)_e
        Label a = path[pos - 2];
        Label b = leaves[pos - 2];
        Label g = path[pos - 1];
        Label h = path[pos];
        Label e = path[pos + 1];
        for (Label l : r.channels(b, A)) {
            Complex f1 = c.f(a, b, A, h, g, l);
            if (f1 == 0.0) continue;
            for (Label k : r.channels(l, B)) {
                Complex f2 = c.f(a, l, B, e, h, k);
                if (f2 == 0.0) continue;
                for (Label f : r.channels(A, B)) {
                    Complex f3 = c.f(b, A, B, k, l, f);
                    if (f3 == 0.0) continue;
                    FBlock inv = c.f_block_inverse(a, b, f, e);
                    for (std::size_t i = 0; i < inv.rows.size(); ++i) {
                        if (inv.rows[i] != k) continue;
                        for (std::size_t j = 0; j < inv.cols.size(); ++j) {
                            std::vector<Label> p = drop_edge(path, pos);
                            p[pos - 1] = inv.cols[j];
                            acc[{f, p}] += f1 * f2 * f3 * inv.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                        }
                    }
                }
            }
        }
    }
    PairExpansion out;
    for (auto& [k, v] : acc)
        if (v != 0.0) out.emplace_back(k, v);
    return out;
}

Recoupling recouple_keyed(const SkeletalCategory& c, const TreeBasis& basis, int pos, Strategy s) {
    Label unit = c.ring().unit();
    std::vector<PairExpansion> cols;
    std::map<PairKey, int> rows;
    for (const auto& t : basis.trees()) {
        cols.push_back(decompose_pair(c, basis.leaves(), t.path(unit), pos, s));
        for (auto& [k, v] : cols.back()) rows.emplace(k, 0);
    }
    Recoupling out;
    int idx = 0;
    for (auto& [k, i] : rows) {
        i = idx++;
        out.keys.push_back(k);
    }
    out.m = Matrix::Zero(idx, basis.dimension());
    for (int j = 0; j < basis.dimension(); ++j)
        for (auto& [k, v] : cols[j]) out.m(rows[k], j) += v;
    return out;
}

Matrix recouple(const SkeletalCategory& c, const TreeBasis& basis, int pos) {
    return recouple_keyed(c, basis, pos).m;
}

Matrix pair_operator(const SkeletalCategory& c, const TreeBasis& in, const TreeBasis& out, int pos,
                     const PairCoefficient& coeff, Strategy s) {
    Label unit = c.ring().unit();
    std::map<PairKey, std::vector<std::pair<int, Complex>>> out_index;
    for (int t = 0; t < out.dimension(); ++t)
        for (auto& [k, w] : decompose_pair(c, out.leaves(), out.trees()[t].path(unit), pos, s))
            out_index[k].emplace_back(t, w);
    Matrix op = Matrix::Zero(out.dimension(), in.dimension());
    std::map<int, Complex> cache;
    for (int t = 0; t < in.dimension(); ++t) {
        for (auto& [k, v] : decompose_pair(c, in.leaves(), in.trees()[t].path(unit), pos, s)) {
            auto it = out_index.find(k);
            if (it == out_index.end()) continue;
            auto cached = cache.find(k.f.id);
            Complex kf = cached != cache.end() ? cached->second : (cache[k.f.id] = coeff(k.f));
            if (kf == 0.0) continue;
            for (auto& [tp, w] : it->second) op(tp, t) += std::conj(w) * kf * v;
        }
    }
    return op;
}

long hom_dimension(const FusionRing& r, Label x, int n, Label root) {
    std::vector<long> v(r.size(), 0);
    v[r.unit().id] = 1;
    for (int step = 0; step < n; ++step) {
        std::vector<long> w(r.size(), 0);
        for (int b = 0; b < r.size(); ++b)
            if (v[b])
                for (int e = 0; e < r.size(); ++e) w[e] += v[b] * r.N(Label{b}, x, Label{e});
        v = std::move(w);
    }
    return v[root.id];
}

}  // namespace gxcalc
