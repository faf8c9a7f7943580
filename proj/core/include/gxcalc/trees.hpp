#pragma once

#include <map>
#include <vector>

#include "gxcalc/catdata.hpp"

namespace gxcalc {

// Left-combed tree. internal holds e_2 .. e_{n-1}; the vertex sequence is
// (1, L_1) -> L_1, (e_{k-1}, L_k) -> e_k, ending at the root.
struct FusionTree {
    std::vector<Label> leaves;
    std::vector<Label> internal;
    Label root;

    // path[0] = unit, path[k] = e_k, path[n] = root (n = leaves.size()).
    std::vector<Label> path(Label unit) const;
    bool operator==(const FusionTree&) const = default;
};

class TreeBasis {
public:
    TreeBasis() = default;
    TreeBasis(std::vector<Label> leaves, Label root, std::vector<FusionTree> trees);

    const std::vector<Label>& leaves() const { return leaves_; }
    Label root() const { return root_; }
    const std::vector<FusionTree>& trees() const { return trees_; }
    int dimension() const { return static_cast<int>(trees_.size()); }
    // Index of the tree with the given edge path, or -1.
    int find(const std::vector<Label>& path) const;

private:
    std::vector<Label> leaves_;
    Label root_;
    std::vector<FusionTree> trees_;
    std::map<std::vector<Label>, int> index_;
};

TreeBasis enumerate_basis(const SkeletalCategory& c, const std::vector<Label>& leaves, Label root);

// How the recoupling of an adjacent pair is computed. Direct applies one
// F-move at the pair's vertices. PentagonDetour reaches the same shape
// through the previous vertex with four F-moves; on pentagon-consistent
// data the two agree.
enum class Strategy { Direct, PentagonDetour };

// Basis element after fusing leaves (pos, pos+1) into a single edge f:
// a left-combed path over the shortened leaf list.
struct PairKey {
    Label f;
    std::vector<Label> path;
    auto operator<=>(const PairKey&) const = default;
};

using PairExpansion = std::vector<std::pair<PairKey, Complex>>;

// Expansion of one left-combed tree (given by leaves and edge path) in the
// basis where leaves pos, pos+1 (1-based) fuse first.
PairExpansion decompose_pair(const SkeletalCategory& c, const std::vector<Label>& leaves,
                             const std::vector<Label>& path, int pos, Strategy s = Strategy::Direct);

// Matrix from the left-combed basis to the paired basis at pos; row order
// follows the returned keys.
struct Recoupling {
    std::vector<PairKey> keys;
    Matrix m;
};
Recoupling recouple_keyed(const SkeletalCategory& c, const TreeBasis& basis, int pos,
                          Strategy s = Strategy::Direct);
Matrix recouple(const SkeletalCategory& c, const TreeBasis& basis, int pos);

// Coefficient applied to a pair vertex f during a pair operation.
using PairCoefficient = std::function<Complex(Label f)>;

// Operator in -> out acting only on the pair at pos: the leaves outside
// the pair must agree and the pair's fused edge is preserved.
Matrix pair_operator(const SkeletalCategory& c, const TreeBasis& in, const TreeBasis& out, int pos,
                     const PairCoefficient& coeff, Strategy s = Strategy::Direct);

// Number of trees in Hom(root, x^{n}) from fusion matrix powers.
long hom_dimension(const FusionRing& r, Label x, int n, Label root);

}  // namespace gxcalc
