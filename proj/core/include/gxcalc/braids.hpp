#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gxcalc/trees.hpp"

namespace gxcalc {

// Geometric crossing of two adjacent strands, named by the left strand.
enum class Crossing { Over, Under };

// Crossing denoted by a positive (or negative) generator under the
// category's orientation flag.
Crossing generator_crossing(Orientation o, bool positive);

// Labels after the crossing. Over: (A,B) -> (^{g_A}B, A). Under:
// (A,B) -> (B, ^{g_B^-1}A).
std::pair<Label, Label> crossing_labels(const SkeletalCategory& c, Label A, Label B, Crossing x);

// Coefficient on the pair vertex (A,B)_f: R^{^{g_A}B, A}_f for Over and
// (R^{A B}_f)^{-1} for Under.
Complex crossing_coefficient(const SkeletalCategory& c, Label A, Label B, Label f, Crossing x);

struct CrossingOp {
    TreeBasis out;
    Matrix m;
};
CrossingOp crossing_operator(const SkeletalCategory& c, const TreeBasis& in, int pos, Crossing x,
                             Strategy s = Strategy::Direct);

struct BraidRep {
    int n = 0;
    TreeBasis basis;
    std::vector<Matrix> generators;  // sigma_1 .. sigma_{n-1}
    Orientation convention = Orientation::Standard;
};

BraidRep build_rep(const SkeletalCategory& c, Label x, int n, Label total);

// Max over the braid relations of the projective distance between sides.
double check_braid_relations(const BraidRep& r);

struct ClosureResult {
    std::optional<long> order;  // empty when the bound was exceeded
    std::vector<Matrix> elements;
    long bound = 0;
    bool exceeds_bound() const { return !order.has_value(); }
};

ClosureResult projective_closure(const BraidRep& r, long bound, const Tolerance& tol = {});

struct DensityVerdict {
    bool closure_found = false;
    long order = 0;
    long steps = 0;
    // Not finding a closure is not a proof of density.
    std::string describe() const;
};

DensityVerdict density_probe(const BraidRep& r, long steps, const Tolerance& tol = {});

}  // namespace gxcalc
