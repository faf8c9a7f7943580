#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gxcalc/braids.hpp"

namespace gxcalc {

enum class OpKind { BraidPos, BraidNeg, Cup, Cap, Loop, Twist, Split, Fuse, Project };

// One DSL primitive. Positions are 1-based. names holds the labels in the
// order they appear in the source line.
struct DiagramOp {
    OpKind kind = OpKind::BraidPos;
    int i = 0;
    int j = 0;  // loop end
    std::vector<std::string> names;
    int line = 0;
    int col = 0;
};

struct Diagram {
    // Empty when the source has no "strands" header.
    std::optional<std::vector<std::string>> strands;
    std::vector<DiagramOp> ops;
    // "# key: value" comment directives
    std::map<std::string, std::string> meta;
};

// Grammar, one statement per line or separated by ';':
//   strands <n> : <label>...
//   braid+ i | braid- i | twist i | cup i a | cap i a | loop a i j
//   split i a b c | fuse i a b c | project i a b c
// Performs no label lookups.
Diagram parse_diagram(std::string_view text);
std::string emit_diagram(const Diagram& d);

struct TypedOp {
    DiagramOp op;
    std::vector<Label> labels;  // resolved op labels
    std::vector<Label> before;  // strands below the op
    std::vector<Label> after;   // strands above the op
};

struct TypedDiagram {
    std::vector<Label> source;
    std::vector<Label> target;
    std::vector<TypedOp> ops;
    bool closed() const { return source.empty() && target.empty(); }
};

// Resolves labels and checks each slice. AdmissibilityError for vertices
// with N = 0, SectorError for strands that do not carry the claimed label
// or a defect crossing that does not preserve the labels.
TypedDiagram typecheck(const Diagram& d, const SkeletalCategory& c);

struct EvalOptions {
    Strategy strategy = Strategy::Direct;
    // Treat U and eta as 1 even when the category does not say so.
    bool assume_trivial_u_eta = false;
    // Evaluate with the other strategy too and throw NonConfluent on
    // disagreement beyond eq_tol.
    bool cross_check = false;
    // Root charge of the source and target bases for open diagrams.
    std::optional<Label> total;
    Tolerance tol;
};

struct EvalResult {
    bool closed = false;
    Complex scalar{0.0, 0.0};
    Matrix matrix;
    TreeBasis source;
    TreeBasis target;
    std::vector<std::string> consumed;  // symbol families used: F, R, S, theta
};

EvalResult evaluate(const Diagram& d, const SkeletalCategory& c, const EvalOptions& opts = {});
EvalResult evaluate(const TypedDiagram& d, const SkeletalCategory& c, const EvalOptions& opts = {});

// Idempotent projector onto channel ch of the pair (pos, pos+1) of basis.
Matrix measurement_projector(const SkeletalCategory& c, Label a, Label b, Label ch, const TreeBasis& basis, int pos);

// Adjoint diagram: ops reversed, crossings flipped, cup/cap and
// split/fuse exchanged. Twists and loops are not mirrored.
Diagram mirror(const Diagram& d, const SkeletalCategory& c);

// Elementary values of the move set.
Complex crossing_factor(const SkeletalCategory& c, Label a, Label b, Label ch, bool positive);
Complex loop_factor(const SkeletalCategory& c, Label loop, Label inside);
double bubble(const SkeletalCategory& c, Label a, Label b, Label ch);
Complex u_slide(const SkeletalCategory& c, int g, Label a, Label b, Label ch, bool assume_trivial = false);
Complex eta_slide(const SkeletalCategory& c, Label x, int g, int h, bool assume_trivial = false);

}  // namespace gxcalc
