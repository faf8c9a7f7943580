#pragma once

#include <string>
#include <vector>

#include "gxcalc/diagrams.hpp"

namespace gxcalc {

enum class TGateMethod { ClosedForm, Diagrammatic };

// Contribution of one middle-pair channel c to the two diagonal entries.
struct ChannelTerm {
    Label c;
    Complex one{0.0, 0.0};  // term of <1|T|1>
    Complex psi{0.0, 0.0};  // term of <psi|T|psi>
    // diagrammatic factors, in order; empty for the closed form
    std::vector<Complex> steps;
};

struct ProtocolResult {
    Complex t11{0.0, 0.0};
    Complex tpsipsi{0.0, 0.0};
    double offdiag_max = 0.0;
    Complex ratio{0.0, 0.0};
    TGateMethod method = TGateMethod::ClosedForm;
    std::vector<ChannelTerm> terms;
    // d_{sigma1} d_X^2, the common prefactor of both entries
    double scale = 1.0;
};

// Labels used by the T-gate computations. Defaults fit the bilayer catalog entry.
struct TGateLabels {
    std::string anyon = "sigma.1";
    std::string psi = "psi.1";
    std::string vacuum = "1.1";
    std::string defect = "X1";
};

ProtocolResult tgate_closed_form(const SkeletalCategory& c, const TGateLabels& names = {});

struct TGateOptions {
    bool assume_trivial_u_eta = false;
    TGateLabels names;
};

// Evaluates each factor of the trace diagrams through the diagram
// evaluator. Requires U = eta = 1 (category flag or option).
ProtocolResult tgate_diagrammatic(const SkeletalCategory& c, const TGateOptions& opts = {});

struct ProtocolRun {
    Matrix logical;     // 2x2 block over {|1>, |psi>}
    Matrix normalized;  // logical / logical(0,0)
    double leakage = 0.0;
    double pre_annihilation_leakage = 0.0;
    // over (y, x): y the outer-pair channel, x the anyon tree with total 1
    Matrix physical;
    std::vector<Label> pair_channels;
    // ops acting on [a a a a c] after lowering
    Diagram lowered;
    int defect_exchanges = 0;
};

// Runs a script on four anyons followed by four defects. Anyon loops
// around the middle defect pair are lowered onto a single strand carrying
// the pair's channel; crossings with the outer defects must undo each
// other. Anything else is UnsupportedConfiguration.
ProtocolRun run_protocol(const Diagram& script, const SkeletalCategory& c);

}  // namespace gxcalc
