#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gxcalc/catdata.hpp"

namespace gxcalc {

struct ResidualReport {
    double max_residual = 0.0;
    std::vector<int> worst_instance;  // label/channel ids; first entry names the identity
    std::string worst_description;
    long count_checked = 0;
};

ResidualReport check_pentagon(const SkeletalCategory& c);
// Trivial-sector restriction of check_heptagon (same code path).
ResidualReport check_hexagon(const SkeletalCategory& c);
ResidualReport check_heptagon(const SkeletalCategory& c);

struct PhaseAnsatz {
    std::vector<RKey> unknowns;
    std::vector<Complex> values;
    double residual = 0.0;  // max heptagon residual with the values substituted
};

// Copy of c with the ansatz values written into R.
SkeletalCategory apply_ansatz(const SkeletalCategory& c, const PhaseAnsatz& a);

struct SolverOptions {
    int restarts = 64;
    int max_iterations = 10000;
    std::uint64_t seed = 0x5eed;
    // Restrict the objective to trivial-sector tuples (hexagon).
    bool trivial_sector_only = false;
};

// Coordinate descent on the angles of the unknown R-symbols minimizing the
// squared heptagon residual. Throws NoConvergence if the best max residual
// exceeds 1e-6.
PhaseAnsatz solve_defect_R(const SkeletalCategory& c, const std::vector<RKey>& unknowns,
                           const SolverOptions& opts = {});

}  // namespace gxcalc
