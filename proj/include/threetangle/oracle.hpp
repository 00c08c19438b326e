#pragma once

#include <cstdint>
#include <vector>

#include "threetangle/invariant.hpp"
#include "threetangle/qstate.hpp"

namespace threetangle {

// m-state decomposition of a rank-2 mixture generated by an m x 2 isometry
// acting on the weighted eigenvectors.
struct IsometryDecomposition {
    int m = 2;
    cmat U;                        // m x 2, orthonormal columns
    std::vector<double> weights;
    std::vector<PureState> states; // normalized
};

struct OracleResult {
    double value = 0.0;
    IsometryDecomposition decomposition;
};

OracleResult brute_force_roof(const RankTwoMixture& mix, Measure measure, int m = 4,
                              int restarts = 32, std::uint64_t seed = 0,
                              int evals_per_restart = 2000);

struct GapRow {
    int m = 0;
    double oracle_value = 0.0;
    double engine_value = 0.0;
    double gap = 0.0;              // oracle - engine; < -1e-6 flags an engine error
};

std::vector<GapRow> gap_report(const RankTwoMixture& mix, Measure measure, int m_max,
                               double engine_value, int restarts = 32, std::uint64_t seed = 0);

} // namespace threetangle
