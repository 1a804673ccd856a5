#pragma once

#include <Eigen/Dense>

#include "acobs/linalg.hpp"

namespace acobs::obsv {

struct RankResult {
    int rank = 0;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double condition = 0.0;  ///< σ_max/σ_min (infinite when σ_min = 0)
    Eigen::VectorXd singular_values;
};

inline constexpr double kDefaultRankTol = 1e-9;

/// Numerical rank: number of singular values above rel_tol·σ_max.
RankResult rank_analysis(const MatX& m, double rel_tol = kDefaultRankTol);

/// Ruiz ∞-norm equilibration D_r·M·D_c. Exact zero rows/columns are kept.
/// Rank is preserved; the singular-value spread no longer depends on the
/// units chosen for outputs and states.
MatX equilibrate(const MatX& m, int sweeps = 20);

}  // namespace acobs::obsv
