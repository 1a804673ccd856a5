#include "acobs/obsv/rank.hpp"

#include <cmath>
#include <limits>

namespace acobs::obsv {

RankResult rank_analysis(const MatX& m, double rel_tol) {
    RankResult r;
    if (m.size() == 0) return r;
    Eigen::JacobiSVD<MatX> svd(m);
    r.singular_values = svd.singularValues();
    r.sigma_max = r.singular_values.maxCoeff();
    r.sigma_min = r.singular_values.minCoeff();
    // A non-square matrix has min(rows, cols) singular values; a tall matrix
    // with fewer rows than columns is rank deficient by construction.
    if (m.rows() < m.cols()) r.sigma_min = 0.0;
    for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) {
        if (r.singular_values(i) > rel_tol * r.sigma_max) ++r.rank;
    }
    r.condition = r.sigma_min > 0.0 ? r.sigma_max / r.sigma_min
                                    : std::numeric_limits<double>::infinity();
    return r;
}

MatX equilibrate(const MatX& m, int sweeps) {
    MatX a = m;
    for (int s = 0; s < sweeps; ++s) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const double n = a.row(i).cwiseAbs().maxCoeff();
            if (n > 0.0) a.row(i) /= std::sqrt(n);
        }
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const double n = a.col(j).cwiseAbs().maxCoeff();
            if (n > 0.0) a.col(j) /= std::sqrt(n);
        }
    }
    return a;
}

}  // namespace acobs::obsv
