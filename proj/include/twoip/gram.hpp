#pragma once

// Singular values of small row sets via one-sided Jacobi orthogonalization.
// Used to witness linear dependence numerically: exact statements like
// "(x,x|z) = 0 iff x and z are linearly dependent" can only be tested in
// floating point through a singular-value threshold.

#include <algorithm>
#include <cmath>
#include <vector>

#include "twoip/core.hpp"

namespace twoip {

namespace detail {

inline Scalar row_dot(const Vector& a, const Vector& b) {
    Scalar s(0.0, 0.0);
    for (std::size_t k = 0; k < a.dim(); ++k) s += a[k] * std::conj(b[k]);
    return s;
}

}  // namespace detail

/// Euclidean singular values of the matrix whose rows are `rows`,
/// descending. One-sided Jacobi resolves tiny singular values far below
/// sqrt(eps) * sigma_max, which Gram-eigenvalue approaches cannot.
inline std::vector<double> row_singular_values(std::vector<Vector> rows) {
    const std::size_t m = rows.size();
    for (const auto& r : rows) require_finite(r, "row_singular_values");

    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                const double hpp = detail::row_dot(rows[p], rows[p]).real();
                const double hqq = detail::row_dot(rows[q], rows[q]).real();
                const Scalar beta = detail::row_dot(rows[p], rows[q]);
                const double off = std::abs(beta);
                if (off <= 1e-15 * std::sqrt(std::max(hpp, 0.0) * std::max(hqq, 0.0)) ||
                    off == 0.0)
                    continue;
                rotated = true;

                // Phase-align row q so the 2x2 Gram block becomes real
                // symmetric, then apply the classical Jacobi rotation.
                const Scalar phase = beta / off;
                const double tau = (hqq - hpp) / (2.0 * off);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < rows[p].dim(); ++k) {
                    const Scalar u = rows[p][k];
                    const Scalar w = phase * rows[q][k];
                    rows[p][k] = c * u - s * w;
                    rows[q][k] = s * u + c * w;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(m);
    for (std::size_t i = 0; i < m; ++i)
        sigma[i] = std::sqrt(std::max(detail::row_dot(rows[i], rows[i]).real(), 0.0));
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    return sigma;
}

struct RankInfo {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    int rank = 0;
};

/// Numerical rank with threshold sigma_i > threshold * sigma_max.
inline RankInfo rank_info(const std::vector<Vector>& rows, double threshold = 1e-10) {
    RankInfo info;
    const auto sigma = row_singular_values(rows);
    if (sigma.empty()) return info;
    info.sigma_max = sigma.front();
    info.sigma_min = sigma.back();
    if (info.sigma_max == 0.0) return info;
    for (double s : sigma)
        if (s > threshold * info.sigma_max) info.rank += 1;
    return info;
}

inline RankInfo triple_rank(const Vector& x, const Vector& y, const Vector& z,
                            double threshold = 1e-10) {
    return rank_info({x, y, z}, threshold);
}

inline RankInfo pair_rank(const Vector& x, const Vector& z, double threshold = 1e-10) {
    return rank_info({x, z}, threshold);
}

}  // namespace twoip
