#pragma once

// The weighted-sample realization of the 2-inner product on function triples:
//
//   (f,g|h)_phi = 1/2 sum_i sum_j w_i w_j phi_i phi_j det[f_i f_j; h_i h_j]
//                                                  * det[g_i g_j; h_i h_j]
//
// together with its moment-determinant form
//
//   (f,g|h)_phi = I[phi f g] I[phi h^2] - I[phi f h] I[phi g h],
//
// which agree exactly over any discrete measure. On top of that sit the
// synchronicity test, the premise check for positive localization intervals,
// and the determinantal reverse bounds 3.6-3.10.
//
// The constants used for bounds 3.7 and 3.9 are the ones consistent with the
// general bounds 2.15 and 2.18, of which they are the sampled-function
// specializations. A commonly printed variant of each constant (M-m in place
// of M+m for 3.7, sqrt(mM) in place of mM for 3.9) is also evaluated and
// reported, so the discrepancy is visible in every run; the 3.7 variant is
// numerically refuted by easy instances.

#include <cmath>
#include <limits>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twoip/core.hpp"
#include "twoip/quadrature.hpp"
#include "twoip/reverse.hpp"
#include "twoip/space.hpp"

namespace twoip {

/// Real function samples f, g, h and a nonnegative weight function phi,
/// all tabulated on the same grid.
struct WeightedTriple {
    std::vector<double> f;
    std::vector<double> g;
    std::vector<double> h;
    std::vector<double> phi;

    WeightedTriple(std::vector<double> f_in, std::vector<double> g_in,
                   std::vector<double> h_in, std::vector<double> phi_in)
        : f(std::move(f_in)), g(std::move(g_in)), h(std::move(h_in)),
          phi(std::move(phi_in)) {
        const std::size_t n = f.size();
        if (g.size() != n || h.size() != n || phi.size() != n)
            throw invalid_dimension("WeightedTriple: sample arrays differ in length");
        if (n < 2) throw invalid_dimension("WeightedTriple: need at least 2 samples");
        for (std::size_t i = 0; i < n; ++i) {
            require_finite(f[i], "WeightedTriple f");
            require_finite(g[i], "WeightedTriple g");
            require_finite(h[i], "WeightedTriple h");
            require_finite(phi[i], "WeightedTriple phi");
            if (phi[i] < 0.0)
                throw invalid_input("WeightedTriple: phi must be nonnegative");
        }
    }

    std::size_t size() const { return f.size(); }
};

/// The five distinct moments plus both evaluations of (f,g|h)_phi.
struct DeterminantReport {
    double m_ff = 0.0;  // I[phi f^2]
    double m_gg = 0.0;  // I[phi g^2]
    double m_hh = 0.0;  // I[phi h^2]
    double m_fg = 0.0;  // I[phi f g]
    double m_fh = 0.0;  // I[phi f h]
    double m_gh = 0.0;  // I[phi g h]
    double two_inner_double = 0.0;  // pairwise double sum
    double two_inner_det = 0.0;     // moment determinant
    double cross_residual = 0.0;    // |double - det|
    double cross_scale = 0.0;
};

namespace detail {

inline std::vector<double> pointwise(const std::vector<double>& a,
                                     const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

}  // namespace detail

/// Evaluates (f,g|h)_phi through both routes and reports their residual.
inline DeterminantReport two_inner_phi(const WeightedTriple& triple,
                                       const QuadratureGrid& grid) {
    const std::size_t n = triple.size();
    if (n != grid.size())
        throw invalid_dimension("two_inner_phi: triple and grid differ in length");

    DeterminantReport rep;
    rep.m_ff = quad_integral(detail::pointwise(triple.f, triple.f), grid, triple.phi);
    rep.m_gg = quad_integral(detail::pointwise(triple.g, triple.g), grid, triple.phi);
    rep.m_hh = quad_integral(detail::pointwise(triple.h, triple.h), grid, triple.phi);
    rep.m_fg = quad_integral(detail::pointwise(triple.f, triple.g), grid, triple.phi);
    rep.m_fh = quad_integral(detail::pointwise(triple.f, triple.h), grid, triple.phi);
    rep.m_gh = quad_integral(detail::pointwise(triple.g, triple.h), grid, triple.phi);
    rep.two_inner_det = rep.m_fg * rep.m_hh - rep.m_fh * rep.m_gh;

    // Double sum over unordered pairs; the i<j restriction absorbs the 1/2.
    // Row partial sums are pairwise-reduced for a deterministic result.
    std::vector<double> row_sums(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double wi = grid.weights()[i] * triple.phi[i];
        if (wi == 0.0) continue;
        double row = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double wj = grid.weights()[j] * triple.phi[j];
            if (wj == 0.0) continue;
            const double det_f = triple.f[i] * triple.h[j] - triple.f[j] * triple.h[i];
            const double det_g = triple.g[i] * triple.h[j] - triple.g[j] * triple.h[i];
            row += wi * wj * det_f * det_g;
        }
        row_sums[i] = row;
    }
    rep.two_inner_double = pairwise_sum(row_sums);

    rep.cross_residual = std::abs(rep.two_inner_double - rep.two_inner_det);
    rep.cross_scale = std::abs(rep.m_fg * rep.m_hh) + std::abs(rep.m_fh * rep.m_gh) +
                      std::abs(rep.two_inner_double);
    return rep;
}

/// ||f|h||_phi = sqrt(I[phi f^2] I[phi h^2] - I[phi f h]^2), clamped inside
/// the rounding band below zero.
inline double two_norm_phi(const std::vector<double>& f, const std::vector<double>& h,
                           const std::vector<double>& phi, const QuadratureGrid& grid,
                           const Tolerance& tol = {}) {
    const double m_ff = quad_integral(detail::pointwise(f, f), grid, phi);
    const double m_hh = quad_integral(detail::pointwise(h, h), grid, phi);
    const double m_fh = quad_integral(detail::pointwise(f, h), grid, phi);
    const double radicand = m_ff * m_hh - m_fh * m_fh;
    if (radicand >= 0.0) return std::sqrt(radicand);
    const double scale = std::abs(m_ff * m_hh) + m_fh * m_fh;
    if (radicand < -tol.band(scale))
        throw inconsistency_error("two_norm_phi: negative radicand beyond tolerance");
    return 0.0;
}

/// Result of the pairwise synchronicity scan.
struct SyncReport {
    bool synchronous = true;
    std::size_t worst_i = 0;
    std::size_t worst_j = 0;
    double worst_value = 0.0;  // smallest (q_i - q_j)(p_i - p_j) over the support
};

/// True iff (q_i - q_j)(p_i - p_j) >= -band for every node pair carrying
/// positive measure. The O(N^2) scan refuses grids above max_nodes unless the
/// caller raises the cap explicitly.
inline SyncReport synchronous(const std::vector<double>& q, const std::vector<double>& p,
                              const QuadratureGrid& grid, const std::vector<double>& phi,
                              const Tolerance& tol = {}, std::size_t max_nodes = 4096) {
    const std::size_t n = grid.size();
    if (q.size() != n || p.size() != n || phi.size() != n)
        throw invalid_dimension("synchronous: length mismatch");
    if (n > max_nodes)
        throw invalid_input("synchronous: grid has " + std::to_string(n) +
                            " nodes, above the pairwise-scan cap of " +
                            std::to_string(max_nodes) +
                            "; raise max_nodes to override");

    double range_q = 0.0, range_p = 0.0;
    {
        bool first = true;
        double qmin = 0, qmax = 0, pmin = 0, pmax = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (grid.weights()[i] * phi[i] <= 0.0) continue;
            require_finite(q[i], "synchronous q");
            require_finite(p[i], "synchronous p");
            if (first) {
                qmin = qmax = q[i];
                pmin = pmax = p[i];
                first = false;
            } else {
                qmin = std::min(qmin, q[i]);
                qmax = std::max(qmax, q[i]);
                pmin = std::min(pmin, p[i]);
                pmax = std::max(pmax, p[i]);
            }
        }
        range_q = qmax - qmin;
        range_p = pmax - pmin;
    }
    const double band = tol.band(range_q * range_p);

    SyncReport rep;
    rep.worst_value = std::numeric_limits<double>::infinity();
    bool any_pair = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (grid.weights()[i] * phi[i] <= 0.0) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (grid.weights()[j] * phi[j] <= 0.0) continue;
            const double product = (q[i] - q[j]) * (p[i] - p[j]);
            any_pair = true;
            if (product < rep.worst_value) {
                rep.worst_value = product;
                rep.worst_i = i;
                rep.worst_j = j;
            }
        }
    }
    if (!any_pair) rep.worst_value = 0.0;
    rep.synchronous = rep.worst_value >= -band;
    return rep;
}

/// Premise of the determinantal bounds for an interval 0 < m <= M: the pair
/// (M g/h - f/h, f/h - m g/h) must be synchronous over the weighted support.
/// Also evaluates the implied sign (Mg - f, f - mg|h)_phi >= 0, which is the
/// localization hypothesis with x = f, y = g, z = h, a = m, A = M.
struct PremiseReport {
    bool holds = false;
    SyncReport sync;
    double sign_value = 0.0;
    double sign_scale = 0.0;
    bool sign_ok = false;
};

inline PremiseReport premise_check(const WeightedTriple& triple, const PositivePair& pair,
                                   const QuadratureGrid& grid, const Tolerance& tol = {},
                                   std::size_t max_nodes = 4096) {
    const std::size_t n = triple.size();
    if (n != grid.size())
        throw invalid_dimension("premise_check: triple and grid differ in length");

    std::vector<double> q(n, 0.0), p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (grid.weights()[i] * triple.phi[i] <= 0.0) continue;
        if (triple.h[i] == 0.0)
            throw invalid_instance("premise_check: h vanishes at weighted node " +
                                   std::to_string(i));
        const double fh = triple.f[i] / triple.h[i];
        const double gh = triple.g[i] / triple.h[i];
        require_finite(fh, "premise_check f/h");
        require_finite(gh, "premise_check g/h");
        q[i] = pair.M * gh - fh;
        p[i] = fh - pair.m * gh;
    }

    PremiseReport rep;
    rep.sync = synchronous(q, p, grid, triple.phi, tol, max_nodes);
    rep.holds = rep.sync.synchronous;

    std::vector<double> f_tilde(n), g_tilde(n);
    for (std::size_t i = 0; i < n; ++i) {
        f_tilde[i] = pair.M * triple.g[i] - triple.f[i];
        g_tilde[i] = triple.f[i] - pair.m * triple.g[i];
    }
    const DeterminantReport tilted =
        two_inner_phi(WeightedTriple(f_tilde, g_tilde, triple.h, triple.phi), grid);
    rep.sign_value = tilted.two_inner_det;
    rep.sign_scale = tilted.cross_scale;
    rep.sign_ok = rep.sign_value >= -tol.band(rep.sign_scale);
    return rep;
}

enum class PropId { p36, p37, p38, p39, p310 };

inline const char* to_string(PropId id) {
    switch (id) {
        case PropId::p36: return "3.6";
        case PropId::p37: return "3.7";
        case PropId::p38: return "3.8";
        case PropId::p39: return "3.9";
        case PropId::p310: return "3.10";
    }
    return "?";
}

inline std::optional<PropId> parse_prop_id(const std::string& text) {
    if (text == "3.6") return PropId::p36;
    if (text == "3.7") return PropId::p37;
    if (text == "3.8") return PropId::p38;
    if (text == "3.9") return PropId::p39;
    if (text == "3.10") return PropId::p310;
    return std::nullopt;
}

/// A determinantal bound plus, for 3.7 and 3.9, the variant with the
/// printed constant, reported for transparency.
struct PropBoundReport {
    BoundReport report;
    std::optional<BoundReport> printed;
};

/// Evaluates one of the determinantal reverse bounds from the moment
/// determinants. The premise is checked and reflected in hypothesis_ok;
/// values are computed either way.
///
///   3.6:  gap <= (M-m)^2/4 ||g|h||^4
///   3.7:  ||f|h|| ||g|h|| <= (M+m)/(2 sqrt(mM)) (f,g|h)     [printed: M-m]
///   3.8:  ||f|h|| ||g|h|| - (f,g|h) <= (sqrt M - sqrt m)^2/(2 sqrt(mM)) (f,g|h)
///   3.9:  gap <= (M-m)^2/(4mM) (f,g|h)^2                    [printed: 4 sqrt(mM)]
///   3.10: ||f|h|| + ||g|h|| - ||f+g|h|| <=
///             (sqrt M - sqrt m)/(mM)^{1/4} sqrt((f,g|h))
inline PropBoundReport prop_bounds(const WeightedTriple& triple, const PositivePair& pair,
                                   const QuadratureGrid& grid, PropId which,
                                   const Tolerance& tol = {},
                                   std::size_t max_nodes = 4096) {
    const PremiseReport premise = premise_check(triple, pair, grid, tol, max_nodes);
    const bool hyp = premise.holds;
    const DeterminantReport det = two_inner_phi(triple, grid);

    const double norm_f_sq = det.m_ff * det.m_hh - det.m_fh * det.m_fh;
    const double norm_g_sq = det.m_gg * det.m_hh - det.m_gh * det.m_gh;
    const double norm_f = std::sqrt(std::max(norm_f_sq, 0.0));
    const double norm_g = std::sqrt(std::max(norm_g_sq, 0.0));
    const double v = det.two_inner_det;
    const double gap = norm_f_sq * norm_g_sq - v * v;

    if (hyp && v < -tol.band(norm_f * norm_g))
        throw inconsistency_error("prop_bounds: (f,g|h) negative under a passing premise");

    const double root_mM = std::sqrt(pair.m * pair.M);
    const double span = pair.M - pair.m;
    const double root_span = std::sqrt(pair.M) - std::sqrt(pair.m);

    PropBoundReport out;
    switch (which) {
        case PropId::p36: {
            const double rhs = 0.25 * span * span * norm_g_sq * norm_g_sq;
            out.report =
                detail::make_report("3.6", gap, rhs, hyp, 0.25, {0.0, gap, rhs});
            break;
        }
        case PropId::p37: {
            const double lhs = norm_f * norm_g;
            const double rhs = 0.5 * (pair.M + pair.m) / root_mM * v;
            out.report = detail::make_report("3.7", lhs, rhs, hyp, 0.5, {0.0, lhs, rhs});
            const double printed_rhs = 0.5 * span / root_mM * v;
            out.printed = detail::make_report("3.7-printed", lhs, printed_rhs, hyp, 0.5,
                                              {0.0, lhs, printed_rhs});
            break;
        }
        case PropId::p38: {
            const double lhs = norm_f * norm_g - v;
            const double rhs = 0.5 * root_span * root_span / root_mM * v;
            out.report = detail::make_report("3.8", lhs, rhs, hyp, 0.5, {0.0, lhs, rhs});
            break;
        }
        case PropId::p39: {
            const double rhs = 0.25 * span * span / (pair.m * pair.M) * v * v;
            out.report =
                detail::make_report("3.9", gap, rhs, hyp, 0.25, {0.0, gap, rhs});
            const double printed_rhs = 0.25 * span * span / root_mM * v * v;
            out.printed = detail::make_report("3.9-printed", gap, printed_rhs, hyp, 0.25,
                                              {0.0, gap, printed_rhs});
            break;
        }
        case PropId::p310: {
            std::vector<double> f_plus_g(triple.size());
            for (std::size_t i = 0; i < triple.size(); ++i)
                f_plus_g[i] = triple.f[i] + triple.g[i];
            const double norm_sum = two_norm_phi(f_plus_g, triple.h, triple.phi, grid, tol);
            const double lhs = norm_f + norm_g - norm_sum;
            const double rhs = root_span / std::pow(pair.m * pair.M, 0.25) *
                               std::sqrt(std::max(v, 0.0));
            out.report =
                detail::make_report("3.10", lhs, rhs, hyp, 1.0, {0.0, lhs, rhs});
            break;
        }
    }
    return out;
}

/// The discrete measure as an InnerSpace: coordinate weights w_i phi_i.
/// Every node must carry positive measure; use strictly positive phi here.
inline InnerSpace discrete_space(const QuadratureGrid& grid,
                                 const std::vector<double>& phi) {
    if (phi.size() != grid.size())
        throw invalid_dimension("discrete_space: phi and grid differ in length");
    std::vector<double> weights(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        weights[i] = grid.weights()[i] * phi[i];
        if (!(weights[i] > 0.0))
            throw invalid_input("discrete_space: node " + std::to_string(i) +
                                " carries no measure");
    }
    return InnerSpace(FieldTag::Real, std::move(weights));
}

/// Real sample array as a Vector over the discrete space.
inline Vector to_vector(const std::vector<double>& samples) {
    std::vector<Scalar> entries(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) entries[i] = Scalar(samples[i], 0.0);
    return Vector(std::move(entries));
}

}  // namespace twoip
