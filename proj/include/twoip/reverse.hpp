#pragma once

// Reverse Cauchy-Bunyakovsky-Schwarz machinery: the localization hypothesis
// in both of its equivalent forms, the exact gap decomposition behind the
// additive bound, the additive/quotient/positive-constant/triangle reverse
// inequalities, the extremal instances that make the additive bound tight,
// and probes certifying that the constants 1/4 and 1/2 cannot be lowered.
//
// Hypothesis failures are reported through flags, not exceptions, so sweeps
// can tabulate how often a condition holds; bound values are still computed
// for inspection whenever they are defined.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "twoip/core.hpp"
#include "twoip/space.hpp"

namespace twoip {

/// Localization interval [a, A] in the scalar field.
struct ScalarPair {
    Scalar a;
    Scalar A;

    ScalarPair(Scalar a_low, Scalar a_high) : a(a_low), A(a_high) {
        require_finite(a, "ScalarPair");
        require_finite(A, "ScalarPair");
    }
};

/// Positive localization interval 0 < m <= M.
struct PositivePair {
    double m;
    double M;

    PositivePair(double lower, double upper) : m(lower), M(upper) {
        require_finite(m, "PositivePair");
        require_finite(M, "PositivePair");
        if (!(m > 0.0) || !(M >= m))
            throw invalid_input("PositivePair: need M >= m > 0");
    }

    ScalarPair as_scalar_pair() const { return ScalarPair(Scalar(m, 0.0), Scalar(M, 0.0)); }
};

/// Both forms of the localization hypothesis:
///   re_form   = Re(Ay - x, x - ay|z)                        (>= 0 form)
///   ball_form = |A - a|/2 * ||y|z|| - ||x - (a+A)/2 y|z||   (>= 0 form)
/// together with the residual of the algebraic identity that makes the two
/// forms equivalent. The boundary re_form = 0 counts as holding.
struct ConditionReport {
    double re_form = 0.0;
    double ball_form = 0.0;
    double equivalence_residual = 0.0;
    double scale = 0.0;
    bool holds = false;
};

/// One evaluated inequality. `chain` carries the displayed chain of values
/// (possibly starting at the literal 0); lhs/rhs select the operative pair.
/// slack = rhs - lhs, nonnegative within tolerance whenever the hypothesis
/// holds.
struct BoundReport {
    std::string inequality_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool hypothesis_ok = false;
    double constant_used = 0.0;
    std::vector<double> chain;

    /// Smallest slack over consecutive chain links; NaN when any link is
    /// undefined.
    double min_link_slack() const {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            const double link = chain[i + 1] - chain[i];
            if (std::isnan(link)) return link;
            worst = std::min(worst, link);
        }
        return worst;
    }

    double scale() const { return std::max({1.0, std::abs(lhs), std::abs(rhs)}); }
};

namespace detail {

inline BoundReport make_report(std::string id, double lhs, double rhs, bool hypothesis_ok,
                               double constant_used, std::vector<double> chain) {
    BoundReport r;
    r.inequality_id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.hypothesis_ok = hypothesis_ok;
    r.constant_used = constant_used;
    r.chain = std::move(chain);
    return r;
}

inline void check_field_scalar(FieldTag field, const Scalar& s, const char* what) {
    require_finite(s, what);
    if (field == FieldTag::Real && s.imag() != 0.0)
        throw invalid_input(std::string(what) + ": complex scalar in a real-field space");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hypothesis

template <two_inner_form E>
ConditionReport condition_check(const E& ev, const Vector& x, const Vector& y,
                                const Vector& z, const ScalarPair& pair,
                                const Tolerance& tol = {}) {
    detail::check_field_scalar(ev.field(), pair.a, "condition_check");
    detail::check_field_scalar(ev.field(), pair.A, "condition_check");

    const Scalar mid = (pair.a + pair.A) * Scalar(0.5, 0.0);
    const Vector upper_defect = pair.A * y - x;  // Ay - x
    const Vector lower_defect = x - pair.a * y;  // x - ay
    const Vector centred = x - mid * y;
    const Vector spread = pair.A * y - pair.a * y;  // (A - a) y, formed literally

    ConditionReport report;
    report.re_form = ev.two_inner(upper_defect, lower_defect, z).real();

    const double spread_sq = two_norm_squared(ev, spread, z);
    const double centred_sq = two_norm_squared(ev, centred, z);
    report.ball_form = 0.5 * std::sqrt(std::max(spread_sq, 0.0)) -
                       std::sqrt(std::max(centred_sq, 0.0));
    report.equivalence_residual =
        std::abs(0.25 * spread_sq - centred_sq - report.re_form);
    report.scale = 0.25 * std::abs(spread_sq) + std::abs(centred_sq);
    report.holds = report.re_form >= -tol.band(report.scale);
    return report;
}

// ---------------------------------------------------------------------------
// Gap decomposition

/// Exact decomposition of the CBS gap:
///
///   bound_part - condition_part = ||x|z||^2 ||y|z||^2 - |(x,y|z)|^2
///
/// with bound_part = Re[(A||y|z||^2 - (x,y|z)) (conj(x,y|z) - conj(a)||y|z||^2)]
/// and  condition_part = ||y|z||^2 Re(Ay - x, x - ay|z).
///
/// bound_part is elementarily bounded by quarter_bound = |A-a|^2 ||y|z||^4 / 4
/// for every input, which is what turns the decomposition into the additive
/// reverse bound when the hypothesis makes condition_part nonnegative.
struct GapIdentity {
    double bound_part = 0.0;
    double condition_part = 0.0;
    double gap = 0.0;
    double residual = 0.0;
    double scale = 0.0;
    double quarter_bound = 0.0;
};

template <two_inner_form E>
GapIdentity gap_identity(const E& ev, const Vector& x, const Vector& y, const Vector& z,
                         const ScalarPair& pair) {
    detail::check_field_scalar(ev.field(), pair.a, "gap_identity");
    detail::check_field_scalar(ev.field(), pair.A, "gap_identity");

    const Scalar v = ev.two_inner(x, y, z);
    const double ny2 = two_norm_squared(ev, y, z);
    const double nx2 = two_norm_squared(ev, x, z);

    GapIdentity id;
    const Scalar left = pair.A * ny2 - v;
    const Scalar right = std::conj(v) - std::conj(pair.a) * ny2;
    id.bound_part = (left * right).real();
    const double re_form = ev.two_inner(pair.A * y - x, x - pair.a * y, z).real();
    id.condition_part = ny2 * re_form;
    id.gap = nx2 * ny2 - std::norm(v);
    id.residual = std::abs(id.bound_part - id.condition_part - id.gap);
    id.quarter_bound = 0.25 * std::norm(pair.A - pair.a) * ny2 * ny2;
    id.scale = std::abs(left) * std::abs(right) + std::abs(ny2) * std::abs(re_form) +
               std::abs(nx2 * ny2) + std::norm(v);
    return id;
}

// ---------------------------------------------------------------------------
// Reverse bounds

/// Additive reverse bound (id 2.3):
///   gap <= |A - a|^2 ||y|z||^4 / 4  whenever the hypothesis holds.
/// The constant 1/4 is sharp; see extremal_instance and sharpness_probe.
template <two_inner_form E>
BoundReport additive_reverse(const E& ev, const Vector& x, const Vector& y,
                             const Vector& z, const ScalarPair& pair,
                             const Tolerance& tol = {}) {
    const ConditionReport cond = condition_check(ev, x, y, z, pair, tol);
    const GapIdentity id = gap_identity(ev, x, y, z, pair);
    return detail::make_report("2.3", id.gap, id.quarter_bound, cond.holds, 0.25,
                               {0.0, id.gap, id.quarter_bound});
}

struct QuotientReports {
    BoundReport ratio;     // id 2.9
    BoundReport additive;  // id 2.16
};

/// Quotient-form reverse bounds, valid when Re(conj(a) A) > 0 and the
/// hypothesis holds:
///   2.9:  ||x|z|| ||y|z|| <= Re[(conj(A)+conj(a)) (x,y|z)] / (2 sqrt(Re conj(a)A))
///                         <= |A + a| |(x,y|z)| / (2 sqrt(Re conj(a)A))
///   2.16: gap <= |A - a|^2 |(x,y|z)|^2 / (4 Re(conj(a) A))
/// When Re(conj(a) A) <= 0 the rhs values are undefined and reported as NaN
/// with hypothesis_ok = false.
template <two_inner_form E>
QuotientReports quotient_reverse(const E& ev, const Vector& x, const Vector& y,
                                 const Vector& z, const ScalarPair& pair,
                                 const Tolerance& tol = {}) {
    const ConditionReport cond = condition_check(ev, x, y, z, pair, tol);
    const double re_aA = (std::conj(pair.a) * pair.A).real();
    const bool hyp = re_aA > 0.0 && cond.holds;

    const Scalar v = ev.two_inner(x, y, z);
    const double lhs_product = two_norm(ev, x, z, tol) * two_norm(ev, y, z, tol);
    const double gap = cbs_gap(ev, x, y, z);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    double mid = nan, rhs_ratio = nan, rhs_additive = nan;
    if (re_aA > 0.0) {
        const double root = std::sqrt(re_aA);
        mid = 0.5 * ((std::conj(pair.A) + std::conj(pair.a)) * v).real() / root;
        rhs_ratio = 0.5 * std::abs(pair.A + pair.a) * std::abs(v) / root;
        rhs_additive = 0.25 * std::norm(pair.A - pair.a) / re_aA * std::norm(v);
    }

    QuotientReports out{
        detail::make_report("2.9", lhs_product, rhs_ratio, hyp, 0.5,
                            {lhs_product, mid, rhs_ratio}),
        detail::make_report("2.16", gap, rhs_additive, hyp, 0.25,
                            {0.0, gap, rhs_additive}),
    };
    return out;
}

struct PositiveReports {
    BoundReport ratio;            // id 2.15
    BoundReport defect;           // id 2.17
    BoundReport squared_defect;   // id 2.18
};

/// Reverse bounds for a positive localization interval 0 < m <= M, under
/// Re(My - x, x - my|z) >= 0:
///   2.15: ||x|z|| ||y|z|| <= (M+m)/(2 sqrt(mM)) Re(x,y|z) <= ... |(x,y|z)|
///   2.17: ||x|z|| ||y|z|| - Re(x,y|z) <= (sqrt M - sqrt m)^2/(2 sqrt(mM)) Re(x,y|z)
///   2.18: gap <= (M-m)^2/(4mM) [Re(x,y|z)]^2
/// Full displayed chains are retained in each report.
template <two_inner_form E>
PositiveReports positive_reverse(const E& ev, const Vector& x, const Vector& y,
                                 const Vector& z, const PositivePair& pair,
                                 const Tolerance& tol = {}) {
    const ConditionReport cond =
        condition_check(ev, x, y, z, pair.as_scalar_pair(), tol);
    const bool hyp = cond.holds;

    const Scalar v = ev.two_inner(x, y, z);
    const double re_v = v.real();
    const double abs_v = std::abs(v);
    const double nx = two_norm(ev, x, z, tol);
    const double ny = two_norm(ev, y, z, tol);
    const double gap = cbs_gap(ev, x, y, z);

    const double root_mM = std::sqrt(pair.m * pair.M);
    const double c_ratio = 0.5 * (pair.M + pair.m) / root_mM;
    const double root_gap = std::sqrt(pair.M) - std::sqrt(pair.m);
    const double c_defect = 0.5 * root_gap * root_gap / root_mM;
    const double c_squared = 0.25 * (pair.M - pair.m) * (pair.M - pair.m) /
                             (pair.m * pair.M);

    PositiveReports out{
        detail::make_report("2.15", nx * ny, c_ratio * re_v, hyp, 0.5,
                            {nx * ny, c_ratio * re_v, c_ratio * abs_v}),
        detail::make_report("2.17", nx * ny - re_v, c_defect * re_v, hyp, 0.5,
                            {0.0, nx * ny - abs_v, nx * ny - re_v, c_defect * re_v,
                             c_defect * abs_v}),
        detail::make_report("2.18", gap, c_squared * re_v * re_v, hyp, 0.25,
                            {0.0, gap, nx * nx * ny * ny - re_v * re_v,
                             c_squared * re_v * re_v, c_squared * abs_v * abs_v}),
    };
    return out;
}

/// Residual of the exact norm identity behind the triangle reverse bound:
///   (||x|z|| + ||y|z||)^2 - ||x+y|z||^2 = 2 [||x|z|| ||y|z|| - Re(x,y|z)].
struct TriangleIdentity {
    double residual = 0.0;
    double scale = 0.0;
};

template <two_inner_form E>
TriangleIdentity triangle_identity_residual(const E& ev, const Vector& x, const Vector& y,
                                            const Vector& z, const Tolerance& tol = {}) {
    const double nx = two_norm(ev, x, z, tol);
    const double ny = two_norm(ev, y, z, tol);
    const double nxy = two_norm(ev, x + y, z, tol);
    const double re_v = ev.two_inner(x, y, z).real();

    TriangleIdentity id;
    id.residual = std::abs((nx + ny) * (nx + ny) - nxy * nxy - 2.0 * (nx * ny - re_v));
    id.scale = (nx + ny) * (nx + ny) + nxy * nxy + 2.0 * (nx * ny + std::abs(re_v));
    return id;
}

/// Reverse triangle inequality (id 2.19), same hypothesis as positive_reverse:
///   0 <= ||x|z|| + ||y|z|| - ||x+y|z||
///     <= (sqrt M - sqrt m)/(mM)^{1/4} sqrt(Re(x,y|z)).
/// A passing hypothesis forces Re(x,y|z) >= 0; a clearly negative value under
/// a passing hypothesis is an evaluator inconsistency.
template <two_inner_form E>
BoundReport triangle_reverse(const E& ev, const Vector& x, const Vector& y,
                             const Vector& z, const PositivePair& pair,
                             const Tolerance& tol = {}) {
    const ConditionReport cond =
        condition_check(ev, x, y, z, pair.as_scalar_pair(), tol);

    const double nx = two_norm(ev, x, z, tol);
    const double ny = two_norm(ev, y, z, tol);
    const double nxy = two_norm(ev, x + y, z, tol);
    const double re_v = ev.two_inner(x, y, z).real();

    if (cond.holds && re_v < -tol.band(nx * ny))
        throw inconsistency_error(
            "triangle_reverse: Re(x,y|z) negative under a passing hypothesis");

    const double lhs = nx + ny - nxy;
    const double rhs = (std::sqrt(pair.M) - std::sqrt(pair.m)) /
                       std::pow(pair.m * pair.M, 0.25) * std::sqrt(std::max(re_v, 0.0));
    return detail::make_report("2.19", lhs, rhs, cond.holds, 1.0, {0.0, lhs, rhs});
}

// ---------------------------------------------------------------------------
// Sharpness

/// Tight instance for the additive reverse bound: given unit, mutually
/// orthogonal y and m_vec (in the |z geometry) and a != A, returns
///   x = (A+a)/2 y + (A-a)/2 m_vec,
/// which satisfies the hypothesis with equality and reaches slack 0 in 2.3.
template <two_inner_form E>
Vector extremal_instance(const E& ev, const Vector& y, const Vector& m_vec,
                         const Vector& z, const ScalarPair& pair,
                         const Tolerance& tol = {}) {
    detail::check_field_scalar(ev.field(), pair.a, "extremal_instance");
    detail::check_field_scalar(ev.field(), pair.A, "extremal_instance");

    const double ny = two_norm(ev, y, z, tol);
    const double nm = two_norm(ev, m_vec, z, tol);
    const double cross = std::abs(ev.two_inner(y, m_vec, z));
    if (std::abs(ny - 1.0) > tol.band(1.0))
        throw invalid_instance("extremal_instance: ||y|z|| must be 1");
    if (std::abs(nm - 1.0) > tol.band(1.0))
        throw invalid_instance("extremal_instance: ||m|z|| must be 1");
    if (cross > tol.band(1.0))
        throw invalid_instance("extremal_instance: (y,m|z) must vanish");
    if (std::abs(pair.A - pair.a) <=
        tol.band(std::abs(pair.a) + std::abs(pair.A)))
        throw invalid_instance("extremal_instance: requires a != A");

    const Scalar half(0.5, 0.0);
    return half * (pair.A + pair.a) * y + half * (pair.A - pair.a) * m_vec;
}

enum class SharpnessTarget { additive_quarter, ratio_half };

inline const char* to_string(SharpnessTarget t) {
    return t == SharpnessTarget::additive_quarter ? "thm2.1" : "thm2.2";
}

/// Counterexample instance produced when a candidate constant is too small.
struct SharpnessWitness {
    Vector x;
    Vector y;
    Vector z;
    Scalar a;
    Scalar A;
    double achieved = 0.0;   // value reached by the construction
    double weakened = 0.0;   // bound using the candidate constant
    double violation = 0.0;  // achieved - weakened, positive for a witness
};

/// Tests whether a constant smaller than the sharp one admits a
/// counterexample. For the additive bound the probe builds the tight
/// extremal instance with a = 0, A = 2; a witness exists iff C < 1/4 - tol.
/// For the ratio bound it uses a = A = 1, y = x; a witness exists iff
/// C < 1/2 - tol. Returns nothing when the candidate constant is admissible.
template <two_inner_form E>
std::optional<SharpnessWitness> sharpness_probe(const E& ev, double candidate,
                                                SharpnessTarget target,
                                                const Tolerance& tol = {}) {
    if (!(candidate > 0.0))
        throw invalid_input("sharpness_probe: the candidate constant must be positive");
    const std::size_t dim = ev.dim();
    const Vector z = Vector::basis(dim, dim - 1);

    if (target == SharpnessTarget::additive_quarter) {
        if (dim < 3)
            throw invalid_dimension(
                "sharpness_probe: the additive probe needs dimension >= 3");
        Vector y = Vector::basis(dim, 0);
        Vector m_vec = Vector::basis(dim, 1);
        const double ny = two_norm(ev, y, z, tol);
        const double nm = two_norm(ev, m_vec, z, tol);
        if (!(ny > 0.0) || !(nm > 0.0))
            throw inconsistency_error("sharpness_probe: degenerate basis norms");
        y = Scalar(1.0 / ny, 0.0) * y;
        m_vec = Scalar(1.0 / nm, 0.0) * m_vec;

        const ScalarPair pair(Scalar(0.0, 0.0), Scalar(2.0, 0.0));
        const Vector x = extremal_instance(ev, y, m_vec, z, pair, tol);
        const double gap = cbs_gap(ev, x, y, z);
        const double ny4 = std::pow(two_norm(ev, y, z, tol), 4);
        const double weakened = candidate * std::norm(pair.A - pair.a) * ny4;
        if (gap > weakened + tol.band(weakened)) {
            return SharpnessWitness{x,        y,        z, pair.a, pair.A,
                                    gap,      weakened, gap - weakened};
        }
        return std::nullopt;
    }

    Vector x = Vector::basis(dim, 0);
    const double nx = two_norm(ev, x, z, tol);
    if (!(nx > 0.0))
        throw inconsistency_error("sharpness_probe: degenerate basis norm");
    x = Scalar(1.0 / nx, 0.0) * x;
    const Scalar one(1.0, 0.0);
    const double nx2 = two_norm_squared(ev, x, z);
    const double weakened = 2.0 * candidate * nx2;
    if (nx2 > weakened + tol.band(weakened)) {
        return SharpnessWitness{x,   x,        z,
                                one, one,      nx2, weakened, nx2 - weakened};
    }
    return std::nullopt;
}

}  // namespace twoip
