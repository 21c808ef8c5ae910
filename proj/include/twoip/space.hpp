#pragma once

// Weighted inner-product spaces and the 2-inner product they induce.
//
// The 2-inner product of x and y modulo the direction z is the 2x2 Gram
// determinant
//
//     (x,y|z) = <x,y><z,z> - <x,z><z,y>,
//
// with <x,y> = sum_k w_k x_k conj(y_k) over positive weights w. The induced
// functional satisfies the standard 2-inner-product axioms exactly, and the
// 2-norm it generates is ||x|z|| = sqrt((x,x|z)).
//
// Every higher-level routine is written against the `two_inner_form` concept
// rather than the concrete evaluator, so alternative constructions (including
// deliberately broken ones, used by the verification suites) plug into the
// same machinery.

#include <cmath>
#include <concepts>
#include <string>
#include <utility>
#include <vector>

#include "twoip/core.hpp"

namespace twoip {

// ---------------------------------------------------------------------------
// InnerSpace

/// Finite-dimensional space with strictly positive coordinate weights.
class InnerSpace {
public:
    InnerSpace(FieldTag field, std::vector<double> weights)
        : field_(field), weights_(std::move(weights)) {
        if (weights_.size() < 2)
            throw invalid_dimension("InnerSpace: dimension must be at least 2");
        for (double w : weights_) {
            require_finite(w, "InnerSpace weight");
            if (!(w > 0.0)) throw invalid_input("InnerSpace: weights must be positive");
        }
    }

    static InnerSpace unit(FieldTag field, std::size_t dim) {
        return InnerSpace(field, std::vector<double>(dim, 1.0));
    }

    FieldTag field() const { return field_; }
    std::size_t dim() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }

private:
    FieldTag field_;
    std::vector<double> weights_;
};

namespace detail {

inline void check_argument(const InnerSpace& space, const Vector& v, const char* what) {
    if (v.dim() != space.dim())
        throw invalid_dimension(std::string(what) + ": dimension mismatch (vector has " +
                                std::to_string(v.dim()) + " entries, space has " +
                                std::to_string(space.dim()) + ")");
    for (const auto& e : v) {
        if (!is_finite(e)) throw invalid_input(std::string(what) + ": non-finite entry");
        if (space.field() == FieldTag::Real && e.imag() != 0.0)
            throw invalid_input(std::string(what) +
                                ": complex entry in a real-field space");
    }
}

}  // namespace detail

/// Weighted inner product, linear in the first slot and conjugate-linear in
/// the second.
inline Scalar inner(const InnerSpace& space, const Vector& x, const Vector& y) {
    detail::check_argument(space, x, "inner");
    detail::check_argument(space, y, "inner");
    Scalar s(0.0, 0.0);
    for (std::size_t k = 0; k < space.dim(); ++k)
        s += space.weights()[k] * x[k] * std::conj(y[k]);
    return s;
}

// ---------------------------------------------------------------------------
// TwoInnerEvaluator

/// The induced 2-inner product of an InnerSpace.
class TwoInnerEvaluator {
public:
    explicit TwoInnerEvaluator(InnerSpace space) : space_(std::move(space)) {}

    const InnerSpace& space() const { return space_; }
    FieldTag field() const { return space_.field(); }
    std::size_t dim() const { return space_.dim(); }

    Scalar two_inner(const Vector& x, const Vector& y, const Vector& z) const {
        return inner(space_, x, y) * inner(space_, z, z) -
               inner(space_, x, z) * inner(space_, z, y);
    }

private:
    InnerSpace space_;
};

/// Anything that evaluates (x,y|z) over a fixed space.
template <typename E>
concept two_inner_form = requires(const E& ev, const Vector& v) {
    { ev.two_inner(v, v, v) } -> std::convertible_to<Scalar>;
    { ev.dim() } -> std::convertible_to<std::size_t>;
    { ev.field() } -> std::convertible_to<FieldTag>;
};

// ---------------------------------------------------------------------------
// Derived quantities

/// Raw squared 2-norm (x,x|z); may be a tiny negative number under rounding.
template <two_inner_form E>
double two_norm_squared(const E& ev, const Vector& x, const Vector& z) {
    return ev.two_inner(x, x, z).real();
}

/// ||x|z|| = sqrt((x,x|z)). Radicands inside the rounding band below zero are
/// clamped; anything more negative is impossible for a valid evaluator.
template <two_inner_form E>
double two_norm(const E& ev, const Vector& x, const Vector& z, const Tolerance& tol = {}) {
    const double r = two_norm_squared(ev, x, z);
    if (r >= 0.0) return std::sqrt(r);
    const double scale = std::pow(euclidean_norm(x) * euclidean_norm(z), 2);
    if (r < -tol.band(scale))
        throw inconsistency_error("two_norm: (x,x|z) = " + std::to_string(r) +
                                  " is negative beyond tolerance");
    return 0.0;
}

/// CBS gap ||x|z||^2 ||y|z||^2 - |(x,y|z)|^2, returned unclamped so callers
/// can verify it is nonnegative within tolerance.
template <two_inner_form E>
double cbs_gap(const E& ev, const Vector& x, const Vector& y, const Vector& z) {
    const double nx2 = two_norm_squared(ev, x, z);
    const double ny2 = two_norm_squared(ev, y, z);
    return nx2 * ny2 - std::norm(ev.two_inner(x, y, z));
}

/// Reconstructs (x,y|z) from third-slot evaluations only. Real case:
///   (x,y|z)   = 1/4 [(z,z|x+y) - (z,z|x-y)];
/// complex case adds i/4 [(z,z|x+iy) - (z,z|x-iy)].
/// Agrees with the direct evaluation to rounding for any valid evaluator.
template <two_inner_form E>
Scalar polarize(const E& ev, const Vector& x, const Vector& y, const Vector& z,
                FieldTag field) {
    const Scalar quarter(0.25, 0.0);
    const Scalar re_part =
        quarter * (ev.two_inner(z, z, x + y) - ev.two_inner(z, z, x - y));
    if (field == FieldTag::Real) return re_part;
    const Scalar i(0.0, 1.0);
    const Scalar im_part =
        quarter * (ev.two_inner(z, z, x + i * y) - ev.two_inner(z, z, x - i * y));
    return re_part + i * im_part;
}

template <two_inner_form E>
Scalar polarize(const E& ev, const Vector& x, const Vector& y, const Vector& z) {
    return polarize(ev, x, y, z, ev.field());
}

}  // namespace twoip
