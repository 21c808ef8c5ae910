#pragma once

// Randomized instance construction for the verification sweeps: weighted
// spaces with bounded weights, localization pairs, and instances built to
// satisfy the ball form of the hypothesis by construction, so conditional
// bounds can be exercised at scale instead of waiting for rejection sampling
// to get lucky.

#include <cmath>
#include <optional>

#include "twoip/core.hpp"
#include "twoip/reverse.hpp"
#include "twoip/space.hpp"

namespace twoip {

/// Random space with weights uniform on [0.5, 2).
inline InnerSpace sample_space(SeededGenerator& gen, std::size_t dim, FieldTag field) {
    if (dim < 2) throw invalid_dimension("sample_space: dimension must be at least 2");
    std::vector<double> weights(dim);
    for (double& w : weights) w = gen.next_in(0.5, 2.0);
    return InnerSpace(field, std::move(weights));
}

/// Random positive localization interval with m in [0.1, 1.6) and
/// M - m in [0, 2).
inline PositivePair sample_positive_pair(SeededGenerator& gen) {
    const double m = gen.next_in(0.1, 1.6);
    return PositivePair(m, m + gen.next_in(0.0, 2.0));
}

struct ReverseInstance {
    Vector x;
    Vector y;
    Vector z;
    ScalarPair pair;
};

/// Instance placed inside the hypothesis ball for a given pair: x is the
/// centre (a+A)/2 y plus a random direction rescaled to at most the ball
/// radius |A-a|/2 ||y|z||. Returns nothing when the sampled directions are
/// too degenerate to normalize; callers simply draw again.
///
/// The direction is first projected off z. Multiples of z are invisible to
/// every |z quantity, so the projection does not change which instances are
/// reachable, but without it a direction nearly parallel to z gets rescaled
/// to enormous coordinates and the resulting cancellation noise can exceed
/// the verification bands.
template <two_inner_form E>
std::optional<ReverseInstance> sample_inball_instance(const E& ev, SeededGenerator& gen,
                                                      const ScalarPair& pair,
                                                      const Tolerance& tol = {}) {
    const std::size_t dim = ev.dim();
    const FieldTag field = ev.field();
    const Vector y = sample_vector(gen, dim, field);
    const Vector z = sample_vector(gen, dim, field);
    Vector direction = sample_vector(gen, dim, field);
    const double radial = gen.next_unit_interval();

    const double ny = two_norm(ev, y, z, tol);
    if (ny < 1e-6) return std::nullopt;

    direction = project_off(direction, z);
    const double nd = two_norm(ev, direction, z, tol);
    if (nd < 1e-9 * (1.0 + euclidean_norm(direction))) return std::nullopt;

    const double radius = 0.5 * std::abs(pair.A - pair.a) * ny;
    const Scalar mid = (pair.a + pair.A) * Scalar(0.5, 0.0);
    const Vector x = mid * y + Scalar(radial * radius / nd, 0.0) * direction;
    return ReverseInstance{x, y, z, pair};
}

/// In-ball instance with a random scalar pair of the evaluator's field.
template <two_inner_form E>
std::optional<ReverseInstance> sample_inball_instance(const E& ev, SeededGenerator& gen,
                                                      const Tolerance& tol = {}) {
    const Scalar a = sample_scalar(gen, ev.field());
    const Scalar A = sample_scalar(gen, ev.field());
    return sample_inball_instance(ev, gen, ScalarPair(a, A), tol);
}

}  // namespace twoip
