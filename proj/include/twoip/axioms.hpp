#pragma once

// Sampled verification that an evaluator behaves like a 2-inner product:
// the five defining axioms, the scaling and self-orthogonality properties,
// the induced-norm conditions, polarization, and CBS nonnegativity.
//
// Every check records the worst raw residual and the worst residual measured
// against the acceptance band tol.abs + tol.rel * scale, so a report both
// passes/fails and shows how much headroom was left.

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "twoip/core.hpp"
#include "twoip/gram.hpp"
#include "twoip/space.hpp"

namespace twoip {

struct AxiomCheck {
    std::string id;
    double max_residual = 0.0;    // worst raw residual observed
    double max_violation = 0.0;   // worst residual / band; pass iff <= 1
    double band_at_worst = 0.0;   // acceptance band at the worst-violation trial
    double residual_at_worst = 0.0;
    std::size_t trials = 0;
    bool pass = true;
};

struct AxiomSuiteReport {
    std::vector<AxiomCheck> checks;
    bool pass = true;

    const AxiomCheck* find(std::string_view id) const {
        for (const auto& c : checks)
            if (c.id == id) return &c;
        return nullptr;
    }
};

/// Worst-case merge of two reports over the same check list.
inline void merge_into(AxiomSuiteReport& into, const AxiomSuiteReport& from) {
    for (const auto& c : from.checks) {
        AxiomCheck* dst = nullptr;
        for (auto& existing : into.checks)
            if (existing.id == c.id) dst = &existing;
        if (dst == nullptr) {
            into.checks.push_back(c);
        } else {
            dst->max_residual = std::max(dst->max_residual, c.max_residual);
            if (c.max_violation >= dst->max_violation) {
                dst->max_violation = c.max_violation;
                dst->band_at_worst = c.band_at_worst;
                dst->residual_at_worst = c.residual_at_worst;
            }
            dst->trials += c.trials;
            dst->pass = dst->pass && c.pass;
        }
    }
    into.pass = into.pass && from.pass;
}

namespace detail {

class CheckTable {
public:
    explicit CheckTable(Tolerance tol) : tol_(tol) {}

    void record(std::string_view id, double residual, double scale) {
        AxiomCheck& c = lookup(id);
        c.trials += 1;
        c.max_residual = std::max(c.max_residual, residual);
        const double band = tol_.band(scale);
        const double violation =
            band > 0.0 ? residual / band
                       : (residual > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        if (violation >= c.max_violation) {
            c.max_violation = violation;
            c.band_at_worst = band;
            c.residual_at_worst = residual;
        }
        if (violation > 1.0) c.pass = false;
    }

    /// Strict positivity: a nonpositive value is a violation regardless of
    /// magnitude; healthy values record a zero residual.
    void record_strictly_positive(std::string_view id, double value, double scale) {
        const double residual = value > 0.0 ? 0.0 : std::max(tol_.band(scale), -value);
        record(id, residual, scale);
    }

    AxiomSuiteReport finish() {
        AxiomSuiteReport report;
        report.checks = std::move(checks_);
        for (const auto& c : report.checks) report.pass = report.pass && c.pass;
        return report;
    }

private:
    AxiomCheck& lookup(std::string_view id) {
        for (auto& c : checks_)
            if (c.id == id) return c;
        checks_.push_back(AxiomCheck{std::string(id), 0.0, 0.0, 0, true});
        return checks_.back();
    }

    Tolerance tol_;
    std::vector<AxiomCheck> checks_;
};

}  // namespace detail

/// Runs `trials` sampled tuples through the full axiom/property battery.
///
/// Strict positivity of (x,x|z) is only asserted on pairs (x,z) whose
/// smallest singular value exceeds 1e-6: exact independence is not decidable
/// in floating point, so poorly conditioned pairs are skipped.
template <two_inner_form E>
AxiomSuiteReport axiom_suite(const E& ev, SeededGenerator& gen, std::size_t trials,
                             const Tolerance& tol = {}) {
    if (trials < 1) throw invalid_input("axiom_suite: trials must be at least 1");
    const FieldTag field = ev.field();
    const std::size_t dim = ev.dim();
    detail::CheckTable table(tol);

    for (std::size_t trial = 0; trial < trials; ++trial) {
        const Vector x = sample_vector(gen, dim, field);
        const Vector xp = sample_vector(gen, dim, field);
        const Vector y = sample_vector(gen, dim, field);
        const Vector z = sample_vector(gen, dim, field);
        const Scalar alpha = sample_scalar(gen, field);
        const double lambda = gen.next_symmetric();

        const double nx = euclidean_norm(x);
        const double nxp = euclidean_norm(xp);
        const double ny = euclidean_norm(y);
        const double nz = euclidean_norm(z);

        const Scalar v_xyz = ev.two_inner(x, y, z);
        const Scalar v_xxz = ev.two_inner(x, x, z);

        // Nonnegativity of (x,x|z), with a real value.
        table.record("2I1_nonneg", std::max(0.0, -v_xxz.real()) + std::abs(v_xxz.imag()),
                     nx * nx * nz * nz);

        // (x,x|z) = 0 when x and z are linearly dependent.
        {
            const Vector u = alpha * z;
            table.record("2I1_dependent", std::abs(ev.two_inner(u, u, z)),
                         std::norm(alpha) * nz * nz * nz * nz);
        }

        // Strict positivity on well-conditioned independent pairs.
        if (pair_rank(x, z).sigma_min > 1e-6)
            table.record_strictly_positive("2I1_positive", v_xxz.real(),
                                           nx * nx * nz * nz);

        // (x,x|z) = (z,z|x).
        table.record("2I2_exchange", std::abs(v_xxz - ev.two_inner(z, z, x)),
                     nx * nx * nz * nz);

        // (x,y|z) = conj((y,x|z)).
        table.record("2I3_conjugate_symmetry",
                     std::abs(v_xyz - std::conj(ev.two_inner(y, x, z))),
                     nx * ny * nz * nz);

        // (alpha x, y|z) = alpha (x,y|z).
        table.record("2I4_first_slot_homogeneity",
                     std::abs(ev.two_inner(alpha * x, y, z) - alpha * v_xyz),
                     (1.0 + std::abs(alpha)) * nx * ny * nz * nz);

        // (x + x', y|z) = (x,y|z) + (x',y|z).
        table.record("2I5_first_slot_additivity",
                     std::abs(ev.two_inner(x + xp, y, z) - v_xyz - ev.two_inner(xp, y, z)),
                     (nx + nxp) * ny * nz * nz + std::abs(v_xyz));

        // (x, alpha y|z) = conj(alpha) (x,y|z).
        table.record("1.1_second_slot_conjugate_homogeneity",
                     std::abs(ev.two_inner(x, alpha * y, z) - std::conj(alpha) * v_xyz),
                     (1.0 + std::abs(alpha)) * nx * ny * nz * nz);

        // (x,y|lambda z) = lambda^2 (x,y|z) for real lambda.
        table.record("1.4_third_slot_real_scaling",
                     std::abs(ev.two_inner(x, y, Scalar(lambda, 0.0) * z) -
                              lambda * lambda * v_xyz),
                     (1.0 + lambda * lambda) * nx * ny * nz * nz);

        // (x,y|alpha z) = |alpha|^2 (x,y|z).
        table.record("1.6_third_slot_modulus_scaling",
                     std::abs(ev.two_inner(x, y, alpha * z) - std::norm(alpha) * v_xyz),
                     (1.0 + std::norm(alpha)) * nx * ny * nz * nz);

        // (z,y|z) = (y,z|z) = 0.
        table.record("1.8_self_orthogonality",
                     std::abs(ev.two_inner(z, y, z)) + std::abs(ev.two_inner(y, z, z)),
                     ny * nz * nz * nz);

        // (x,y|0) = 0 exactly.
        table.record("zero_third_slot", std::abs(ev.two_inner(x, y, Vector(dim))), 0.0);

        // ||x|z|| = ||z|x||.
        const double norm_xz = two_norm(ev, x, z, tol);
        table.record("2N2_argument_exchange", std::abs(norm_xz - two_norm(ev, z, x, tol)),
                     nx * nz);

        // ||alpha x|z|| = |alpha| ||x|z||.
        table.record("2N3_absolute_homogeneity",
                     std::abs(two_norm(ev, alpha * x, z, tol) - std::abs(alpha) * norm_xz),
                     (1.0 + std::abs(alpha)) * nx * nz);

        // ||x + x'|z|| <= ||x|z|| + ||x'|z||.
        table.record("2N4_triangle",
                     std::max(0.0, two_norm(ev, x + xp, z, tol) - norm_xz -
                                       two_norm(ev, xp, z, tol)),
                     (nx + nxp) * nz);

        // Polarization reconstructs (x,y|z) from third-slot evaluations.
        table.record("polarization", std::abs(polarize(ev, x, y, z, field) - v_xyz),
                     (nx + ny) * (nx + ny) * nz * nz);

        // CBS: the gap is nonnegative.
        {
            const double gap = cbs_gap(ev, x, y, z);
            const double scale = std::max(two_norm_squared(ev, x, z), 0.0) *
                                     std::max(two_norm_squared(ev, y, z), 0.0) +
                                 std::norm(v_xyz);
            table.record("cbs_nonneg", std::max(0.0, -gap), scale);
        }
    }

    return table.finish();
}

}  // namespace twoip
