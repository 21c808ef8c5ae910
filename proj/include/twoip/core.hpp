#pragma once

// Field-aware scalar/vector arithmetic, tolerance comparison, and the
// deterministic generator used by every sampling routine in the library.
//
// All numeric work is double precision. Non-finite values are rejected at
// operation boundaries instead of being propagated.

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace twoip {

using Scalar = std::complex<double>;

enum class FieldTag { Real, Complex };

inline const char* to_string(FieldTag field) {
    return field == FieldTag::Real ? "real" : "complex";
}

// ---------------------------------------------------------------------------
// Errors

class error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite or field-violating value fed into an operation.
class invalid_input final : public error {
    using error::error;
};

/// Vector/space dimension below 2 or mismatched between arguments.
class invalid_dimension final : public error {
    using error::error;
};

/// Structurally valid input that violates an operation's preconditions
/// (non-unit extremal directions, vanishing h on a weighted node, ...).
class invalid_instance final : public error {
    using error::error;
};

/// A value that is impossible for a well-formed evaluator, e.g. a squared
/// norm that is negative beyond rounding tolerance.
class inconsistency_error final : public error {
    using error::error;
};

/// Malformed instance file or CSV input.
class parse_error final : public error {
    using error::error;
};

// ---------------------------------------------------------------------------
// Tolerance

/// Mixed absolute/relative comparison band: a residual r at magnitude scale s
/// is acceptable when r <= abs + rel * s.
struct Tolerance {
    double abs = 1e-12;
    double rel = 1e-9;

    Tolerance() = default;
    Tolerance(double abs_tol, double rel_tol) : abs(abs_tol), rel(rel_tol) {
        if (!(abs >= 0.0) || !(rel >= 0.0))
            throw invalid_input("Tolerance: abs and rel must be nonnegative");
        if (abs == 0.0 && rel == 0.0)
            throw invalid_input("Tolerance: abs and rel cannot both be zero");
    }

    /// Width of the acceptance band at a given magnitude scale.
    double band(double scale) const { return abs + rel * std::abs(scale); }
};

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(const Scalar& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

inline void require_finite(const Scalar& v, const char* what) {
    if (!is_finite(v)) throw invalid_input(std::string(what) + ": non-finite value");
}

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw invalid_input(std::string(what) + ": non-finite value");
}

/// True iff |a - b| <= tol.abs + tol.rel * max(|a|, |b|).
inline bool approx_equal(const Scalar& a, const Scalar& b, const Tolerance& tol = {}) {
    require_finite(a, "approx_equal");
    require_finite(b, "approx_equal");
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol.band(scale);
}

// ---------------------------------------------------------------------------
// Vector

/// Dense vector over R or C. Dimension is always at least 2; the ambient
/// spaces this library works with are required to have dimension > 1.
class Vector {
public:
    explicit Vector(std::size_t dim) : entries_(check_dim(dim)) {}

    Vector(std::initializer_list<Scalar> entries)
        : entries_(entries.begin(), entries.end()) {
        check_dim(entries_.size());
    }

    explicit Vector(std::vector<Scalar> entries) : entries_(std::move(entries)) {
        check_dim(entries_.size());
    }

    /// k-th standard basis vector of the given dimension.
    static Vector basis(std::size_t dim, std::size_t k) {
        Vector v(dim);
        if (k >= dim) throw invalid_dimension("Vector::basis: index out of range");
        v[k] = Scalar(1.0, 0.0);
        return v;
    }

    std::size_t dim() const { return entries_.size(); }

    Scalar& operator[](std::size_t i) { return entries_[i]; }
    const Scalar& operator[](std::size_t i) const { return entries_[i]; }

    auto begin() { return entries_.begin(); }
    auto end() { return entries_.end(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    const std::vector<Scalar>& entries() const { return entries_; }

    friend Vector operator+(const Vector& a, const Vector& b) {
        require_same_dim(a, b, "operator+");
        Vector r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
        return r;
    }

    friend Vector operator-(const Vector& a, const Vector& b) {
        require_same_dim(a, b, "operator-");
        Vector r(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
        return r;
    }

    friend Vector operator*(const Scalar& alpha, const Vector& v) {
        Vector r(v.dim());
        for (std::size_t i = 0; i < v.dim(); ++i) r[i] = alpha * v[i];
        return r;
    }

    Vector operator-() const { return Scalar(-1.0, 0.0) * *this; }

    bool operator==(const Vector& other) const { return entries_ == other.entries_; }

private:
    static std::size_t check_dim(std::size_t dim) {
        if (dim < 2) throw invalid_dimension("Vector: dimension must be at least 2");
        return dim;
    }

    static void require_same_dim(const Vector& a, const Vector& b, const char* what) {
        if (a.dim() != b.dim())
            throw invalid_dimension(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()) + ")");
    }

    std::vector<Scalar> entries_;
};

inline bool is_finite(const Vector& v) {
    for (const auto& e : v)
        if (!is_finite(e)) return false;
    return true;
}

inline void require_finite(const Vector& v, const char* what) {
    if (!is_finite(v)) throw invalid_input(std::string(what) + ": non-finite vector entry");
}

inline double euclidean_norm(const Vector& v) {
    double s = 0.0;
    for (const auto& e : v) s += std::norm(e);
    return std::sqrt(s);
}

/// v minus its Euclidean component along d (v unchanged when d = 0).
/// Components along the third slot of a 2-inner product are invisible to
/// every |z quantity, so removing them never changes the |z geometry of an
/// instance but keeps coordinates small; sampling routines rely on this.
inline Vector project_off(const Vector& v, const Vector& d) {
    Scalar v_dot_d(0.0, 0.0);
    double d_dot_d = 0.0;
    for (std::size_t k = 0; k < v.dim(); ++k) {
        v_dot_d += v[k] * std::conj(d[k]);
        d_dot_d += std::norm(d[k]);
    }
    if (!(d_dot_d > 0.0)) return v;
    return v - (v_dot_d / d_dot_d) * d;
}

// ---------------------------------------------------------------------------
// SeededGenerator

/// Counter-based deterministic generator (splitmix-style 64-bit mix).
///
/// Each output is a pure function of (seed, counter), so replaying any
/// (seed, counter) prefix reproduces the stream bit for bit on every
/// platform: only integer arithmetic and exact dyadic scaling are used.
class SeededGenerator {
public:
    explicit SeededGenerator(std::uint64_t seed, std::uint64_t counter = 0)
        : seed_(seed), counter_(counter) {}

    /// Independent stream for one trial of a sweep; parallel and serial
    /// execution of trials agree because streams never share state.
    static SeededGenerator for_trial(std::uint64_t seed, std::uint64_t trial_index) {
        return SeededGenerator(seed ^ trial_index);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    std::uint64_t next_u64() {
        counter_ += 1;
        std::uint64_t z = seed_ + counter_ * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1), 53 random bits.
    double next_unit_interval() {
        return std::ldexp(static_cast<double>(next_u64() >> 11), -53);
    }

    /// Uniform on [-1, 1).
    double next_symmetric() { return 2.0 * next_unit_interval() - 1.0; }

    /// Uniform on [lo, hi).
    double next_in(double lo, double hi) {
        return lo + (hi - lo) * next_unit_interval();
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

/// One scalar of the requested field, components uniform on [-1, 1).
/// In Real mode the imaginary part is exactly zero.
inline Scalar sample_scalar(SeededGenerator& gen, FieldTag field) {
    const double re = gen.next_symmetric();
    const double im = field == FieldTag::Complex ? gen.next_symmetric() : 0.0;
    return Scalar(re, im);
}

/// Vector with entries drawn componentwise from sample_scalar, entry-major
/// (real part before imaginary part within each entry).
inline Vector sample_vector(SeededGenerator& gen, std::size_t dim, FieldTag field) {
    if (dim < 2) throw invalid_dimension("sample_vector: dimension must be at least 2");
    Vector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = sample_scalar(gen, field);
    return v;
}

}  // namespace twoip
