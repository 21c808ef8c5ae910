#pragma once

// Shared helpers for the test and acceptance binaries: broken evaluators for
// negative tests, a generator of premise-satisfying monotone instances for
// the determinantal sweeps, CSV emission, and a subprocess runner for
// exercising the CLI.

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "twoip/twoip.hpp"

namespace testsupport {

/// Evaluator with a constant additive defect; breaks additivity by `offset`.
struct OffsetEvaluator {
    twoip::TwoInnerEvaluator base;
    double offset = 0.01;

    twoip::Scalar two_inner(const twoip::Vector& x, const twoip::Vector& y,
                            const twoip::Vector& z) const {
        return base.two_inner(x, y, z) + twoip::Scalar(offset, 0.0);
    }
    std::size_t dim() const { return base.dim(); }
    twoip::FieldTag field() const { return base.field(); }
};

/// Evaluator returning a fixed value for every triple; used to drive the
/// inconsistency error paths.
struct ConstantEvaluator {
    twoip::Scalar value;
    std::size_t dimension = 3;

    twoip::Scalar two_inner(const twoip::Vector&, const twoip::Vector&,
                            const twoip::Vector&) const {
        return value;
    }
    std::size_t dim() const { return dimension; }
    twoip::FieldTag field() const { return twoip::FieldTag::Real; }
};

/// Random triple satisfying the determinantal premise by construction:
/// f/h and g/h are strictly increasing piecewise-linear samples and the
/// interval [m, M] brackets the increment ratios, which makes both
/// M g/h - f/h and f/h - m g/h increasing, hence synchronous.
struct MonotoneInstance {
    twoip::WeightedTriple triple;
    twoip::PositivePair pair;
};

inline MonotoneInstance sample_monotone_instance(twoip::SeededGenerator& gen,
                                                 std::size_t n_nodes) {
    std::vector<double> u(n_nodes), v(n_nodes), h(n_nodes), phi(n_nodes);
    u[0] = gen.next_symmetric();
    v[0] = gen.next_symmetric();
    double ratio_min = 0.0, ratio_max = 0.0;
    for (std::size_t i = 1; i < n_nodes; ++i) {
        const double du = gen.next_in(0.1, 1.1);
        const double dv = gen.next_in(0.1, 1.1);
        u[i] = u[i - 1] + du;
        v[i] = v[i - 1] + dv;
        const double r = du / dv;
        if (i == 1) {
            ratio_min = ratio_max = r;
        } else {
            ratio_min = std::min(ratio_min, r);
            ratio_max = std::max(ratio_max, r);
        }
    }
    for (std::size_t i = 0; i < n_nodes; ++i) {
        h[i] = gen.next_in(0.5, 2.0);
        phi[i] = gen.next_in(0.1, 1.1);
    }
    std::vector<double> f(n_nodes), g(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        f[i] = u[i] * h[i];
        g[i] = v[i] * h[i];
    }
    return MonotoneInstance{
        twoip::WeightedTriple(std::move(f), std::move(g), std::move(h), std::move(phi)),
        twoip::PositivePair(ratio_min * 0.999, ratio_max * 1.001)};
}

/// Writes samples of f and g over a grid in the CLI's CSV format.
inline void write_csv(const std::string& path, const twoip::QuadratureGrid& grid,
                      const std::vector<double>& phi, const std::vector<double>& f,
                      const std::vector<double>& g, const std::vector<double>& h) {
    std::ofstream out(path);
    out << "node,weight,phi,f,g,h\n";
    char line[256];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      grid.nodes()[i], grid.weights()[i], phi[i], f[i], g[i], h[i]);
        out << line;
    }
}

/// Runs a shell command, captures combined stdout/stderr, returns the exit
/// code (-1 when the process could not be spawned).
inline int run_command(const std::string& command, std::string* output = nullptr) {
    std::string all;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (pipe == nullptr) return -1;
    std::array<char, 4096> buffer;
    std::size_t n = 0;
    while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        all.append(buffer.data(), n);
    const int status = pclose(pipe);
    if (output != nullptr) *output = all;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    return content;
}

}  // namespace testsupport
