#pragma once

#include <cstdint>
#include <random>

namespace corrlife {

/**
 * Reproducible random source for the synthetic generators.
 *
 * Raw bits come from std::mt19937_64, whose output sequence is fixed by the
 * C++ standard. Distributions are computed here (53-bit uniforms, Box-Muller
 * normals, inverse-CDF exponentials) rather than through <random>'s
 * distribution classes, whose algorithms vary between standard libraries.
 * The same seed therefore gives the same stream on every conforming toolchain
 * that shares a libm.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform();

    /// Uniform on (0, 1).
    double uniform_open();

    /// Standard normal.
    double normal();

    /// Exponential with the given rate (> 0).
    double exponential(double rate);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace corrlife
