#pragma once

// Seeded sampling used by the property sweeps and the CLI.
//
// The bit source is std::mt19937_64 (the 64-bit Mersenne Twister with the
// standard's default parameters), seeded with a single 64-bit integer. A
// uniform double in [0, 1) is (x >> 11) * 2^-53 for each raw draw x, so the
// stream of doubles is reproducible from the seed on any platform and in any
// language that implements MT19937-64. All derived samplers below consume
// draws in the documented order and use no library distributions.

#include "reciprel/common.hpp"
#include "reciprel/phase_space_metrics.hpp"
#include "reciprel/weyl_heisenberg.hpp"

#include <cstdint>
#include <random>

namespace reciprel {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Vector uniform_vector(int n, double lo, double hi) {
        Vector out(n);
        for (int i = 0; i < n; ++i) out(i) = uniform(lo, hi);
        return out;
    }

    Matrix uniform_matrix(int rows, int cols, double lo, double hi) {
        Matrix out(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) out(i, j) = uniform(lo, hi);
        return out;
    }

    /// +1 or -1 with equal probability.
    int sign() { return (engine_() >> 63) ? -1 : 1; }

private:
    std::mt19937_64 engine_;
};

/// Product of a lower shear, an upper shear and a block GL(n) scaling, each
/// exactly symplectic, so the result is symplectic up to rounding.
Matrix random_symplectic(int n, Rng& rng);

/// Rotation in SO(n) from a Gram-Schmidt pass over a random matrix.
Matrix random_rotation(int n, Rng& rng);

/// p, q, iota uniform in [-1, 1).
HeisenbergElement random_heisenberg(int n, Rng& rng);

/// Random symplectic A, z and iota in [-1, 1), |delta| in [0.5, 2), random
/// signs for delta and epsilon.
AutomorphismElement random_automorphism(int n, Rng& rng);

/// All components uniform in [-scale, scale).
Displacement random_displacement(int n, Rng& rng, double scale = 1.0);

}  // namespace reciprel
