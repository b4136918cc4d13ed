#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "noiselab/bitvec.hpp"
#include "noiselab/rng.hpp"

namespace noiselab {

struct NoiseParams {
    double p;    // marginal of each coordinate, in (0,1)
    double eps;  // per-coordinate resampling rate, in [0,1]
    void validate() const;
};

// Fills `n` coordinates of `words` with i.i.d. Bernoulli(q) bits.
// Strategy is a pure function of (q, n): raw words at q = 1/2, geometric
// skipping when q (or 1-q) is sparse, threshold comparison otherwise.
void fill_bernoulli(std::span<std::uint64_t> words, std::size_t n, double q, RandomStream& stream);

Configuration sample_configuration(std::size_t n, double p, RandomStream& stream);

// omega^eps: every coordinate independently replaced by a fresh Bernoulli(p)
// draw with probability eps. Computed word-wise as (omega & ~mask) | (fresh & mask).
Configuration apply_noise(const Configuration& omega, const NoiseParams& params, RandomStream& stream);

// Draws omega from the product measure conditioned on omega_W == 1 (resp. 0
// when pin_to_one is false) by pinning W in `base`, then noises every
// coordinate including W. Returns (omega, omega^eps).
std::pair<Configuration, Configuration> apply_noise_conditioned(
    Configuration base, std::span<const std::uint32_t> fixed, const NoiseParams& params,
    RandomStream& stream, bool pin_to_one = true);

}  // namespace noiselab
