#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noiselab/boolfun.hpp"
#include "noiselab/estimators.hpp"
#include "noiselab/sampling.hpp"

namespace noiselab {

enum class WitnessKind { One, Zero };

// Minimal forcing sets of a monotone function: a 1-witness W satisfies
// f(1_W) = 1 with every proper subset failing; 0-witnesses dually force 0.
struct WitnessSet {
    WitnessKind kind = WitnessKind::One;
    std::vector<std::vector<std::uint32_t>> witnesses;
    bool complete = false;  // exhaustive enumeration vs canonical-only
};

struct WitnessGap {
    std::vector<std::uint32_t> witness;
    double conditioned;      // P(f(w^eps)=v | w_W == v), v = 1 for 1-witnesses
    double conditioned_stderr;
    double gap;              // conditioned - P(f = v)
    double gap_stderr;
};

struct SnsReport {
    double eps = 0.0;
    double p = 0.5;
    double prob_value = 0.0;        // P(f = 1) for kind One, P(f = 0) for kind Zero
    double prob_value_stderr = 0.0;
    std::vector<WitnessGap> gaps;
    std::size_t max_index = 0;      // witness attaining the max gap
    double max_gap = 0.0;
    double max_gap_stderr = 0.0;
    bool degenerate = false;        // P(f=1) estimated as 0 or 1
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

struct ZeroWitnessCount {
    double mean = 0.0;              // E[Y], Y = #occurring 0-witnesses
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
    // Bounded E[Y] precludes 1-strong noise sensitivity; the flag marks a
    // numerically small mean at this desk scale.
    bool bounded_flag = false;
};

// Exhaustive lattice scan; requires a monotone truth table with N <= 20.
WitnessSet enumerate_witnesses(const BooleanFunction& f, WitnessKind kind);

// Exact minimality check of a claimed witness.
bool witness_is_minimal(const BooleanFunction& f, WitnessKind kind,
                        const std::vector<std::uint32_t>& witness);

// Monte Carlo estimate of the witness-conditioned noise gaps for every
// supplied witness; conditioning is by pinning, never rejection.
SnsReport sns_gap(const BooleanFunction& f, const WitnessSet& witnesses,
                  const NoiseParams& params, std::uint64_t samples, std::uint64_t seed,
                  const RunOptions& run = {});

// Y(w) = #{W in W_0 : w_W == 0} for one configuration.
std::uint64_t zero_witness_count(const WitnessSet& zero_witnesses, const Configuration& omega);

// Aggregate E[Y] by Monte Carlo at bias p.
ZeroWitnessCount zero_witness_count_mc(const BooleanFunction& f, const WitnessSet& zero_witnesses,
                                       double p, std::uint64_t samples, std::uint64_t seed,
                                       const RunOptions& run = {});

// Complement function g(w) = 1 - f(1 - w); its 1-witnesses are the
// 0-witnesses of f.
BooleanFunction complement_function(const BooleanFunction& f);

}  // namespace noiselab
