#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "noiselab/boolfun.hpp"

namespace noiselab {

struct RunOptions {
    unsigned workers = 0;  // 0: NOISE_LAB_WORKERS env or hardware concurrency
};

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    bool degenerate = false;
};

// Produces paired evaluations (f(w), f(w^eps)) for a whole eps grid from the
// per-sample stream; the base configuration is shared across the grid
// (common random numbers). Values: 0, 1, or kInconclusive.
class PairSampler {
public:
    static constexpr std::uint8_t kInconclusive = 2;

    virtual ~PairSampler() = default;
    virtual void sample_pair(std::uint64_t seed, std::uint64_t index,
                             std::span<const double> eps_grid,
                             std::uint8_t& f_base, std::span<std::uint8_t> f_noised) const = 0;
};

// Dense product-measure sampler over a BooleanFunction.
class DenseSampler final : public PairSampler {
public:
    DenseSampler(BooleanFunction f, double p);
    // Optional conditioning: pin the given coordinates to pin_value before
    // noise; all coordinates (pinned included) are then noised.
    DenseSampler(BooleanFunction f, double p, std::vector<std::uint32_t> pinned, bool pin_value);

    void sample_pair(std::uint64_t seed, std::uint64_t index, std::span<const double> eps_grid,
                     std::uint8_t& f_base, std::span<std::uint8_t> f_noised) const override;

private:
    BooleanFunction f_;
    double p_;
    std::vector<std::uint32_t> pinned_;
    bool pin_value_ = true;
};

// Per-eps transition counts; every estimator below is a pure function of
// these integers, so results are worker-count independent.
struct PairCounts {
    std::uint64_t samples = 0;
    std::uint64_t base_one = 0;
    std::uint64_t base_inconclusive = 0;
    std::vector<std::uint64_t> noised_one;
    std::vector<std::uint64_t> both_one;
    std::vector<std::uint64_t> inconclusive;

    void resize(std::size_t grid);
    void merge(const PairCounts& o);

    double prob_base() const { return static_cast<double>(base_one) / static_cast<double>(samples); }
};

PairCounts collect_pair_counts(const PairSampler& sampler, std::span<const double> eps_grid,
                               std::uint64_t samples, std::uint64_t seed, const RunOptions& run,
                               std::uint64_t first_index = 0);

// Exact leave-one-out jackknife over the four (f(w), f(w^eps)) cells.
struct PairStatistics {
    double covariance, covariance_stderr;
    double conditional, conditional_stderr;   // P(f(w^eps)=1 | f(w)=1)
    double gap, gap_stderr;                   // conditional - P(f=1)
    double correlation, correlation_stderr;   // Cov / Var(f(w))
    double flip;                              // P(f(w) != f(w^eps))
    bool degenerate;
};

PairStatistics pair_statistics(const PairCounts& counts, std::size_t eps_index);

Estimate estimate_covariance(const PairSampler& sampler, double eps, std::uint64_t samples,
                             std::uint64_t seed, const RunOptions& run = {});

struct ConditionalEstimate {
    Estimate conditional;   // P(f(w^eps)=1 | f(w)=1)
    Estimate gap;           // conditional - P(f=1)
    double prob_one = 0.0;
    std::uint64_t positives = 0;
    bool budget_exhausted = false;
};

// Ratio estimator with adaptive growth: doubles the sample count until at
// least min_positives configurations with f(w)=1 are seen, capped at
// budget_cap times the base budget.
ConditionalEstimate estimate_conditional(const PairSampler& sampler, double eps,
                                         std::uint64_t samples, std::uint64_t seed,
                                         const RunOptions& run = {},
                                         std::uint64_t min_positives = 100,
                                         std::uint64_t budget_cap = 64);

struct SweepRow {
    double eps;
    Estimate covariance;
    double correlation = 0.0;
    double correlation_stderr = 0.0;
    double flip = 0.0;
    std::uint64_t inconclusive = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double prob_one = 0.0;
    std::optional<double> crossing_eps;  // first grid eps with correlation < 1/2
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t base_inconclusive = 0;

    // Header: eps,estimate,stderr,samples,seed plus correlation/flip columns.
    std::string csv() const;
};

SweepResult sweep_eps(const PairSampler& sampler, std::span<const double> eps_grid,
                      std::uint64_t samples, std::uint64_t seed, const RunOptions& run = {});

}  // namespace noiselab
