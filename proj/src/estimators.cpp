#include "noiselab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "noiselab/parallel.hpp"
#include "noiselab/rng.hpp"
#include "noiselab/sampling.hpp"

namespace noiselab {

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("NOISE_LAB_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

DenseSampler::DenseSampler(BooleanFunction f, double p) : f_(std::move(f)), p_(p) {}

DenseSampler::DenseSampler(BooleanFunction f, double p, std::vector<std::uint32_t> pinned,
                           bool pin_value)
    : f_(std::move(f)), p_(p), pinned_(std::move(pinned)), pin_value_(pin_value) {}

void DenseSampler::sample_pair(std::uint64_t seed, std::uint64_t index,
                               std::span<const double> eps_grid,
                               std::uint8_t& f_base, std::span<std::uint8_t> f_noised) const {
    RandomStream base_stream = substream(seed, index, 0);
    Configuration omega = sample_configuration(f_.arity(), p_, base_stream);
    if (pinned_.empty()) {
        f_base = f_.eval(omega) ? 1 : 0;
        for (std::size_t e = 0; e < eps_grid.size(); ++e) {
            RandomStream noise_stream = substream(seed, index, 1 + e);
            const Configuration noised = apply_noise(omega, {p_, eps_grid[e]}, noise_stream);
            f_noised[e] = f_.eval(noised) ? 1 : 0;
        }
        return;
    }
    // Witness conditioning by pinning; the same base sample is shared across
    // the grid (common random numbers) while each eps gets its own stream.
    for (std::size_t e = 0; e < eps_grid.size(); ++e) {
        RandomStream noise_stream = substream(seed, index, 1 + e);
        auto [pinned_omega, noised] = apply_noise_conditioned(
            omega, pinned_, {p_, eps_grid[e]}, noise_stream, pin_value_);
        f_noised[e] = f_.eval(noised) ? 1 : 0;
        if (e + 1 == eps_grid.size()) f_base = f_.eval(pinned_omega) ? 1 : 0;
    }
    if (eps_grid.empty()) {
        for (std::uint32_t i : pinned_) omega.set(i, pin_value_);
        f_base = f_.eval(omega) ? 1 : 0;
    }
}

void PairCounts::resize(std::size_t grid) {
    noised_one.assign(grid, 0);
    both_one.assign(grid, 0);
    inconclusive.assign(grid, 0);
}

void PairCounts::merge(const PairCounts& o) {
    if (o.noised_one.empty()) return;  // untouched accumulator
    if (noised_one.empty()) resize(o.noised_one.size());
    samples += o.samples;
    base_one += o.base_one;
    base_inconclusive += o.base_inconclusive;
    for (std::size_t e = 0; e < noised_one.size(); ++e) {
        noised_one[e] += o.noised_one[e];
        both_one[e] += o.both_one[e];
        inconclusive[e] += o.inconclusive[e];
    }
}

PairCounts collect_pair_counts(const PairSampler& sampler, std::span<const double> eps_grid,
                               std::uint64_t samples, std::uint64_t seed, const RunOptions& run,
                               std::uint64_t first_index) {
    if (eps_grid.size() > 254) throw std::invalid_argument("eps grid limited to 254 points");
    struct Acc {
        PairCounts counts;
        std::vector<std::uint8_t> scratch;
        void merge(const Acc& o) { counts.merge(o.counts); }
    };
    auto body = [&](std::uint64_t index, Acc& acc) {
        if (acc.counts.noised_one.empty()) {
            acc.counts.resize(eps_grid.size());
            acc.scratch.resize(eps_grid.size());
        }
        std::uint8_t base = 0;
        sampler.sample_pair(seed, index, eps_grid, base, acc.scratch);
        ++acc.counts.samples;
        const bool base_one = base == 1;
        if (base_one) ++acc.counts.base_one;
        if (base == PairSampler::kInconclusive) ++acc.counts.base_inconclusive;
        for (std::size_t e = 0; e < eps_grid.size(); ++e) {
            const std::uint8_t v = acc.scratch[e];
            if (v == PairSampler::kInconclusive) { ++acc.counts.inconclusive[e]; continue; }
            if (v) {
                ++acc.counts.noised_one[e];
                if (base_one) ++acc.counts.both_one[e];
            }
        }
    };
    Acc out = run_indexed<Acc>(first_index, samples, run.workers, body);
    if (out.counts.noised_one.empty()) out.counts.resize(eps_grid.size());
    return out.counts;
}

namespace {

// Covariance/gap functionals evaluated with one observation of cell (x,y)
// removed; cells are (1,1), (1,0), (0,1), (0,0).
struct CellDeleter {
    double n, s1, s2, s11;
    double cov(double a, double b) const {
        const double m = n - 1.0;
        return (s11 - a * b) / m - (s1 - a) * (s2 - b) / (m * m);
    }
    double gap(double a, double b) const {
        const double m = n - 1.0;
        const double s1d = s1 - a;
        if (s1d <= 0.0) return 0.0;
        return (s11 - a * b) / s1d - s1d / m;
    }
    double corr(double a, double b) const {
        const double m = n - 1.0;
        const double mean = (s1 - a) / m;
        const double var = mean * (1.0 - mean);
        if (var <= 0.0) return 0.0;
        return cov(a, b) / var;
    }
};

template <class F>
double jackknife_stderr(const std::uint64_t cells[4], double n, F&& value) {
    // cells: counts of (x,y) = (1,1), (1,0), (0,1), (0,0)
    static constexpr int kA[4] = {1, 1, 0, 0};
    static constexpr int kB[4] = {1, 0, 1, 0};
    double theta[4];
    double mean = 0.0;
    for (int c = 0; c < 4; ++c) {
        theta[c] = value(kA[c], kB[c]);
        mean += static_cast<double>(cells[c]) * theta[c];
    }
    mean /= n;
    double ss = 0.0;
    for (int c = 0; c < 4; ++c) {
        const double d = theta[c] - mean;
        ss += static_cast<double>(cells[c]) * d * d;
    }
    return std::sqrt((n - 1.0) / n * ss);
}

}  // namespace

PairStatistics pair_statistics(const PairCounts& counts, std::size_t eps_index) {
    PairStatistics st{};
    const double n = static_cast<double>(counts.samples);
    const std::uint64_t s1 = counts.base_one;
    const std::uint64_t s2 = counts.noised_one[eps_index];
    const std::uint64_t s11 = counts.both_one[eps_index];
    const std::uint64_t cells[4] = {s11, s1 - s11, s2 - s11, counts.samples - s1 - s2 + s11};

    const double m1 = static_cast<double>(s1) / n;
    const double m2 = static_cast<double>(s2) / n;
    const double m11 = static_cast<double>(s11) / n;
    st.covariance = m11 - m1 * m2;
    st.flip = m1 + m2 - 2.0 * m11;
    st.degenerate = (s1 == 0 || s1 == counts.samples);

    const CellDeleter del{n, static_cast<double>(s1), static_cast<double>(s2),
                          static_cast<double>(s11)};
    st.covariance_stderr =
        jackknife_stderr(cells, n, [&](int a, int b) { return del.cov(a, b); });
    if (s1 > 0) {
        st.conditional = static_cast<double>(s11) / static_cast<double>(s1);
        st.conditional_stderr =
            std::sqrt(st.conditional * (1.0 - st.conditional) / static_cast<double>(s1));
        st.gap = st.conditional - m1;
        st.gap_stderr = jackknife_stderr(cells, n, [&](int a, int b) { return del.gap(a, b); });
    } else {
        st.conditional = 0.0;
        st.conditional_stderr = 0.0;
        st.gap = 0.0;
        st.gap_stderr = 0.0;
    }
    const double var = m1 * (1.0 - m1);
    if (var > 0.0) {
        st.correlation = st.covariance / var;
        st.correlation_stderr =
            jackknife_stderr(cells, n, [&](int a, int b) { return del.corr(a, b); });
    } else {
        st.correlation = 0.0;
        st.correlation_stderr = 0.0;
    }
    return st;
}

Estimate estimate_covariance(const PairSampler& sampler, double eps, std::uint64_t samples,
                             std::uint64_t seed, const RunOptions& run) {
    if (samples < 100) throw std::invalid_argument("estimate_covariance: need at least 100 samples");
    const double grid[1] = {eps};
    const PairCounts counts = collect_pair_counts(sampler, grid, samples, seed, run);
    const PairStatistics st = pair_statistics(counts, 0);
    return Estimate{st.covariance, st.covariance_stderr, counts.samples, seed, st.degenerate};
}

ConditionalEstimate estimate_conditional(const PairSampler& sampler, double eps,
                                         std::uint64_t samples, std::uint64_t seed,
                                         const RunOptions& run, std::uint64_t min_positives,
                                         std::uint64_t budget_cap) {
    const double grid[1] = {eps};
    PairCounts counts;
    counts.resize(1);
    std::uint64_t next_index = 0;
    std::uint64_t batch = samples;
    const std::uint64_t cap = samples * std::max<std::uint64_t>(budget_cap, 1);
    for (;;) {
        counts.merge(collect_pair_counts(sampler, grid, batch, seed, run, next_index));
        next_index += batch;
        if (counts.base_one >= min_positives || next_index >= cap) break;
        batch = std::min(next_index, cap - next_index);  // double the total each round
    }
    const PairStatistics st = pair_statistics(counts, 0);
    ConditionalEstimate out;
    out.positives = counts.base_one;
    out.prob_one = counts.prob_base();
    out.budget_exhausted = counts.base_one < min_positives;
    const bool degenerate = st.degenerate || out.budget_exhausted;
    out.conditional = Estimate{st.conditional, st.conditional_stderr, counts.samples, seed, degenerate};
    out.gap = Estimate{st.gap, st.gap_stderr, counts.samples, seed, degenerate};
    return out;
}

SweepResult sweep_eps(const PairSampler& sampler, std::span<const double> eps_grid,
                      std::uint64_t samples, std::uint64_t seed, const RunOptions& run) {
    for (std::size_t e = 1; e < eps_grid.size(); ++e)
        if (!(eps_grid[e] > eps_grid[e - 1]))
            throw std::invalid_argument("sweep_eps: grid must be strictly increasing");
    const PairCounts counts = collect_pair_counts(sampler, eps_grid, samples, seed, run);
    SweepResult out;
    out.samples = counts.samples;
    out.seed = seed;
    out.prob_one = counts.prob_base();
    out.base_inconclusive = counts.base_inconclusive;
    for (std::size_t e = 0; e < eps_grid.size(); ++e) {
        const PairStatistics st = pair_statistics(counts, e);
        SweepRow row;
        row.eps = eps_grid[e];
        row.covariance = Estimate{st.covariance, st.covariance_stderr, counts.samples, seed, st.degenerate};
        row.correlation = st.correlation;
        row.correlation_stderr = st.correlation_stderr;
        row.flip = st.flip;
        row.inconclusive = counts.inconclusive[e];
        if (!out.crossing_eps && st.correlation < 0.5) out.crossing_eps = eps_grid[e];
        out.rows.push_back(row);
    }
    return out;
}

std::string SweepResult::csv() const {
    std::string out = "eps,estimate,stderr,samples,seed,correlation,flip\n";
    char buf[256];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%llu,%llu,%.17g,%.17g\n", row.eps,
                      row.covariance.value, row.covariance.stderr_,
                      static_cast<unsigned long long>(row.covariance.samples),
                      static_cast<unsigned long long>(row.covariance.seed), row.correlation,
                      row.flip);
        out += buf;
    }
    return out;
}

}  // namespace noiselab
