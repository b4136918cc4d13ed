#include "noiselab/poisson.hpp"

#include <cmath>

#include "noiselab/moments.hpp"
#include "noiselab/parallel.hpp"

namespace noiselab {

double poisson_pmf(double lambda, std::uint64_t j) {
    return std::exp(-lambda + static_cast<double>(j) * std::log(lambda) -
                    std::lgamma(static_cast<double>(j) + 1.0));
}

double binomial_poisson_tv(std::uint64_t n, double q) {
    const double lambda = static_cast<double>(n) * q;
    const double log_q = std::log(q), log_1mq = std::log1p(-q);
    double acc = 0.0;
    double bin_tail = 1.0, po_tail = 1.0;
    for (std::uint64_t j = 0; j <= n; ++j) {
        const double jd = static_cast<double>(j);
        const double bin = std::exp(log_choose(static_cast<double>(n), jd) + jd * log_q +
                                    (static_cast<double>(n) - jd) * log_1mq);
        const double po = poisson_pmf(lambda, j);
        acc += std::fabs(bin - po);
        bin_tail -= bin;
        po_tail -= po;
        if (jd > lambda && bin_tail < 1e-15 && po_tail < 1e-15) break;
    }
    // Poisson mass beyond n (binomial has none there).
    if (po_tail > 0.0) acc += po_tail;
    return acc / 2.0;
}

namespace {

struct CountAcc {
    std::uint64_t n = 0;
    std::uint64_t sum = 0;
    std::uint64_t sumsq = 0;
    std::map<std::uint64_t, std::uint64_t> hist;
    void merge(const CountAcc& o) {
        n += o.n;
        sum += o.sum;
        sumsq += o.sumsq;
        for (auto [k, v] : o.hist) hist[k] += v;
    }
};

CountAcc run_counts(const PatternGraph& h, std::uint32_t n, double p,
                    const std::vector<std::uint64_t>& pinned_absent, std::uint64_t samples,
                    std::uint64_t seed, const RunOptions& run) {
    return run_indexed<CountAcc>(0, samples, run.workers, [&](std::uint64_t index, CountAcc& acc) {
        RandomStream stream = substream(seed, index, 0);
        SparseGraph g = sample_gnp(n, p, stream);
        if (!pinned_absent.empty()) g = pin_edges(std::move(g), pinned_absent, false);
        const std::uint64_t x = count_copies(h, Adjacency::build(g));
        ++acc.n;
        acc.sum += x;
        acc.sumsq += x * x;
        ++acc.hist[x];
    });
}

}  // namespace

PoissonDiagnostics poisson_diagnostics(const PatternGraph& h, std::uint32_t n, double p,
                                       std::uint64_t samples, std::uint64_t seed,
                                       const RunOptions& run) {
    PoissonDiagnostics out;
    out.samples = samples;
    out.seed = seed;
    out.lambda = expected_copies(h, n, p);
    out.max_witness_prob = std::exp(static_cast<double>(h.edge_count()) * std::log(p));

    const CountAcc acc = run_counts(h, n, p, {}, samples, mix64(seed ^ 0x243f6a8885a308d3ULL), run);
    const double nn = static_cast<double>(acc.n);
    out.mean = static_cast<double>(acc.sum) / nn;
    out.variance = (static_cast<double>(acc.sumsq) - nn * out.mean * out.mean) / (nn - 1.0);
    out.mean_stderr = std::sqrt(out.variance / nn);
    out.histogram = acc.hist;
    out.degenerate_zero = acc.sum == 0;

    const std::uint64_t zeros = acc.hist.count(0) ? acc.hist.at(0) : 0;
    out.prob_positive = 1.0 - static_cast<double>(zeros) / nn;
    out.nondegenerate = out.prob_positive > 0.02 && out.prob_positive < 0.98;

    if (!out.degenerate_zero) {
        out.tv_bound = out.variance / out.mean - 1.0 + 2.0 * out.max_witness_prob;

        // TV(histogram, Po(lambda)) = (1/2) sum_j |phat_j - q_j| plus the
        // Poisson mass on values never observed.
        double acc_tv = 0.0, seen_po_mass = 0.0, signed_sum = 0.0;
        std::uint64_t max_x = acc.hist.rbegin()->first;
        for (std::uint64_t j = 0; j <= max_x; ++j) {
            const double phat =
                static_cast<double>(acc.hist.count(j) ? acc.hist.at(j) : 0) / nn;
            const double q = poisson_pmf(out.lambda, j);
            acc_tv += std::fabs(phat - q);
            signed_sum += (phat >= q ? phat : -phat);
            seen_po_mass += q;
        }
        acc_tv += std::max(0.0, 1.0 - seen_po_mass);
        out.empirical_tv = acc_tv / 2.0;
        // Delta method with the observed sign pattern.
        const double d = signed_sum;
        out.empirical_tv_stderr = std::sqrt(std::max(0.0, 1.0 - d * d) / (4.0 * nn));
    }

    // Conditional run: pin the canonical placement absent.
    const auto witness = canonical_placement(h, n);
    const CountAcc cond =
        run_counts(h, n, p, witness, samples, mix64(seed ^ 0x452821e638d01377ULL), run);
    const double cn = static_cast<double>(cond.n);
    out.conditional_mean = static_cast<double>(cond.sum) / cn;
    const double cond_var =
        (static_cast<double>(cond.sumsq) - cn * out.conditional_mean * out.conditional_mean) /
        (cn - 1.0);
    out.conditional_mean_stderr = std::sqrt(std::max(cond_var, 0.0) / cn);
    return out;
}

}  // namespace noiselab
