#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "noiselab/estimators.hpp"
#include "noiselab/patterns.hpp"

namespace noiselab {

// Chen-Stein style diagnostics for the copy count X of a pattern in G(n,p):
// moment estimates, the total-variation bound Var/E - 1 + 2 max_W P(I_W),
// and the empirical distance of the sampled histogram to Po(lambda).
struct PoissonDiagnostics {
    double lambda = 0.0;            // analytic E[X]
    double mean = 0.0;              // MC estimate of E[X]
    double mean_stderr = 0.0;
    double variance = 0.0;          // MC estimate of Var(X)
    double conditional_mean = 0.0;  // MC estimate of E[X | w_{W*} == 0]
    double conditional_mean_stderr = 0.0;
    double max_witness_prob = 0.0;  // p^{e(H)}
    double tv_bound = 0.0;          // variance/mean - 1 + 2 max_witness_prob
    double empirical_tv = 0.0;      // TV(histogram, Po(lambda))
    double empirical_tv_stderr = 0.0;
    double prob_positive = 0.0;     // P(X > 0)
    bool degenerate_zero = false;   // E[X] estimated as numerically 0
    bool nondegenerate = false;     // P(X>0) inside (0.02, 0.98)
    std::map<std::uint64_t, std::uint64_t> histogram;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

PoissonDiagnostics poisson_diagnostics(const PatternGraph& h, std::uint32_t n, double p,
                                       std::uint64_t samples, std::uint64_t seed,
                                       const RunOptions& run = {});

// Exact total-variation distance between Bin(n, q) and Po(nq).
double binomial_poisson_tv(std::uint64_t n, double q);

double poisson_pmf(double lambda, std::uint64_t j);

}  // namespace noiselab
