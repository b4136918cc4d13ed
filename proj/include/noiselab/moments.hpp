#pragma once

#include <cstdint>
#include <vector>

#include "noiselab/patterns.hpp"

namespace noiselab {

// log C(n, k) via lgamma; exact enough for the 1e-10 relative contracts.
double log_choose(double n, double k);

// log E[X] for the number of unlabeled copies of H in G(n,p):
// E[X] = C(n,k) p^l k!/aut(H).
double expected_copies_log(const PatternGraph& h, std::uint64_t n, double p);
double expected_copies(const PatternGraph& h, std::uint64_t n, double p);

// E[X_k] = C(n,k) p^{C(k,2)} for k-cliques.
double expected_cliques_log(std::uint64_t n, std::uint64_t k, double p);
double expected_cliques(std::uint64_t n, std::uint64_t k, double p);

// Solves E[X_k] = target for p.
double clique_bias_for_mean(std::uint64_t n, std::uint64_t k, double target);

// Sum of E[#cycles of length l] = (1/2) C(n,l) (l-1)! p^l over integer
// lengths in the open window (a n^{1/3}, b n^{1/3}), log-sum-exp.
double expected_cycles_in_range(std::uint64_t n, double p, double a, double b);

// Overlap-pair second-moment table for k-cliques:
// Delta_i = C(n,k) C(k,i) C(n-k,k-i) p^{2 C(k,2) - C(i,2)}, i = 2..k-1.
struct CliqueMoments {
    double expected = 0.0;        // E[X]
    double log_expected = 0.0;
    std::vector<double> delta;    // delta[i] for i = 2..k-1 (index 0 -> i=2)
    double delta_sum = 0.0;
    double variance_bound = 0.0;  // E[X] + sum delta
    double delta_ratio = 0.0;     // sum delta / (E X)^2
    bool negligible_overlap = false;
};

CliqueMoments clique_overlap_moments(std::uint64_t n, std::uint64_t k, double p);

// Two-clique overlap term
// Delta_{i,j} = C(n-2k, k-i-j) C(k,i) C(k,j) p^{C(k,2)-C(i,2)-C(j,2)}.
double two_clique_overlap_term(std::uint64_t n, std::uint64_t k, double p, std::uint64_t i,
                               std::uint64_t j);

}  // namespace noiselab
