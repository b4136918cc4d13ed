#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "noiselab/estimators.hpp"
#include "noiselab/graphs.hpp"

namespace noiselab {

// Noise robustness of triangles in the giant component of G(n, lambda/n):
// conditional retention of the event {>= k triangles in C_1}, pairwise
// triangle distances, and the existence of fixed-length simple paths
// between sampled triangle pairs via two-sided layer growth.
struct GiantRobustnessReport {
    std::uint32_t n = 0;
    double lambda = 0.0;
    double eps = 0.0;
    std::uint32_t k_triangles = 1;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    double prob_event = 0.0;        // P(Delta_k)
    double prob_event_noised = 0.0;
    double conditional = 0.0;       // P(Delta_k(w^eps)=1 | Delta_k(w)=1)
    double gap = 0.0;               // conditional - P(Delta_k)
    double gap_stderr = 0.0;
    bool degenerate = false;

    double mean_triangles = 0.0;    // triangles inside C_1
    double frac_pairs_far = 0.0;    // dist >= (1/2) log_lambda n among sampled pairs
    double path_success = 0.0;      // length-r_n simple path found
    std::uint64_t pair_attempts = 0;
    std::uint32_t path_length = 0;  // r_n = floor(1.5 log_lambda n)
};

GiantRobustnessReport giant_robustness_experiment(std::uint32_t n, double lambda, double eps,
                                                  std::uint32_t k_triangles, std::uint64_t samples,
                                                  std::uint64_t seed, const RunOptions& run = {});

// Triangle count restricted to vertices with comp[v] == comp_id; fills
// `corners` with one vertex triple per triangle up to its capacity.
std::uint64_t count_triangles_in_component(const Adjacency& adj,
                                           const std::vector<std::uint32_t>& comp,
                                           std::uint32_t comp_id,
                                           std::vector<std::array<std::uint32_t, 3>>* corners,
                                           std::size_t corner_cap);

}  // namespace noiselab
