#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "noiselab/bitvec.hpp"
#include "noiselab/estimators.hpp"
#include "noiselab/rng.hpp"

namespace noiselab {

// Linear indexing of the C(n,2) edge slots of the complete graph on
// {0..n-1}: index(u,v) = u n - u(u+1)/2 + (v-u-1) for u < v.
std::uint64_t edge_slots(std::uint32_t n);
std::uint64_t edge_index(std::uint32_t n, std::uint32_t u, std::uint32_t v);
std::pair<std::uint32_t, std::uint32_t> edge_pair(std::uint32_t n, std::uint64_t index);

// Edge configuration stored sparsely: sorted present-slot indices. Exactly
// the product measure picture, materializing only present edges.
struct SparseGraph {
    std::uint32_t n = 0;
    std::vector<std::uint64_t> edges;  // sorted linear slot indices

    std::size_t edge_count() const { return edges.size(); }
    bool has_edge(std::uint64_t slot) const;
};

struct Adjacency {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> offsets;
    std::vector<std::uint32_t> neighbors;

    static Adjacency build(const SparseGraph& g);
    std::span<const std::uint32_t> at(std::uint32_t v) const {
        return {neighbors.data() + offsets[v], neighbors.data() + offsets[v + 1]};
    }
    std::uint32_t degree(std::uint32_t v) const { return offsets[v + 1] - offsets[v]; }
};

// G(n,p) by geometric skipping over the slot range; O(expected edges) draws.
SparseGraph sample_gnp(std::uint32_t n, double p, RandomStream& stream);

// Resample each slot independently with probability eps: present edges
// survive unless resampled to 0, absent slots turn on at rate eps*p.
SparseGraph apply_edge_noise(const SparseGraph& g, double p, double eps, RandomStream& stream);

// Forces the listed slots present (or absent); the conditioned product
// measure given omega_W == 1 (resp. 0).
SparseGraph pin_edges(SparseGraph g, std::span<const std::uint64_t> witness, bool present);

SparseGraph graph_from_configuration(std::uint32_t n, const Configuration& config);
Configuration configuration_from_graph(const SparseGraph& g);

// A monotone graph property with an optional canonical witness. The oracle
// may return nullopt when its work budget is exhausted (counted by the
// estimators as inconclusive).
struct GraphProperty {
    std::string name;
    std::uint32_t n = 0;
    bool increasing = true;
    std::function<std::optional<bool>(const SparseGraph&)> oracle;
    std::vector<std::uint64_t> canonical_one_witness;
    std::vector<std::uint64_t> canonical_zero_witness;
};

// Minimum vertex degree >= k; canonical 0-witness is the star of vertex 0
// minus k-1 edges.
GraphProperty property_min_degree(std::uint32_t n, std::uint32_t k);

// Contains a simple cycle of length in the open interval
// (a n^{1/3}, b n^{1/3}). Detection peels to the 2-core and enumerates the
// achievable cycle lengths of each component kernel under a work budget.
GraphProperty property_cycle_in_range(std::uint32_t n, double a, double b,
                                      std::uint64_t work_budget = 4'000'000);

GraphProperty property_clique(std::uint32_t n, std::uint32_t k);

struct PatternGraph;  // patterns.hpp
GraphProperty property_contains(const PatternGraph& pattern, std::uint32_t n);

// Number of k-cliques; early_stop makes it an existence test.
std::uint64_t count_cliques(const Adjacency& adj, std::uint32_t k, bool early_stop = false);

// PairSampler over G(n,p) with optional pinned witness slots.
class GraphSampler final : public PairSampler {
public:
    GraphSampler(GraphProperty prop, double p);
    GraphSampler(GraphProperty prop, double p, std::vector<std::uint64_t> pinned, bool pin_present);

    void sample_pair(std::uint64_t seed, std::uint64_t index, std::span<const double> eps_grid,
                     std::uint8_t& f_base, std::span<std::uint8_t> f_noised) const override;

private:
    GraphProperty prop_;
    double p_;
    std::vector<std::uint64_t> pinned_;
    bool pin_present_ = true;
};

// Witness-conditioned noise gap for a graph property, mirroring the dense
// witness experiment: P(f(w^eps)=v | w_W == v) - P(f = v), where v = 1 for
// pinned-present witnesses and 0 for pinned-absent ones.
struct GraphWitnessGap {
    double conditioned = 0.0;
    double conditioned_stderr = 0.0;
    double base = 0.0;  // P(f = v)
    double base_stderr = 0.0;
    double gap = 0.0;
    double gap_stderr = 0.0;
    bool degenerate = false;
    std::uint64_t samples = 0;
};

GraphWitnessGap graph_witness_gap(const GraphProperty& prop, double p, double eps,
                                  std::span<const std::uint64_t> witness, bool pin_present,
                                  std::uint64_t samples, std::uint64_t seed,
                                  const RunOptions& run = {});

// Connected components by union-find; returns component id per vertex and
// the id of a largest component.
struct Components {
    std::vector<std::uint32_t> id;
    std::uint32_t largest = 0;
    std::uint64_t largest_size = 0;
};
Components connected_components(const Adjacency& adj);

}  // namespace noiselab
