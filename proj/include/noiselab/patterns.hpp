#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noiselab/graphs.hpp"

namespace noiselab {

// A small fixed pattern graph H. Automorphism count is computed by brute
// permutation scan for k <= 10; larger patterns must declare it.
struct PatternGraph {
    std::uint32_t k = 0;                                  // vertex count
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::optional<std::uint64_t> declared_aut;
    std::string name;

    std::size_t edge_count() const { return edges.size(); }
    std::uint64_t automorphisms() const;
    bool has_edge(std::uint32_t u, std::uint32_t v) const;
};

PatternGraph pattern_clique(std::uint32_t k);
PatternGraph pattern_cycle(std::uint32_t length);
PatternGraph pattern_single_edge();
PatternGraph pattern_disjoint_edges(std::uint32_t count);
// Two triangles whose corners are joined by a path of `path_length` edges.
PatternGraph pattern_two_triangles_path(std::uint32_t path_length);

// Edge-list text: first line "k l", then l lines "u v", 0-indexed.
PatternGraph parse_pattern(const std::string& text);
std::string pattern_to_text(const PatternGraph& h);

// Number of unlabeled copies of H in g (labeled embeddings / aut).
std::uint64_t count_copies(const PatternGraph& h, const Adjacency& adj, bool early_stop = false);

// Slots of a fixed canonical placement of H on the lowest vertex labels.
std::vector<std::uint64_t> canonical_placement(const PatternGraph& h, std::uint32_t n);

struct BalanceFlags {
    bool balanced = false;
    bool strictly_balanced = false;
    double density = 0.0;            // e(H)/v(H)
    double max_proper_density = 0.0;
};

// Exhaustive density scan over vertex subsets; exact in integer arithmetic.
BalanceFlags strictly_balanced(const PatternGraph& h);

}  // namespace noiselab
