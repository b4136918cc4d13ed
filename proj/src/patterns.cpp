#include "noiselab/patterns.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace noiselab {

bool PatternGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
    for (auto [a, b] : edges)
        if ((a == u && b == v) || (a == v && b == u)) return true;
    return false;
}

std::uint64_t PatternGraph::automorphisms() const {
    if (declared_aut) return *declared_aut;
    if (k > 10) throw std::invalid_argument("automorphism scan limited to 10 vertices; declare the count");
    std::vector<std::uint32_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t count = 0;
    do {
        bool ok = true;
        for (auto [u, v] : edges) {
            if (!has_edge(perm[u], perm[v])) { ok = false; break; }
        }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

PatternGraph pattern_clique(std::uint32_t k) {
    PatternGraph h;
    h.k = k;
    h.name = "K" + std::to_string(k);
    for (std::uint32_t u = 0; u < k; ++u)
        for (std::uint32_t v = u + 1; v < k; ++v) h.edges.emplace_back(u, v);
    std::uint64_t aut = 1;
    for (std::uint32_t i = 2; i <= k; ++i) aut *= i;
    h.declared_aut = aut;
    return h;
}

PatternGraph pattern_cycle(std::uint32_t length) {
    if (length < 3) throw std::invalid_argument("cycle pattern needs length >= 3");
    PatternGraph h;
    h.k = length;
    h.name = "C" + std::to_string(length);
    for (std::uint32_t i = 0; i < length; ++i) h.edges.emplace_back(i, (i + 1) % length);
    h.declared_aut = 2ULL * length;
    return h;
}

PatternGraph pattern_single_edge() {
    PatternGraph h;
    h.k = 2;
    h.edges.emplace_back(0, 1);
    h.declared_aut = 2;
    h.name = "K2";
    return h;
}

PatternGraph pattern_disjoint_edges(std::uint32_t count) {
    if (count < 1) throw std::invalid_argument("need at least one edge");
    PatternGraph h;
    h.k = 2 * count;
    h.name = std::to_string(count) + "K2";
    for (std::uint32_t i = 0; i < count; ++i) h.edges.emplace_back(2 * i, 2 * i + 1);
    std::uint64_t aut = 1;
    for (std::uint32_t i = 1; i <= count; ++i) aut *= i;  // permute the edges
    for (std::uint32_t i = 0; i < count; ++i) aut *= 2;   // swap each edge's ends
    h.declared_aut = aut;
    return h;
}

PatternGraph pattern_two_triangles_path(std::uint32_t path_length) {
    if (path_length < 1) throw std::invalid_argument("path length >= 1");
    PatternGraph h;
    h.name = "two-triangles-path" + std::to_string(path_length);
    // Triangle A on {0,1,2}, triangle B on the last three vertices, and a
    // path of path_length edges from vertex 2 to the first vertex of B.
    h.k = 6 + path_length - 1;
    std::uint32_t b0 = 2 + path_length;  // endpoint of the path, corner of B
    h.edges.emplace_back(0, 1);
    h.edges.emplace_back(0, 2);
    h.edges.emplace_back(1, 2);
    for (std::uint32_t i = 0; i < path_length; ++i) h.edges.emplace_back(2 + i, 2 + i + 1);
    h.edges.emplace_back(b0, b0 + 1);
    h.edges.emplace_back(b0, b0 + 2);
    h.edges.emplace_back(b0 + 1, b0 + 2);
    // Free corners of each triangle swap (2x2) and the whole graph mirrors.
    h.declared_aut = 8;
    return h;
}

PatternGraph parse_pattern(const std::string& text) {
    std::istringstream in(text);
    std::uint32_t k = 0;
    std::size_t l = 0;
    if (!(in >> k >> l)) throw std::invalid_argument("pattern text: expected header 'k l'");
    PatternGraph h;
    h.k = k;
    h.name = "pattern";
    for (std::size_t i = 0; i < l; ++i) {
        std::uint32_t u, v;
        if (!(in >> u >> v)) throw std::invalid_argument("pattern text: truncated edge list");
        if (u == v || u >= k || v >= k) throw std::invalid_argument("pattern text: bad edge");
        if (u > v) std::swap(u, v);
        h.edges.emplace_back(u, v);
    }
    std::sort(h.edges.begin(), h.edges.end());
    if (std::adjacent_find(h.edges.begin(), h.edges.end()) != h.edges.end())
        throw std::invalid_argument("pattern text: duplicate edge");
    return h;
}

std::string pattern_to_text(const PatternGraph& h) {
    std::string out = std::to_string(h.k) + " " + std::to_string(h.edges.size()) + "\n";
    for (auto [u, v] : h.edges) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

namespace {

bool adjacent(const Adjacency& adj, std::uint32_t u, std::uint32_t v) {
    const auto nu = adj.at(u);
    return std::binary_search(nu.begin(), nu.end(), v);
}

// Backtracking over an order that prefers pattern vertices with already
// mapped neighbors; candidates come from mapped-neighbor adjacency lists.
struct EmbeddingCounter {
    const PatternGraph& h;
    const Adjacency& adj;
    bool early_stop;
    std::vector<std::vector<std::uint32_t>> pat_adj;
    std::vector<std::uint32_t> order;
    std::vector<std::uint32_t> map;       // pattern -> graph
    std::vector<bool> used;
    std::uint64_t count = 0;

    EmbeddingCounter(const PatternGraph& hh, const Adjacency& a, bool stop)
        : h(hh), adj(a), early_stop(stop) {
        pat_adj.assign(h.k, {});
        for (auto [u, v] : h.edges) {
            pat_adj[u].push_back(v);
            pat_adj[v].push_back(u);
        }
        // Static order: repeatedly take the unplaced vertex with the most
        // placed neighbors, ties by degree.
        std::vector<bool> placed(h.k, false);
        for (std::uint32_t step = 0; step < h.k; ++step) {
            std::uint32_t best = UINT32_MAX;
            std::size_t best_key = 0;
            for (std::uint32_t v = 0; v < h.k; ++v) {
                if (placed[v]) continue;
                std::size_t placed_neigh = 0;
                for (std::uint32_t w : pat_adj[v]) placed_neigh += placed[w] ? 1 : 0;
                const std::size_t key = placed_neigh * 64 + pat_adj[v].size();
                if (best == UINT32_MAX || key > best_key) { best = v; best_key = key; }
            }
            order.push_back(best);
            placed[best] = true;
        }
        map.assign(h.k, UINT32_MAX);
        used.assign(adj.n, false);
    }

    bool place(std::uint32_t depth) {
        if (depth == h.k) {
            ++count;
            return early_stop;
        }
        const std::uint32_t pv = order[depth];
        // Candidate pool: neighbors of one mapped pattern-neighbor, or all
        // graph vertices when the pattern vertex starts a new component.
        std::uint32_t anchor = UINT32_MAX;
        for (std::uint32_t w : pat_adj[pv])
            if (map[w] != UINT32_MAX) { anchor = map[w]; break; }
        auto try_vertex = [&](std::uint32_t g) -> bool {
            if (used[g]) return false;
            if (adj.degree(g) < pat_adj[pv].size()) return false;
            for (std::uint32_t w : pat_adj[pv]) {
                if (map[w] == UINT32_MAX) continue;
                if (!adjacent(adj, g, map[w])) return false;
            }
            map[pv] = g;
            used[g] = true;
            const bool stop = place(depth + 1);
            used[g] = false;
            map[pv] = UINT32_MAX;
            return stop;
        };
        if (anchor != UINT32_MAX) {
            for (std::uint32_t g : adj.at(anchor))
                if (try_vertex(g)) return true;
        } else {
            for (std::uint32_t g = 0; g < adj.n; ++g)
                if (try_vertex(g)) return true;
        }
        return false;
    }
};

}  // namespace

std::uint64_t count_copies(const PatternGraph& h, const Adjacency& adj, bool early_stop) {
    if (h.k > 12) throw std::invalid_argument("pattern too large for backtracking count (k <= 12)");
    if (h.k > adj.n) return 0;
    EmbeddingCounter counter(h, adj, early_stop);
    counter.place(0);
    if (early_stop) return counter.count > 0 ? 1 : 0;
    return counter.count / h.automorphisms();
}

std::vector<std::uint64_t> canonical_placement(const PatternGraph& h, std::uint32_t n) {
    if (h.k > n) throw std::invalid_argument("pattern larger than host graph");
    std::vector<std::uint64_t> slots;
    slots.reserve(h.edges.size());
    for (auto [u, v] : h.edges) slots.push_back(edge_index(n, u, v));
    std::sort(slots.begin(), slots.end());
    return slots;
}

GraphProperty property_contains(const PatternGraph& pattern, std::uint32_t n) {
    GraphProperty prop;
    prop.name = "contains-" + (pattern.name.empty() ? "pattern" : pattern.name);
    prop.n = n;
    prop.increasing = true;
    PatternGraph h = pattern;
    prop.oracle = [h](const SparseGraph& g) -> std::optional<bool> {
        return count_copies(h, Adjacency::build(g), true) > 0;
    };
    prop.canonical_one_witness = canonical_placement(pattern, n);
    return prop;
}

BalanceFlags strictly_balanced(const PatternGraph& h) {
    if (h.k < 1 || h.k > 24) throw std::invalid_argument("balance scan limited to 1..24 vertices");
    std::vector<std::uint32_t> vertex_mask(h.k, 0);
    for (auto [u, v] : h.edges) {
        vertex_mask[u] |= 1u << v;
        vertex_mask[v] |= 1u << u;
    }
    const std::uint64_t e_h = h.edges.size();
    const std::uint64_t v_h = h.k;
    BalanceFlags flags;
    flags.density = static_cast<double>(e_h) / static_cast<double>(v_h);
    flags.balanced = true;
    flags.strictly_balanced = true;
    const std::uint32_t full = (1u << h.k) - 1;
    double max_density = 0.0;
    for (std::uint32_t s = 1; s <= full; ++s) {
        if (s == full) continue;
        std::uint64_t e_s = 0;
        std::uint32_t rest = s;
        while (rest) {
            const std::uint32_t v = std::countr_zero(rest);
            rest &= rest - 1;
            e_s += std::popcount(vertex_mask[v] & s);
        }
        e_s /= 2;
        const std::uint64_t v_s = std::popcount(s);
        // e(S)/v(S) vs e(H)/v(H) in integers
        const std::uint64_t lhs = e_s * v_h;
        const std::uint64_t rhs = e_h * v_s;
        if (lhs > rhs) flags.balanced = false;
        if (lhs >= rhs) flags.strictly_balanced = false;
        max_density = std::max(max_density, static_cast<double>(e_s) / static_cast<double>(v_s));
    }
    flags.max_proper_density = max_density;
    if (!flags.balanced) flags.strictly_balanced = false;
    return flags;
}

}  // namespace noiselab
