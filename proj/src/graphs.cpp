#include "noiselab/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "noiselab/patterns.hpp"

namespace noiselab {

std::uint64_t edge_slots(std::uint32_t n) {
    return static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

std::uint64_t edge_index(std::uint32_t n, std::uint32_t u, std::uint32_t v) {
    if (u > v) std::swap(u, v);
    if (u == v || v >= n) throw std::out_of_range("edge_index: invalid pair");
    const std::uint64_t uu = u;
    return uu * n - uu * (uu + 1) / 2 + (v - u - 1);
}

namespace {
inline std::uint64_t row_start(std::uint32_t n, std::uint64_t u) {
    return u * n - u * (u + 1) / 2;
}
}  // namespace

std::pair<std::uint32_t, std::uint32_t> edge_pair(std::uint32_t n, std::uint64_t index) {
    if (index >= edge_slots(n)) throw std::out_of_range("edge_pair: index out of range");
    const double nd = static_cast<double>(n);
    double est = nd - 0.5 - std::sqrt((nd - 0.5) * (nd - 0.5) - 2.0 * static_cast<double>(index));
    std::uint64_t u = est <= 0.0 ? 0 : static_cast<std::uint64_t>(est);
    if (u >= n - 1) u = n - 2;
    while (u > 0 && row_start(n, u) > index) --u;
    while (row_start(n, u + 1) <= index) ++u;
    const std::uint32_t v = static_cast<std::uint32_t>(u + 1 + (index - row_start(n, u)));
    return {static_cast<std::uint32_t>(u), v};
}

bool SparseGraph::has_edge(std::uint64_t slot) const {
    return std::binary_search(edges.begin(), edges.end(), slot);
}

Adjacency Adjacency::build(const SparseGraph& g) {
    Adjacency adj;
    adj.n = g.n;
    adj.offsets.assign(g.n + 1, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(g.edges.size());
    for (std::uint64_t slot : g.edges) pairs.push_back(edge_pair(g.n, slot));
    for (auto [u, v] : pairs) {
        ++adj.offsets[u + 1];
        ++adj.offsets[v + 1];
    }
    for (std::uint32_t v = 0; v < g.n; ++v) adj.offsets[v + 1] += adj.offsets[v];
    adj.neighbors.resize(2 * pairs.size());
    std::vector<std::uint32_t> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
    // Slot order is u-major then v-ascending, so every per-vertex list is
    // filled in ascending order.
    for (auto [u, v] : pairs) {
        adj.neighbors[cursor[u]++] = v;
        adj.neighbors[cursor[v]++] = u;
    }
    return adj;
}

SparseGraph sample_gnp(std::uint32_t n, double p, RandomStream& stream) {
    if (n < 1) throw std::invalid_argument("sample_gnp: need at least one vertex");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sample_gnp: p must lie strictly inside (0,1)");
    SparseGraph g;
    g.n = n;
    const std::uint64_t slots = edge_slots(n);
    const double denom = std::log1p(-p);
    std::uint64_t pos = 0;
    while (pos < slots) {
        const double skip = std::floor(std::log(stream.next_unit_pos()) / denom);
        if (skip >= static_cast<double>(slots - pos)) break;
        pos += static_cast<std::uint64_t>(skip);
        if (pos >= slots) break;
        g.edges.push_back(pos);
        ++pos;
    }
    return g;
}

SparseGraph apply_edge_noise(const SparseGraph& g, double p, double eps, RandomStream& stream) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("apply_edge_noise: eps must lie in [0,1]");
    if (eps == 0.0) return g;
    const double kill = eps * (1.0 - p);
    SparseGraph out;
    out.n = g.n;
    out.edges.reserve(g.edges.size());
    for (std::uint64_t slot : g.edges)
        if (!(stream.next_unit() < kill)) out.edges.push_back(slot);

    // Absent slots turn on at rate eps*p; hits on present slots are ignored
    // (their fate was decided by the survival pass).
    const double grow = eps * p;
    std::vector<std::uint64_t> added;
    if (grow > 0.0) {
        const std::uint64_t slots = edge_slots(g.n);
        const double denom = std::log1p(-grow);
        std::uint64_t pos = 0;
        while (pos < slots) {
            const double skip = std::floor(std::log(stream.next_unit_pos()) / denom);
            if (skip >= static_cast<double>(slots - pos)) break;
            pos += static_cast<std::uint64_t>(skip);
            if (pos >= slots) break;
            if (!g.has_edge(pos)) added.push_back(pos);
            ++pos;
        }
    }
    std::vector<std::uint64_t> merged(out.edges.size() + added.size());
    std::merge(out.edges.begin(), out.edges.end(), added.begin(), added.end(), merged.begin());
    out.edges.swap(merged);
    return out;
}

SparseGraph pin_edges(SparseGraph g, std::span<const std::uint64_t> witness, bool present) {
    std::vector<std::uint64_t> w(witness.begin(), witness.end());
    std::sort(w.begin(), w.end());
    if (present) {
        std::vector<std::uint64_t> merged;
        merged.reserve(g.edges.size() + w.size());
        std::merge(g.edges.begin(), g.edges.end(), w.begin(), w.end(), std::back_inserter(merged));
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        g.edges.swap(merged);
    } else {
        std::vector<std::uint64_t> kept;
        kept.reserve(g.edges.size());
        std::set_difference(g.edges.begin(), g.edges.end(), w.begin(), w.end(),
                            std::back_inserter(kept));
        g.edges.swap(kept);
    }
    return g;
}

SparseGraph graph_from_configuration(std::uint32_t n, const Configuration& config) {
    if (config.size() != edge_slots(n)) throw std::invalid_argument("configuration length != C(n,2)");
    SparseGraph g;
    g.n = n;
    for (std::uint64_t slot = 0; slot < config.size(); ++slot)
        if (config.test(slot)) g.edges.push_back(slot);
    return g;
}

Configuration configuration_from_graph(const SparseGraph& g) {
    Configuration c(edge_slots(g.n));
    for (std::uint64_t slot : g.edges) c.set(slot, true);
    return c;
}

GraphProperty property_min_degree(std::uint32_t n, std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("min-degree property needs k >= 1");
    GraphProperty prop;
    prop.name = "min-degree-" + std::to_string(k);
    prop.n = n;
    prop.increasing = true;
    prop.oracle = [n, k](const SparseGraph& g) -> std::optional<bool> {
        std::vector<std::uint32_t> degree(n, 0);
        for (std::uint64_t slot : g.edges) {
            const auto [u, v] = edge_pair(n, slot);
            ++degree[u];
            ++degree[v];
        }
        for (std::uint32_t v = 0; v < n; ++v)
            if (degree[v] < k) return false;
        return true;
    };
    // Star of vertex 0 minus k-1 edges: forcing these absent caps deg(0) at k-1.
    for (std::uint32_t v = 1; v + (k - 1) < n; ++v)
        prop.canonical_zero_witness.push_back(edge_index(n, 0, v));
    return prop;
}

namespace {

// Enumerates the simple-cycle lengths of one 2-core component through its
// kernel (degree>=3 vertices joined by chains). Returns true if some cycle
// length lands in (lo, hi); sets inconclusive when the budget runs out.
class KernelCycleScan {
public:
    KernelCycleScan(std::uint64_t lo, std::uint64_t hi, std::uint64_t budget)
        : lo_(lo), hi_(hi), budget_(budget) {}

    struct KernelEdge {
        std::uint32_t a, b;
        std::uint64_t length;
    };

    void add_edge(std::uint32_t a, std::uint32_t b, std::uint64_t length) {
        if (a == b) {
            // A chain returning to its kernel vertex is itself a cycle.
            check(length);
            return;
        }
        edges_.push_back({a, b, length});
    }

    bool found() const { return found_; }
    bool inconclusive() const { return budget_ == 0; }

    void run(std::uint32_t kernel_vertices) {
        if (found_ || budget_ == 0) return;
        adj_.assign(kernel_vertices, {});
        for (std::uint32_t e = 0; e < edges_.size(); ++e) {
            adj_[edges_[e].a].push_back(e);
            adj_[edges_[e].b].push_back(e);
        }
        // Parallel chains between the same kernel pair close into cycles.
        for (std::uint32_t e = 0; e < edges_.size() && !found_; ++e)
            for (std::uint32_t f = e + 1; f < edges_.size() && !found_; ++f)
                if (((edges_[e].a == edges_[f].a && edges_[e].b == edges_[f].b) ||
                     (edges_[e].a == edges_[f].b && edges_[e].b == edges_[f].a)))
                    check(edges_[e].length + edges_[f].length);
        // Vertex-simple kernel cycles on >= 3 kernel vertices, rooted at
        // their minimal vertex.
        used_edge_.assign(edges_.size(), false);
        on_path_.assign(kernel_vertices, false);
        for (std::uint32_t s = 0; s < kernel_vertices && !found_ && budget_ > 0; ++s) {
            root_ = s;
            on_path_[s] = true;
            dfs(s, 0, 0);
            on_path_[s] = false;
        }
    }

private:
    void check(std::uint64_t length) {
        if (length > lo_ && length < hi_) found_ = true;
    }

    void dfs(std::uint32_t v, std::uint64_t length, std::uint32_t depth) {
        if (found_ || budget_ == 0) return;
        for (std::uint32_t e : adj_[v]) {
            if (found_) return;
            if (budget_ == 0) return;
            --budget_;
            if (used_edge_[e]) continue;
            const auto& ke = edges_[e];
            const std::uint32_t w = ke.a == v ? ke.b : ke.a;
            if (w == root_) {
                if (depth >= 2) check(length + ke.length);
                continue;
            }
            if (w < root_ || on_path_[w]) continue;
            used_edge_[e] = true;
            on_path_[w] = true;
            dfs(w, length + ke.length, depth + 1);
            on_path_[w] = false;
            used_edge_[e] = false;
        }
    }

    std::uint64_t lo_, hi_, budget_;
    bool found_ = false;
    std::vector<KernelEdge> edges_;
    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<bool> used_edge_;
    std::vector<bool> on_path_;
    std::uint32_t root_ = 0;
};

}  // namespace

GraphProperty property_cycle_in_range(std::uint32_t n, double a, double b,
                                      std::uint64_t work_budget) {
    if (!(a > 0.0 && a < b)) throw std::invalid_argument("cycle property needs 0 < a < b");
    const double scale = std::cbrt(static_cast<double>(n));
    // Open interval (a n^{1/3}, b n^{1/3}); cycle lengths start at 3.
    std::uint64_t lo = static_cast<std::uint64_t>(std::floor(a * scale));
    std::uint64_t hi = static_cast<std::uint64_t>(std::ceil(b * scale));
    GraphProperty prop;
    prop.name = "cycle-in-range";
    prop.n = n;
    prop.increasing = true;
    const double lo_real = a * scale, hi_real = b * scale;
    prop.oracle = [n, lo_real, hi_real, work_budget](const SparseGraph& g) -> std::optional<bool> {
        Adjacency adj = Adjacency::build(g);
        // Peel to the 2-core.
        std::vector<std::uint32_t> degree(n);
        for (std::uint32_t v = 0; v < n; ++v) degree[v] = adj.degree(v);
        std::vector<std::uint32_t> stack;
        for (std::uint32_t v = 0; v < n; ++v)
            if (degree[v] == 1) stack.push_back(v);
        std::vector<bool> removed(n, false);
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            if (removed[v]) continue;
            removed[v] = true;
            for (std::uint32_t w : adj.at(v)) {
                if (removed[w]) continue;
                if (--degree[w] == 1) stack.push_back(w);
            }
        }
        // Scan 2-core components.
        std::vector<std::uint8_t> seen(n, 0);
        std::vector<std::uint32_t> comp;
        bool inconclusive = false;
        for (std::uint32_t s = 0; s < n; ++s) {
            if (removed[s] || seen[s] || degree[s] == 0) continue;
            comp.clear();
            comp.push_back(s);
            seen[s] = 1;
            std::uint64_t edge_ends = 0;
            for (std::size_t head = 0; head < comp.size(); ++head) {
                const std::uint32_t v = comp[head];
                for (std::uint32_t w : adj.at(v)) {
                    if (removed[w]) continue;
                    ++edge_ends;
                    if (!seen[w]) { seen[w] = 1; comp.push_back(w); }
                }
            }
            const std::uint64_t vertices = comp.size();
            const std::uint64_t edges = edge_ends / 2;
            if (vertices < 3) continue;
            if (edges == vertices) {
                // Pure cycle component.
                const double len = static_cast<double>(vertices);
                if (len > lo_real && len < hi_real) return true;
                continue;
            }
            // Complex component: contract chains between kernel (degree>=3)
            // vertices, then enumerate kernel cycle lengths. Integer length
            // l lies in the open real window iff l > floor(lo) and l < ceil(hi).
            KernelCycleScan scan(static_cast<std::uint64_t>(std::floor(lo_real)),
                                 static_cast<std::uint64_t>(std::ceil(hi_real)), work_budget);
            std::vector<std::uint32_t> kernel_id(n, UINT32_MAX);
            std::uint32_t kernel_count = 0;
            for (std::uint32_t v : comp)
                if (degree[v] >= 3) kernel_id[v] = kernel_count++;
            std::vector<std::uint8_t> chain_done(n, 0);
            for (std::uint32_t v : comp) {
                if (kernel_id[v] == UINT32_MAX) continue;
                for (std::uint32_t w : adj.at(v)) {
                    if (removed[w]) continue;
                    // Walk the chain v -> w -> ... to the next kernel vertex.
                    std::uint32_t prev = v, cur = w;
                    std::uint64_t length = 1;
                    while (kernel_id[cur] == UINT32_MAX) {
                        if (chain_done[cur]) { length = 0; break; }
                        chain_done[cur] = 1;
                        std::uint32_t next = UINT32_MAX;
                        for (std::uint32_t x : adj.at(cur)) {
                            if (removed[x] || x == prev) continue;
                            next = x;
                            break;
                        }
                        prev = cur;
                        cur = next;
                        ++length;
                    }
                    if (length == 0) continue;                 // interior already consumed
                    if (length == 1 && cur < v) continue;      // direct kernel edge seen from both ends
                    scan.add_edge(kernel_id[v], kernel_id[cur], length);
                }
            }
            scan.run(kernel_count);
            if (scan.found()) return true;
            if (scan.inconclusive()) inconclusive = true;
        }
        if (inconclusive) return std::nullopt;
        return false;
    };
    // Canonical witness: a planted cycle of mid-window length on the lowest
    // vertex labels.
    std::uint64_t mid = (lo + hi) / 2;
    if (mid < 3) mid = 3;
    if (mid > n) mid = n;
    for (std::uint64_t i = 0; i < mid; ++i)
        prop.canonical_one_witness.push_back(
            edge_index(n, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>((i + 1) % mid)));
    return prop;
}

std::uint64_t count_cliques(const Adjacency& adj, std::uint32_t k, bool early_stop) {
    if (k < 2) throw std::invalid_argument("count_cliques: k >= 2");
    std::uint64_t count = 0;
    std::vector<std::vector<std::uint32_t>> stack_candidates(k);
    // Extend cliques over increasing vertex ids; candidates shrink by
    // adjacency intersection.
    std::function<bool(std::uint32_t, const std::vector<std::uint32_t>&)> extend =
        [&](std::uint32_t depth, const std::vector<std::uint32_t>& candidates) -> bool {
        if (depth == k) {
            ++count;
            return early_stop;
        }
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const std::uint32_t v = candidates[i];
            if (candidates.size() - i < k - depth) break;
            auto& next = stack_candidates[depth];
            next.clear();
            auto nv = adj.at(v);
            // candidates after i intersected with neighbors of v
            std::size_t ci = i + 1, ni = 0;
            while (ci < candidates.size() && ni < nv.size()) {
                if (candidates[ci] < nv[ni]) ++ci;
                else if (nv[ni] < candidates[ci]) ++ni;
                else { next.push_back(candidates[ci]); ++ci; ++ni; }
            }
            if (extend(depth + 1, next)) return true;
        }
        return false;
    };
    std::vector<std::uint32_t> all(adj.n);
    for (std::uint32_t v = 0; v < adj.n; ++v) all[v] = v;
    extend(0, all);
    return count;
}

GraphProperty property_clique(std::uint32_t n, std::uint32_t k) {
    if (k < 2) throw std::invalid_argument("clique property needs k >= 2");
    GraphProperty prop;
    prop.name = "clique-" + std::to_string(k);
    prop.n = n;
    prop.increasing = true;
    prop.oracle = [k](const SparseGraph& g) -> std::optional<bool> {
        return count_cliques(Adjacency::build(g), k, true) > 0;
    };
    for (std::uint32_t u = 0; u < k; ++u)
        for (std::uint32_t v = u + 1; v < k; ++v)
            prop.canonical_one_witness.push_back(edge_index(n, u, v));
    return prop;
}

GraphSampler::GraphSampler(GraphProperty prop, double p) : prop_(std::move(prop)), p_(p) {}

GraphSampler::GraphSampler(GraphProperty prop, double p, std::vector<std::uint64_t> pinned,
                           bool pin_present)
    : prop_(std::move(prop)), p_(p), pinned_(std::move(pinned)), pin_present_(pin_present) {}

void GraphSampler::sample_pair(std::uint64_t seed, std::uint64_t index,
                               std::span<const double> eps_grid, std::uint8_t& f_base,
                               std::span<std::uint8_t> f_noised) const {
    RandomStream base_stream = substream(seed, index, 0);
    SparseGraph g = sample_gnp(prop_.n, p_, base_stream);
    if (!pinned_.empty()) g = pin_edges(std::move(g), pinned_, pin_present_);
    const auto base = prop_.oracle(g);
    f_base = base.has_value() ? (*base ? 1 : 0) : kInconclusive;
    for (std::size_t e = 0; e < eps_grid.size(); ++e) {
        RandomStream noise_stream = substream(seed, index, 1 + e);
        const SparseGraph noised = apply_edge_noise(g, p_, eps_grid[e], noise_stream);
        const auto value = prop_.oracle(noised);
        f_noised[e] = value.has_value() ? (*value ? 1 : 0) : kInconclusive;
    }
}

GraphWitnessGap graph_witness_gap(const GraphProperty& prop, double p, double eps,
                                  std::span<const std::uint64_t> witness, bool pin_present,
                                  std::uint64_t samples, std::uint64_t seed,
                                  const RunOptions& run) {
    const double grid[1] = {eps};
    GraphWitnessGap out;
    out.samples = samples;
    {
        GraphSampler base(prop, p);
        const PairCounts counts =
            collect_pair_counts(base, grid, samples, mix64(seed ^ 0x9e1d3bd6a792bce1ULL), run);
        const double p1 = counts.prob_base();
        out.base = pin_present ? p1 : 1.0 - p1;
        out.base_stderr = std::sqrt(p1 * (1.0 - p1) / static_cast<double>(counts.samples));
        out.degenerate = counts.base_one == 0 || counts.base_one == counts.samples;
    }
    {
        GraphSampler cond(prop, p, std::vector<std::uint64_t>(witness.begin(), witness.end()),
                          pin_present);
        const PairCounts counts =
            collect_pair_counts(cond, grid, samples, mix64(seed ^ 0x51ed270b7a2c1899ULL), run);
        const std::uint64_t valid = counts.samples - counts.inconclusive[0];
        const std::uint64_t hits =
            pin_present ? counts.noised_one[0] : valid - counts.noised_one[0];
        const double q = static_cast<double>(hits) / static_cast<double>(valid);
        out.conditioned = q;
        out.conditioned_stderr = std::sqrt(q * (1.0 - q) / static_cast<double>(valid));
    }
    out.gap = out.conditioned - out.base;
    out.gap_stderr = std::sqrt(out.conditioned_stderr * out.conditioned_stderr +
                               out.base_stderr * out.base_stderr);
    return out;
}

Components connected_components(const Adjacency& adj) {
    Components out;
    out.id.assign(adj.n, UINT32_MAX);
    std::vector<std::uint32_t> queue;
    std::uint32_t comp = 0;
    for (std::uint32_t s = 0; s < adj.n; ++s) {
        if (out.id[s] != UINT32_MAX) continue;
        queue.clear();
        queue.push_back(s);
        out.id[s] = comp;
        std::uint64_t size = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::uint32_t v = queue[head];
            ++size;
            for (std::uint32_t w : adj.at(v)) {
                if (out.id[w] == UINT32_MAX) {
                    out.id[w] = comp;
                    queue.push_back(w);
                }
            }
        }
        if (size > out.largest_size) {
            out.largest_size = size;
            out.largest = comp;
        }
        ++comp;
    }
    return out;
}

}  // namespace noiselab
