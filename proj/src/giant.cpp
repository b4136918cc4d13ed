#include "noiselab/giant.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "noiselab/parallel.hpp"

namespace noiselab {

std::uint64_t count_triangles_in_component(const Adjacency& adj,
                                           const std::vector<std::uint32_t>& comp,
                                           std::uint32_t comp_id,
                                           std::vector<std::array<std::uint32_t, 3>>* corners,
                                           std::size_t corner_cap) {
    // Forward-neighbor intersection over sorted adjacency; u < v < w.
    std::uint64_t count = 0;
    for (std::uint32_t u = 0; u < adj.n; ++u) {
        if (comp[u] != comp_id) continue;
        const auto nu = adj.at(u);
        for (std::uint32_t v : nu) {
            if (v <= u) continue;
            const auto nv = adj.at(v);
            auto iu = std::upper_bound(nu.begin(), nu.end(), v);
            auto iv = std::upper_bound(nv.begin(), nv.end(), v);
            while (iu != nu.end() && iv != nv.end()) {
                if (*iu < *iv) ++iu;
                else if (*iv < *iu) ++iv;
                else {
                    ++count;
                    if (corners && corners->size() < corner_cap)
                        corners->push_back({u, v, *iu});
                    ++iu;
                    ++iv;
                }
            }
        }
    }
    return count;
}

namespace {

// Two-sided layer growth over disjoint vertex sets: expand from x to depth
// depth_x and from y to depth_y alternating level by level, then test for a
// cross edge closing a simple path of length depth_x + depth_y + 1.
bool layered_path_exists(const Adjacency& adj, std::uint32_t x, std::uint32_t y,
                         std::uint32_t depth_x, std::uint32_t depth_y,
                         std::vector<std::uint8_t>& owner_buf,
                         std::vector<std::uint32_t>& touched) {
    owner_buf.assign(adj.n, 0);
    touched.clear();
    std::vector<std::uint32_t> frontier_x{x}, frontier_y{y}, next;
    owner_buf[x] = 1;
    owner_buf[y] = 2;
    touched.push_back(x);
    touched.push_back(y);
    const std::uint32_t depth = std::max(depth_x, depth_y);
    for (std::uint32_t t = 1; t <= depth; ++t) {
        if (t <= depth_x) {
            next.clear();
            for (std::uint32_t v : frontier_x)
                for (std::uint32_t w : adj.at(v))
                    if (owner_buf[w] == 0) {
                        owner_buf[w] = 1;
                        touched.push_back(w);
                        next.push_back(w);
                    }
            frontier_x.swap(next);
        }
        if (t <= depth_y) {
            next.clear();
            for (std::uint32_t v : frontier_y)
                for (std::uint32_t w : adj.at(v))
                    if (owner_buf[w] == 0) {
                        owner_buf[w] = 2;
                        touched.push_back(w);
                        next.push_back(w);
                    }
            frontier_y.swap(next);
        }
    }
    // frontier_x holds layer depth_x of the x side; frontier_y layer depth_y.
    for (std::uint32_t v : frontier_y) owner_buf[v] = 3;
    for (std::uint32_t v : frontier_x)
        for (std::uint32_t w : adj.at(v))
            if (owner_buf[w] == 3) return true;
    return false;
}

struct GiantAcc {
    PairCounts pair;
    std::uint64_t triangles_sum = 0;
    std::uint64_t pair_attempts = 0;
    std::uint64_t pairs_far = 0;
    std::uint64_t paths_found = 0;
    void merge(const GiantAcc& o) {
        pair.merge(o.pair);
        triangles_sum += o.triangles_sum;
        pair_attempts += o.pair_attempts;
        pairs_far += o.pairs_far;
        paths_found += o.paths_found;
    }
};

}  // namespace

GiantRobustnessReport giant_robustness_experiment(std::uint32_t n, double lambda, double eps,
                                                  std::uint32_t k_triangles, std::uint64_t samples,
                                                  std::uint64_t seed, const RunOptions& run) {
    if (!(lambda > 1.0)) throw std::invalid_argument("giant robustness: lambda must exceed 1");
    if (k_triangles < 1) throw std::invalid_argument("giant robustness: k >= 1");
    const double p = lambda / static_cast<double>(n);
    const double log_lambda_n = std::log(static_cast<double>(n)) / std::log(lambda);
    const std::uint32_t r_n = static_cast<std::uint32_t>(std::floor(1.5 * log_lambda_n));
    const double far_cut = 0.5 * log_lambda_n;
    constexpr std::size_t kCornerCap = 8192;

    auto body = [&](std::uint64_t index, GiantAcc& acc) {
        if (acc.pair.noised_one.empty()) acc.pair.resize(1);
        RandomStream g_stream = substream(seed, index, 0);
        const SparseGraph g = sample_gnp(n, p, g_stream);
        const Adjacency adj = Adjacency::build(g);
        const Components comps = connected_components(adj);

        std::vector<std::array<std::uint32_t, 3>> corners;
        const std::uint64_t tri =
            count_triangles_in_component(adj, comps.id, comps.largest, &corners, kCornerCap);
        const bool before = tri >= k_triangles;

        RandomStream noise_stream = substream(seed, index, 1);
        const SparseGraph gn = apply_edge_noise(g, p, eps, noise_stream);
        const Adjacency adj_n = Adjacency::build(gn);
        const Components comps_n = connected_components(adj_n);
        const std::uint64_t tri_n =
            count_triangles_in_component(adj_n, comps_n.id, comps_n.largest, nullptr, 0);
        const bool after = tri_n >= k_triangles;

        ++acc.pair.samples;
        if (before) ++acc.pair.base_one;
        if (after) {
            ++acc.pair.noised_one[0];
            if (before) ++acc.pair.both_one[0];
        }
        acc.triangles_sum += tri;

        // Distance and fixed-length-path diagnostics on one sampled pair.
        if (corners.size() >= 2) {
            RandomStream pick = substream(seed, index, 2);
            const std::uint64_t a = pick.next_below(corners.size());
            std::uint64_t b = pick.next_below(corners.size() - 1);
            if (b >= a) ++b;
            const auto& ta = corners[a];
            const auto& tb = corners[b];
            ++acc.pair_attempts;

            // Multi-source BFS from ta's vertices to tb (set-to-set distance).
            std::vector<std::uint32_t> dist(n, UINT32_MAX);
            std::vector<std::uint32_t> queue;
            for (std::uint32_t v : ta)
                if (dist[v] == UINT32_MAX) {
                    dist[v] = 0;
                    queue.push_back(v);
                }
            std::uint32_t reached = UINT32_MAX;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const std::uint32_t v = queue[head];
                if (v == tb[0] || v == tb[1] || v == tb[2]) { reached = dist[v]; break; }
                for (std::uint32_t w : adj.at(v))
                    if (dist[w] == UINT32_MAX) {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
            }
            if (reached != UINT32_MAX && static_cast<double>(reached) >= far_cut) ++acc.pairs_far;

            // Path of length exactly r_n between corner vertices: grow to
            // depths ceil(l/2) and floor(l/2)-1, cross edge supplies the
            // remaining step.
            std::uint32_t u = ta[0], v = tb[0];
            if (u != v && r_n >= 2) {
                const std::uint32_t dx = (r_n + 1) / 2;
                const std::uint32_t dy = r_n - dx - 1;
                std::vector<std::uint8_t> owner;
                std::vector<std::uint32_t> touched;
                if (layered_path_exists(adj, u, v, dx, dy, owner, touched)) ++acc.paths_found;
            }
        }
    };

    const GiantAcc acc = run_indexed<GiantAcc>(0, samples, run.workers, body);
    const PairStatistics st = pair_statistics(acc.pair, 0);

    GiantRobustnessReport rep;
    rep.n = n;
    rep.lambda = lambda;
    rep.eps = eps;
    rep.k_triangles = k_triangles;
    rep.samples = acc.pair.samples;
    rep.seed = seed;
    rep.prob_event = acc.pair.prob_base();
    rep.prob_event_noised =
        static_cast<double>(acc.pair.noised_one[0]) / static_cast<double>(acc.pair.samples);
    rep.conditional = st.conditional;
    rep.gap = st.gap;
    rep.gap_stderr = st.gap_stderr;
    rep.degenerate = st.degenerate;
    rep.mean_triangles =
        static_cast<double>(acc.triangles_sum) / static_cast<double>(acc.pair.samples);
    rep.pair_attempts = acc.pair_attempts;
    rep.frac_pairs_far = acc.pair_attempts
                             ? static_cast<double>(acc.pairs_far) / static_cast<double>(acc.pair_attempts)
                             : 0.0;
    rep.path_success = acc.pair_attempts
                           ? static_cast<double>(acc.paths_found) / static_cast<double>(acc.pair_attempts)
                           : 0.0;
    rep.path_length = r_n;
    return rep;
}

}  // namespace noiselab
