#include "noiselab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noiselab {

double log_choose(double n, double k) {
    if (k < 0 || k > n) return -HUGE_VAL;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

namespace {

double choose2(double k) { return k * (k - 1.0) / 2.0; }

// log(sum exp(terms)) with pairwise-stable accumulation around the max.
double log_sum_exp(const std::vector<double>& terms) {
    if (terms.empty()) return -HUGE_VAL;
    const double m = *std::max_element(terms.begin(), terms.end());
    if (m == -HUGE_VAL) return m;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
}

}  // namespace

double expected_copies_log(const PatternGraph& h, std::uint64_t n, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("expected_copies: p in (0,1)");
    const double k = static_cast<double>(h.k);
    return log_choose(static_cast<double>(n), k) + std::lgamma(k + 1.0) -
           std::log(static_cast<double>(h.automorphisms())) +
           static_cast<double>(h.edge_count()) * std::log(p);
}

double expected_copies(const PatternGraph& h, std::uint64_t n, double p) {
    return std::exp(expected_copies_log(h, n, p));
}

double expected_cliques_log(std::uint64_t n, std::uint64_t k, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("expected_cliques: p in (0,1)");
    return log_choose(static_cast<double>(n), static_cast<double>(k)) +
           choose2(static_cast<double>(k)) * std::log(p);
}

double expected_cliques(std::uint64_t n, std::uint64_t k, double p) {
    return std::exp(expected_cliques_log(n, k, p));
}

double clique_bias_for_mean(std::uint64_t n, std::uint64_t k, double target) {
    if (!(target > 0.0)) throw std::invalid_argument("target mean must be positive");
    const double log_p = (std::log(target) - log_choose(static_cast<double>(n), static_cast<double>(k))) /
                         choose2(static_cast<double>(k));
    return std::exp(log_p);
}

double expected_cycles_in_range(std::uint64_t n, double p, double a, double b) {
    if (!(a > 0.0 && a < b)) throw std::invalid_argument("cycle window needs 0 < a < b");
    const double scale = std::cbrt(static_cast<double>(n));
    const double lo_real = a * scale, hi_real = b * scale;
    std::uint64_t lo = static_cast<std::uint64_t>(std::floor(lo_real)) + 1;
    const std::uint64_t hi = hi_real > std::floor(hi_real)
                                 ? static_cast<std::uint64_t>(std::floor(hi_real))
                                 : static_cast<std::uint64_t>(hi_real) - 1;
    if (lo < 3) lo = 3;
    std::vector<double> terms;
    const double nd = static_cast<double>(n);
    for (std::uint64_t l = lo; l <= hi && l <= n; ++l) {
        const double ld = static_cast<double>(l);
        // #cycles = C(n,l) (l-1)!/2
        terms.push_back(log_choose(nd, ld) + std::lgamma(ld) - std::log(2.0) + ld * std::log(p));
    }
    return std::exp(log_sum_exp(terms));
}

CliqueMoments clique_overlap_moments(std::uint64_t n, std::uint64_t k, double p) {
    if (k < 2) throw std::invalid_argument("clique moments need k >= 2");
    CliqueMoments out;
    out.log_expected = expected_cliques_log(n, k, p);
    out.expected = std::exp(out.log_expected);
    const double nd = static_cast<double>(n), kd = static_cast<double>(k);
    std::vector<double> log_terms;
    for (std::uint64_t i = 2; i < k; ++i) {
        const double id = static_cast<double>(i);
        const double log_delta = log_choose(nd, kd) + log_choose(kd, id) +
                                 log_choose(nd - kd, kd - id) +
                                 (2.0 * choose2(kd) - choose2(id)) * std::log(p);
        out.delta.push_back(std::exp(log_delta));
        log_terms.push_back(log_delta);
    }
    out.delta_sum = std::exp(log_sum_exp(log_terms));
    out.variance_bound = out.expected + out.delta_sum;
    out.delta_ratio = out.delta_sum / (out.expected * out.expected);
    out.negligible_overlap = out.delta_ratio < 0.05;
    return out;
}

double two_clique_overlap_term(std::uint64_t n, std::uint64_t k, double p, std::uint64_t i,
                               std::uint64_t j) {
    if (i >= k || j >= k || i + j > k) return 0.0;
    if (n < 2 * k) throw std::invalid_argument("two-clique overlap needs n >= 2k");
    const double nd = static_cast<double>(n), kd = static_cast<double>(k);
    const double id = static_cast<double>(i), jd = static_cast<double>(j);
    const double log_term = log_choose(nd - 2.0 * kd, kd - id - jd) + log_choose(kd, id) +
                            log_choose(kd, jd) +
                            (choose2(kd) - choose2(id) - choose2(jd)) * std::log(p);
    return std::exp(log_term);
}

}  // namespace noiselab
