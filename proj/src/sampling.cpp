#include "noiselab/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace noiselab {

void NoiseParams::validate() const {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("noise params: p must lie strictly inside (0,1)");
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("noise params: eps must lie in [0,1]");
}

namespace {

// Sets each of the n bits independently with probability q via geometric
// gaps. Exact: consecutive gaps are i.i.d. Geometric(q).
void fill_sparse_ones(std::span<std::uint64_t> words, std::size_t n, double q, RandomStream& stream) {
    const double denom = std::log1p(-q);
    std::size_t pos = 0;
    while (true) {
        const double u = stream.next_unit_pos();
        const double skip = std::floor(std::log(u) / denom);
        if (skip >= static_cast<double>(n - pos)) break;
        pos += static_cast<std::size_t>(skip);
        if (pos >= n) break;
        words[pos >> 6] |= 1ULL << (pos & 63);
        ++pos;
        if (pos >= n) break;
    }
}

constexpr double kSparseCutoff = 0.05;

}  // namespace

void fill_bernoulli(std::span<std::uint64_t> words, std::size_t n, double q, RandomStream& stream) {
    const std::size_t nw = (n + 63) / 64;
    if (q <= 0.0) {
        for (std::size_t w = 0; w < nw; ++w) words[w] = 0;
        return;
    }
    if (q >= 1.0) {
        for (std::size_t w = 0; w < nw; ++w) words[w] = ~0ULL;
        if (n % 64) words[nw - 1] &= (1ULL << (n % 64)) - 1;
        return;
    }
    if (q == 0.5) {
        for (std::size_t w = 0; w < nw; ++w) words[w] = stream.next_u64();
        if (n % 64) words[nw - 1] &= (1ULL << (n % 64)) - 1;
        return;
    }
    if (q < kSparseCutoff) {
        for (std::size_t w = 0; w < nw; ++w) words[w] = 0;
        fill_sparse_ones(words, n, q, stream);
        return;
    }
    if (q > 1.0 - kSparseCutoff) {
        for (std::size_t w = 0; w < nw; ++w) words[w] = ~0ULL;
        if (n % 64) words[nw - 1] &= (1ULL << (n % 64)) - 1;
        // Clear bits at rate 1-q over the complement process.
        std::vector<std::uint64_t> zeros(nw, 0);
        fill_sparse_ones(zeros, n, 1.0 - q, stream);
        for (std::size_t w = 0; w < nw; ++w) words[w] &= ~zeros[w];
        return;
    }
    for (std::size_t w = 0; w < nw; ++w) {
        std::uint64_t out = 0;
        const std::size_t bits = (w + 1 == nw && n % 64) ? n % 64 : 64;
        for (std::size_t b = 0; b < bits; ++b)
            out |= static_cast<std::uint64_t>(stream.next_unit() < q) << b;
        words[w] = out;
    }
}

Configuration sample_configuration(std::size_t n, double p, RandomStream& stream) {
    if (n < 1) throw std::invalid_argument("sample_configuration: arity must be at least 1");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sample_configuration: p must lie strictly inside (0,1)");
    Configuration c(n);
    fill_bernoulli(c.words(), n, p, stream);
    return c;
}

Configuration apply_noise(const Configuration& omega, const NoiseParams& params, RandomStream& stream) {
    params.validate();
    const std::size_t n = omega.size();
    Configuration out(n);
    if (params.eps == 0.0) return omega;

    std::vector<std::uint64_t> mask(omega.word_count(), 0);
    std::vector<std::uint64_t> fresh(omega.word_count(), 0);
    fill_bernoulli(mask, n, params.eps, stream);
    fill_bernoulli(fresh, n, params.p, stream);

    auto in = omega.words();
    auto ow = out.words();
    for (std::size_t w = 0; w < in.size(); ++w)
        ow[w] = (in[w] & ~mask[w]) | (fresh[w] & mask[w]);
    out.trim();
    return out;
}

std::pair<Configuration, Configuration> apply_noise_conditioned(
    Configuration base, std::span<const std::uint32_t> fixed, const NoiseParams& params,
    RandomStream& stream, bool pin_to_one) {
    params.validate();
    for (std::uint32_t i : fixed) {
        if (i >= base.size()) throw std::out_of_range("apply_noise_conditioned: witness index out of range");
        base.set(i, pin_to_one);
    }
    Configuration noised = apply_noise(base, params, stream);
    return {std::move(base), std::move(noised)};
}

}  // namespace noiselab
