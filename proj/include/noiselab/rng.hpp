#pragma once

#include <cstdint>

namespace noiselab {

// Stafford variant 13 of the 64-bit finalizer. Bijective on uint64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Counter-based stream keyed by (master_seed, stream_id): output i is a pure
// function of (master_seed, stream_id, i). Distinct stream ids decorrelate
// because the key feeds through two mixing rounds before the counter walk.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept
        : key_(mix64(mix64(master_seed + kGoldenGamma) ^ (stream_id + 0x5851f42d4c957f2dULL))),
          master_seed_(master_seed),
          stream_id_(stream_id) {}

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() noexcept {
        counter_ += kGoldenGamma;
        return mix64(key_ ^ counter_);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0,1]; safe to feed into log().
    double next_unit_pos() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    bool bernoulli(double q) noexcept {
        if (q <= 0.0) { next_u64(); return false; }
        if (q >= 1.0) { next_u64(); return true; }
        return next_unit() < q;
    }

    // Uniform integer in [0, n), n >= 1. Rejection-free enough for n << 2^64:
    // uses 128-bit multiply partitioning with a retry loop for exactness.
    std::uint64_t next_below(std::uint64_t n) noexcept {
        using u128 = unsigned __int128;
        std::uint64_t x = next_u64();
        u128 m = static_cast<u128>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t t = -n % n;
            while (lo < t) {
                x = next_u64();
                m = static_cast<u128>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
};

// Substream layout used by the Monte Carlo engines: each global sample index
// owns a block of role slots, so worker partitioning never shifts draws.
inline RandomStream substream(std::uint64_t master_seed, std::uint64_t sample_index,
                              std::uint64_t role = 0) noexcept {
    return RandomStream(master_seed, sample_index * 256 + role);
}

}  // namespace noiselab
