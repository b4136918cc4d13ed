#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace noiselab {

// A point of the product space {0,1}^N. Length is fixed at construction;
// storage is word-packed so kernels can operate 64 coordinates at a time.
class Configuration {
public:
    Configuration() = default;

    explicit Configuration(std::size_t n, bool fill = false)
        : n_(n), words_((n + 63) / 64, fill ? ~0ULL : 0ULL) {
        trim();
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t word_count() const noexcept { return words_.size(); }

    bool test(std::size_t i) const noexcept {
        return (words_[i >> 6] >> (i & 63)) & 1ULL;
    }

    void set(std::size_t i, bool v) noexcept {
        const std::uint64_t m = 1ULL << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }

    void flip(std::size_t i) noexcept { words_[i >> 6] ^= 1ULL << (i & 63); }

    std::size_t popcount() const noexcept {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::span<std::uint64_t> words() noexcept { return words_; }

    // Zeroes the unused high bits of the last word; kernels rely on this.
    void trim() noexcept {
        if (n_ % 64 != 0 && !words_.empty())
            words_.back() &= (1ULL << (n_ % 64)) - 1;
    }

    bool operator==(const Configuration& o) const noexcept {
        return n_ == o.n_ && words_ == o.words_;
    }

    // Low word as a truth-table index; valid for n <= 32.
    std::uint32_t low_mask() const noexcept {
        return words_.empty() ? 0u : static_cast<std::uint32_t>(words_[0]);
    }

    static Configuration from_mask(std::size_t n, std::uint64_t mask) {
        if (n > 64) throw std::invalid_argument("from_mask: arity exceeds 64");
        Configuration c(n);
        if (!c.words_.empty()) c.words_[0] = mask;
        c.trim();
        return c;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace noiselab
