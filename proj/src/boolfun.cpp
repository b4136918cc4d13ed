#include "noiselab/boolfun.hpp"

#include "noiselab/rng.hpp"

namespace noiselab {

BooleanFunction BooleanFunction::from_table(std::size_t arity, std::vector<std::uint8_t> table,
                                            bool monotone, std::string name) {
    if (arity > kMaxTableArity) throw std::invalid_argument("arity too large for a truth table");
    if (table.size() != (std::size_t{1} << arity)) throw std::invalid_argument("truth table size mismatch");
    BooleanFunction f;
    f.arity_ = arity;
    f.monotone_ = monotone;
    f.table_ = std::make_shared<const std::vector<std::uint8_t>>(std::move(table));
    f.name_ = std::move(name);
    auto tbl = f.table_;
    std::size_t n = arity;
    f.oracle_ = [tbl, n](const Configuration& w) { return (*tbl)[w.low_mask()] != 0; };
    return f;
}

BooleanFunction BooleanFunction::from_oracle(std::size_t arity, Oracle oracle, bool monotone,
                                             std::string name) {
    BooleanFunction f;
    f.arity_ = arity;
    f.monotone_ = monotone;
    f.oracle_ = std::move(oracle);
    f.name_ = std::move(name);
    return f;
}

BooleanFunction BooleanFunction::materialize_table() const {
    if (table_) return *this;
    if (arity_ > kMaxTableArity) throw std::invalid_argument("arity too large for a truth table");
    const std::size_t size = std::size_t{1} << arity_;
    std::vector<std::uint8_t> table(size);
    for (std::size_t m = 0; m < size; ++m)
        table[m] = eval(Configuration::from_mask(arity_, m)) ? 1 : 0;
    return from_table(arity_, std::move(table), monotone_, name_);
}

bool BooleanFunction::check_monotone(std::uint64_t spot_check_seed, std::size_t trials) const {
    if (table_ && arity_ <= 20) {
        const auto& t = *table_;
        const std::uint32_t size = 1u << arity_;
        for (std::uint32_t m = 0; m < size; ++m) {
            if (!t[m]) continue;
            // f(m)=1 must force f(m | bit) = 1 for every unset bit.
            for (std::size_t i = 0; i < arity_; ++i) {
                const std::uint32_t up = m | (1u << i);
                if (up != m && !t[up]) return false;
            }
        }
        return true;
    }
    RandomStream stream(spot_check_seed, 0);
    for (std::size_t t = 0; t < trials; ++t) {
        Configuration w(arity_);
        for (auto& word : w.words()) word = stream.next_u64();
        w.trim();
        Configuration up = w;
        const std::size_t i = static_cast<std::size_t>(stream.next_below(arity_));
        up.set(i, true);
        w.set(i, false);
        if (eval(w) && !eval(up)) return false;
    }
    return true;
}

}  // namespace noiselab
