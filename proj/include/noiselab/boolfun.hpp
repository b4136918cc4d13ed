#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "noiselab/bitvec.hpp"

namespace noiselab {

// An evaluatable predicate on {0,1}^N. Truth-table backed up to N <= 25;
// larger functions carry only the oracle.
class BooleanFunction {
public:
    using Oracle = std::function<bool(const Configuration&)>;

    static constexpr std::size_t kMaxTableArity = 25;

    static BooleanFunction from_table(std::size_t arity, std::vector<std::uint8_t> table,
                                      bool monotone, std::string name = "table");
    static BooleanFunction from_oracle(std::size_t arity, Oracle oracle, bool monotone,
                                       std::string name = "oracle");

    std::size_t arity() const noexcept { return arity_; }
    bool monotone() const noexcept { return monotone_; }
    bool has_table() const noexcept { return table_ != nullptr; }
    const std::string& name() const noexcept { return name_; }

    bool eval(const Configuration& omega) const {
        if (table_) return (*table_)[omega.low_mask()] != 0;
        return oracle_(omega);
    }

    // Truth-table lookup by input mask; requires a table.
    bool eval_mask(std::uint32_t mask) const { return (*table_)[mask] != 0; }

    const std::vector<std::uint8_t>& table() const {
        if (!table_) throw std::logic_error("boolean function is not truth-table backed");
        return *table_;
    }

    // Exhaustive for tables up to 20 variables, randomized spot-check otherwise.
    bool check_monotone(std::uint64_t spot_check_seed = 1, std::size_t trials = 4096) const;

    // Same function with the truth table enumerated from the oracle;
    // requires arity <= kMaxTableArity.
    BooleanFunction materialize_table() const;

private:
    std::size_t arity_ = 0;
    bool monotone_ = false;
    std::shared_ptr<const std::vector<std::uint8_t>> table_;
    Oracle oracle_;
    std::string name_;
};

}  // namespace noiselab
