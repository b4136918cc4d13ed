#include "noiselab/families.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace noiselab {

namespace {

constexpr std::size_t kTableCutoff = 20;

BooleanFunction with_table_if_small(std::size_t arity, BooleanFunction::Oracle oracle,
                                    std::string name) {
    if (arity <= kTableCutoff) {
        const std::size_t size = std::size_t{1} << arity;
        std::vector<std::uint8_t> table(size);
        for (std::size_t m = 0; m < size; ++m)
            table[m] = oracle(Configuration::from_mask(arity, m)) ? 1 : 0;
        return BooleanFunction::from_table(arity, std::move(table), true, std::move(name));
    }
    return BooleanFunction::from_oracle(arity, std::move(oracle), true, std::move(name));
}

bool block_all(const Configuration& w, std::size_t start, std::size_t len, bool value) {
    for (std::size_t i = 0; i < len; ++i)
        if (w.test(start + i) != value) return false;
    return true;
}

}  // namespace

std::size_t RecMajSpec::arity() const {
    std::size_t a = 1;
    for (unsigned d = 0; d < depth; ++d) {
        if (a > (std::size_t{1} << 40) / fanout) throw std::overflow_error("recursive majority arity overflow");
        a *= fanout;
    }
    return a;
}

BooleanFunction make_tribes(const TribesSpec& spec) {
    if (spec.blocks < 1 || spec.block_size < 1) throw std::invalid_argument("tribes: empty spec");
    const std::size_t arity = spec.arity();
    const TribesSpec s = spec;
    BooleanFunction::Oracle oracle;
    if (!s.reversed) {
        oracle = [s](const Configuration& w) {
            for (std::size_t b = 0; b < s.blocks; ++b)
                if (block_all(w, b * s.block_size, s.block_size, true)) return true;
            return false;
        };
    } else {
        oracle = [s](const Configuration& w) {
            for (std::size_t b = 0; b < s.blocks; ++b)
                if (block_all(w, b * s.block_size, s.block_size, false)) return false;
            return true;
        };
    }
    return with_table_if_small(arity, std::move(oracle),
                               (s.reversed ? "tribes-rev-" : "tribes-") + std::to_string(s.blocks) +
                                   "x" + std::to_string(s.block_size));
}

BooleanFunction make_recmaj(const RecMajSpec& spec) {
    if (spec.fanout % 2 == 0 || spec.fanout < 3)
        throw std::invalid_argument("recursive majority: fanout must be odd and >= 3");
    const std::size_t arity = spec.arity();
    const RecMajSpec s = spec;
    auto oracle = [s](const Configuration& w) {
        std::vector<std::uint8_t> level(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) level[i] = w.test(i) ? 1 : 0;
        const unsigned need = s.fanout / 2 + 1;
        while (level.size() > 1) {
            std::vector<std::uint8_t> next(level.size() / s.fanout);
            for (std::size_t g = 0; g < next.size(); ++g) {
                unsigned ones = 0;
                for (unsigned c = 0; c < s.fanout; ++c) ones += level[g * s.fanout + c];
                next[g] = ones >= need ? 1 : 0;
            }
            level.swap(next);
        }
        return level[0] != 0;
    };
    return with_table_if_small(arity, std::move(oracle),
                               "recmaj-" + std::to_string(s.fanout) + "^" + std::to_string(s.depth));
}

BooleanFunction make_composition(const BooleanFunction& outer, const BooleanFunction& inner) {
    const std::size_t n = outer.arity();
    const std::size_t m = inner.arity();
    if (n == 0 || m == 0) throw std::invalid_argument("composition: empty component");
    if (n > (std::size_t{1} << 40) / m) throw std::overflow_error("composition arity overflow");
    const std::size_t arity = n * m;
    BooleanFunction out_f = outer, in_f = inner;
    auto oracle = [out_f, in_f, n, m](const Configuration& w) {
        Configuration outer_input(n);
        Configuration block(m);
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t i = 0; i < m; ++i) block.set(i, w.test(b * m + i));
            outer_input.set(b, in_f.eval(block));
        }
        return out_f.eval(outer_input);
    };
    const bool monotone = outer.monotone() && inner.monotone();
    if (arity <= kTableCutoff && monotone)
        return with_table_if_small(arity, std::move(oracle), outer.name() + "(" + inner.name() + ")");
    return BooleanFunction::from_oracle(arity, std::move(oracle), monotone,
                                        outer.name() + "(" + inner.name() + ")");
}

TribesSpec tribes_natural(std::size_t n, bool reversed) {
    if (n < 2) return TribesSpec{1, 1, reversed};
    const double lg = std::log2(static_cast<double>(n));
    std::size_t b = static_cast<std::size_t>(std::floor(lg - std::log2(lg)));
    if (b < 1) b = 1;
    return TribesSpec{n / b, b, reversed};
}

double tribes_prob_one(const TribesSpec& spec, double p) {
    const double b = static_cast<double>(spec.block_size);
    const double blocks = static_cast<double>(spec.blocks);
    if (!spec.reversed)
        return 1.0 - std::pow(1.0 - std::pow(p, b), blocks);
    return std::pow(1.0 - std::pow(1.0 - p, b), blocks);
}

double tribes_witness_gap(const TribesSpec& spec, double p, double eps) {
    if (spec.reversed) throw std::invalid_argument("witness gap formula applies to forward tribes");
    const double b = static_cast<double>(spec.block_size);
    const double survive = std::pow(1.0 - eps * (1.0 - p), b);
    const double pb = std::pow(p, b);
    const double u = std::pow(1.0 - pb, static_cast<double>(spec.blocks - 1));
    return u * (survive - pb);
}

std::pair<double, double> tribes_gap_bracket(std::size_t block_size, double eps) {
    const double b = static_cast<double>(block_size);
    return {std::pow(1.0 - eps / 2 - eps * eps / 16, b), std::pow(1.0 - eps / 2 + eps * eps / 16, b)};
}

double tribes_bias_solve(const TribesSpec& spec, double target) {
    if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("bias solve: target must lie in (0,1)");
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (tribes_prob_one(spec, mid) < target) lo = mid; else hi = mid;
        if (hi - lo < 1e-15) break;
    }
    const double p = 0.5 * (lo + hi);
    if (std::fabs(tribes_prob_one(spec, p) - target) > 1e-9)
        throw std::runtime_error("bias solve: no root found in (0,1)");
    return p;
}

double h_map(double x) {
    return x * (0.75 + x * (0.75 - 0.5 * x));
}

double recmaj_conditioned_prob(unsigned fanout, unsigned depth, double eps, double p) {
    if (p != 0.5) throw std::invalid_argument("conditioned-probability recursion assumes p = 1/2");
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in [0,1]");
    double zeta = 1.0 - eps / 2;
    if (fanout == 3) {
        // zeta <- zeta^2 + 2 p zeta (1-zeta), factored so p=1/2 is an exact
        // fixed map: zeta * (zeta + (1-zeta)).
        for (unsigned k = 0; k < depth; ++k) zeta = zeta * (zeta + 2.0 * p * (1.0 - zeta));
        return zeta;
    }
    if (fanout == 5) {
        for (unsigned k = 0; k < depth; ++k) zeta = h_map(zeta);
        return zeta;
    }
    throw std::invalid_argument("conditioned-probability recursion supports fanout 3 and 5 only");
}

double iterate_h(double x0, std::uint64_t k) {
    if (!(x0 >= 0.0 && x0 <= 1.0)) throw std::invalid_argument("iterate_h: x0 must lie in [0,1]");
    double x = x0;
    for (std::uint64_t i = 0; i < k; ++i) x = h_map(x);
    return x;
}

double iterate_h_offset(double d0, std::uint64_t k) {
    double d = d0;
    for (std::uint64_t i = 0; i < k; ++i) d = d * (1.125 - 0.5 * d * d);
    return 0.5 + d;
}

std::vector<std::uint32_t> tribes_canonical_witness(const TribesSpec& spec, WitnessKind kind) {
    std::vector<std::uint32_t> out;
    if (spec.reversed) throw std::invalid_argument("canonical witnesses provided for forward tribes");
    if (kind == WitnessKind::One) {
        for (std::size_t i = 0; i < spec.block_size; ++i) out.push_back(static_cast<std::uint32_t>(i));
    } else {
        // One coordinate per block breaks every block.
        for (std::size_t b = 0; b < spec.blocks; ++b)
            out.push_back(static_cast<std::uint32_t>(b * spec.block_size));
    }
    return out;
}

std::vector<std::uint32_t> recmaj_canonical_witness(const RecMajSpec& spec, WitnessKind kind) {
    // Majority is self-dual: the same leaf pattern pinned to 0 is a 0-witness.
    (void)kind;
    const unsigned pin = spec.fanout / 2 + 1;
    std::vector<std::uint32_t> leaves{0};
    std::size_t subtree = spec.arity();
    for (unsigned d = 0; d < spec.depth; ++d) {
        subtree /= spec.fanout;
        std::vector<std::uint32_t> next;
        next.reserve(leaves.size() * pin);
        for (std::uint32_t base : leaves)
            for (unsigned c = 0; c < pin; ++c)
                next.push_back(base + static_cast<std::uint32_t>(c * subtree));
        leaves.swap(next);
    }
    return leaves;
}

}  // namespace noiselab
