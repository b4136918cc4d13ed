#include "noiselab/witness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "noiselab/parallel.hpp"
#include "noiselab/rng.hpp"

namespace noiselab {

namespace {

std::vector<std::uint32_t> bits_of(std::uint32_t mask) {
    std::vector<std::uint32_t> out;
    while (mask) {
        out.push_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

}  // namespace

BooleanFunction complement_function(const BooleanFunction& f) {
    if (f.has_table()) {
        const auto& t = f.table();
        const std::uint32_t size = static_cast<std::uint32_t>(t.size());
        std::vector<std::uint8_t> out(size);
        for (std::uint32_t m = 0; m < size; ++m)
            out[m] = t[(size - 1) ^ m] ? 0 : 1;
        return BooleanFunction::from_table(f.arity(), std::move(out), f.monotone(),
                                           f.name() + "-complement");
    }
    auto inner = f;
    return BooleanFunction::from_oracle(
        f.arity(),
        [inner](const Configuration& w) {
            Configuration flipped(w.size());
            auto in = w.words();
            auto out = flipped.words();
            for (std::size_t i = 0; i < in.size(); ++i) out[i] = ~in[i];
            flipped.trim();
            return !inner.eval(flipped);
        },
        f.monotone(), f.name() + "-complement");
}

WitnessSet enumerate_witnesses(const BooleanFunction& f, WitnessKind kind) {
    if (!f.monotone()) throw std::invalid_argument("witness enumeration requires a monotone function");
    if (!f.has_table() || f.arity() > 20)
        throw std::invalid_argument("witness enumeration requires a truth table with arity <= 20");

    const auto& t = f.table();
    const std::uint32_t size = static_cast<std::uint32_t>(t.size());
    const std::uint32_t full = size - 1;
    WitnessSet out;
    out.kind = kind;
    out.complete = true;

    if (kind == WitnessKind::One) {
        // Minimal true points: f(W) = 1 and dropping any element gives 0.
        for (std::uint32_t m = 0; m < size; ++m) {
            if (!t[m]) continue;
            bool minimal = true;
            for (std::uint32_t s = m; s && minimal; s &= s - 1) {
                const std::uint32_t low = s & (~s + 1);
                if (t[m ^ low]) minimal = false;
            }
            if (minimal) out.witnesses.push_back(bits_of(m));
        }
    } else {
        // Complements of maximal false points: f(m) = 0 and adding any
        // element gives 1; the witness is the zero set of m.
        for (std::uint32_t m = 0; m < size; ++m) {
            if (t[m]) continue;
            bool maximal = true;
            for (std::uint32_t s = full ^ m; s && maximal; s &= s - 1) {
                const std::uint32_t low = s & (~s + 1);
                if (!t[m | low]) maximal = false;
            }
            if (maximal) out.witnesses.push_back(bits_of(full ^ m));
        }
    }
    return out;
}

bool witness_is_minimal(const BooleanFunction& f, WitnessKind kind,
                        const std::vector<std::uint32_t>& witness) {
    const std::size_t n = f.arity();
    Configuration base(n, kind == WitnessKind::Zero);
    for (std::uint32_t i : witness) base.set(i, kind == WitnessKind::One);
    const bool forced = kind == WitnessKind::One;
    if (f.eval(base) != forced) return false;
    for (std::uint32_t i : witness) {
        Configuration weakened = base;
        weakened.set(i, !forced);
        if (f.eval(weakened) == forced) return false;
    }
    return true;
}

SnsReport sns_gap(const BooleanFunction& f, const WitnessSet& witnesses,
                  const NoiseParams& params, std::uint64_t samples, std::uint64_t seed,
                  const RunOptions& run) {
    params.validate();
    if (samples == 0) throw std::invalid_argument("sns_gap: zero samples");
    if (witnesses.witnesses.empty()) throw std::invalid_argument("sns_gap: no witnesses supplied");

    const bool one_side = witnesses.kind == WitnessKind::One;
    SnsReport rep;
    rep.eps = params.eps;
    rep.p = params.p;
    rep.samples = samples;
    rep.seed = seed;

    // Unconditioned baseline P(f = v) from its own derived seed.
    {
        DenseSampler base(f, params.p);
        const double grid[1] = {params.eps};
        const PairCounts counts =
            collect_pair_counts(base, grid, samples, mix64(seed ^ 0x9e1d3bd6a792bce1ULL), run);
        const double p1 = counts.prob_base();
        rep.prob_value = one_side ? p1 : 1.0 - p1;
        rep.prob_value_stderr =
            std::sqrt(p1 * (1.0 - p1) / static_cast<double>(counts.samples));
        rep.degenerate = counts.base_one == 0 || counts.base_one == counts.samples;
    }

    for (std::size_t w = 0; w < witnesses.witnesses.size(); ++w) {
        const auto& wit = witnesses.witnesses[w];
        DenseSampler cond(f, params.p, wit, one_side);
        const double grid[1] = {params.eps};
        const PairCounts counts = collect_pair_counts(
            cond, grid, samples, mix64(seed ^ (0x51ed270b7a2c1899ULL + w)), run);
        // P(f(w^eps) = v | pinned): count noised evaluations matching v.
        const std::uint64_t hits =
            one_side ? counts.noised_one[0] : counts.samples - counts.noised_one[0];
        const double q = static_cast<double>(hits) / static_cast<double>(counts.samples);
        const double se = std::sqrt(q * (1.0 - q) / static_cast<double>(counts.samples));
        WitnessGap g;
        g.witness = wit;
        g.conditioned = q;
        g.conditioned_stderr = se;
        g.gap = q - rep.prob_value;
        g.gap_stderr = std::sqrt(se * se + rep.prob_value_stderr * rep.prob_value_stderr);
        rep.gaps.push_back(std::move(g));
    }

    rep.max_index = 0;
    for (std::size_t w = 1; w < rep.gaps.size(); ++w)
        if (rep.gaps[w].gap > rep.gaps[rep.max_index].gap) rep.max_index = w;
    rep.max_gap = rep.gaps[rep.max_index].gap;
    rep.max_gap_stderr = rep.gaps[rep.max_index].gap_stderr;
    return rep;
}

std::uint64_t zero_witness_count(const WitnessSet& zero_witnesses, const Configuration& omega) {
    if (zero_witnesses.kind != WitnessKind::Zero)
        throw std::invalid_argument("zero_witness_count expects 0-witnesses");
    std::uint64_t count = 0;
    for (const auto& w : zero_witnesses.witnesses) {
        bool all_zero = true;
        for (std::uint32_t i : w) {
            if (omega.test(i)) { all_zero = false; break; }
        }
        if (all_zero) ++count;
    }
    return count;
}

ZeroWitnessCount zero_witness_count_mc(const BooleanFunction& f, const WitnessSet& zero_witnesses,
                                       double p, std::uint64_t samples, std::uint64_t seed,
                                       const RunOptions& run) {
    struct Acc {
        std::uint64_t n = 0;
        std::uint64_t sum = 0;
        std::uint64_t sumsq = 0;
        void merge(const Acc& o) { n += o.n; sum += o.sum; sumsq += o.sumsq; }
    };
    const std::size_t arity = f.arity();
    Acc acc = run_indexed<Acc>(0, samples, run.workers, [&](std::uint64_t index, Acc& a) {
        RandomStream stream = substream(seed, index, 0);
        const Configuration omega = sample_configuration(arity, p, stream);
        const std::uint64_t y = zero_witness_count(zero_witnesses, omega);
        ++a.n;
        a.sum += y;
        a.sumsq += y * y;
    });
    ZeroWitnessCount out;
    out.samples = acc.n;
    out.mean = static_cast<double>(acc.sum) / static_cast<double>(acc.n);
    const double var =
        (static_cast<double>(acc.sumsq) - static_cast<double>(acc.n) * out.mean * out.mean) /
        (static_cast<double>(acc.n) - 1.0);
    out.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(acc.n));
    out.bounded_flag = out.mean < 8.0;
    return out;
}

}  // namespace noiselab
