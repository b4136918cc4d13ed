#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "noiselab/boolfun.hpp"
#include "noiselab/witness.hpp"

namespace noiselab {

// OR of ANDs over disjoint blocks; reversed flips the roles of 0 and 1
// (value 0 iff some block is all-0).
struct TribesSpec {
    std::size_t blocks = 1;
    std::size_t block_size = 1;
    bool reversed = false;
    std::size_t arity() const { return blocks * block_size; }
};

// Iterated majority over a complete fanout-ary tree; arity = fanout^depth.
struct RecMajSpec {
    unsigned fanout = 3;  // odd, 3 or 5 for the analytic recursions
    unsigned depth = 1;
    std::size_t arity() const;
};

BooleanFunction make_tribes(const TribesSpec& spec);
BooleanFunction make_recmaj(const RecMajSpec& spec);

// f(w) = outer(inner(block 1), ..., inner(block n)); arity n*m.
BooleanFunction make_composition(const BooleanFunction& outer, const BooleanFunction& inner);

// Natural tribes sizing for n bits: block size log2(n) - log2(log2(n)),
// trailing short block dropped.
TribesSpec tribes_natural(std::size_t n, bool reversed = false);

// Closed form P(f=1): 1-(1-p^b)^blocks forward, (1-(1-p)^b)^blocks reversed.
double tribes_prob_one(const TribesSpec& spec, double p);

// Witness-conditioned gap for forward tribes:
// u [(1-eps(1-p))^b - p^b] with u = (1-p^b)^(blocks-1).
double tribes_witness_gap(const TribesSpec& spec, double p, double eps);

// Bracket (1 - eps/2 -+ eps^2/16)^b around the gap of a bias-solved tribes.
std::pair<double, double> tribes_gap_bracket(std::size_t block_size, double eps);

// Solves P(f=1) = target for p by bisection to 1e-12.
double tribes_bias_solve(const TribesSpec& spec, double target);

// Exact witness-conditioned probability zeta_depth at p = 1/2, iterating
// zeta_k = zeta^2 + 2 zeta (1-zeta) p (fanout 3) or zeta_k = h(zeta) (fanout
// 5) from zeta_0 = 1 - eps/2.
double recmaj_conditioned_prob(unsigned fanout, unsigned depth, double eps, double p = 0.5);

// h(x) = -x^3/2 + 3x^2/4 + 3x/4, evaluated in Horner form so the fixed
// points {0, 1/2, 1} are exact in doubles.
double h_map(double x);

double iterate_h(double x0, std::uint64_t k);

// Iterates the displacement d = x - 1/2 (d' = d(9/8 - d^2/2)); resolves
// initial points exponentially close to the repelling fixed point that are
// not representable as offsets of 1/2 in a double. Returns x = 1/2 + d_k.
double iterate_h_offset(double d0, std::uint64_t k);

std::vector<std::uint32_t> tribes_canonical_witness(const TribesSpec& spec, WitnessKind kind);
std::vector<std::uint32_t> recmaj_canonical_witness(const RecMajSpec& spec, WitnessKind kind);

}  // namespace noiselab
