#include <doctest.h>

#include <cmath>

#include "noiselab/families.hpp"
#include "test_util.hpp"

using namespace noiselab;

TEST_CASE("tribes with one block of one bit is the dictator") {
    auto f = make_tribes(TribesSpec{1, 1, false});
    CHECK(f.arity() == 1);
    CHECK(f.eval_mask(1));
    CHECK_FALSE(f.eval_mask(0));
}

TEST_CASE("fanout-3 depth-1 recursive majority is plain 3-majority") {
    auto f = make_recmaj(RecMajSpec{3, 1});
    CHECK(f.arity() == 3);
    int ones = 0;
    for (std::uint32_t m = 0; m < 8; ++m) {
        const bool expect = __builtin_popcount(m) >= 2;
        CHECK(f.eval_mask(m) == expect);
        ones += f.eval_mask(m);
    }
    CHECK(ones == 4);
}

TEST_CASE("composition of 3-majority with AND of two bits") {
    auto outer = make_recmaj(RecMajSpec{3, 1});
    std::vector<std::uint8_t> and2{0, 0, 0, 1};
    auto inner = BooleanFunction::from_table(2, and2, true, "and2");
    auto f = make_composition(outer, inner);
    CHECK(f.arity() == 6);
    CHECK(f.eval_mask(0b111111));
    CHECK_FALSE(f.eval_mask(0b000011));
    // agree with naive nesting everywhere
    for (std::uint32_t m = 0; m < 64; ++m) {
        const bool b0 = (m & 0b000011) == 0b000011;
        const bool b1 = (m & 0b001100) == 0b001100;
        const bool b2 = (m & 0b110000) == 0b110000;
        const bool expect = (b0 + b1 + b2) >= 2;
        CHECK(f.eval_mask(m) == expect);
    }
}

TEST_CASE("tribes closed form equals the truth-table expectation") {
    for (bool reversed : {false, true}) {
        const TribesSpec spec{3, 4, reversed};
        auto f = make_tribes(spec);
        for (double p : {0.2, 0.5, 0.8})
            CHECK(std::fabs(tribes_prob_one(spec, p) - testutil::expectation(f, p)) < 1e-12);
    }
    // at the truth-table cutoff arity
    const TribesSpec wide{4, 5, false};
    auto f = make_tribes(wide);
    REQUIRE(f.has_table());
    CHECK(std::fabs(tribes_prob_one(wide, 0.37) - testutil::expectation(f, 0.37)) < 1e-12);
}

TEST_CASE("composing plain majorities reproduces the deeper recursive majority") {
    auto maj = make_recmaj(RecMajSpec{3, 1});
    auto composed = make_composition(maj, maj);
    auto direct = make_recmaj(RecMajSpec{3, 2});
    REQUIRE(composed.arity() == 9);
    for (std::uint32_t m = 0; m < (1u << 9); ++m)
        CHECK(composed.eval_mask(m) == direct.eval_mask(m));
}

TEST_CASE("fanout-3 conditioned probability is exactly 1 - eps/2 at every depth") {
    for (double eps : {0.0, 0.125, 0.4, 0.75, 1.0}) {
        const double expect = 1.0 - eps / 2;
        for (unsigned k = 0; k <= 60; ++k)
            CHECK(recmaj_conditioned_prob(3, k, eps) == expect);
    }
}

TEST_CASE("fanout-5 conditioned probability escapes to 1") {
    CHECK(recmaj_conditioned_prob(5, 40, 0.5) > 0.999);
    // eps = 1 starts at the repelling fixed point and stays there
    for (unsigned k : {1u, 7u, 33u}) CHECK(recmaj_conditioned_prob(5, k, 1.0) == 0.5);
    CHECK_THROWS_AS(recmaj_conditioned_prob(7, 3, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(recmaj_conditioned_prob(3, 3, 0.5, 0.4), std::invalid_argument);
}

TEST_CASE("h has exact fixed points and slope 9/8 at the center") {
    CHECK(h_map(0.0) == 0.0);
    CHECK(h_map(0.5) == 0.5);
    CHECK(h_map(1.0) == 1.0);
    CHECK(iterate_h(0.5, 1000) == 0.5);
    const double d = 1e-6;
    const double slope = (h_map(0.5 + d) - h_map(0.5 - d)) / (2 * d);
    CHECK(std::fabs(slope - 1.125) < 1e-6);
}

TEST_CASE("h is increasing and concave on [1/2, 1] and maps [0,1] into itself") {
    double prev = h_map(0.5);
    double prev_step = -1.0;
    for (int i = 1; i <= 50; ++i) {
        const double x = 0.5 + i * 0.01;
        const double y = h_map(x);
        CHECK(y >= prev);
        if (prev_step >= 0.0) CHECK(y - prev <= prev_step + 1e-12);
        prev_step = y - prev;
        prev = y;
    }
    for (int i = 0; i <= 100; ++i) {
        const double y = h_map(i * 0.01);
        CHECK(y >= 0.0);
        CHECK(y <= 1.0);
    }
}

TEST_CASE("displacement iteration resolves exponentially small offsets") {
    // m = 1000: (9/8)^{1010} 0.88^{1000} stays below 1e-2.
    const double d1 = std::exp(1000.0 * std::log(0.88));
    CHECK(iterate_h_offset(d1, 1010) - 0.5 < 0.01);
    CHECK(iterate_h_offset(d1, 1010) - 0.5 > 0.0);
    // m = 5000: 0.89-offsets escape upward within 1.01 m iterations.
    const double d2 = std::exp(5000.0 * std::log(0.89));
    CHECK(iterate_h_offset(d2, 5050) > 0.99);
    // Direct iteration agrees with the offset form when both are exact.
    CHECK(iterate_h(0.5 + 0.01, 7) == doctest::Approx(iterate_h_offset(0.01, 7)).epsilon(1e-12));
}

TEST_CASE("tribes bias solve") {
    CHECK(tribes_bias_solve(TribesSpec{1, 1, false}, 0.5) == doctest::Approx(0.5).epsilon(1e-12));

    const TribesSpec reversed{5, 3, true};
    const double p = tribes_bias_solve(reversed, 0.5);
    CHECK(std::fabs(tribes_prob_one(reversed, p) - 0.5) < 1e-12);

    // Reversed tribes at 2^10 bits: blocks of floor(10 - log2 10) = 6 bits,
    // 170 blocks. Solving (1-(1-p)^6)^170 = 1/2 by hand:
    // (1-p)^6 = 1 - 2^(-1/170), so p = 1 - exp(log(1 - 2^(-1/170))/6).
    const TribesSpec natural = tribes_natural(1024, true);
    CHECK(natural.block_size == 6);
    CHECK(natural.blocks == 170);
    const double pn = tribes_bias_solve(natural, 0.5);
    const double expect = 1.0 - std::exp(std::log(1.0 - std::pow(2.0, -1.0 / 170.0)) / 6.0);
    CHECK(pn == doctest::Approx(expect).epsilon(1e-10));
    // The bias drifts toward 1/2 as the input grows.
    const double pn16 = tribes_bias_solve(tribes_natural(1 << 16, true), 0.5);
    CHECK(std::fabs(pn16 - 0.5) < std::fabs(pn - 0.5));
}

TEST_CASE("witness gap formula and bracket for tribes") {
    const TribesSpec spec{16, 4, false};
    const double gap = tribes_witness_gap(spec, 0.5, 0.5);
    // u (s - p^b) with u = (15/16)^15, s = 0.75^4
    const double u = std::pow(1 - std::pow(0.5, 4), 15);
    CHECK(gap == doctest::Approx(u * (std::pow(0.75, 4) - 0.0625)).epsilon(1e-12));
    const auto [lo, hi] = tribes_gap_bracket(4, 0.5);
    CHECK(lo < hi);
    CHECK(lo == doctest::Approx(std::pow(1 - 0.25 - 0.015625, 4)));
}

TEST_CASE("canonical witnesses have the advertised sizes") {
    CHECK(tribes_canonical_witness(TribesSpec{4, 3, false}, WitnessKind::One).size() == 3);
    CHECK(tribes_canonical_witness(TribesSpec{4, 3, false}, WitnessKind::Zero).size() == 4);
    CHECK(recmaj_canonical_witness(RecMajSpec{3, 3}, WitnessKind::One).size() == 8);   // 2^3
    CHECK(recmaj_canonical_witness(RecMajSpec{5, 2}, WitnessKind::One).size() == 9);   // 3^2
}
