#include <doctest.h>

#include <cmath>

#include "noiselab/fourier.hpp"
#include "test_util.hpp"

using namespace noiselab;

namespace {
const double kPGrid[] = {0.1, 0.3, 0.5, 0.7, 0.9};
}

TEST_CASE("constant function concentrates on the empty set") {
    std::vector<std::uint8_t> table(1u << 5, 1);
    auto f = BooleanFunction::from_table(5, table, true, "one");
    const SpectralTable t = fourier_transform(f, 0.4);
    CHECK(t.coeffs[0] == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t m = 1; m < t.coeffs.size(); ++m)
        CHECK(std::fabs(t.coeffs[m]) < 1e-14);
}

TEST_CASE("dictator at p=1/2 splits evenly between empty set and singleton") {
    std::vector<std::uint8_t> table(8);
    for (std::uint32_t m = 0; m < 8; ++m) table[m] = m & 1;
    auto f = BooleanFunction::from_table(3, table, true, "dictator");
    const SpectralTable t = fourier_transform(f, 0.5);
    CHECK(t.coeffs[0] == doctest::Approx(0.5));
    CHECK(t.coeffs[1] == doctest::Approx(0.5));
    for (std::size_t m = 2; m < 8; ++m) CHECK(std::fabs(t.coeffs[m]) < 1e-15);
}

TEST_CASE("butterfly matches the defining sum on a random 8-variable table") {
    auto f = testutil::random_table_function(8, 2024);
    const SpectralTable t = fourier_transform(f, 0.3);
    const auto naive = testutil::naive_transform(f, 0.3);
    for (std::size_t m = 0; m < naive.size(); ++m)
        CHECK(std::fabs(t.coeffs[m] - naive[m]) < 1e-12);
}

TEST_CASE("parseval holds across the bias grid") {
    for (double p : kPGrid) {
        auto f = testutil::random_table_function(9, 77 + static_cast<int>(p * 10));
        const SpectralTable t = fourier_transform(f, p);
        CHECK(std::fabs(t.parseval_sum() - testutil::expectation(f, p)) < 1e-12);
    }
}

TEST_CASE("inverse transform reproduces the truth table") {
    auto f = testutil::random_table_function(10, 99);
    const SpectralTable t = fourier_transform(f, 0.27);
    const auto values = inverse_transform(t);
    for (std::size_t m = 0; m < values.size(); ++m) {
        CHECK(std::fabs(values[m] - (f.eval_mask(static_cast<std::uint32_t>(m)) ? 1.0 : 0.0)) < 1e-9);
        CHECK((values[m] > 0.5) == f.eval_mask(static_cast<std::uint32_t>(m)));
    }
}

TEST_CASE("noise covariance endpoints and enumeration oracle") {
    auto f = testutil::random_monotone_function(10, 4);
    const double p = 0.5;
    const SpectralTable t = fourier_transform(f, p);
    const double ef = testutil::expectation(f, p);

    CHECK(std::fabs(noise_covariance_exact(t, 1.0)) < 1e-12);
    CHECK(noise_covariance_exact(t, 0.0) == doctest::Approx(ef - ef * ef).epsilon(1e-12));

    for (double eps : {0.25, 0.6}) {
        const double enumerated = testutil::noise_product_enumerated(f, p, eps);
        CHECK(std::fabs(noise_product_exact(t, eps) - enumerated) < 1e-10);
    }
}

TEST_CASE("noise covariance is nonincreasing in eps") {
    auto f = testutil::random_monotone_function(9, 5);
    const SpectralTable t = fourier_transform(f, 0.35);
    double prev = noise_covariance_exact(t, 0.0);
    for (int i = 1; i <= 20; ++i) {
        const double cur = noise_covariance_exact(t, i * 0.05);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
    }
}

TEST_CASE("influences: dictator and tribes") {
    std::vector<std::uint8_t> table(8);
    for (std::uint32_t m = 0; m < 8; ++m) table[m] = m & 1;
    auto dict = BooleanFunction::from_table(3, table, true, "dictator");
    const auto inf = influences(dict, 0.5);
    CHECK(inf[0] == doctest::Approx(1.0));
    CHECK(inf[1] == doctest::Approx(0.0));
    CHECK(inf[2] == doctest::Approx(0.0));
}

TEST_CASE("monotone functions tie the singleton coefficient to the influence") {
    auto f = testutil::random_monotone_function(9, 12);
    const double p = 0.3;
    const SpectralTable t = fourier_transform(f, p);
    const auto inf = influences(f, p);
    const double sigma = std::sqrt(p * (1 - p));
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(std::fabs(t.coeffs[std::size_t{1} << i] - sigma * inf[i]) < 1e-12);
}

TEST_CASE("pivotal report identities") {
    SUBCASE("dictator at p=1/2") {
        std::vector<std::uint8_t> table(2);
        table[1] = 1;
        auto f = BooleanFunction::from_table(1, table, true, "dictator");
        const auto rep = pivotal_report(f, 0.5);
        CHECK(rep.expected_pivotals == doctest::Approx(1.0));
        CHECK(rep.prob_one == doctest::Approx(0.5));
        CHECK(rep.expected_pivotals_given_one == doctest::Approx(1.0));
        CHECK(std::fabs(rep.lemma_gap) < 1e-12);
    }
    SUBCASE("AND of two bits at p=1/2") {
        std::vector<std::uint8_t> table{0, 0, 0, 1};
        auto f = BooleanFunction::from_table(2, table, true, "and2");
        const auto rep = pivotal_report(f, 0.5);
        CHECK(rep.expected_pivotals == doctest::Approx(1.0));
        CHECK(rep.expected_pivotals_given_one == doctest::Approx(2.0));
        CHECK(std::fabs(rep.lemma_gap) < 1e-12);
    }
    SUBCASE("lemma ratio holds for monotone functions at every p") {
        for (double p : kPGrid) {
            auto f = testutil::random_monotone_function(10, 31);
            const auto rep = pivotal_report(f, p);
            CHECK_FALSE(rep.degenerate);
            CHECK(std::fabs(rep.lemma_gap) < 1e-12);
        }
    }
    SUBCASE("non-monotone functions satisfy the identity at p=1/2") {
        auto f = testutil::random_table_function(9, 8);
        const auto rep = pivotal_report(f, 0.5);
        CHECK(std::fabs(rep.lemma_gap) < 1e-12);
    }
    SUBCASE("degenerate functions are flagged, not divided by zero") {
        std::vector<std::uint8_t> table(16, 0);
        auto f = BooleanFunction::from_table(4, table, true, "zero");
        CHECK(pivotal_report(f, 0.5).degenerate);
    }
}

TEST_CASE("spectral mass below a level and the mean spectral size") {
    auto f = testutil::random_monotone_function(10, 21);
    const double p = 0.4;
    const SpectralTable t = fourier_transform(f, p);
    CHECK(spectral_mass_below(t, 1) == 0.0);

    const auto rep = pivotal_report(f, p);
    CHECK(std::fabs(spectral_sample_mean_size(t) - p * (1 - p) * rep.expected_pivotals) < 1e-12);

    std::vector<std::uint8_t> table(32, 1);
    auto one = BooleanFunction::from_table(5, table, true, "one");
    const SpectralTable t1 = fourier_transform(one, p);
    for (std::size_t k = 1; k <= 5; ++k) CHECK(spectral_mass_below(t1, k) == 0.0);
}

TEST_CASE("conditional variance identity against enumeration") {
    auto f = testutil::random_monotone_function(8, 41);
    const double p = 0.45, eps = 0.3;
    const SpectralTable t = fourier_transform(f, p);
    const double enumerated = testutil::conditional_variance_enumerated(f, p, eps);
    CHECK(std::fabs(conditional_variance_exact(t, eps) - enumerated) < 1e-10);
}

TEST_CASE("spectral sample is a sub-probability with explicit residual") {
    auto f = testutil::random_table_function(8, 55);
    const SpectralTable t = fourier_transform(f, 0.3);
    const SpectralSample s = spectral_sample(t);
    CHECK(s.total_mass() <= 1.0 + 1e-12);
    CHECK(s.total_mass() + s.residual == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(s.expected_size() - spectral_sample_mean_size(t)) < 1e-12);
}

TEST_CASE("level mass diagnostic sums to parseval and profiles triangle containment") {
    auto f = testutil::random_table_function(8, 60);
    const SpectralTable t = fourier_transform(f, 0.4);
    const auto levels = spectral_mass_by_level(t);
    double total = 0.0;
    for (double m : levels) total += m;
    CHECK(total == doctest::Approx(t.parseval_sum()).epsilon(1e-12));

    // Triangle containment on 5 vertices (10 edge variables): the level
    // profile exists and level 0 carries the squared mean.
    std::vector<std::uint8_t> table(1u << 10, 0);
    for (std::uint32_t m = 0; m < table.size(); ++m) {
        bool tri = false;
        for (int a = 0; a < 5 && !tri; ++a)
            for (int b = a + 1; b < 5 && !tri; ++b)
                for (int c = b + 1; c < 5 && !tri; ++c) {
                    auto bit = [&](int u, int v) {
                        const int idx = u * 5 - u * (u + 1) / 2 + (v - u - 1);
                        return (m >> idx) & 1u;
                    };
                    if (bit(a, b) && bit(a, c) && bit(b, c)) tri = true;
                }
        table[m] = tri ? 1 : 0;
    }
    auto triangle = BooleanFunction::from_table(10, table, true, "triangle-5");
    const SpectralTable tt = fourier_transform(triangle, 0.3);
    const auto tri_levels = spectral_mass_by_level(tt);
    CHECK(tri_levels[0] == doctest::Approx(tt.mean() * tt.mean()).epsilon(1e-12));
    CHECK(tri_levels.size() == 11);
}

TEST_CASE("transform rejects oracle-only and oversized inputs") {
    auto oracle = BooleanFunction::from_oracle(40, [](const Configuration& w) {
        return w.test(0);
    }, true, "oracle");
    CHECK_THROWS_AS(fourier_transform(oracle, 0.5), std::invalid_argument);
}

TEST_CASE("spectral table CSV round-trips the parseval row") {
    std::vector<std::uint8_t> table{0, 1, 1, 1};
    auto f = BooleanFunction::from_table(2, table, true, "or2");
    const std::string csv = spectral_table_csv(fourier_transform(f, 0.5));
    CHECK(csv.find("mask,coefficient") == 0);
    CHECK(csv.find("parseval,") != std::string::npos);
}
