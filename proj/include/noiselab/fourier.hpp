#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "noiselab/boolfun.hpp"

namespace noiselab {

// Complete table of p-biased Fourier-Walsh coefficients, indexed by subset
// mask. coeffs[S] = E[f chi_S] at the stored bias.
struct SpectralTable {
    std::size_t arity = 0;
    double p = 0.5;
    std::vector<double> coeffs;

    double mean() const { return coeffs[0]; }
    // sum_S coeff^2; equals E[f] for Boolean f by Parseval.
    double parseval_sum() const;
};

// Sub-probability distribution P(S) = coeff(S)^2 with the residual mass
// 1 - sum recorded explicitly.
struct SpectralSample {
    std::size_t arity = 0;
    std::vector<double> mass;   // indexed by mask
    double residual = 0.0;      // 1 - total stored mass
    double total_mass() const;
    double expected_size() const;  // E|S| = sum_S |S| mass(S)
};

struct PivotalReport {
    std::vector<double> influences;        // I_i = P(f(w) != f(w^i))
    double expected_pivotals = 0.0;        // E|P|
    double expected_pivotals_given_one = 0.0;
    double expected_pivotals_given_zero = 0.0;
    double prob_one = 0.0;
    bool degenerate = false;               // P(f=1) in {0,1}: ratio checks skipped
    double lemma_gap = 0.0;                // E[|P| | f=1] - (p/P(f=1)) E|P|
};

// Exact p-biased transform via the in-place two-point butterfly,
// O(N 2^N) time. Requires a truth table.
SpectralTable fourier_transform(const BooleanFunction& f, double p);

// Inverse butterfly; reconstructs pointwise values from coefficients.
std::vector<double> inverse_transform(const SpectralTable& table);

// Cov(f(w), f(w^eps)) = sum_{S != empty} coeff(S)^2 (1-eps)^|S|.
double noise_covariance_exact(const SpectralTable& table, double eps);

// E[f(w) f(w^eps)] including the S = empty term.
double noise_product_exact(const SpectralTable& table, double eps);

// Var(P(f(w^eps)=1 | w)) = sum_{S != empty} coeff(S)^2 (1-eps)^{2|S|}.
double conditional_variance_exact(const SpectralTable& table, double eps);

std::vector<double> influences(const BooleanFunction& f, double p);

PivotalReport pivotal_report(const BooleanFunction& f, double p);

// sum over 0 < |S| < k of coeff(S)^2.
double spectral_mass_below(const SpectralTable& table, std::size_t k);

// E|S| = sum_S |S| coeff(S)^2; equals p(1-p) E|P|.
double spectral_sample_mean_size(const SpectralTable& table);

// Squared-coefficient mass per level |S| = 0..N; diagnostic for level
// concentration profiles.
std::vector<double> spectral_mass_by_level(const SpectralTable& table);

SpectralSample spectral_sample(const SpectralTable& table);

// Serialization used by the CLI `spectrum` subcommand: rows "mask,coefficient"
// with the mask in hex, then a trailing parseval row.
std::string spectral_table_csv(const SpectralTable& table);

}  // namespace noiselab
