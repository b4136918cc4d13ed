#include "noiselab/fourier.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace noiselab {

namespace {

void require_table(const BooleanFunction& f) {
    if (!f.has_table())
        throw std::invalid_argument("exact spectral analysis requires a truth-table-backed function");
}

void require_bias(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("bias p must lie strictly inside (0,1)");
}

// Probability weights pi(w) grouped by popcount.
std::vector<double> weight_by_popcount(std::size_t n, double p) {
    std::vector<double> w(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        w[k] = std::pow(p, static_cast<double>(k)) * std::pow(1.0 - p, static_cast<double>(n - k));
    return w;
}

}  // namespace

double SpectralTable::parseval_sum() const {
    double s = 0.0;
    for (double c : coeffs) s += c * c;
    return s;
}

double SpectralSample::total_mass() const {
    double s = 0.0;
    for (double m : mass) s += m;
    return s;
}

double SpectralSample::expected_size() const {
    double s = 0.0;
    for (std::size_t m = 0; m < mass.size(); ++m)
        s += mass[m] * std::popcount(static_cast<std::uint32_t>(m));
    return s;
}

SpectralTable fourier_transform(const BooleanFunction& f, double p) {
    require_table(f);
    require_bias(p);
    const std::size_t n = f.arity();
    const std::size_t size = std::size_t{1} << n;
    const auto& table = f.table();

    SpectralTable out;
    out.arity = n;
    out.p = p;
    out.coeffs.resize(size);
    for (std::size_t m = 0; m < size; ++m) out.coeffs[m] = table[m] ? 1.0 : 0.0;

    // Per-coordinate change of basis: values (f0, f1) on the two half-cubes
    // become (E_i f, E[f chi_i]) = ((1-p) f0 + p f1, sigma (f1 - f0)).
    const double sigma = std::sqrt(p * (1.0 - p));
    auto& a = out.coeffs;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t base = 0; base < size; base += bit * 2) {
            for (std::size_t off = 0; off < bit; ++off) {
                const double f0 = a[base + off];
                const double f1 = a[base + off + bit];
                a[base + off] = (1.0 - p) * f0 + p * f1;
                a[base + off + bit] = sigma * (f1 - f0);
            }
        }
    }
    return out;
}

std::vector<double> inverse_transform(const SpectralTable& table) {
    const std::size_t n = table.arity;
    const std::size_t size = std::size_t{1} << n;
    const double p = table.p;
    // chi_i is sqrt((1-p)/p) at 1 and -sqrt(p/(1-p)) at 0.
    const double chi1 = std::sqrt((1.0 - p) / p);
    const double chi0 = -std::sqrt(p / (1.0 - p));
    std::vector<double> vals = table.coeffs;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t base = 0; base < size; base += bit * 2) {
            for (std::size_t off = 0; off < bit; ++off) {
                const double mean = vals[base + off];
                const double coef = vals[base + off + bit];
                vals[base + off] = mean + chi0 * coef;
                vals[base + off + bit] = mean + chi1 * coef;
            }
        }
    }
    return vals;
}

double noise_product_exact(const SpectralTable& table, double eps) {
    double s = 0.0;
    const double r = 1.0 - eps;
    for (std::size_t m = 0; m < table.coeffs.size(); ++m) {
        const double c = table.coeffs[m];
        s += c * c * std::pow(r, std::popcount(static_cast<std::uint32_t>(m)));
    }
    return s;
}

double noise_covariance_exact(const SpectralTable& table, double eps) {
    const double c0 = table.coeffs[0];
    return noise_product_exact(table, eps) - c0 * c0;
}

double conditional_variance_exact(const SpectralTable& table, double eps) {
    double s = 0.0;
    const double r = (1.0 - eps) * (1.0 - eps);
    for (std::size_t m = 1; m < table.coeffs.size(); ++m) {
        const double c = table.coeffs[m];
        s += c * c * std::pow(r, std::popcount(static_cast<std::uint32_t>(m)));
    }
    return s;
}

std::vector<double> influences(const BooleanFunction& f, double p) {
    require_table(f);
    require_bias(p);
    const std::size_t n = f.arity();
    const std::size_t size = std::size_t{1} << n;
    const auto& table = f.table();
    const auto weights = weight_by_popcount(n, p);

    std::vector<double> inf(n, 0.0);
    for (std::size_t m = 0; m < size; ++m) {
        const double w = weights[std::popcount(static_cast<std::uint32_t>(m))];
        for (std::size_t i = 0; i < n; ++i) {
            if (table[m] != table[m ^ (std::size_t{1} << i)]) inf[i] += w;
        }
    }
    return inf;
}

PivotalReport pivotal_report(const BooleanFunction& f, double p) {
    require_table(f);
    require_bias(p);
    const std::size_t n = f.arity();
    const std::size_t size = std::size_t{1} << n;
    const auto& table = f.table();
    const auto weights = weight_by_popcount(n, p);

    PivotalReport rep;
    rep.influences.assign(n, 0.0);
    double mass_one = 0.0, piv_one = 0.0, piv_zero = 0.0, piv_all = 0.0;
    for (std::size_t m = 0; m < size; ++m) {
        const double w = weights[std::popcount(static_cast<std::uint32_t>(m))];
        std::size_t piv = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (table[m] != table[m ^ (std::size_t{1} << i)]) {
                ++piv;
                rep.influences[i] += w;
            }
        }
        piv_all += w * static_cast<double>(piv);
        if (table[m]) { mass_one += w; piv_one += w * static_cast<double>(piv); }
        else piv_zero += w * static_cast<double>(piv);
    }
    rep.prob_one = mass_one;
    rep.expected_pivotals = piv_all;
    rep.degenerate = !(mass_one > 0.0 && mass_one < 1.0);
    rep.expected_pivotals_given_one = rep.degenerate && mass_one == 0.0 ? 0.0 : piv_one / mass_one;
    rep.expected_pivotals_given_zero = rep.degenerate && mass_one == 1.0 ? 0.0 : piv_zero / (1.0 - mass_one);
    if (!rep.degenerate)
        rep.lemma_gap = rep.expected_pivotals_given_one - (p / mass_one) * piv_all;
    return rep;
}

double spectral_mass_below(const SpectralTable& table, std::size_t k) {
    double s = 0.0;
    for (std::size_t m = 1; m < table.coeffs.size(); ++m) {
        if (static_cast<std::size_t>(std::popcount(static_cast<std::uint32_t>(m))) < k)
            s += table.coeffs[m] * table.coeffs[m];
    }
    return s;
}

double spectral_sample_mean_size(const SpectralTable& table) {
    double s = 0.0;
    for (std::size_t m = 1; m < table.coeffs.size(); ++m)
        s += table.coeffs[m] * table.coeffs[m] * std::popcount(static_cast<std::uint32_t>(m));
    return s;
}

std::vector<double> spectral_mass_by_level(const SpectralTable& table) {
    std::vector<double> levels(table.arity + 1, 0.0);
    for (std::size_t m = 0; m < table.coeffs.size(); ++m)
        levels[std::popcount(static_cast<std::uint32_t>(m))] += table.coeffs[m] * table.coeffs[m];
    return levels;
}

SpectralSample spectral_sample(const SpectralTable& table) {
    SpectralSample s;
    s.arity = table.arity;
    s.mass.resize(table.coeffs.size());
    double total = 0.0;
    for (std::size_t m = 0; m < table.coeffs.size(); ++m) {
        s.mass[m] = table.coeffs[m] * table.coeffs[m];
        total += s.mass[m];
    }
    s.residual = 1.0 - total;
    return s;
}

std::string spectral_table_csv(const SpectralTable& table) {
    std::string out = "mask,coefficient\n";
    char buf[64];
    for (std::size_t m = 0; m < table.coeffs.size(); ++m) {
        std::snprintf(buf, sizeof(buf), "0x%zx,%.17g\n", m, table.coeffs[m]);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "parseval,%.17g\n", table.parseval_sum());
    out += buf;
    return out;
}

}  // namespace noiselab
