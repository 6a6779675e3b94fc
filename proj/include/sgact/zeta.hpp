#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "sgact/periodic.hpp"

namespace sgact {

/// Polynomial with exact rational coefficients, ascending powers.
struct RationalPoly {
    std::vector<Rational> coeffs;

    std::complex<double> eval(std::complex<double> z) const;
};

/// zeta(z) = numerator(z) / denominator(z).
struct RationalForm {
    RationalPoly numerator;
    RationalPoly denominator;

    double pole() const; // the unique root of the denominator
};

/// Truncated log-zeta data: c_n = N_n / n exactly, a root-test radius
/// estimate, and the closed rational form when the spec admits one.
struct ZetaSeries {
    int n_max = 0;
    int p = 0;
    long long degree_sum = 0;
    std::vector<Rational> coeffs; // coeffs[k] = N_{k+1} / (k+1)
    double radius_estimate = 0.0;
    std::optional<RationalForm> rational_form;
    std::vector<int128> skew_counts; // Per_n, carried over for the skew zeta
};

enum class ZetaEvalMode { Auto, Series, Rational };

ZetaSeries zeta_series(const PeriodicCountSeries& series);

/// Closed form (1 - z) / (1 - (D/p) z), D = sum of degrees. Available exactly
/// for all-linear circle specs; nullopt otherwise (series-only mode).
std::optional<RationalForm> zeta_rational(const SemigroupSpec& spec);

/// Evaluate zeta. Series mode requires |z| < 0.95 * radius_estimate; rational
/// mode works anywhere away from the pole.
std::complex<double> zeta_eval(const ZetaSeries& zs, std::complex<double> z,
                               ZetaEvalMode mode = ZetaEvalMode::Auto);

struct RadiusEntropyReport {
    double radius_estimate = 0.0;
    double exp_minus_entropy = 0.0;
    double abs_difference = 0.0;
    double tolerance = 0.0;
    bool exact = false; // rational form present: pole equals exp(-h) identically
    bool consistent = false;
};

/// Radius of convergence against exp(-topological entropy).
RadiusEntropyReport radius_vs_entropy(const ZetaSeries& zs, const EntropyReport& er);

} // namespace sgact
