#include "sgact/zeta.hpp"

#include <cmath>
#include <cstdio>

namespace sgact {

std::complex<double> RationalPoly::eval(std::complex<double> z) const {
    std::complex<double> v = 0.0;
    for (size_t i = coeffs.size(); i-- > 0;)
        v = v * z + coeffs[i].to_double();
    return v;
}

double RationalForm::pole() const {
    // denominator is c0 + c1 z; for 1 - (D/p) z the root sits at p/D
    return -denominator.coeffs.at(0).to_double() / denominator.coeffs.at(1).to_double();
}

ZetaSeries zeta_series(const PeriodicCountSeries& series) {
    ZetaSeries zs;
    zs.n_max = series.n_max;
    zs.p = series.p;
    zs.skew_counts = series.skew_counts;
    long long deg_sum = 0;
    for (long long d : series.degrees) deg_sum += d;
    zs.degree_sum = deg_sum;
    zs.coeffs.reserve(static_cast<size_t>(series.n_max));
    for (int n = 1; n <= series.n_max; ++n)
        zs.coeffs.push_back(series.N(n) / Rational::integer(n));

    // Root test via log increments of max(N_n, 1); the last three increments
    // are averaged, which damps the limsup's slow drift and is deterministic.
    auto logN = [&](int n) { return std::log(std::max(series.N(n).to_double(), 1.0)); };
    double slope;
    if (series.n_max >= 4) {
        double s = 0.0;
        for (int n = series.n_max - 2; n <= series.n_max; ++n)
            s += logN(n) - logN(n - 1);
        slope = s / 3.0;
    } else {
        slope = logN(series.n_max) / double(series.n_max);
    }
    zs.radius_estimate = std::exp(-slope);

    if (series.all_circle && series.all_linear) {
        RationalForm rf;
        rf.numerator.coeffs = {Rational::integer(1), Rational::integer(-1)};
        rf.denominator.coeffs = {Rational::integer(1), Rational(-deg_sum, series.p)};
        zs.rational_form = std::move(rf);
    }
    return zs;
}

std::optional<RationalForm> zeta_rational(const SemigroupSpec& spec) {
    if (!spec.all_circle() || !spec.all_linear()) return std::nullopt;
    RationalForm rf;
    rf.numerator.coeffs = {Rational::integer(1), Rational::integer(-1)};
    rf.denominator.coeffs = {Rational::integer(1), Rational(-spec.degree_sum(), spec.p())};
    return rf;
}

std::complex<double> zeta_eval(const ZetaSeries& zs, std::complex<double> z, ZetaEvalMode mode) {
    bool use_rational = false;
    switch (mode) {
        case ZetaEvalMode::Auto:
            use_rational = zs.rational_form.has_value();
            break;
        case ZetaEvalMode::Rational:
            if (!zs.rational_form)
                throw ValidationError("zeta_eval: no rational form for this spec");
            use_rational = true;
            break;
        case ZetaEvalMode::Series:
            use_rational = false;
            break;
    }
    if (use_rational) {
        const RationalForm& rf = *zs.rational_form;
        std::complex<double> den = rf.denominator.eval(z);
        if (std::abs(den) < 1e-12)
            throw ValidationError("zeta_eval: z is at the pole of the rational form");
        return rf.numerator.eval(z) / den;
    }
    if (std::abs(z) >= 0.95 * zs.radius_estimate) {
        char bound[32];
        std::snprintf(bound, sizeof(bound), "%.6g", 0.95 * zs.radius_estimate);
        throw ValidationError(std::string("zeta_eval: series mode needs |z| < ") + bound +
                              " (0.95 * estimated radius)");
    }
    std::complex<double> exponent = 0.0;
    for (size_t i = zs.coeffs.size(); i-- > 0;)
        exponent = exponent * z + zs.coeffs[i].to_double();
    exponent *= z; // series starts at n = 1
    return std::exp(exponent);
}

RadiusEntropyReport radius_vs_entropy(const ZetaSeries& zs, const EntropyReport& er) {
    RadiusEntropyReport rep;
    rep.exp_minus_entropy = std::exp(-er.topological_entropy);
    rep.exact = zs.rational_form.has_value();
    if (rep.exact) {
        // pole of (1-z)/(1-(D/p)z) is p/D = exp(-log(D/p)) identically
        double pole = zs.rational_form->pole();
        rep.radius_estimate = pole;
        rep.abs_difference = std::fabs(pole - rep.exp_minus_entropy);
        rep.tolerance = 1e-12;
    } else {
        rep.radius_estimate = zs.radius_estimate;
        rep.abs_difference = std::fabs(zs.radius_estimate - rep.exp_minus_entropy);
        rep.tolerance = std::max(1e-10, 2.0 * std::pow(zs.radius_estimate,
                                                       std::max(1, zs.n_max - 2)));
    }
    rep.consistent = rep.abs_difference <= rep.tolerance;
    return rep;
}

} // namespace sgact
