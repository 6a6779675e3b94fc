#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "sgact/zeta.hpp"

using namespace sgact;

namespace {

// independent evaluation of the truncated exponent sum
std::complex<double> exp_of_partial_series(const ZetaSeries& zs, std::complex<double> z) {
    std::complex<double> s = 0.0;
    for (int n = 1; n <= zs.n_max; ++n)
        s += zs.coeffs[size_t(n - 1)].to_double() * std::pow(z, n);
    return std::exp(s);
}

} // namespace

TEST_CASE("zeta_series: exact coefficients") {
    auto zs = zeta_series(periodic_series(oracles::spec_z2_z3(), 12));
    CHECK(zs.coeffs[0] == Rational(3, 2));
    CHECK(zs.coeffs[1] == Rational(21, 8)); // N_2 / 2 = (21/4)/2
    for (int n = 1; n <= 12; ++n) {
        Rational expected = Rational(checked_pow(5, n) - checked_pow(2, n), checked_pow(2, n)) /
                            Rational::integer(n);
        CHECK(zs.coeffs[size_t(n - 1)] == expected);
    }
}

TEST_CASE("radius estimate: 0.4 for z2/z3, 0.5 for doubling") {
    auto zs = zeta_series(periodic_series(oracles::spec_z2_z3(), 12));
    CHECK(std::fabs(zs.radius_estimate - 0.4) < 5e-3);

    auto doubling = zeta_series(periodic_series(oracles::spec_z2(), 12));
    CHECK(std::fabs(doubling.radius_estimate - 0.5) < 5e-3);
}

TEST_CASE("zeta_rational: closed forms per spec family") {
    auto rf = zeta_rational(oracles::spec_z2_z3());
    REQUIRE(rf.has_value());
    CHECK(rf->numerator.coeffs[0] == Rational::integer(1));
    CHECK(rf->numerator.coeffs[1] == Rational::integer(-1));
    CHECK(rf->denominator.coeffs[0] == Rational::integer(1));
    CHECK(rf->denominator.coeffs[1] == Rational(-5, 2));
    CHECK(rf->pole() == doctest::Approx(0.4).epsilon(1e-15));

    auto doubling = zeta_rational(oracles::spec_z2());
    REQUIRE(doubling.has_value());
    CHECK(doubling->denominator.coeffs[1] == Rational::integer(-2));

    SemigroupSpec twin({GeneratorMap::circle_linear(3), GeneratorMap::circle_linear(3)});
    auto twins = zeta_rational(twin);
    REQUIRE(twins.has_value());
    CHECK(twins->denominator.coeffs[1] == Rational::integer(-3)); // D/p = 3

    CHECK(!zeta_rational(oracles::spec_mixed_nonlinear()).has_value());
}

TEST_CASE("log of rational form has the series coefficients (exact)") {
    // log[(1-z)/(1-(D/p)z)] = sum ((D/p)^n - 1)/n z^n; compare as rationals
    auto series = periodic_series(oracles::spec_z2_z3(), 12);
    auto zs = zeta_series(series);
    REQUIRE(zs.rational_form.has_value());
    Rational ratio(5, 2);
    Rational power = Rational::integer(1);
    for (int n = 1; n <= 12; ++n) {
        power = power * ratio;
        Rational taylor = (power - Rational::integer(1)) / Rational::integer(n);
        CHECK(taylor == zs.coeffs[size_t(n - 1)]);
    }
}

TEST_CASE("zeta_eval: rational and series modes") {
    auto zs = zeta_series(periodic_series(oracles::spec_z2_z3(), 12));

    CHECK(zeta_eval(zs, {0.0, 0.0}).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(zeta_eval(zs, {0.2, 0.0}).real() == doctest::Approx(1.6).epsilon(1e-14));

    auto series_val = zeta_eval(zs, {0.2, 0.0}, ZetaEvalMode::Series);
    CHECK(std::abs(series_val - std::complex<double>(1.6, 0.0)) < 5e-4);

    CHECK_THROWS_AS(zeta_eval(zs, {0.39, 0.0}, ZetaEvalMode::Series), ValidationError);
    CHECK_THROWS_AS(zeta_eval(zs, {0.4, 0.0}, ZetaEvalMode::Rational), ValidationError); // pole
}

TEST_CASE("series truncation error stays inside the geometric tail bound") {
    auto zs = zeta_series(periodic_series(oracles::spec_z2_z3(), 12));
    REQUIRE(zs.rational_form.has_value());
    const double ratio = 2.5;
    for (double r : {0.05, 0.1, 0.2, 0.3}) {
        for (double arg : {0.0, 1.0, 2.5}) {
            std::complex<double> z = std::polar(r, arg);
            double x = ratio * r;
            double tail = std::pow(x, zs.n_max + 1) / ((zs.n_max + 1) * (1.0 - x));
            std::complex<double> exact = zeta_eval(zs, z, ZetaEvalMode::Rational);
            std::complex<double> approx = exp_of_partial_series(zs, z);
            // |log zeta - partial sum| <= tail, so values differ by factor e^tail
            CHECK(std::abs(exact - approx) <= std::abs(exact) * (std::exp(tail) - 1.0) + 1e-12);
        }
    }
}

TEST_CASE("rational form: single pole at p/D inside |z| <= 0.5, zero at 1") {
    auto rf = zeta_rational(oracles::spec_z2_z3());
    REQUIRE(rf.has_value());
    // denominator is degree one: the only pole is at p/D
    CHECK(rf->pole() == doctest::Approx(0.4));
    CHECK(rf->pole() <= 0.5);
    // numerator root
    CHECK(std::abs(rf->numerator.eval({1.0, 0.0})) < 1e-15);
    CHECK(std::abs(rf->denominator.eval({0.4, 0.0})) < 1e-15);
}

TEST_CASE("skew identity: zeta_S(z) = zeta_skew(z/p) coefficient by coefficient") {
    auto series = periodic_series(oracles::spec_z2_z3(), 12);
    auto zs = zeta_series(series);
    for (int n = 1; n <= 12; ++n) {
        // coefficient of z^n in log zeta_skew(z/p): Per_n / (n p^n)
        Rational skew_coeff =
            Rational(series.per(n), 1) / Rational::integer(n) / Rational(checked_pow(2, n), 1);
        CHECK(skew_coeff == zs.coeffs[size_t(n - 1)]);
    }
    // and the skew zeta itself is (1 - pw)/(1 - Dw): evaluate both ways
    double w = 0.07;
    double skew_val = (1.0 - 2.0 * w) / (1.0 - 5.0 * w);
    CHECK(zeta_eval(zs, {2.0 * w, 0.0}).real() == doctest::Approx(skew_val).epsilon(1e-13));
}

TEST_CASE("series-only mode for nonlinear specs") {
    auto series = periodic_series(oracles::spec_mixed_nonlinear(), 12);
    auto zs = zeta_series(series);
    CHECK(!zs.rational_form.has_value());
    // degrees are {2,2}, so N_n = 2^n - 1 and the radius heads to 1/2
    CHECK(std::fabs(zs.radius_estimate - 0.5) < 5e-3);
    std::complex<double> v = zeta_eval(zs, {0.2, 0.0}); // Auto falls back to the series
    std::complex<double> brute = 0.0;
    for (int n = 12; n >= 1; --n) brute = (brute + zs.coeffs[size_t(n - 1)].to_double()) * 0.2;
    CHECK(v.real() == doctest::Approx(std::exp(brute.real())).epsilon(1e-14));
    // the true value here is the doubling-map zeta, 0.8/0.6
    CHECK(v.real() == doctest::Approx(0.8 / 0.6).epsilon(1e-3));
    CHECK_THROWS_AS(zeta_eval(zs, {0.49, 0.0}), ValidationError); // outside 0.95 * radius
}

TEST_CASE("radius_vs_entropy") {
    auto spec = oracles::spec_z2_z3();
    auto series = periodic_series(spec, 12);
    auto rep = radius_vs_entropy(zeta_series(series), periodic_entropy(series));
    CHECK(rep.exact);
    CHECK(rep.consistent);
    CHECK(rep.radius_estimate == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(rep.exp_minus_entropy == doctest::Approx(0.4).epsilon(1e-14));

    auto doubling_series = periodic_series(oracles::spec_z2(), 12);
    auto rep2 = radius_vs_entropy(zeta_series(doubling_series), periodic_entropy(doubling_series));
    CHECK(rep2.consistent);
    CHECK(rep2.exp_minus_entropy == doctest::Approx(0.5).epsilon(1e-14));

    SemigroupSpec three({GeneratorMap::circle_linear(2), GeneratorMap::circle_linear(3),
                         GeneratorMap::circle_linear(4)});
    auto s3 = periodic_series(three, 12);
    auto rep3 = radius_vs_entropy(zeta_series(s3), periodic_entropy(s3));
    CHECK(rep3.radius_estimate == doctest::Approx(1.0 / 3.0).epsilon(1e-14)); // pole at p/D = 3/9
    CHECK(periodic_entropy(s3).topological_entropy == doctest::Approx(std::log(3.0)));
    CHECK(rep3.consistent);

    // series-only path: nonlinear pair, finite-n tolerance
    auto mixed_series = periodic_series(oracles::spec_mixed_nonlinear(), 12);
    auto rep4 = radius_vs_entropy(zeta_series(mixed_series), periodic_entropy(mixed_series));
    CHECK(!rep4.exact);
    CHECK(rep4.consistent);
}
