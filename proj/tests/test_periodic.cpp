#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "sgact/periodic.hpp"

using namespace sgact;

namespace {

SemigroupSpec torus_pair() {
    IntMatrix a, b;
    a.dim = b.dim = 2;
    a.a[0][0] = 3; a.a[0][1] = 1; a.a[1][0] = 1; a.a[1][1] = 2;
    b.a[0][0] = 2; b.a[0][1] = 1; b.a[1][0] = 1; b.a[1][1] = 3;
    return SemigroupSpec({GeneratorMap::torus_linear(a), GeneratorMap::torus_linear(b)});
}

} // namespace

TEST_CASE("fix_count: circle words") {
    auto spec = oracles::spec_z2_z3();
    CHECK(fix_count(spec, Word({0})) == 1);
    CHECK(fix_count(spec, Word({1})) == 2);
    CHECK(fix_count(spec, Word({0, 1})) == 5); // degree 6
}

TEST_CASE("fix_count: torus word via det(M - I)") {
    IntMatrix m;
    m.dim = 2;
    m.a[0][0] = 3; m.a[0][1] = 1; m.a[1][0] = 1; m.a[1][1] = 2;
    SemigroupSpec spec({GeneratorMap::torus_linear(m)});
    CHECK(fix_count(spec, Word({0})) == 1); // |det [[2,1],[1,1]]| = 1
}

TEST_CASE("fix_count agrees with the million-point sign scan, n <= 4") {
    auto linear = oracles::spec_z2_z3();
    auto mixed = oracles::spec_mixed_nonlinear();
    for (const auto& spec : {linear, mixed}) {
        for (int n = 1; n <= 4; ++n) {
            for_each_word(spec.p(), n, [&](const Word& w) {
                long long scan = oracles::brute_fix_count_scan(spec, w, 1000000);
                CHECK(int128(scan) == fix_count(spec, w));
            });
        }
    }
}

TEST_CASE("fix_locate: circle examples") {
    auto spec = oracles::spec_z2_z3();

    auto only_zero = fix_locate(spec, Word({0}));
    REQUIRE(only_zero.points.size() == 1);
    CHECK(only_zero.points[0].x[0] == doctest::Approx(0.0).epsilon(1e-12));

    auto halves = fix_locate(spec, Word({1}));
    REQUIRE(halves.points.size() == 2);
    CHECK(halves.points[0].x[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(halves.points[1].x[0] == doctest::Approx(0.5).epsilon(1e-12));

    auto fifths = fix_locate(spec, Word({0, 1}));
    REQUIRE(fifths.points.size() == 5);
    for (int m = 0; m < 5; ++m)
        CHECK(fifths.points[size_t(m)].x[0] == doctest::Approx(0.2 * m).epsilon(1e-11));
}

TEST_CASE("fix_locate: residuals, distinctness, nonlinear words") {
    auto mixed = oracles::spec_mixed_nonlinear();
    for (const Word& w : {Word({1}), Word({0, 1}), Word({1, 0, 1})}) {
        auto ps = fix_locate(mixed, w);
        CHECK(int128(ps.points.size()) == fix_count(mixed, w));
        std::set<long long> distinct;
        for (const auto& pt : ps.points) {
            CHECK(circle_distance(apply_word_circle(mixed, w, pt.x[0]), pt.x[0]) < 1e-10);
            distinct.insert(llround(pt.x[0] * 1e12));
        }
        CHECK(distinct.size() == ps.points.size());
    }
}

TEST_CASE("fix_locate: torus lattice enumeration") {
    IntMatrix m;
    m.dim = 2;
    m.a[0][0] = 0; m.a[0][1] = -2; m.a[1][0] = 1; m.a[1][1] = 0; // eigenvalues +-i sqrt 2
    SemigroupSpec spec({GeneratorMap::torus_linear(m)});
    Word w({0});
    CHECK(fix_count(spec, w) == 3);
    auto ps = fix_locate(spec, w);
    REQUIRE(ps.points.size() == 3);
    for (const auto& pt : ps.points) {
        Point image = apply_word(spec, w, pt);
        CHECK(torus_distance(image, pt) < 1e-10);
    }
}

TEST_CASE("fix_locate: torus words of length two") {
    auto spec = torus_pair();
    for (const Word& w : {Word({0, 1}), Word({1, 0}), Word({0, 0})}) {
        auto ps = fix_locate(spec, w);
        CHECK(int128(ps.points.size()) == fix_count(spec, w));
        for (const auto& pt : ps.points)
            CHECK(torus_distance(apply_word(spec, w, pt), pt) < 1e-10);
    }
    // det(AB - I) = det(BA - I): the products are conjugate
    CHECK(fix_count(spec, Word({0, 1})) == fix_count(spec, Word({1, 0})));
}

TEST_CASE("fix_locate: three-dimensional torus") {
    IntMatrix m;
    m.dim = 3;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.a[i][j] = 0;
    m.a[0][0] = 2; m.a[1][1] = 3; m.a[2][2] = 2;
    SemigroupSpec spec({GeneratorMap::torus_linear(m)});
    CHECK(spec.generators[0].degree() == 12);
    Word w({0});
    CHECK(fix_count(spec, w) == 2); // det(diag(1,2,1)) = 2
    auto ps = fix_locate(spec, w);
    REQUIRE(ps.points.size() == 2);
    CHECK(ps.points[0].x[1] + ps.points[1].x[1] == doctest::Approx(0.5)); // {0, 1/2} on axis 2
    for (const auto& pt : ps.points)
        CHECK(torus_distance(apply_word(spec, w, pt), pt) < 1e-12);
}

TEST_CASE("periodic_series: z2/z3 exact rationals") {
    auto spec = oracles::spec_z2_z3();
    auto series = periodic_series(spec, 20);

    CHECK(series.N(1) == Rational(3, 2));
    CHECK(series.N(2) == Rational(21, 4));

    for (int n = 1; n <= 20; ++n) {
        int128 p5 = checked_pow(5, n), p2 = checked_pow(2, n);
        CHECK(series.N(n) == Rational(p5 - p2, p2)); // (5/2)^n - 1
        CHECK(series.per(n) == p5 - p2);
    }
}

TEST_CASE("periodic_series agrees with brute-force word enumeration") {
    auto spec = oracles::spec_z2_z3();
    auto series = periodic_series(spec, 8);
    for (int n = 1; n <= 8; ++n) {
        long long brute = oracles::brute_periodic_numerator(spec, n);
        CHECK(series.per(n) == int128(brute));
    }

    auto mixed = oracles::spec_mixed_nonlinear();
    auto mixed_series = periodic_series(mixed, 6);
    for (int n = 1; n <= 6; ++n) {
        long long brute = oracles::brute_periodic_numerator(mixed, n);
        CHECK(mixed_series.per(n) == int128(brute));
    }
}

TEST_CASE("periodic_series: torus pair by full enumeration") {
    auto spec = torus_pair();
    auto series = periodic_series(spec, 5);
    for (int n = 1; n <= 5; ++n) {
        int128 total = 0;
        for_each_word(2, n, [&](const Word& w) { total += fix_count(spec, w); });
        CHECK(series.per(n) == total);
        CHECK(series.N(n) == Rational(total, checked_pow(2, n)));
    }
}

TEST_CASE("periodic_entropy: closed forms and slopes") {
    auto spec = oracles::spec_z2_z3();
    auto report = periodic_entropy(periodic_series(spec, 12));
    CHECK(report.periodic_entropy == doctest::Approx(std::log(2.5)).epsilon(1e-14));
    CHECK(report.topological_entropy == doctest::Approx(std::log(2.5)).epsilon(1e-14));
    CHECK(report.skew_entropy == doctest::Approx(std::log(5.0)).epsilon(1e-14));
    CHECK(std::fabs(report.skew_entropy - report.topological_entropy - std::log(2.0)) < 1e-12);
    // finite-n slope closes in on log(5/2)
    CHECK(std::fabs(report.per_n_log_slopes.back() - std::log(2.5)) < 5e-3);
    CHECK(std::fabs(report.last_increment - std::log(2.5)) < 1e-4);

    auto single = periodic_entropy(periodic_series(oracles::spec_z2(), 8));
    CHECK(single.topological_entropy == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    CHECK_THROWS_AS(periodic_entropy(periodic_series(spec, 2)), ValidationError);
}

TEST_CASE("shifted slopes (1/n) log(N_n + 1) are nondecreasing") {
    for (const auto& spec : {oracles::spec_z2_z3(), oracles::spec_mixed_nonlinear()}) {
        auto series = periodic_series(spec, 12);
        double prev = -1e300;
        for (int n = 1; n <= 12; ++n) {
            double s = std::log(series.N(n).to_double() + 1.0) / double(n);
            CHECK(s >= prev - 1e-12);
            prev = s;
        }
    }
}

TEST_CASE("fekete_check: exact supermultiplicativity for all-linear specs") {
    auto rep = fekete_check(periodic_series(oracles::spec_z2_z3(), 12));
    CHECK(rep.exact);
    CHECK(rep.ok);

    // spot values: N_2 + 1 = (5/2)^2, (N_5+1) = (N_2+1)(N_3+1)
    auto series = periodic_series(oracles::spec_z2_z3(), 12);
    CHECK((series.N(2) + Rational::integer(1)) == Rational(25, 4));
    CHECK((series.N(5) + Rational::integer(1)) ==
          (series.N(2) + Rational::integer(1)) * (series.N(3) + Rational::integer(1)));

    auto doubling = fekete_check(periodic_series(oracles::spec_z2(), 10));
    CHECK(doubling.exact);
    CHECK(doubling.ok);

    // nonlinear specs only report; the degree formula keeps them clean anyway
    auto mixed = fekete_check(periodic_series(oracles::spec_mixed_nonlinear(), 8));
    CHECK(!mixed.exact);
    CHECK(mixed.ok);

    CHECK_THROWS_AS(fekete_check(periodic_series(oracles::spec_z2(), 4)), ValidationError);
}

TEST_CASE("enumeration cap for torus specs") {
    auto spec = torus_pair();
    PeriodicOptions opts;
    opts.max_enumerated_words = 16;
    CHECK_THROWS_AS(periodic_series(spec, 10, opts), ValidationError);
}
