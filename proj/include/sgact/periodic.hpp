#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgact/rational.hpp"
#include "sgact/semigroup.hpp"

namespace sgact {

/// N_n = (1/p^n) * sum over all length-n words of the word's fixed-point
/// count, kept as exact rationals. Per_n = p^n * N_n counts the period-n
/// points of the associated skew product and is always an integer.
struct PeriodicCountSeries {
    int n_max = 0;
    int p = 0;
    std::vector<Rational> counts;      // counts[k] = N_{k+1}
    std::vector<int128> skew_counts;   // skew_counts[k] = Per_{k+1}
    std::vector<long long> degrees;    // generator degrees, for closed forms
    bool all_circle = false;
    bool all_linear = false;

    const Rational& N(int n) const { return counts.at(static_cast<size_t>(n - 1)); }
    int128 per(int n) const { return skew_counts.at(static_cast<size_t>(n - 1)); }
};

struct PeriodicOptions {
    // Full enumeration stops past this many words (torus specs with p >= 2).
    long long max_enumerated_words = 1LL << 24;
};

struct EntropyReport {
    double periodic_entropy = 0.0;     // growth rate of N_n
    double topological_entropy = 0.0;  // equal to the periodic entropy
    double skew_entropy = 0.0;         // topological_entropy + log p
    std::vector<double> per_n_log_slopes; // (1/n) log max(N_n, 1)
    double last_increment = 0.0;       // log(N_{n_max} / N_{n_max - 1})
    bool closed_form = false;          // true when computed from the degrees
};

/// Fixed points of one word composition.
struct PeriodicSet {
    Word word;
    std::vector<Point> points;
};

struct FeketeReport {
    bool exact = false; // exact rational identity vs. floating-point check
    bool ok = true;
    int first_violation_m = 0;
    int first_violation_n = 0;
    std::string message;
};

/// Number of fixed points: degree - 1 on the circle, |det(M_w - I)| on the
/// torus. Exact for every expanding word.
int128 fix_count(const SemigroupSpec& spec, const Word& w);

/// Locate the fixed points. Circle: one bisection per lift branch; torus:
/// lattice points of (M_w - I)^{-1} Z^n inside the fundamental domain.
PeriodicSet fix_locate(const SemigroupSpec& spec, const Word& w);

PeriodicCountSeries periodic_series(const SemigroupSpec& spec, int n_max,
                                    const PeriodicOptions& opts = {});

/// Entropy of the series: closed form log(sum deg / p) when degrees are
/// recorded, plus the finite-n slope diagnostics. Requires n_max >= 4.
EntropyReport periodic_entropy(const PeriodicCountSeries& series);

/// Supermultiplicativity of N_n + 1. For all-linear circle specs the identity
/// (N_{m+n}+1) = (N_m+1)(N_n+1) is asserted exactly; otherwise violations of
/// log-superadditivity are only reported.
FeketeReport fekete_check(const PeriodicCountSeries& series);

} // namespace sgact
