#pragma once

// Independent oracles used by the test suites: brute-force enumerations and
// direct formula evaluations that never touch the library code paths they
// check.

#include <cmath>
#include <vector>

#include "sgact/semigroup.hpp"

namespace oracles {

inline sgact::SemigroupSpec spec_z2_z3() {
    return sgact::SemigroupSpec(
        {sgact::GeneratorMap::circle_linear(2), sgact::GeneratorMap::circle_linear(3)});
}

inline sgact::SemigroupSpec spec_z2() {
    return sgact::SemigroupSpec({sgact::GeneratorMap::circle_linear(2)});
}

inline sgact::SemigroupSpec spec_mixed_nonlinear() {
    return sgact::SemigroupSpec({sgact::GeneratorMap::circle_linear(2),
                                 sgact::GeneratorMap::circle_nonlinear(2, 0.5)});
}

/// Fixed points of a circle word counted by scanning G(x) = F_w(x) - x on a
/// fine grid and tallying the integer levels crossed between consecutive
/// samples. Fixed points are exactly the solutions of G = m in (G(0), G(1)],
/// since x = 1 is the seam copy of x = 0.
inline long long brute_fix_count_scan(const sgact::SemigroupSpec& spec, const sgact::Word& w,
                                      int grid = 1000000) {
    long long count = 0;
    const double eps = 1e-9;
    double prev = sgact::word_lift(spec, w, 0.0);
    for (int i = 1; i <= grid; ++i) {
        double x = double(i) / double(grid);
        double g = sgact::word_lift(spec, w, x) - x;
        count += static_cast<long long>(std::floor(g + eps)) -
                 static_cast<long long>(std::floor(prev + eps));
        prev = g;
    }
    return count;
}

/// Sum of fixed-point counts over all p^n words via the grid scan (coarser
/// grid; the counts are integers, so a grid beating the minimal root gap is
/// enough).
inline long long brute_periodic_numerator(const sgact::SemigroupSpec& spec, int n,
                                          int grid = 20000) {
    long long total = 0;
    sgact::for_each_word(spec.p(), n, [&](const sgact::Word& w) {
        total += brute_fix_count_scan(spec, w, grid);
    });
    return total;
}

} // namespace oracles
