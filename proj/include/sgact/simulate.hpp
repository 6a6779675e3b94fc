#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sgact/measure.hpp"
#include "sgact/semigroup.hpp"
#include "sgact/transfer.hpp"

namespace sgact {

/// Monte-Carlo configuration. n_samples counts recorded steps per orbit;
/// n_orbits independent orbits are pooled. Orbit k draws from its own
/// generator seeded with splitmix64(splitmix64(seed) + k), so runs are
/// reproducible bit-for-bit regardless of the thread count and distinct
/// master seeds never share orbit streams.
struct SimConfig {
    SemigroupSpec spec;
    RandomWalk walk;
    long long n_burnin = 1000;
    long long n_samples = 100000;
    int n_orbits = 64;
    int bins = 256;
    std::uint64_t seed = 0;
    int threads = 0; // 0 = hardware concurrency
};

/// Pooled histogram of random orbits after burn-in.
EmpiricalMeasure simulate_empirical(const SimConfig& cfg);

struct StationarityReport {
    std::vector<std::string> names;
    std::vector<double> discrepancies; // |sum_i a_i int psi(g_i x) dnu - int psi dnu|
    double max_abs = 0.0;
};

using TestFunction = std::pair<std::string, std::function<double(double)>>;

/// sin/cos(2 pi m x) for m = 1..m_max.
std::vector<TestFunction> trig_basis(int m_max);

/// One-step stationarity defect of a grid density, both sides integrated
/// against the piecewise-constant density with per-bin Gauss quadrature.
StationarityReport stationarity_test(const DensityFunction& density, const SemigroupSpec& spec,
                                     const RandomWalk& walk,
                                     const std::vector<TestFunction>& test_functions);

/// Same defect for a binned measure, evaluated at bin midpoints (Monte-Carlo
/// accuracy only).
StationarityReport stationarity_test(const EmpiricalMeasure& measure, const SemigroupSpec& spec,
                                     const RandomWalk& walk,
                                     const std::vector<TestFunction>& test_functions);

struct SkewInvarianceReport {
    double l1_drift = 0.0;
    int bins = 0;
    long long samples = 0;
    int steps = 0;
};

/// Drive the skew product with omega ~ walk and x ~ density; the x-marginal
/// after n_steps is compared against the density's own binning.
SkewInvarianceReport skew_invariance_check(const DensityFunction& density,
                                           const SemigroupSpec& spec, const RandomWalk& walk,
                                           int n_steps, long long n_samples = 1000000,
                                           int bins = 64, std::uint64_t seed = 1);

} // namespace sgact
