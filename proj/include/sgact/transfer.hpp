#pragma once

#include <optional>
#include <vector>

#include "sgact/measure.hpp"
#include "sgact/semigroup.hpp"

namespace sgact {

/// Compressed sparse rows; enough linear algebra for transfer operators.
struct CsrMatrix {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    void apply(const std::vector<double>& x, std::vector<double>& y) const;
    CsrMatrix transposed() const;
    std::vector<double> row_sums() const;
    std::vector<double> col_sums() const;
};

/// Ulam-Galerkin discretization of the weighted transfer operators on N equal
/// bins of the circle. matrix is the walk-weighted average of the
/// per-generator matrices; row j of matrix_i integrates e^{phi_i} |g_i'| over
/// the branch preimages of bin j, split across source bins. For phi = 0 the
/// row sums equal deg(g_i); for phi = -log|g'| the columns sum to 1.
struct UlamOperator {
    int grid_size = 0;
    SemigroupSpec spec;
    RandomWalk walk;
    Potential potential;
    std::vector<CsrMatrix> per_generator;
    CsrMatrix matrix;
};

UlamOperator build_ulam(const SemigroupSpec& spec, const RandomWalk& walk,
                        const Potential& phi, int grid_size);

/// Leading eigen-data of the averaged operator. log(eigenvalue) is the
/// annealed topological pressure of the walk.
struct SpectralResult {
    double eigenvalue = 0.0;
    std::vector<double> eigenfunction; // right, normalized to mean 1
    std::vector<double> conformal;     // left, normalized to total mass 1
    double residual = 0.0;
    int iterations = 0;

    double annealed_pressure() const;
};

SpectralResult power_iterate(const UlamOperator& op, double tol = 1e-10,
                             int max_iter = 100000);

/// Density of the absolutely continuous stationary measure: iterate the
/// phi = -log|g'| averaged operator on the constant function until the L1
/// increment drops below tol.
DensityFunction stationary_density(const SemigroupSpec& spec, const RandomWalk& walk,
                                   int grid_size, double tol = 1e-10,
                                   int max_iter = 100000);

/// Preimage-averaged measure: lambda^{-n} sum over words (prod of walk
/// weights) sum over preimages y of x with weight e^{S_n phi}, binned. The
/// returned measure is normalized; raw_mass keeps the pre-normalization total.
EmpiricalMeasure preimage_measure(const SemigroupSpec& spec, const RandomWalk& walk,
                                  const Potential& phi, double x, int n, int bins,
                                  std::optional<double> lambda_hint = std::nullopt);

/// All fixed points of all p^n words, weighted equally and normalized by the
/// exact total count Per_n.
EmpiricalMeasure periodic_mass_measure(const SemigroupSpec& spec, int n, int bins);

} // namespace sgact
