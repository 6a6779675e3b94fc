#pragma once

#include <cmath>
#include <vector>

#include "sgact/errors.hpp"
#include "sgact/point.hpp"

namespace sgact {

/// Binned probability measure on [0,1)^dim with B bins per axis, flattened
/// row-major. Bins are half-open [k/B, (k+1)/B); an atom sitting on a
/// boundary belongs to the bin whose left edge it is.
struct EmpiricalMeasure {
    int bins_per_axis = 0;
    int dim = 1;
    std::vector<double> masses;
    // Mass of the un-normalized measure before the final rescale (preimage
    // averaging reports rho(x) through this).
    double raw_mass = 1.0;

    static EmpiricalMeasure zeros(int bins, int dim = 1);
    static EmpiricalMeasure uniform(int bins, int dim = 1);

    size_t bin_of(const Point& p) const;
    void add_atom(const Point& p, double weight);
    double total() const;
    void normalize();
};

/// Piecewise-constant density on [0,1), grid values with mean 1 so that the
/// bin sum times the bin width integrates to 1.
struct DensityFunction {
    int grid_size = 0;
    std::vector<double> values;

    double integral() const; // (1/N) * sum
};

/// Sum of |mass differences| over bins (twice the total-variation distance).
double l1_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

/// Integral of |f - g| for grid densities of equal size.
double l1_distance(const DensityFunction& f, const DensityFunction& g);

/// Coarsen a density to a B-bin measure (B must divide the grid).
EmpiricalMeasure density_to_measure(const DensityFunction& f, int bins);

/// 1-bin index on an axis with boundary snapping.
long bin_index(double x, int bins);

} // namespace sgact
