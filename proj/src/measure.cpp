#include "sgact/measure.hpp"

namespace sgact {

EmpiricalMeasure EmpiricalMeasure::zeros(int bins, int dim) {
    if (bins < 1) throw ValidationError("measure: bins must be >= 1");
    if (dim < 1 || dim > 3) throw ValidationError("measure: dim must be 1, 2 or 3");
    EmpiricalMeasure m;
    m.bins_per_axis = bins;
    m.dim = dim;
    size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<size_t>(bins);
    m.masses.assign(total, 0.0);
    return m;
}

EmpiricalMeasure EmpiricalMeasure::uniform(int bins, int dim) {
    EmpiricalMeasure m = zeros(bins, dim);
    double w = 1.0 / double(m.masses.size());
    for (double& v : m.masses) v = w;
    return m;
}

long bin_index(double x, int bins) {
    double t = reduce_mod1(x) * double(bins);
    long k = static_cast<long>(std::floor(t));
    // an atom that is numerically a hair below a boundary belongs above it
    if (double(k + 1) - t < 1e-9) ++k;
    if (k >= bins) k -= bins;
    if (k < 0) k = 0;
    return k;
}

size_t EmpiricalMeasure::bin_of(const Point& p) const {
    size_t idx = 0;
    for (int i = 0; i < dim; ++i)
        idx = idx * static_cast<size_t>(bins_per_axis) +
              static_cast<size_t>(bin_index(p.x[i], bins_per_axis));
    return idx;
}

void EmpiricalMeasure::add_atom(const Point& p, double weight) {
    masses[bin_of(p)] += weight;
}

double EmpiricalMeasure::total() const {
    double s = 0.0;
    for (double v : masses) s += v;
    return s;
}

void EmpiricalMeasure::normalize() {
    double s = total();
    if (s <= 0.0) throw ValidationError("measure: cannot normalize zero mass");
    for (double& v : masses) v /= s;
}

double DensityFunction::integral() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / double(grid_size);
}

double l1_distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    if (a.masses.size() != b.masses.size())
        throw ValidationError("l1_distance: measures use different bin counts");
    double s = 0.0;
    for (size_t i = 0; i < a.masses.size(); ++i) s += std::fabs(a.masses[i] - b.masses[i]);
    return s;
}

double l1_distance(const DensityFunction& f, const DensityFunction& g) {
    if (f.grid_size != g.grid_size)
        throw ValidationError("l1_distance: densities use different grids");
    double s = 0.0;
    for (int i = 0; i < f.grid_size; ++i)
        s += std::fabs(f.values[size_t(i)] - g.values[size_t(i)]);
    return s / double(f.grid_size);
}

EmpiricalMeasure density_to_measure(const DensityFunction& f, int bins) {
    if (bins < 1 || f.grid_size % bins != 0)
        throw ValidationError("density_to_measure: bins must divide the grid size");
    EmpiricalMeasure m = EmpiricalMeasure::zeros(bins, 1);
    int block = f.grid_size / bins;
    for (int b = 0; b < bins; ++b) {
        double s = 0.0;
        for (int j = 0; j < block; ++j) s += f.values[size_t(b * block + j)];
        m.masses[size_t(b)] = s / double(f.grid_size);
    }
    return m;
}

} // namespace sgact
