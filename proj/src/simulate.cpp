#include "sgact/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace sgact {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& eng) {
    return double(eng() >> 11) * 0x1.0p-53;
}

int draw_index(std::mt19937_64& eng, const RandomWalk& walk) {
    double u = uniform01(eng);
    double acc = 0.0;
    int last = walk.p() - 1;
    for (int i = 0; i < walk.p(); ++i) {
        acc += walk.weights[size_t(i)];
        if (u < acc) return i;
    }
    return last;
}

// Integer-degree maps are exact on dyadic rationals, so a pure floating-point
// orbit loses one mantissa bit per linear step and hits 0 within ~100 steps.
// A seeded dither far below bin resolution keeps orbits generic without
// touching the statistics.
constexpr double kDitherScale = 0x1.0p-48;

double dithered(double x, std::mt19937_64& eng) {
    return reduce_mod1(x + (uniform01(eng) - 0.5) * kDitherScale);
}

// 16-point Gauss-Legendre on [0,1]; per-bin quadrature of smooth test
// functions is exact to machine precision at the grids in play.
constexpr int kGlPoints = 16;
constexpr double kGlNode[kGlPoints] = {
    0.0052995325041750337, 0.0277124884633837046, 0.0671843988060841224,
    0.1222977958224984868, 0.1910618777986781147, 0.2709916111713863151,
    0.3591982246103705422, 0.4524937450811812866, 0.5475062549188187134,
    0.6408017753896294578, 0.7290083888286136849, 0.8089381222013218853,
    0.8777022041775015132, 0.9328156011939158776, 0.9722875115366162954,
    0.9947004674958249663};
constexpr double kGlWeight[kGlPoints] = {
    0.0135762297058770482, 0.0311267619693239469, 0.0475792558412463928,
    0.0623144856277669384, 0.0747979944082883680, 0.0845782596975012679,
    0.0913017075224617918, 0.0947253052275342510, 0.0947253052275342510,
    0.0913017075224617918, 0.0845782596975012679, 0.0747979944082883680,
    0.0623144856277669384, 0.0475792558412463928, 0.0311267619693239469,
    0.0135762297058770482};

} // namespace

EmpiricalMeasure simulate_empirical(const SimConfig& cfg) {
    if (cfg.n_samples < 1) throw ValidationError("simulate: n_samples must be >= 1");
    if (cfg.n_orbits < 1) throw ValidationError("simulate: n_orbits must be >= 1");
    if (cfg.bins < 1 || (cfg.bins & (cfg.bins - 1)) != 0)
        throw ValidationError("simulate: bins must be a power of 2");
    if (cfg.walk.p() != cfg.spec.p())
        throw ValidationError("simulate: walk length must match generator count");

    const int dim = cfg.spec.dim();
    size_t flat_bins = 1;
    for (int i = 0; i < dim; ++i) flat_bins *= static_cast<size_t>(cfg.bins);

    std::vector<std::vector<long long>> per_orbit(
        static_cast<size_t>(cfg.n_orbits), std::vector<long long>(flat_bins, 0));

    const std::uint64_t stream_base = splitmix64(cfg.seed);
    auto run_orbit = [&](int k) {
        std::mt19937_64 eng(splitmix64(stream_base + std::uint64_t(k)));
        auto& counts = per_orbit[size_t(k)];
        Point x;
        x.dim = dim;
        for (int i = 0; i < dim; ++i) x.x[i] = uniform01(eng);
        for (long long s = 0; s < cfg.n_burnin; ++s) {
            x = cfg.spec.generators[size_t(draw_index(eng, cfg.walk))].apply(x);
            for (int i = 0; i < dim; ++i) x.x[i] = dithered(x.x[i], eng);
        }
        for (long long s = 0; s < cfg.n_samples; ++s) {
            x = cfg.spec.generators[size_t(draw_index(eng, cfg.walk))].apply(x);
            for (int i = 0; i < dim; ++i) x.x[i] = dithered(x.x[i], eng);
            size_t idx = 0;
            for (int i = 0; i < dim; ++i)
                idx = idx * size_t(cfg.bins) + size_t(bin_index(x.x[i], cfg.bins));
            ++counts[idx];
        }
    };

    int workers = cfg.threads > 0 ? cfg.threads
                                  : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, cfg.n_orbits);
    if (workers <= 1) {
        for (int k = 0; k < cfg.n_orbits; ++k) run_orbit(k);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (int k = w; k < cfg.n_orbits; k += workers) run_orbit(k);
            });
        }
        for (auto& t : pool) t.join();
    }

    // merge in orbit order: identical output for any worker count
    EmpiricalMeasure m = EmpiricalMeasure::zeros(cfg.bins, dim);
    long long total = 0;
    for (const auto& counts : per_orbit)
        for (size_t b = 0; b < flat_bins; ++b) total += counts[b];
    for (const auto& counts : per_orbit)
        for (size_t b = 0; b < flat_bins; ++b) m.masses[b] += double(counts[b]);
    for (double& v : m.masses) v /= double(total);
    m.raw_mass = 1.0;
    return m;
}

std::vector<TestFunction> trig_basis(int m_max) {
    std::vector<TestFunction> fns;
    for (int m = 1; m <= m_max; ++m) {
        fns.emplace_back("sin(2pi*" + std::to_string(m) + "x)",
                         [m](double x) { return std::sin(kTwoPi * m * x); });
        fns.emplace_back("cos(2pi*" + std::to_string(m) + "x)",
                         [m](double x) { return std::cos(kTwoPi * m * x); });
    }
    return fns;
}

StationarityReport stationarity_test(const DensityFunction& density, const SemigroupSpec& spec,
                                     const RandomWalk& walk,
                                     const std::vector<TestFunction>& test_functions) {
    if (!spec.all_circle())
        throw ValidationError("stationarity_test: circle specs only");
    const int N = density.grid_size;
    const double h = 1.0 / double(N);
    StationarityReport rep;
    for (const auto& [name, psi] : test_functions) {
        double lhs = 0.0; // sum_i a_i int psi(g_i y) dnu(y)
        double rhs = 0.0; // int psi dnu
        for (int k = 0; k < N; ++k) {
            double base = double(k) * h;
            double cell_rhs = 0.0;
            double cell_lhs = 0.0;
            for (int q = 0; q < kGlPoints; ++q) {
                double y = base + h * kGlNode[q];
                double wq = kGlWeight[q];
                cell_rhs += wq * psi(y);
                double s = 0.0;
                for (int i = 0; i < spec.p(); ++i) {
                    double a = walk.weights[size_t(i)];
                    if (a == 0.0) continue;
                    s += a * psi(spec.generators[size_t(i)].apply_circle(y));
                }
                cell_lhs += wq * s;
            }
            rhs += h * density.values[size_t(k)] * cell_rhs;
            lhs += h * density.values[size_t(k)] * cell_lhs;
        }
        rep.names.push_back(name);
        rep.discrepancies.push_back(std::fabs(lhs - rhs));
        rep.max_abs = std::max(rep.max_abs, rep.discrepancies.back());
    }
    return rep;
}

StationarityReport stationarity_test(const EmpiricalMeasure& measure, const SemigroupSpec& spec,
                                     const RandomWalk& walk,
                                     const std::vector<TestFunction>& test_functions) {
    if (!spec.all_circle() || measure.dim != 1)
        throw ValidationError("stationarity_test: circle measures only");
    const int B = measure.bins_per_axis;
    StationarityReport rep;
    for (const auto& [name, psi] : test_functions) {
        double lhs = 0.0, rhs = 0.0;
        for (int b = 0; b < B; ++b) {
            double mid = (double(b) + 0.5) / double(B);
            double mass = measure.masses[size_t(b)];
            rhs += mass * psi(mid);
            for (int i = 0; i < spec.p(); ++i) {
                double a = walk.weights[size_t(i)];
                if (a == 0.0) continue;
                lhs += mass * a * psi(spec.generators[size_t(i)].apply_circle(mid));
            }
        }
        rep.names.push_back(name);
        rep.discrepancies.push_back(std::fabs(lhs - rhs));
        rep.max_abs = std::max(rep.max_abs, rep.discrepancies.back());
    }
    return rep;
}

SkewInvarianceReport skew_invariance_check(const DensityFunction& density,
                                           const SemigroupSpec& spec, const RandomWalk& walk,
                                           int n_steps, long long n_samples, int bins,
                                           std::uint64_t seed) {
    if (!spec.all_circle())
        throw ValidationError("skew_invariance_check: circle specs only");
    if (n_steps < 1) throw ValidationError("skew_invariance_check: n_steps must be >= 1");

    // inverse-CDF sampler over the density's grid cells
    const int N = density.grid_size;
    std::vector<double> cdf(static_cast<size_t>(N) + 1, 0.0);
    for (int k = 0; k < N; ++k)
        cdf[size_t(k) + 1] = cdf[size_t(k)] + density.values[size_t(k)] / double(N);
    double total = cdf[size_t(N)];

    std::mt19937_64 eng(splitmix64(seed));
    EmpiricalMeasure pushed = EmpiricalMeasure::zeros(bins, 1);
    for (long long s = 0; s < n_samples; ++s) {
        double u = uniform01(eng) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        int cell = std::max(0, int(it - cdf.begin()) - 1);
        if (cell >= N) cell = N - 1;
        double inner = (u - cdf[size_t(cell)]) / std::max(cdf[size_t(cell) + 1] - cdf[size_t(cell)], 1e-300);
        double x = (double(cell) + std::min(inner, 1.0 - 1e-16)) / double(N);
        for (int t = 0; t < n_steps; ++t)
            x = dithered(spec.generators[size_t(draw_index(eng, walk))].apply_circle(x), eng);
        pushed.masses[size_t(bin_index(x, bins))] += 1.0;
    }
    pushed.normalize();

    SkewInvarianceReport rep;
    rep.bins = bins;
    rep.samples = n_samples;
    rep.steps = n_steps;
    rep.l1_drift = l1_distance(pushed, density_to_measure(density, bins));
    return rep;
}

} // namespace sgact
