#include "sgact/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "sgact/periodic.hpp"

namespace sgact {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Row-oriented assembly: for output bin j and branch b of the lift, the
// branch preimage interval of bin j is split at source-bin boundaries and
// each piece contributes the integral of e^{phi} |g'|, known in closed form
// for all three potential kinds:
//   Zero:       int |g'| dy   = lift difference
//   -log|g'|:   int 1 dy      = piece length
//   tabulated:  e^{phi(bin)} * lift difference
CsrMatrix ulam_matrix(const GeneratorMap& g, const Potential& pot, int gen_index, int N) {
    CsrMatrix A;
    A.n = N;
    A.row_ptr.assign(static_cast<size_t>(N) + 1, 0);
    const int d = static_cast<int>(g.degree());
    A.col.reserve(static_cast<size_t>(N) * static_cast<size_t>(2 * d));
    A.val.reserve(static_cast<size_t>(N) * static_cast<size_t>(2 * d));

    std::vector<std::pair<int, double>> row;
    const double h = 1.0 / double(N);
    for (int j = 0; j < N; ++j) {
        row.clear();
        for (int b = 0; b < d; ++b) {
            const double t0 = double(b) + double(j) * h;
            const double t1 = double(b) + double(j + 1) * h;
            const double y0 = g.lift_inverse(t0);
            const double y1 = g.lift_inverse(t1);
            long k = static_cast<long>(std::floor(y0 * double(N)));
            if (k < 0) k = 0;
            if (k > N - 1) k = N - 1;
            double u0 = y0, f0 = t0;
            while (u0 < y1) {
                double boundary = double(k + 1) * h;
                double u1, f1;
                if (boundary < y1) {
                    u1 = boundary;
                    f1 = g.lift(u1);
                } else {
                    u1 = y1;
                    f1 = t1;
                }
                double mass;
                switch (pot.kind()) {
                    case Potential::Kind::Zero:
                        mass = f1 - f0;
                        break;
                    case Potential::Kind::MinusLogDerivative:
                        mass = u1 - u0;
                        break;
                    default:
                        mass = std::exp(pot.value(g, gen_index, 0.5 * (u0 + u1))) * (f1 - f0);
                        break;
                }
                if (mass > 0.0) {
                    int kk = static_cast<int>(k >= N ? N - 1 : k);
                    row.emplace_back(kk, double(N) * mass);
                }
                u0 = u1;
                f0 = f1;
                ++k;
            }
        }
        std::sort(row.begin(), row.end());
        size_t i = 0;
        while (i < row.size()) {
            int c = row[i].first;
            double s = 0.0;
            while (i < row.size() && row[i].first == c) s += row[i++].second;
            A.col.push_back(c);
            A.val.push_back(s);
        }
        A.row_ptr[size_t(j) + 1] = static_cast<int>(A.col.size());
    }
    return A;
}

CsrMatrix weighted_sum(const std::vector<CsrMatrix>& mats, const std::vector<double>& w) {
    CsrMatrix S;
    S.n = mats.front().n;
    S.row_ptr.assign(static_cast<size_t>(S.n) + 1, 0);
    std::vector<double> dense(static_cast<size_t>(S.n), 0.0);
    std::vector<int> touched;
    for (int j = 0; j < S.n; ++j) {
        touched.clear();
        for (size_t m = 0; m < mats.size(); ++m) {
            if (w[m] == 0.0) continue;
            const CsrMatrix& A = mats[m];
            for (int e = A.row_ptr[size_t(j)]; e < A.row_ptr[size_t(j) + 1]; ++e) {
                if (dense[size_t(A.col[size_t(e)])] == 0.0) touched.push_back(A.col[size_t(e)]);
                dense[size_t(A.col[size_t(e)])] += w[m] * A.val[size_t(e)];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (int c : touched) {
            S.col.push_back(c);
            S.val.push_back(dense[size_t(c)]);
            dense[size_t(c)] = 0.0;
        }
        S.row_ptr[size_t(j) + 1] = static_cast<int>(S.col.size());
    }
    return S;
}

struct IterationResult {
    double lambda = 0.0;
    std::vector<double> vec;
    double residual = 0.0;
    int iterations = 0;
};

IterationResult leading_vector(const CsrMatrix& A, double tol, int max_iter) {
    const int n = A.n;
    std::vector<double> v(static_cast<size_t>(n), 1.0), y(static_cast<size_t>(n));
    IterationResult out;
    double residual = 1.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        A.apply(v, y);
        double sy = 0.0, sv = 0.0;
        for (int i = 0; i < n; ++i) {
            sy += y[size_t(i)];
            sv += v[size_t(i)];
        }
        double lambda = sy / sv;
        residual = 0.0;
        for (int i = 0; i < n; ++i) residual += std::fabs(y[size_t(i)] - lambda * v[size_t(i)]);
        residual /= sv;
        double scale = double(n) / sy;
        for (int i = 0; i < n; ++i) v[size_t(i)] = y[size_t(i)] * scale;
        out.lambda = lambda;
        if (residual < tol) {
            ++it;
            break;
        }
    }
    if (residual >= tol)
        throw ConvergenceError("power iteration did not reach tolerance", residual);
    out.vec = std::move(v);
    out.residual = residual;
    out.iterations = it;
    return out;
}

} // namespace

void CsrMatrix::apply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int e = row_ptr[size_t(j)]; e < row_ptr[size_t(j) + 1]; ++e)
            s += val[size_t(e)] * x[size_t(col[size_t(e)])];
        y[size_t(j)] = s;
    }
}

CsrMatrix CsrMatrix::transposed() const {
    CsrMatrix T;
    T.n = n;
    T.row_ptr.assign(static_cast<size_t>(n) + 1, 0);
    for (int c : col) ++T.row_ptr[size_t(c) + 1];
    for (int i = 0; i < n; ++i) T.row_ptr[size_t(i) + 1] += T.row_ptr[size_t(i)];
    T.col.assign(col.size(), 0);
    T.val.assign(val.size(), 0.0);
    std::vector<int> cursor(T.row_ptr.begin(), T.row_ptr.end() - 1);
    for (int j = 0; j < n; ++j) {
        for (int e = row_ptr[size_t(j)]; e < row_ptr[size_t(j) + 1]; ++e) {
            int c = col[size_t(e)];
            int slot = cursor[size_t(c)]++;
            T.col[size_t(slot)] = j;
            T.val[size_t(slot)] = val[size_t(e)];
        }
    }
    return T;
}

std::vector<double> CsrMatrix::row_sums() const {
    std::vector<double> s(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j)
        for (int e = row_ptr[size_t(j)]; e < row_ptr[size_t(j) + 1]; ++e)
            s[size_t(j)] += val[size_t(e)];
    return s;
}

std::vector<double> CsrMatrix::col_sums() const {
    std::vector<double> s(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < n; ++j)
        for (int e = row_ptr[size_t(j)]; e < row_ptr[size_t(j) + 1]; ++e)
            s[size_t(col[size_t(e)])] += val[size_t(e)];
    return s;
}

UlamOperator build_ulam(const SemigroupSpec& spec, const RandomWalk& walk,
                        const Potential& phi, int grid_size) {
    if (!spec.all_circle())
        throw ValidationError("build_ulam: only circle specs are discretized");
    if (!is_pow2(grid_size) || grid_size < 64 || grid_size > (1 << 20))
        throw ValidationError("build_ulam: grid must be a power of 2 in [64, 2^20]");
    if (walk.p() != spec.p())
        throw ValidationError("build_ulam: walk length must match generator count");
    UlamOperator op{grid_size, spec, walk, phi, {}, {}};
    op.per_generator.reserve(spec.generators.size());
    for (int i = 0; i < spec.p(); ++i)
        op.per_generator.push_back(
            ulam_matrix(spec.generators[size_t(i)], phi, i, grid_size));
    op.matrix = weighted_sum(op.per_generator, walk.weights);
    return op;
}

double SpectralResult::annealed_pressure() const {
    return std::log(eigenvalue);
}

SpectralResult power_iterate(const UlamOperator& op, double tol, int max_iter) {
    if (tol < 1e-14) throw ValidationError("power_iterate: tol must be >= 1e-14");
    IterationResult right = leading_vector(op.matrix, tol, max_iter);
    IterationResult left = leading_vector(op.matrix.transposed(), tol, max_iter);

    SpectralResult r;
    r.eigenvalue = right.lambda;
    r.residual = std::max(right.residual, left.residual);
    r.iterations = right.iterations + left.iterations;

    double mean = 0.0;
    for (double v : right.vec) mean += v;
    mean /= double(right.vec.size());
    r.eigenfunction = std::move(right.vec);
    for (double& v : r.eigenfunction) v /= mean;

    double mass = 0.0;
    for (double v : left.vec) mass += v;
    r.conformal = std::move(left.vec);
    for (double& v : r.conformal) v /= mass;
    return r;
}

DensityFunction stationary_density(const SemigroupSpec& spec, const RandomWalk& walk,
                                   int grid_size, double tol, int max_iter) {
    if (!walk.nontrivial())
        throw ValidationError("stationary_density: walk must give every generator positive weight");
    UlamOperator op = build_ulam(spec, walk, Potential::minus_log_derivative(), grid_size);

    std::vector<double> v(static_cast<size_t>(grid_size), 1.0), y;
    double delta = 1.0;
    for (int it = 0; it < max_iter; ++it) {
        op.matrix.apply(v, y);
        delta = 0.0;
        for (int i = 0; i < grid_size; ++i) delta += std::fabs(y[size_t(i)] - v[size_t(i)]);
        delta /= double(grid_size);
        v.swap(y);
        if (delta < tol) break;
    }
    if (delta >= tol)
        throw ConvergenceError("stationary_density: operator iteration did not settle", delta);

    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(grid_size);
    for (double& x : v) x /= mean;

    DensityFunction f;
    f.grid_size = grid_size;
    f.values = std::move(v);
    return f;
}

namespace {

void preimage_walk(const SemigroupSpec& spec, const RandomWalk& walk, const Potential& phi,
                   double x, int depth, double weight, EmpiricalMeasure& out) {
    if (depth == 0) {
        out.add_atom(Point::circle(x), weight);
        return;
    }
    for (int i = 0; i < spec.p(); ++i) {
        double a = walk.weights[size_t(i)];
        if (a == 0.0) continue;
        const GeneratorMap& g = spec.generators[size_t(i)];
        for (int b = 0; b < g.degree(); ++b) {
            double y = g.lift_inverse(x + double(b));
            double w = weight * a * std::exp(phi.value(g, i, y));
            preimage_walk(spec, walk, phi, reduce_mod1(y), depth - 1, w, out);
        }
    }
}

} // namespace

EmpiricalMeasure preimage_measure(const SemigroupSpec& spec, const RandomWalk& walk,
                                  const Potential& phi, double x, int n, int bins,
                                  std::optional<double> lambda_hint) {
    if (!spec.all_circle())
        throw ValidationError("preimage_measure: circle specs only");
    if (n < 1) throw ValidationError("preimage_measure: n must be >= 1");
    double branching = 0.0;
    for (int i = 0; i < spec.p(); ++i)
        if (walk.weights[size_t(i)] > 0.0) branching += double(spec.generators[size_t(i)].degree());
    if (n * std::log(branching) > std::log(5e8))
        throw ValidationError("preimage_measure: preimage tree exceeds the enumeration cap");

    double lambda;
    if (lambda_hint) {
        lambda = *lambda_hint;
    } else if (phi.kind() == Potential::Kind::Zero) {
        lambda = 0.0;
        for (int i = 0; i < spec.p(); ++i)
            lambda += walk.weights[size_t(i)] * double(spec.generators[size_t(i)].degree());
    } else if (phi.kind() == Potential::Kind::MinusLogDerivative) {
        lambda = 1.0; // Lebesgue is the conformal measure, eigenvalue 1
    } else {
        lambda = power_iterate(build_ulam(spec, walk, phi, 4096)).eigenvalue;
    }

    EmpiricalMeasure m = EmpiricalMeasure::zeros(bins, 1);
    preimage_walk(spec, walk, phi, reduce_mod1(x), n, 1.0, m);
    double scale = std::pow(lambda, -double(n));
    for (double& v : m.masses) v *= scale;
    m.raw_mass = m.total();
    m.normalize();
    return m;
}

EmpiricalMeasure periodic_mass_measure(const SemigroupSpec& spec, int n, int bins) {
    if (!spec.all_circle())
        throw ValidationError("periodic_mass_measure: circle specs only");
    if (n < 1) throw ValidationError("periodic_mass_measure: n must be >= 1");
    double words = std::pow(double(spec.p()), n);
    if (words > double(1LL << 24))
        throw ValidationError("periodic_mass_measure: word enumeration cap exceeded");

    std::vector<int128> counts(static_cast<size_t>(bins), 0);
    int128 total = 0;
    bool linear = spec.all_linear();
    int128 located_budget = linear ? 0 : 2'000'000;

    for_each_word(spec.p(), n, [&](const Word& w) {
        int128 deg = word_degree(spec, w);
        int128 fixcount = deg - 1;
        total = checked_add(total, fixcount);
        if (linear) {
            // fixed points of x -> D x (mod 1) form the lattice m/(D-1);
            // count lattice points per bin without enumerating them
            int128 D1 = deg - 1;
            for (int b = 0; b < bins; ++b) {
                int128 lo = checked_mul(int128(b), D1);          // m*B >= b*(D-1)
                int128 hi = checked_mul(int128(b + 1), D1);      // m*B <  (b+1)*(D-1)
                int128 B = int128(bins);
                int128 m_lo = (lo + B - 1) / B;
                int128 m_hi = (hi + B - 1) / B - 1;
                if (m_hi > D1 - 1) m_hi = D1 - 1; // lattice runs m = 0 .. D-2
                if (m_lo <= m_hi) counts[size_t(b)] += m_hi - m_lo + 1;
            }
        } else {
            located_budget -= fixcount;
            if (located_budget < 0)
                throw ValidationError("periodic_mass_measure: located fixed-point cap exceeded");
            PeriodicSet ps = fix_locate(spec, w);
            for (const Point& pt : ps.points)
                counts[size_t(bin_index(pt.x[0], bins))] += 1;
        }
    });

    EmpiricalMeasure m = EmpiricalMeasure::zeros(bins, 1);
    double tot = to_double(total);
    for (int b = 0; b < bins; ++b) m.masses[size_t(b)] = to_double(counts[size_t(b)]) / tot;
    m.raw_mass = 1.0;
    return m;
}

} // namespace sgact
