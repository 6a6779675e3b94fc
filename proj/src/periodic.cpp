#include "sgact/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace sgact {

namespace {

constexpr long long kMaxLocatedFixedPoints = 1'000'000;

IntMatrix subtract_identity(const IntMatrix& m) {
    IntMatrix r = m;
    for (int i = 0; i < m.dim; ++i) r.a[i][i] -= 1;
    return r;
}

int128 abs128(int128 v) { return v < 0 ? -v : v; }

// Adjugate of an integer matrix, dim <= 3: A * adj(A) = det(A) * I.
IntMatrix adjugate(const IntMatrix& m) {
    IntMatrix r;
    r.dim = m.dim;
    const auto& a = m.a;
    if (m.dim == 1) {
        r.a[0][0] = 1;
    } else if (m.dim == 2) {
        r.a[0][0] = a[1][1];
        r.a[0][1] = -a[0][1];
        r.a[1][0] = -a[1][0];
        r.a[1][1] = a[0][0];
    } else {
        auto cof = [&](int i, int j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            if (r0 > r1) std::swap(r0, r1);
            if (c0 > c1) std::swap(c0, c1);
            int128 minor = checked_mul(int128(a[r0][c0]), int128(a[r1][c1])) -
                           checked_mul(int128(a[r0][c1]), int128(a[r1][c0]));
            if (minor > int128(INT64_MAX) || minor < int128(INT64_MIN))
                throw OverflowError("torus adjugate entry exceeds 64 bits");
            long long v = static_cast<long long>(minor);
            return ((i + j) % 2 == 0) ? v : -v;
        };
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r.a[j][i] = cof(i, j);
    }
    return r;
}

std::vector<Point> locate_circle(const SemigroupSpec& spec, const Word& w) {
    int128 deg = word_degree(spec, w);
    if (deg - 1 > kMaxLocatedFixedPoints)
        throw ValidationError("fix_locate: word degree too large to enumerate fixed points");
    long long d = static_cast<long long>(deg);

    std::vector<Point> points;
    points.reserve(static_cast<size_t>(d - 1));
    // G(x) = F_w(x) - x rises monotonically from 0 to d - 1 on [0, 1]; the
    // solutions of G = m, m = 1..d-1, are the fixed points (the root at x = 1
    // is the seam copy of x = 0).
    for (long long m = 1; m <= d - 1; ++m) {
        double lo = 0.0, hi = 1.0;
        double target = double(m);
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            double mid = 0.5 * (lo + hi);
            double g = word_lift(spec, w, mid) - mid;
            (g < target ? lo : hi) = mid;
        }
        double root = 0.5 * (lo + hi);
        points.push_back(Point::circle(root)); // the m = d-1 root at x = 1 reduces to 0
    }
    std::sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return a.x[0] < b.x[0]; });
    return points;
}

std::vector<Point> locate_torus(const SemigroupSpec& spec, const Word& w) {
    IntMatrix A = subtract_identity(word_matrix(spec, w));
    int128 det = A.determinant();
    if (det == 0)
        throw ValidationError("fix_locate: singular M - I (matrix not expanding?)");
    if (abs128(det) > kMaxLocatedFixedPoints)
        throw ValidationError("fix_locate: |det(M_w - I)| too large to enumerate");
    IntMatrix adj = adjugate(A);
    double den = to_double(det);

    int dim = A.dim;
    long long radius[3] = {0, 0, 0};
    for (int j = 0; j < dim; ++j) {
        long long s = 0;
        for (int k = 0; k < dim; ++k) s += std::llabs(A.a[j][k]);
        radius[j] = s + 1;
    }

    std::vector<Point> points;
    long long v[3] = {0, 0, 0};
    auto try_vector = [&]() {
        Point p;
        p.dim = dim;
        for (int i = 0; i < dim; ++i) {
            double num = 0.0;
            for (int j = 0; j < dim; ++j) num += double(adj.a[i][j]) * double(v[j]);
            double xi = num / den;
            if (xi < -kSeamTolerance || xi >= 1.0 - kSeamTolerance) return;
            p.x[i] = xi < 0.0 ? 0.0 : xi;
        }
        points.push_back(p);
    };
    for (v[0] = -radius[0]; v[0] <= radius[0]; ++v[0]) {
        if (dim == 1) {
            try_vector();
            continue;
        }
        for (v[1] = -radius[1]; v[1] <= radius[1]; ++v[1]) {
            if (dim == 2) {
                try_vector();
                continue;
            }
            for (v[2] = -radius[2]; v[2] <= radius[2]; ++v[2]) try_vector();
        }
    }
    if (int128(points.size()) != abs128(det))
        throw ValidationError("fix_locate: torus lattice enumeration missed fixed points");
    return points;
}

} // namespace

int128 fix_count(const SemigroupSpec& spec, const Word& w) {
    if (w.length() < 1) throw ValidationError("fix_count: word length must be >= 1");
    if (spec.all_circle()) return word_degree(spec, w) - 1;
    return abs128(subtract_identity(word_matrix(spec, w)).determinant());
}

PeriodicSet fix_locate(const SemigroupSpec& spec, const Word& w) {
    PeriodicSet ps;
    ps.word = w;
    ps.points = spec.all_circle() ? locate_circle(spec, w) : locate_torus(spec, w);
    return ps;
}

PeriodicCountSeries periodic_series(const SemigroupSpec& spec, int n_max,
                                    const PeriodicOptions& opts) {
    if (n_max < 1) throw ValidationError("periodic_series: n_max must be >= 1");
    PeriodicCountSeries s;
    s.n_max = n_max;
    s.p = spec.p();
    s.degrees = spec.degrees();
    s.all_circle = spec.all_circle();
    s.all_linear = spec.all_linear();
    s.counts.reserve(static_cast<size_t>(n_max));
    s.skew_counts.reserve(static_cast<size_t>(n_max));

    if (spec.all_circle()) {
        // Fixed-point counts depend only on the degree multiset, so words are
        // grouped by class; cost is polynomial in n.
        for (int n = 1; n <= n_max; ++n) {
            try {
                int128 pn = checked_pow(int128(spec.p()), n);
                int128 total = 0;
                for (const auto& wc : enumerate_word_classes(spec, n)) {
                    int128 deg = 1;
                    for (int i = 0; i < spec.p(); ++i)
                        deg = checked_mul(deg,
                                          checked_pow(int128(spec.generators[size_t(i)].degree()),
                                                      wc.counts[size_t(i)]));
                    total = checked_add(total, checked_mul(wc.multiplicity, deg - 1));
                }
                s.skew_counts.push_back(total);
                s.counts.emplace_back(total, pn);
            } catch (const OverflowError&) {
                throw OverflowError("periodic_series: counts exceed 128 bits at n = " +
                                    std::to_string(n) + "; lower nmax (log-domain slopes stay "
                                    "available through word_log_degree)");
            }
        }
        return s;
    }

    // Torus: det(M_w - I) is not a class function once matrices stop
    // commuting, so enumerate words with incremental prefix products.
    for (int n = 1; n <= n_max; ++n) {
        int128 pn = checked_pow(int128(spec.p()), n);
        if (pn > int128(opts.max_enumerated_words))
            throw ValidationError("periodic_series: word enumeration cap exceeded for torus spec");
        int128 total = 0;
        std::function<void(int, const IntMatrix&)> walk = [&](int depth, const IntMatrix& prod) {
            if (depth == n) {
                total = checked_add(total, abs128(subtract_identity(prod).determinant()));
                return;
            }
            for (int i = 0; i < spec.p(); ++i)
                walk(depth + 1, spec.generators[size_t(i)].matrix().multiply(prod));
        };
        walk(0, IntMatrix::identity(spec.dim()));
        s.skew_counts.push_back(total);
        s.counts.emplace_back(total, pn);
    }
    return s;
}

EntropyReport periodic_entropy(const PeriodicCountSeries& series) {
    if (series.n_max < 4)
        throw ValidationError("periodic_entropy: series too short (need n_max >= 4)");
    EntropyReport r;
    long long deg_sum = 0;
    for (long long d : series.degrees) deg_sum += d;
    r.closed_form = true;
    r.topological_entropy = std::log(double(deg_sum) / double(series.p));
    r.periodic_entropy = r.topological_entropy;
    r.skew_entropy = r.topological_entropy + std::log(double(series.p));
    r.per_n_log_slopes.reserve(static_cast<size_t>(series.n_max));
    for (int n = 1; n <= series.n_max; ++n) {
        double Nn = std::max(series.N(n).to_double(), 1.0);
        r.per_n_log_slopes.push_back(std::log(Nn) / double(n));
    }
    double a = std::max(series.N(series.n_max - 1).to_double(), 1e-300);
    double b = std::max(series.N(series.n_max).to_double(), 1e-300);
    r.last_increment = std::log(b / a);
    return r;
}

FeketeReport fekete_check(const PeriodicCountSeries& series) {
    if (series.n_max < 5)
        throw ValidationError("fekete_check: series too short (need n_max >= 5)");
    FeketeReport rep;
    rep.exact = series.all_circle && series.all_linear;
    const Rational one = Rational::integer(1);
    for (int m = 1; m < series.n_max; ++m) {
        for (int n = 1; m + n <= series.n_max; ++n) {
            if (rep.exact) {
                Rational lhs = series.N(m + n) + one;
                Rational rhs = (series.N(m) + one) * (series.N(n) + one);
                if (lhs != rhs) {
                    rep.ok = false;
                    rep.first_violation_m = m;
                    rep.first_violation_n = n;
                    rep.message = "exact identity (N_{m+n}+1) = (N_m+1)(N_n+1) fails at m=" +
                                  std::to_string(m) + ", n=" + std::to_string(n);
                    return rep;
                }
            } else {
                double am = std::log(series.N(m).to_double() + 1.0);
                double an = std::log(series.N(n).to_double() + 1.0);
                double amn = std::log(series.N(m + n).to_double() + 1.0);
                if (amn + 1e-9 < am + an) {
                    rep.ok = false;
                    rep.first_violation_m = m;
                    rep.first_violation_n = n;
                    rep.message = "log-superadditivity of N_n + 1 fails at m=" +
                                  std::to_string(m) + ", n=" + std::to_string(n);
                    return rep;
                }
            }
        }
    }
    rep.message = rep.exact ? "exact supermultiplicativity holds" : "no empirical violations";
    return rep;
}

} // namespace sgact
