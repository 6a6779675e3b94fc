#include "sgact/semigroup.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <random>

namespace sgact {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Roots of a monic polynomial (ascending coefficients) by Durand-Kerner;
// degree <= 3 here, used only to validate that torus matrices are expanding.
std::vector<std::complex<double>> poly_roots(const std::vector<double>& monic_coeffs) {
    const int n = static_cast<int>(monic_coeffs.size()) - 1;
    std::vector<std::complex<double>> z(n);
    for (int i = 0; i < n; ++i)
        z[i] = std::pow(std::complex<double>(0.4, 0.9), i + 1);
    for (int iter = 0; iter < 500; ++iter) {
        double move = 0.0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> p = monic_coeffs[n];
            for (int j = n - 1; j >= 0; --j) p = p * z[i] + monic_coeffs[j];
            std::complex<double> den = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (z[i] - z[j]);
            std::complex<double> step = p / den;
            z[i] -= step;
            move = std::max(move, std::abs(step));
        }
        if (move < 1e-13) break;
    }
    return z;
}

} // namespace

int128 IntMatrix::determinant() const {
    const auto& m = a;
    switch (dim) {
        case 1:
            return int128(m[0][0]);
        case 2:
            return checked_mul(int128(m[0][0]), int128(m[1][1])) -
                   checked_mul(int128(m[0][1]), int128(m[1][0]));
        case 3: {
            int128 d = 0;
            d = checked_add(d, checked_mul(int128(m[0][0]),
                                           checked_mul(int128(m[1][1]), int128(m[2][2])) -
                                               checked_mul(int128(m[1][2]), int128(m[2][1]))));
            d = checked_add(d, -checked_mul(int128(m[0][1]),
                                            checked_mul(int128(m[1][0]), int128(m[2][2])) -
                                                checked_mul(int128(m[1][2]), int128(m[2][0]))));
            d = checked_add(d, checked_mul(int128(m[0][2]),
                                           checked_mul(int128(m[1][0]), int128(m[2][1])) -
                                               checked_mul(int128(m[1][1]), int128(m[2][0]))));
            return d;
        }
        default:
            throw ValidationError("matrix dimension must be 1, 2 or 3");
    }
}

IntMatrix IntMatrix::identity(int dim) {
    IntMatrix m;
    m.dim = dim;
    for (int i = 0; i < dim; ++i) m.a[i][i] = 1;
    return m;
}

IntMatrix IntMatrix::multiply(const IntMatrix& rhs) const {
    IntMatrix r;
    r.dim = dim;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            int128 s = 0;
            for (int k = 0; k < dim; ++k)
                s = checked_add(s, checked_mul(int128(a[i][k]), int128(rhs.a[k][j])));
            if (s > int128(INT64_MAX) || s < int128(INT64_MIN))
                throw OverflowError("torus word matrix entry exceeds 64 bits");
            r.a[i][j] = static_cast<long long>(s);
        }
    }
    return r;
}

GeneratorMap GeneratorMap::circle_linear(int degree) {
    if (degree < 2) throw ValidationError("circle_linear.d: degree must be >= 2");
    GeneratorMap g;
    g.kind_ = MapKind::CircleLinear;
    g.dim_ = 1;
    g.degree_ = degree;
    return g;
}

GeneratorMap GeneratorMap::circle_nonlinear(int degree, double eps) {
    if (degree < 2) throw ValidationError("circle_nonlinear.d: degree must be >= 2");
    if (!(std::fabs(eps) < degree - 1))
        throw ValidationError("circle_nonlinear.eps: requires |eps| < d - 1 so the map stays expanding");
    GeneratorMap g;
    g.kind_ = MapKind::CircleNonlinear;
    g.dim_ = 1;
    g.degree_ = degree;
    g.eps_ = eps;
    return g;
}

GeneratorMap GeneratorMap::torus_linear(const IntMatrix& m) {
    if (m.dim < 1 || m.dim > 3)
        throw ValidationError("torus_linear.M: dimension must be 1, 2 or 3");
    int128 det = m.determinant();
    int128 adet = det < 0 ? -det : det;
    if (adet < 2)
        throw ValidationError("torus_linear.M: |det M| must be >= 2");
    // characteristic polynomial, ascending coefficients, monic
    std::vector<double> c;
    const auto& A = m.a;
    if (m.dim == 1) {
        c = {-double(A[0][0]), 1.0};
    } else if (m.dim == 2) {
        double tr = double(A[0][0] + A[1][1]);
        c = {to_double(det), -tr, 1.0};
    } else {
        double tr = double(A[0][0] + A[1][1] + A[2][2]);
        double m2 = 0.0; // sum of principal 2x2 minors
        m2 += double(A[1][1]) * double(A[2][2]) - double(A[1][2]) * double(A[2][1]);
        m2 += double(A[0][0]) * double(A[2][2]) - double(A[0][2]) * double(A[2][0]);
        m2 += double(A[0][0]) * double(A[1][1]) - double(A[0][1]) * double(A[1][0]);
        c = {-to_double(det), m2, -tr, 1.0};
    }
    for (const auto& root : poly_roots(c)) {
        if (std::abs(root) <= 1.0 + 1e-9)
            throw ValidationError("torus_linear.M: every eigenvalue must have modulus > 1");
    }
    GeneratorMap g;
    g.kind_ = MapKind::TorusLinear;
    g.dim_ = m.dim;
    g.degree_ = static_cast<long long>(adet);
    g.mat_ = m;
    return g;
}

double GeneratorMap::lift(double x) const {
    if (kind_ == MapKind::CircleLinear) return double(degree_) * x;
    return double(degree_) * x + eps_ / kTwoPi * std::sin(kTwoPi * x);
}

double GeneratorMap::lift_derivative(double x) const {
    if (kind_ == MapKind::CircleLinear) return double(degree_);
    return double(degree_) + eps_ * std::cos(kTwoPi * x);
}

double GeneratorMap::lift_inverse(double t) const {
    if (kind_ == MapKind::CircleLinear) return t / double(degree_);
    double lo = (t - std::fabs(eps_) / kTwoPi) / double(degree_);
    double hi = (t + std::fabs(eps_) / kTwoPi) / double(degree_);
    for (int i = 0; i < 100 && hi - lo > 1e-16; ++i) {
        double mid = 0.5 * (lo + hi);
        (lift(mid) < t ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double GeneratorMap::apply_circle(double x) const {
    return reduce_mod1(lift(x));
}

Point GeneratorMap::apply(const Point& p) const {
    if (is_circle()) return Point::circle(lift(p.x[0]));
    Point q;
    q.dim = dim_;
    for (int i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) s += double(mat_.a[i][j]) * p.x[j];
        q.x[i] = reduce_mod1(s);
    }
    return q;
}

SemigroupSpec::SemigroupSpec(std::vector<GeneratorMap> gens) : generators(std::move(gens)) {
    if (generators.empty())
        throw ValidationError("generators: at least one generator is required");
    bool circle = generators.front().is_circle();
    int dim = generators.front().space_dim();
    for (const auto& g : generators) {
        if (g.is_circle() != circle || g.space_dim() != dim)
            throw ValidationError("generators: all maps must act on the same phase space");
    }
}

bool SemigroupSpec::all_circle() const {
    return generators.front().is_circle();
}

bool SemigroupSpec::all_linear() const {
    for (const auto& g : generators)
        if (!g.is_linear()) return false;
    return true;
}

long long SemigroupSpec::degree_sum() const {
    long long s = 0;
    for (const auto& g : generators) s += g.degree();
    return s;
}

std::vector<long long> SemigroupSpec::degrees() const {
    std::vector<long long> d;
    d.reserve(generators.size());
    for (const auto& g : generators) d.push_back(g.degree());
    return d;
}

Word Word::concat(const Word& tail) const {
    Word w = *this;
    w.indices.insert(w.indices.end(), tail.indices.begin(), tail.indices.end());
    return w;
}

RandomWalk::RandomWalk(std::vector<double> w) : weights(std::move(w)) {
    if (weights.empty()) throw ValidationError("walk: empty weight vector");
    double sum = 0.0;
    for (double a : weights) {
        if (!(a >= 0.0)) throw ValidationError("walk: weights must be nonnegative");
        sum += a;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw ValidationError("walk: weights must sum to 1");
    for (double& a : weights) a /= sum;
}

RandomWalk RandomWalk::symmetric(int p) {
    return RandomWalk(std::vector<double>(p, 1.0 / p));
}

bool RandomWalk::nontrivial() const {
    for (double a : weights)
        if (!(a > 0.0)) return false;
    return true;
}

Potential Potential::tabulated(std::vector<std::vector<double>> values_per_generator) {
    Potential pot(Kind::Tabulated);
    for (const auto& row : values_per_generator) {
        if (row.empty()) throw ValidationError("potential table: empty generator row");
        for (double v : row)
            if (!std::isfinite(v)) throw ValidationError("potential table: values must be finite");
    }
    pot.table_ = std::move(values_per_generator);
    return pot;
}

double Potential::value(const GeneratorMap& g, int generator_index, double y) const {
    switch (kind_) {
        case Kind::Zero:
            return 0.0;
        case Kind::MinusLogDerivative:
            if (g.is_circle()) return -std::log(g.lift_derivative(y));
            return -std::log(to_double(g.matrix().determinant() < 0
                                           ? -g.matrix().determinant()
                                           : g.matrix().determinant()));
        case Kind::Tabulated: {
            const auto& row = table_.at(generator_index);
            auto n = static_cast<long>(row.size());
            long k = static_cast<long>(std::floor(reduce_mod1(y) * double(n)));
            if (k >= n) k = n - 1;
            return row[static_cast<size_t>(k)];
        }
    }
    return 0.0;
}

int WordClass::length() const {
    int n = 0;
    for (int k : counts) n += k;
    return n;
}

Point apply(const GeneratorMap& g, const Point& x) {
    return g.apply(x);
}

Point apply_word(const SemigroupSpec& spec, const Word& w, const Point& x) {
    Point p = x;
    for (int idx : w.indices) {
        if (idx < 0 || idx >= spec.p()) throw ValidationError("word: generator index out of range");
        p = spec.generators[static_cast<size_t>(idx)].apply(p);
    }
    return p;
}

double apply_word_circle(const SemigroupSpec& spec, const Word& w, double x) {
    double v = reduce_mod1(x);
    for (int idx : w.indices) {
        if (idx < 0 || idx >= spec.p()) throw ValidationError("word: generator index out of range");
        v = spec.generators[static_cast<size_t>(idx)].apply_circle(v);
    }
    return v;
}

double word_lift(const SemigroupSpec& spec, const Word& w, double x) {
    double v = x;
    for (int idx : w.indices) v = spec.generators[static_cast<size_t>(idx)].lift(v);
    return v;
}

int128 word_degree(const SemigroupSpec& spec, const Word& w) {
    if (w.length() < 1) throw ValidationError("word: length must be >= 1");
    int128 d = 1;
    for (int idx : w.indices) {
        if (idx < 0 || idx >= spec.p()) throw ValidationError("word: generator index out of range");
        d = checked_mul(d, int128(spec.generators[static_cast<size_t>(idx)].degree()));
    }
    return d;
}

double word_log_degree(const SemigroupSpec& spec, const Word& w) {
    double s = 0.0;
    for (int idx : w.indices) s += std::log(double(spec.generators[static_cast<size_t>(idx)].degree()));
    return s;
}

IntMatrix word_matrix(const SemigroupSpec& spec, const Word& w) {
    if (spec.all_circle()) throw ValidationError("word_matrix: torus spec required");
    IntMatrix m = IntMatrix::identity(spec.dim());
    for (int idx : w.indices)
        m = spec.generators[static_cast<size_t>(idx)].matrix().multiply(m);
    return m;
}

namespace {

void enumerate_classes_rec(int p, int remaining, std::vector<int>& counts,
                           std::vector<WordClass>& out) {
    if (static_cast<int>(counts.size()) == p - 1) {
        counts.push_back(remaining);
        WordClass wc;
        wc.counts = counts;
        int n = 0;
        for (int k : counts) n += k;
        // multinomial(n; k_1..k_p) as a product of binomials
        int128 mult = 1;
        int rem = n;
        for (int k : counts) {
            // C(rem, k)
            int128 binom = 1;
            for (int i = 1; i <= k; ++i) {
                binom = checked_mul(binom, int128(rem - k + i));
                binom /= i;
            }
            mult = checked_mul(mult, binom);
            rem -= k;
        }
        wc.multiplicity = mult;
        out.push_back(std::move(wc));
        counts.pop_back();
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        counts.push_back(k);
        enumerate_classes_rec(p, remaining - k, counts, out);
        counts.pop_back();
    }
}

} // namespace

std::vector<WordClass> enumerate_word_classes(const SemigroupSpec& spec, int n) {
    if (n < 1) throw ValidationError("enumerate_word_classes: n must be >= 1");
    std::vector<WordClass> out;
    std::vector<int> counts;
    enumerate_classes_rec(spec.p(), n, counts, out);
    return out;
}

Word sample_word(const RandomWalk& walk, int n, std::uint64_t seed) {
    if (n < 1) throw ValidationError("sample_word: n must be >= 1");
    std::mt19937_64 eng(seed);
    Word w;
    w.indices.reserve(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) {
        double u = double(eng() >> 11) * 0x1.0p-53;
        double acc = 0.0;
        int pick = walk.p() - 1;
        for (int i = 0; i < walk.p(); ++i) {
            acc += walk.weights[static_cast<size_t>(i)];
            if (u < acc) {
                pick = i;
                break;
            }
        }
        w.indices.push_back(pick);
    }
    return w;
}

void for_each_word(int p, int n, const std::function<void(const Word&)>& fn) {
    Word w;
    w.indices.assign(static_cast<size_t>(n), 0);
    while (true) {
        fn(w);
        int pos = 0;
        while (pos < n && ++w.indices[static_cast<size_t>(pos)] == p) {
            w.indices[static_cast<size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
}

} // namespace sgact
