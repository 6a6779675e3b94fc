#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sgact/errors.hpp"
#include "sgact/int128.hpp"
#include "sgact/point.hpp"

namespace sgact {

enum class MapKind { CircleLinear, CircleNonlinear, TorusLinear };

/// Small integer matrix for torus endomorphisms, dim <= 3.
struct IntMatrix {
    int dim = 0;
    std::array<std::array<long long, 3>, 3> a{};

    int128 determinant() const;
    static IntMatrix identity(int dim);
    IntMatrix multiply(const IntMatrix& rhs) const; // overflow-checked entries
};

/// One expanding generator: x -> d*x (mod 1), its sine perturbation, or an
/// expanding integer matrix acting on the torus. Construction validates the
/// expansion requirements, so a GeneratorMap is expanding by fiat afterwards.
class GeneratorMap {
public:
    static GeneratorMap circle_linear(int degree);
    // x -> d*x + (eps / 2*pi) * sin(2*pi*x) mod 1, requires |eps| < d - 1.
    static GeneratorMap circle_nonlinear(int degree, double eps);
    // Requires every eigenvalue of m to lie strictly outside the unit circle.
    static GeneratorMap torus_linear(const IntMatrix& m);

    MapKind kind() const { return kind_; }
    bool is_circle() const { return kind_ != MapKind::TorusLinear; }
    bool is_linear() const { return kind_ != MapKind::CircleNonlinear; }
    int space_dim() const { return dim_; }
    long long degree() const { return degree_; }
    double nonlinearity() const { return eps_; }
    const IntMatrix& matrix() const { return mat_; }

    Point apply(const Point& p) const;
    double apply_circle(double x) const;

    // Monotone lift F with F(0) = 0, F(x + 1) = F(x) + degree. Valid for all
    // real x; every circle computation (fixed points, Ulam weights, preimage
    // branches) goes through it.
    double lift(double x) const;
    double lift_derivative(double x) const;
    // Inverse of the lift on [0, degree]; bisection for the nonlinear kind.
    double lift_inverse(double t) const;

private:
    GeneratorMap() = default;
    MapKind kind_ = MapKind::CircleLinear;
    int dim_ = 1;
    long long degree_ = 2;
    double eps_ = 0.0;
    IntMatrix mat_{};
};

/// The generating set {g_1, ..., g_p}. The identity is implicit and never
/// enumerated: all word counts range over exactly-n-letter words.
struct SemigroupSpec {
    std::vector<GeneratorMap> generators;

    explicit SemigroupSpec(std::vector<GeneratorMap> gens);

    int p() const { return static_cast<int>(generators.size()); }
    int dim() const { return generators.front().space_dim(); }
    bool all_circle() const;
    bool all_linear() const;
    long long degree_sum() const;
    std::vector<long long> degrees() const;
};

/// A word g_{i_n} ... g_{i_1}, stored first-applied-first: indices[0] = i_1
/// acts before indices[1]. Indices are 0-based positions into the generators.
struct Word {
    std::vector<int> indices;

    Word() = default;
    explicit Word(std::vector<int> idx) : indices(std::move(idx)) {}
    int length() const { return static_cast<int>(indices.size()); }
    Word concat(const Word& tail) const; // *this acts first
};

/// Bernoulli weights on the generators.
struct RandomWalk {
    std::vector<double> weights;

    RandomWalk() = default; // empty placeholder for report structs
    explicit RandomWalk(std::vector<double> w);
    static RandomWalk symmetric(int p);

    int p() const { return static_cast<int>(weights.size()); }
    bool nontrivial() const; // true iff every weight is positive
};

/// Potential evaluated per generator. MinusLogDerivative is -log|g'| on the
/// circle and -log|det M| on the torus; Tabulated holds per-generator grid
/// values, piecewise constant on equal bins of [0, 1).
class Potential {
public:
    enum class Kind { Zero, MinusLogDerivative, Tabulated };

    static Potential zero() { return Potential(Kind::Zero); }
    static Potential minus_log_derivative() { return Potential(Kind::MinusLogDerivative); }
    static Potential tabulated(std::vector<std::vector<double>> values_per_generator);

    Kind kind() const { return kind_; }
    double value(const GeneratorMap& g, int generator_index, double y) const;

private:
    explicit Potential(Kind k) : kind_(k) {}
    Kind kind_;
    std::vector<std::vector<double>> table_;
};

/// Words grouped by how many times each generator occurs. Quantities that
/// depend only on the degree multiset are summed class-by-class, with the
/// multinomial multiplicity replacing brute enumeration.
struct WordClass {
    std::vector<int> counts;
    int128 multiplicity = 1;

    int length() const;
};

Point apply(const GeneratorMap& g, const Point& x);
Point apply_word(const SemigroupSpec& spec, const Word& w, const Point& x);
double apply_word_circle(const SemigroupSpec& spec, const Word& w, double x);

/// Lift of the whole word composition (circle specs).
double word_lift(const SemigroupSpec& spec, const Word& w, double x);

/// Product of the generator degrees along the word; throws OverflowError
/// past 128 bits (use word_log_degree then).
int128 word_degree(const SemigroupSpec& spec, const Word& w);
double word_log_degree(const SemigroupSpec& spec, const Word& w);

/// Product of the generator matrices along a torus word, M_{i_n} ... M_{i_1}.
IntMatrix word_matrix(const SemigroupSpec& spec, const Word& w);

std::vector<WordClass> enumerate_word_classes(const SemigroupSpec& spec, int n);

/// i.i.d. indices with the walk's probabilities; identical seeds give
/// identical words on every platform.
Word sample_word(const RandomWalk& walk, int n, std::uint64_t seed);

/// Visit all p^n words of length n (odometer order).
void for_each_word(int p, int n, const std::function<void(const Word&)>& fn);

} // namespace sgact
