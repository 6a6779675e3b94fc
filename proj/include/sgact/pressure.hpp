#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgact/semigroup.hpp"

namespace sgact {

/// Closed-form entropy and pressure identities of a walk on the generators.
/// Everything is computed from the degrees d_i and the weights a_i:
///   relative_entropy = annealed = log sum a_i d_i
///   quenched = fibered        = sum a_i log d_i
///   shannon                    = -sum a_i log a_i
///   skew_measure_entropy       = shannon + fibered
struct PressureReport {
    RandomWalk walk;
    double relative_entropy = 0.0;
    double annealed = 0.0;
    double quenched = 0.0;
    double fibered = 0.0;
    double skew_measure_entropy = 0.0;
    double shannon = 0.0;
};

PressureReport pressure_report(const SemigroupSpec& spec, const RandomWalk& walk);

/// m_i = d_i / sum d_k, the base marginal of the maximal-entropy measure of
/// the skew product.
RandomWalk distinguished_vector_m(const SemigroupSpec& spec);

/// Three equivalent characterizations of the equal-degree case, evaluated
/// independently so their agreement can be asserted.
struct EqualDegreeReport {
    bool entropy_equals_fibered_at_symmetric = false;
    bool m_is_symmetric = false;
    bool degrees_all_equal = false;
    bool agree = false;
    double entropy_gap = 0.0; // h_top(S) - fibered entropy at the symmetric walk
};

EqualDegreeReport equal_degree_test(const SemigroupSpec& spec);

/// Maximum of the entropy map a -> log sum a_i d_i over the Bernoulli
/// simplex. The analytic maximizer concentrates on the top-degree generators;
/// a grid scan of about grid_resolution points double-checks the value.
struct EntropyMaxResult {
    RandomWalk maximizer;           // uniform on the maximizing face
    double value = 0.0;             // log max_i d_i
    std::vector<int> max_face;      // indices of maximal-degree generators
    double grid_max = 0.0;          // best value seen on the verification grid
    RandomWalk grid_argmax;
};

EntropyMaxResult entropy_map_maximize(const SemigroupSpec& spec, int grid_resolution);

/// Walks whose fibered entropy matches h_top(S). For p = 2 the solution of
/// a_1 log d_1 + a_2 log d_2 = log((d_1 + d_2)/2) is unique (or the whole
/// simplex when the degrees tie); for p >= 3 the solution set is a simplex
/// slice and one representative is reported.
struct MatchingWalkResult {
    std::optional<RandomWalk> walk;
    bool whole_simplex = false; // every walk matches (all degrees equal)
    bool unique = false;        // p = 2 with distinct degrees
    std::string description;
};

MatchingWalkResult matching_walk(const SemigroupSpec& spec);

} // namespace sgact
