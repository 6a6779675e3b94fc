#pragma once

#include <string>

#include "sgact/semigroup.hpp"

namespace sgact {

/// Parse a semigroup config of the form
///   {"generators":[{"kind":"circle_linear","d":2},
///                  {"kind":"circle_nonlinear","d":2,"eps":0.5},
///                  {"kind":"torus_linear","M":[[3,1],[1,2]]}]}
/// Validation failures name the offending field.
SemigroupSpec parse_spec_json(const std::string& text);
SemigroupSpec load_spec_file(const std::string& path);

std::string spec_to_json(const SemigroupSpec& spec);

/// Format a double with 17 significant digits (lossless round-trip).
std::string format_double(double v);

} // namespace sgact
