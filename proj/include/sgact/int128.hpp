#pragma once

#include <cstdint>
#include <string>

#include "sgact/errors.hpp"

namespace sgact {

// Exact integer arithmetic for degree products and periodic-point counts.
// 128 bits cover every desk-scale run; anything larger must go through the
// log-domain helpers instead.
using int128 = __int128;

std::string to_string(int128 v);

inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("integer addition exceeds 128 bits");
    return r;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("integer product exceeds 128 bits");
    return r;
}

inline int128 checked_pow(int128 base, int exp) {
    int128 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

double to_double(int128 v);

} // namespace sgact
