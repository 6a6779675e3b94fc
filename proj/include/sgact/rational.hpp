#pragma once

#include <compare>
#include <string>

#include "sgact/int128.hpp"

namespace sgact {

/// Exact rational with 128-bit numerator/denominator, always reduced,
/// denominator > 0. Throws OverflowError when a result leaves the range.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int128 num, int128 den);
    static Rational integer(int128 n) { return Rational(n, 1); }

    int128 num() const { return num_; }
    int128 den() const { return den_; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;

    double to_double() const { return sgact::to_double(num_) / sgact::to_double(den_); }
    std::string str() const; // "num/den", or just "num" when den == 1

private:
    int128 num_;
    int128 den_;
};

} // namespace sgact
