#include "sgact/rational.hpp"

namespace sgact {

namespace {

using uint128 = unsigned __int128;

uint128 uabs(int128 v) {
    return v < 0 ? uint128(0) - uint128(v) : uint128(v);
}

uint128 gcd128(uint128 a, uint128 b) {
    while (b != 0) {
        uint128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

std::string to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    uint128 u = uabs(v);
    char buf[48];
    int pos = 48;
    while (u != 0) {
        buf[--pos] = char('0' + int(u % 10));
        u /= 10;
    }
    std::string s(buf + pos, buf + 48);
    return neg ? "-" + s : s;
}

double to_double(int128 v) {
    return static_cast<double>(v);
}

Rational::Rational(int128 num, int128 den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    uint128 g = gcd128(uabs(num), uabs(den));
    if (g > 1) {
        num = (num < 0) ? -int128(uabs(num) / g) : int128(uabs(num) / g);
        den = int128(uint128(den) / g);
    }
    num_ = num;
    den_ = den;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                    checked_mul(den_, o.den_));
}

Rational Rational::operator-(const Rational& o) const {
    return *this + Rational(-o.num_, o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    // Cross-reduce first so intermediate products stay small.
    Rational a(num_, o.den_);
    Rational b(o.num_, den_);
    return Rational(checked_mul(a.num(), b.num()), checked_mul(a.den(), b.den()));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) throw ValidationError("rational division by zero");
    return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
    // Denominators are positive, so cross-multiplication preserves order.
    return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
}

std::string Rational::str() const {
    if (den_ == 1) return to_string(num_);
    return to_string(num_) + "/" + to_string(den_);
}

} // namespace sgact
