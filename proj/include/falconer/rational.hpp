#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include "falconer/bigint.hpp"

namespace falconer {

/// Exact rational number. Always canonical: denominator > 0,
/// gcd(|num|, den) = 1, zero is 0/1. No rounding anywhere.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(BigInt v) : num_(std::move(v)), den_(1) {}
    Rational(BigInt num, BigInt den);

    /// Parses "n" or "n/d" with optional sign on n.
    static Rational from_string(std::string_view text);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == BigInt(1); }
    int signum() const { return num_.signum(); }

    Rational operator-() const;
    Rational abs() const { return signum() < 0 ? -*this : *this; }
    Rational reciprocal() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    static Rational pow(const Rational& base, std::uint32_t exp);
    /// Exact square root if this is the square of a rational.
    bool is_perfect_square() const;
    Rational sqrt_exact() const;  // requires is_perfect_square()

    std::string to_string() const;  // "n" or "n/d"
    double to_double() const { return num_.to_double() / den_.to_double(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& v);

  private:
    BigInt num_;
    BigInt den_;  // > 0
    void reduce();
};

}  // namespace falconer
