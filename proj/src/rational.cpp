#include "falconer/rational.hpp"

#include <ostream>
#include <utility>

#include "falconer/errors.hpp"

namespace falconer {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ValidationError("rational with zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_.signum() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!(g == BigInt(1))) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw ValidationError("reciprocal of zero");
    Rational r;
    if (num_.signum() < 0) {
        r.num_ = -den_;
        r.den_ = -num_;
    } else {
        r.num_ = den_;
        r.den_ = num_;
    }
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    // cross-reduce first to keep intermediates small
    BigInt g1 = BigInt::gcd(a.num_, b.den_);
    BigInt g2 = BigInt::gcd(b.num_, a.den_);
    Rational r;
    r.num_ = (a.num_ / g1) * (b.num_ / g2);
    r.den_ = (a.den_ / g2) * (b.den_ / g1);
    if (r.num_.is_zero()) r.den_ = BigInt(1);
    return r;
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw ValidationError("division by zero");
    return a * b.reciprocal();
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // denominators positive, so cross-multiplication preserves order
    return a.num_ * b.den_ <=> b.num_ * a.den_;
}

Rational Rational::pow(const Rational& base, std::uint32_t exp) {
    Rational r;
    r.num_ = BigInt::pow(base.num_, exp);
    r.den_ = BigInt::pow(base.den_, exp);
    return r;
}

bool Rational::is_perfect_square() const {
    return signum() >= 0 && num_.is_perfect_square() && den_.is_perfect_square();
}

Rational Rational::sqrt_exact() const {
    if (!is_perfect_square()) throw ValidationError("not a perfect square");
    Rational r;
    r.num_ = BigInt::isqrt(num_);
    r.den_ = BigInt::isqrt(den_);
    return r;
}

Rational Rational::from_string(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt::from_string(text));
    BigInt n = BigInt::from_string(text.substr(0, slash));
    BigInt d = BigInt::from_string(text.substr(slash + 1));
    return Rational(std::move(n), std::move(d));
}

std::string Rational::to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.to_string(); }

}  // namespace falconer
