#include "falconer/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "falconer/errors.hpp"

namespace falconer {

namespace {

constexpr std::uint64_t kLimbBase = 1ull << 32;

std::uint64_t abs_u64(std::int64_t v) {
    return v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
}

std::vector<std::uint32_t> mag_from_u64(std::uint64_t v) {
    std::vector<std::uint32_t> m;
    while (v) {
        m.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        v >>= 32;
    }
    return m;
}

std::vector<std::uint32_t> mag_from_u128(unsigned __int128 v) {
    std::vector<std::uint32_t> m;
    while (v) {
        m.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        v >>= 32;
    }
    return m;
}

void strip_zeros(std::vector<std::uint32_t>& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

// shift left by s bits, 0 <= s < 32
std::vector<std::uint32_t> shl_bits(const std::vector<std::uint32_t>& a, unsigned s) {
    if (s == 0) return a;
    std::vector<std::uint32_t> r(a.size() + 1, 0);
    std::uint32_t carry = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = (a[i] << s) | carry;
        carry = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[i]) >> (32 - s));
    }
    r[a.size()] = carry;
    strip_zeros(r);
    return r;
}

std::vector<std::uint32_t> shr_bits(const std::vector<std::uint32_t>& a, unsigned s) {
    if (s == 0) return a;
    std::vector<std::uint32_t> r(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t lo = a[i] >> s;
        std::uint64_t hi = (i + 1 < a.size())
                               ? (static_cast<std::uint64_t>(a[i + 1]) << (32 - s)) & 0xffffffffu
                               : 0;
        r[i] = static_cast<std::uint32_t>(lo | hi);
    }
    strip_zeros(r);
    return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

BigInt::BigInt(unsigned long long v) {
    if (v <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        small_ = static_cast<std::int64_t>(v);
    } else {
        sign_ = 1;
        mag_ = mag_from_u64(v);
    }
}

int BigInt::signum() const {
    if (!mag_.empty()) return sign_;
    return small_ < 0 ? -1 : (small_ > 0 ? 1 : 0);
}

std::vector<std::uint32_t> BigInt::magnitude() const {
    if (!mag_.empty()) return mag_;
    return mag_from_u64(abs_u64(small_));
}

void BigInt::normalize() {
    strip_zeros(mag_);
    if (mag_.empty()) {
        sign_ = 0;
        return;
    }
    if (mag_.size() <= 2) {
        std::uint64_t v = mag_[0];
        if (mag_.size() == 2) v |= static_cast<std::uint64_t>(mag_[1]) << 32;
        std::uint64_t limit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) +
                              (sign_ < 0 ? 1 : 0);
        if (v <= limit) {
            small_ = sign_ < 0 ? -static_cast<std::int64_t>(v - 1) - 1 : static_cast<std::int64_t>(v);
            mag_.clear();
            sign_ = 0;
            return;
        }
    }
    small_ = 0;
}

BigInt BigInt::make_big(int sign, std::vector<std::uint32_t> mag) {
    BigInt r;
    r.sign_ = static_cast<std::int8_t>(sign);
    r.mag_ = std::move(mag);
    r.normalize();
    return r;
}

BigInt BigInt::from_i128(__int128 v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max()) {
        BigInt r;
        r.small_ = static_cast<std::int64_t>(v);
        return r;
    }
    int sign = v < 0 ? -1 : 1;
    unsigned __int128 m = v < 0 ? ~static_cast<unsigned __int128>(v) + 1
                                : static_cast<unsigned __int128>(v);
    return make_big(sign, mag_from_u128(m));
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r(big.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0);
        r[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
        carry = s >> 32;
    }
    r[big.size()] = static_cast<std::uint32_t>(carry);
    strip_zeros(r);
    return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    assert(cmp_mag(a, b) >= 0);
    std::vector<std::uint32_t> r(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
        if (d < 0) {
            d += static_cast<std::int64_t>(kLimbBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<std::uint32_t>(d);
    }
    strip_zeros(r);
    return r;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j] + carry;
            r[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        r[i + b.size()] += static_cast<std::uint32_t>(carry);
    }
    strip_zeros(r);
    return r;
}

// Knuth algorithm D, base 2^32.
void BigInt::divmod_mag(const std::vector<std::uint32_t>& u0, const std::vector<std::uint32_t>& v0,
                        std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
    assert(!v0.empty());
    if (cmp_mag(u0, v0) < 0) {
        q.clear();
        r = u0;
        return;
    }
    if (v0.size() == 1) {
        std::uint64_t d = v0[0], rem = 0;
        q.assign(u0.size(), 0);
        for (std::size_t i = u0.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | u0[i];
            q[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        strip_zeros(q);
        r = mag_from_u64(rem);
        return;
    }

    unsigned s = std::countl_zero(v0.back());
    std::vector<std::uint32_t> v = shl_bits(v0, s);
    std::vector<std::uint32_t> u = shl_bits(u0, s);
    u.resize(u0.size() + 1, 0);  // ensure an extra top limb

    const std::size_t n = v.size();
    const std::size_t qn = u.size() - n;
    q.assign(qn, 0);

    for (std::size_t j = qn; j-- > 0;) {
        std::uint64_t top = (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        std::uint64_t qhat = top / v[n - 1];
        std::uint64_t rhat = top % v[n - 1];
        while (qhat >= kLimbBase ||
               qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= kLimbBase) break;
        }
        // multiply and subtract
        std::int64_t borrow = 0;
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t p = qhat * v[i] + carry;
            carry = p >> 32;
            std::int64_t t = static_cast<std::int64_t>(u[i + j]) -
                             static_cast<std::int64_t>(p & 0xffffffffu) - borrow;
            if (t < 0) {
                t += static_cast<std::int64_t>(kLimbBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = static_cast<std::uint32_t>(t);
        }
        std::int64_t t = static_cast<std::int64_t>(u[j + n]) - static_cast<std::int64_t>(carry) -
                         borrow;
        if (t < 0) {
            // qhat was one too large; add v back
            t += static_cast<std::int64_t>(kLimbBase);
            --qhat;
            std::uint64_t c2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t s2 = static_cast<std::uint64_t>(u[i + j]) + v[i] + c2;
                u[i + j] = static_cast<std::uint32_t>(s2 & 0xffffffffu);
                c2 = s2 >> 32;
            }
            t += static_cast<std::int64_t>(c2);
            t &= 0xffffffff;
        }
        u[j + n] = static_cast<std::uint32_t>(t);
        q[j] = static_cast<std::uint32_t>(qhat);
    }
    strip_zeros(q);
    u.resize(n);
    r = shr_bits(u, s);
}

BigInt BigInt::operator-() const {
    if (mag_.empty()) {
        if (small_ == std::numeric_limits<std::int64_t>::min())
            return make_big(1, mag_from_u64(abs_u64(small_)));
        BigInt r;
        r.small_ = -small_;
        return r;
    }
    BigInt r = *this;
    r.sign_ = -r.sign_;
    r.normalize();
    return r;
}

BigInt BigInt::abs() const { return signum() < 0 ? -*this : *this; }

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.mag_.empty() && b.mag_.empty())
        return BigInt::from_i128(a.as_i128_small() + b.as_i128_small());
    int sa = a.signum(), sb = b.signum();
    if (sa == 0) return b;
    if (sb == 0) return a;
    auto ma = a.magnitude(), mb = b.magnitude();
    if (sa == sb) return BigInt::make_big(sa, BigInt::add_mag(ma, mb));
    int c = BigInt::cmp_mag(ma, mb);
    if (c == 0) return BigInt{};
    return c > 0 ? BigInt::make_big(sa, BigInt::sub_mag(ma, mb))
                 : BigInt::make_big(sb, BigInt::sub_mag(mb, ma));
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.mag_.empty() && b.mag_.empty())
        return BigInt::from_i128(a.as_i128_small() * b.as_i128_small());
    int s = a.signum() * b.signum();
    if (s == 0) return BigInt{};
    return BigInt::make_big(s, BigInt::mul_mag(a.magnitude(), b.magnitude()));
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw ValidationError("division by zero");
    if (a.mag_.empty() && b.mag_.empty()) {
        __int128 qq = a.as_i128_small() / b.as_i128_small();  // |a/b| <= 2^63, no overflow in 128
        __int128 rr = a.as_i128_small() % b.as_i128_small();
        q = from_i128(qq);
        r = from_i128(rr);
        return;
    }
    std::vector<std::uint32_t> qm, rm;
    divmod_mag(a.magnitude(), b.magnitude(), qm, rm);
    int sq = a.signum() * b.signum();
    q = qm.empty() ? BigInt{} : make_big(sq, std::move(qm));
    r = rm.empty() ? BigInt{} : make_big(a.signum(), std::move(rm));
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    int sa = a.signum(), sb = b.signum();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    if (a.mag_.empty() && b.mag_.empty())
        return a.small_ < b.small_ ? -1 : (a.small_ > b.small_ ? 1 : 0);
    int c = cmp_mag(a.magnitude(), b.magnitude());
    return sa > 0 ? c : -c;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    if (a.mag_.empty() && b.mag_.empty())
        return BigInt(static_cast<unsigned long long>(gcd_u64(abs_u64(a.small_), abs_u64(b.small_))));
    BigInt x = a.abs(), y = b.abs();
    while (!y.is_zero()) {
        BigInt q, r;
        divmod(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
    }
    return x;
}

BigInt BigInt::pow(const BigInt& base, std::uint32_t exp) {
    BigInt result(1), b = base;
    while (exp) {
        if (exp & 1) result = result * b;
        exp >>= 1;
        if (exp) b = b * b;
    }
    return result;
}

BigInt BigInt::isqrt(const BigInt& a) {
    if (a.signum() < 0) throw ValidationError("isqrt of negative value");
    if (a.is_zero()) return BigInt{};
    if (a.mag_.empty()) {
        std::uint64_t n = static_cast<std::uint64_t>(a.small_);
        std::uint64_t x = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
        while (x > 0 && x > n / x) --x;
        while ((x + 1) <= n / (x + 1)) ++x;
        return BigInt(static_cast<unsigned long long>(x));
    }
    // Newton iteration from an over-estimate.
    std::size_t bits = (a.mag_.size() - 1) * 32 + (32 - std::countl_zero(a.mag_.back()));
    BigInt x = pow(BigInt(2), static_cast<std::uint32_t>(bits / 2 + 1));
    BigInt two(2);
    while (true) {
        BigInt x1 = (x + a / x) / two;
        if (!(x1 < x)) break;
        x = std::move(x1);
    }
    return x;
}

bool BigInt::is_perfect_square() const {
    if (signum() < 0) return false;
    BigInt r = isqrt(*this);
    return r * r == *this;
}

std::uint64_t BigInt::mod_u64(std::uint64_t m) const {
    assert(m > 0);
    std::uint64_t rem;
    if (mag_.empty()) {
        rem = abs_u64(small_) % m;
        return small_ < 0 && rem != 0 ? m - rem : rem;
    }
    unsigned __int128 acc = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) {
        acc = ((acc << 32) | mag_[i]) % m;
    }
    rem = static_cast<std::uint64_t>(acc);
    return sign_ < 0 && rem != 0 ? m - rem : rem;
}

BigInt BigInt::from_string(std::string_view text) {
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    if (i >= text.size()) throw ValidationError("empty integer literal");
    BigInt r;
    BigInt chunk_base(1000000000);
    std::uint64_t acc = 0;
    int acc_digits = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c < '0' || c > '9')
            throw ValidationError(std::string("invalid digit '") + c + "' in integer literal");
        acc = acc * 10 + static_cast<std::uint64_t>(c - '0');
        if (++acc_digits == 9) {
            r = r * chunk_base + BigInt(static_cast<long long>(acc));
            acc = 0;
            acc_digits = 0;
        }
    }
    if (acc_digits) {
        std::uint64_t p = 1;
        for (int k = 0; k < acc_digits; ++k) p *= 10;
        r = r * BigInt(static_cast<long long>(p)) + BigInt(static_cast<long long>(acc));
    }
    return neg ? -r : r;
}

std::string BigInt::to_string() const {
    if (mag_.empty()) return std::to_string(small_);
    std::vector<std::uint32_t> m = mag_;
    std::string out;
    while (!m.empty()) {
        std::uint64_t rem = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | m[i];
            m[i] = static_cast<std::uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        strip_zeros(m);
        char buf[10];
        if (m.empty()) {
            std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(rem));
        } else {
            std::snprintf(buf, sizeof buf, "%09llu", static_cast<unsigned long long>(rem));
        }
        out.insert(0, buf);
    }
    return sign_ < 0 ? "-" + out : out;
}

double BigInt::to_double() const {
    if (mag_.empty()) return static_cast<double>(small_);
    double r = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) r = r * 4294967296.0 + mag_[i];
    return sign_ < 0 ? -r : r;
}

std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.to_string(); }

}  // namespace falconer
