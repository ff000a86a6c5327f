#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace falconer {

/// Arbitrary-precision signed integer.
///
/// Values that fit in a machine word are kept inline; arithmetic on them
/// never allocates. Larger magnitudes spill into base-2^32 limbs
/// (little-endian). Division truncates toward zero, like built-in ints.
class BigInt {
  public:
    BigInt() = default;
    BigInt(int v) : small_(v) {}
    BigInt(long v) : small_(v) {}
    BigInt(long long v) : small_(v) {}
    BigInt(unsigned long long v);

    static BigInt from_string(std::string_view text);
    std::string to_string() const;
    double to_double() const;

    bool is_zero() const { return mag_.empty() && small_ == 0; }
    /// -1, 0, or +1.
    int signum() const;
    bool fits_int64() const { return mag_.empty(); }
    std::int64_t to_int64() const { return small_; }  // valid only when fits_int64()

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    friend BigInt operator/(const BigInt& a, const BigInt& b);
    friend BigInt operator%(const BigInt& a, const BigInt& b);
    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    /// q truncated toward zero; remainder has the dividend's sign.
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        int c = cmp(a, b);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    static BigInt gcd(const BigInt& a, const BigInt& b);  // always >= 0
    static BigInt pow(const BigInt& base, std::uint32_t exp);
    /// Floor of the square root; a must be >= 0.
    static BigInt isqrt(const BigInt& a);
    bool is_perfect_square() const;

    /// Nonnegative remainder mod m (m > 0), regardless of sign.
    std::uint64_t mod_u64(std::uint64_t m) const;

    friend std::ostream& operator<<(std::ostream& os, const BigInt& v);

  private:
    // mag_ empty  => value is small_.
    // mag_ nonempty => value is sign_ * sum mag_[i] * 2^(32 i), and |value| > INT64_MAX
    //                 is NOT guaranteed; normalize() demotes whenever it fits.
    std::int64_t small_ = 0;
    std::int8_t sign_ = 0;
    std::vector<std::uint32_t> mag_;

    static int cmp(const BigInt& a, const BigInt& b);
    void normalize();
    static BigInt make_big(int sign, std::vector<std::uint32_t> mag);
    static BigInt from_i128(__int128 v);
    std::vector<std::uint32_t> magnitude() const;  // limbs of |value|
    __int128 as_i128_small() const { return small_; }

    // magnitude helpers (no sign handling)
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static void divmod_mag(const std::vector<std::uint32_t>& u, const std::vector<std::uint32_t>& v,
                           std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r);
};

}  // namespace falconer
