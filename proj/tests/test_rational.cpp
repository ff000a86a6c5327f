#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "falconer/errors.hpp"
#include "falconer/rational.hpp"
#include "falconer/rng.hpp"

using falconer::BigInt;
using falconer::Rational;

namespace {
Rational Q(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }

Rational random_rational(falconer::SplitMix64& rng) {
    long long n = static_cast<long long>(rng.next() % 2001) - 1000;
    long long d = 1 + static_cast<long long>(rng.next() % 50);
    return Q(n, d);
}
}  // namespace

TEST_CASE("canonical form") {
    CHECK(Q(2, 4).to_string() == "1/2");
    CHECK(Q(-2, -4).to_string() == "1/2");
    CHECK(Q(2, -4).to_string() == "-1/2");
    CHECK(Q(0, 17).to_string() == "0");
    CHECK(Q(0, 17).den() == BigInt(1));
    CHECK(Q(6, 3).to_string() == "2");
    CHECK_THROWS_AS(Q(1, 0), falconer::ValidationError);
}

TEST_CASE("arithmetic basics") {
    CHECK(Q(1, 2) + Q(1, 3) == Q(5, 6));
    CHECK(Q(1, 2) - Q(1, 3) == Q(1, 6));
    CHECK(Q(2, 3) * Q(3, 4) == Q(1, 2));
    CHECK(Q(2, 3) / Q(4, 9) == Q(3, 2));
    CHECK_THROWS_AS(Q(1, 2) / Q(0, 1), falconer::ValidationError);
    CHECK(Q(1, 3) < Q(1, 2));
    CHECK(Q(-1, 2) < Q(-1, 3));
    CHECK(Rational::pow(Q(2, 3), 3) == Q(8, 27));
    CHECK(Q(4, 9).is_perfect_square());
    CHECK(Q(4, 9).sqrt_exact() == Q(2, 3));
    CHECK_FALSE(Q(2, 9).is_perfect_square());
    CHECK_FALSE(Q(-4, 9).is_perfect_square());
}

TEST_CASE("parsing round-trip") {
    for (const char* s : {"0", "-7", "1/2", "-3/4", "123456789123456789123/1024"}) {
        CHECK(Rational::from_string(s).to_string() == s);
    }
    // non-canonical input reduces
    CHECK(Rational::from_string("123456789123456789123/777").to_string() ==
          "41152263041152263041/259");
}

TEST_CASE("field axioms on random values") {
    falconer::SplitMix64 rng(7);
    for (int iter = 0; iter < 1000; ++iter) {
        Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
}
