#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "falconer/errors.hpp"
#include "falconer/finite_field.hpp"

using namespace falconer;
using namespace falconer::ff;

namespace {
Quadratic3 F(const char* text) { return Quadratic3::from_string(text); }

FFSet full_field(const PrimeField& field) {
    std::vector<std::uint64_t> all(field.p);
    std::iota(all.begin(), all.end(), std::uint64_t{0});
    return FFSet(std::move(all), field);
}
}  // namespace

TEST_CASE("primality") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(101));
    CHECK(is_prime_u64(1009));
    CHECK(is_prime_u64(1000000007ull));
    CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(1001));
    CHECK_FALSE(is_prime_u64(3215031751ull));  // strong pseudoprime to bases 2,3,5,7
    CHECK_THROWS_AS(PrimeField(100), ValidationError);
}

TEST_CASE("set validation") {
    PrimeField f7(7);
    CHECK_THROWS_AS(FFSet({1, 1, 2}, f7), ValidationError);
    CHECK_THROWS_AS(FFSet({2, 1}, f7), ValidationError);
    CHECK_THROWS_AS(FFSet({7}, f7), ValidationError);
    CHECK(FFSet::from_unsorted({3, 1, 3, 2}, f7).elems() == std::vector<std::uint64_t>{1, 2, 3});
}

TEST_CASE("coefficient reduction mod p") {
    PrimeField f7(7);
    Quadratic3 q;
    q.a = Rational(BigInt(1), BigInt(2));  // 1/2 = 4 mod 7
    q.h = Rational(-1);                    // = 6 mod 7
    QuadraticMod m = QuadraticMod::reduce(q, f7);
    CHECK(m.a == 4);
    CHECK(m.h == 6);
    Quadratic3 bad;
    bad.a = Rational(BigInt(1), BigInt(7));
    CHECK_THROWS_AS(QuadraticMod::reduce(bad, f7), ValidationError);
}

TEST_CASE("image set examples") {
    PrimeField f7(7);
    QuadraticMod xy_z = QuadraticMod::reduce(F("x*y + z"), f7);
    FFSet whole = full_field(f7);
    CHECK(image_set(xy_z, whole, whole, whole, f7).size() == 7);

    FFSet small({1, 2}, f7);
    FFSet img = image_set(xy_z, small, small, small, f7);
    CHECK(img.elems() == std::vector<std::uint64_t>{2, 3, 4, 5, 6});

    PrimeField f101(101);
    QuadraticMod sq = QuadraticMod::reduce(F("(x+y+z)^2"), f101);
    FFSet abc({0, 1, 2}, f101);
    FFSet img2 = image_set(sq, abc, abc, abc, f101);
    CHECK(img2.elems() == std::vector<std::uint64_t>{0, 1, 4, 9, 16, 25, 36});
}

TEST_CASE("image set budget") {
    PrimeField f101(101);
    QuadraticMod q = QuadraticMod::reduce(F("x*y + z"), f101);
    FFSet whole = full_field(f101);
    CHECK_THROWS_AS(image_set(q, whole, whole, whole, f101, /*budget=*/1000),
                    BudgetError);
}

TEST_CASE("image set is monotone and respects symmetry") {
    PrimeField p(103);
    QuadraticMod q = QuadraticMod::reduce(F("x*y + z"), p);
    SplitMix64 rng(5);
    FFSet A = draw_set(SetFamily::UniformRandom, 10, p, rng);
    FFSet B = draw_set(SetFamily::UniformRandom, 12, p, rng);
    FFSet C = draw_set(SetFamily::UniformRandom, 9, p, rng);
    FFSet bigA = draw_set(SetFamily::UniformRandom, 30, p, rng);
    // force A subset of bigA
    std::vector<std::uint64_t> merged = bigA.elems();
    merged.insert(merged.end(), A.elems().begin(), A.elems().end());
    bigA = FFSet::from_unsorted(std::move(merged), p);

    FFSet img = image_set(q, A, B, C, p);
    FFSet img_big = image_set(q, bigA, B, C, p);
    for (std::uint64_t v : img.elems()) CHECK(img_big.contains(v));

    // xy + z is symmetric in x and y
    CHECK(image_set(q, A, B, C, p) == image_set(q, B, A, C, p));
}

TEST_CASE("image set parallel merge is deterministic") {
    PrimeField p(1009);
    QuadraticMod q = QuadraticMod::reduce(F("x*y + z"), p);
    SplitMix64 rng(6);
    FFSet A = draw_set(SetFamily::UniformRandom, 40, p, rng);
    FFSet B = draw_set(SetFamily::UniformRandom, 40, p, rng);
    FFSet C = draw_set(SetFamily::UniformRandom, 40, p, rng);
    FFSet serial = image_set(q, A, B, C, p, kDefaultBudget, 1);
    FFSet par4 = image_set(q, A, B, C, p, kDefaultBudget, 4);
    FFSet par8 = image_set(q, A, B, C, p, kDefaultBudget, 8);
    CHECK(serial == par4);
    CHECK(serial == par8);
}

TEST_CASE("set families") {
    PrimeField p(1009);
    SplitMix64 rng(9);
    for (SetFamily fam : {SetFamily::UniformRandom, SetFamily::Interval, SetFamily::Geometric}) {
        FFSet s = draw_set(fam, 50, p, rng);
        CHECK(s.size() == 50);
    }
    // geometric sets are multiplicative orbits: closed under one more step
    // times the generator they were built from only in sequence, but all
    // elements are nonzero
    FFSet geo = draw_set(SetFamily::Geometric, 100, p, rng);
    for (std::uint64_t v : geo.elems()) CHECK(v != 0);
    CHECK_THROWS_AS(draw_set(SetFamily::UniformRandom, 2000, p, rng), ValidationError);
}

TEST_CASE("census examples and reproducibility") {
    PrimeField p(101);
    auto rep = expander_census(F("x*y + z"), p, 101, 1, SetFamily::Interval, 7);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].image_size == 101);
    CHECK(rep.rows[0].ratio == doctest::Approx(1.0));
    CHECK(rep.rows[0].ratio_exact == "1/1");

    PrimeField p1009(1009);
    auto r1 = expander_census(F("x*y + z"), p1009, 60, 8, SetFamily::UniformRandom, 42,
                              kDefaultBudget, 1);
    auto r4 = expander_census(F("x*y + z"), p1009, 60, 8, SetFamily::UniformRandom, 42,
                              kDefaultBudget, 4);
    REQUIRE(r1.rows.size() == 8);
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(r1.rows[k].trial == r4.rows[k].trial);
        CHECK(r1.rows[k].image_size == r4.rows[k].image_size);
    }
    CHECK_THROWS_AS(expander_census(F("x*y + z"), p, 200, 1, SetFamily::Interval, 1),
                    ValidationError);
}

TEST_CASE("degenerate contrast on interval families") {
    // (x+y+z)^2 on an interval family: sums form a progression of length
    // 3N-2 and squaring cannot enlarge it
    PrimeField p(1009);
    std::uint64_t n = 60;
    auto rep = expander_census(F("(x+y+z)^2"), p, n, 20, SetFamily::Interval, 3);
    for (const auto& row : rep.rows) CHECK(row.image_size <= 3 * n - 2);
}

TEST_CASE("distance cover checks") {
    PrimeField p101(101);
    CHECK(cover_check_distance(full_field(p101), p101));
    CHECK_FALSE(cover_check_distance(FFSet({0}, p101), p101));
    // |A| = 65 >= 2 * 101^{3/4}: the cover theorem applies at desk scale
    std::vector<std::uint64_t> first65(65);
    std::iota(first65.begin(), first65.end(), std::uint64_t{0});
    CHECK(cover_check_distance(FFSet(std::move(first65), p101), p101));
}
