#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "falconer/errors.hpp"
#include "falconer/fractal.hpp"
#include "falconer/rng.hpp"

using namespace falconer;
using namespace falconer::fractal;

namespace {
Quadratic3 F(const char* text) { return Quadratic3::from_string(text); }
Rational Q(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }
Interval iv(long long nl, long long dl, long long nh, long long dh) {
    return Interval{Q(nl, dl), Q(nh, dh)};
}
}  // namespace

TEST_CASE("cantor cover examples") {
    IntervalCover thirds1 = cantor_cover({3, {0, 2}, 1});
    REQUIRE(thirds1.size() == 2);
    CHECK(thirds1.intervals()[0].lo == Q(0, 1));
    CHECK(thirds1.intervals()[0].hi == Q(1, 3));
    CHECK(thirds1.intervals()[1].lo == Q(2, 3));
    CHECK(thirds1.intervals()[1].hi == Q(1, 1));

    IntervalCover thirds2 = cantor_cover({3, {0, 2}, 2});
    CHECK(thirds2.size() == 4);
    for (const auto& seg : thirds2.intervals()) CHECK(seg.length() == Q(1, 9));

    IntervalCover full5 = cantor_cover({2, {0, 1}, 5});
    CHECK(full5.size() == 32);
    CHECK(full5.total_length() == Q(1, 1));
    CHECK(cantor_cover({2, {0, 1}, 5}).intervals().front().lo == Q(0, 1));
    CHECK(full5.intervals().back().hi == Q(1, 1));

    CHECK_THROWS_AS(cantor_cover({3, {}, 1}), ValidationError);
    CHECK_THROWS_AS(cantor_cover({3, {3}, 1}), ValidationError);
}

TEST_CASE("cover length and nesting invariants") {
    for (std::uint32_t n = 0; n <= 6; ++n) {
        IntervalCover c = cantor_cover({3, {0, 2}, n});
        CHECK(c.size() == (1u << n));
        CHECK(c.total_length() == Rational::pow(Q(2, 3), n));
    }
    // refinement nesting: every depth-(n+1) interval sits inside one at depth n
    IntervalCover coarse = cantor_cover({3, {0, 2}, 3});
    IntervalCover fine = cantor_cover({3, {0, 2}, 4});
    for (const auto& seg : fine.intervals()) {
        bool inside = false;
        for (const auto& big : coarse.intervals()) {
            if (!(seg.lo < big.lo) && !(big.hi < seg.hi)) {
                inside = true;
                break;
            }
        }
        CHECK(inside);
    }
}

TEST_CASE("cover spec parsing") {
    CHECK(parse_cover_spec("cantor:3:0,2:2").size() == 4);
    CHECK(parse_cover_spec("point:1/2").intervals()[0].lo == Q(1, 2));
    CHECK(parse_cover_spec("cantor:2:0,1:0").intervals()[0].hi == Q(1, 1));
    CHECK_THROWS_AS(parse_cover_spec("nope:1"), ValidationError);
}

TEST_CASE("exact box ranges") {
    // bilinear piece: xy over [0,1]x[0,1] plus z over a point
    Interval r = range_on_box(F("x*y + z"), iv(0, 1, 1, 1), iv(0, 1, 1, 1), iv(0, 1, 0, 1));
    CHECK(r.lo == Q(0, 1));
    CHECK(r.hi == Q(1, 1));

    // square needs the edge vertex, not just corners
    Interval sq = range_on_box(F("x^2"), iv(-1, 1, 2, 1), iv(0, 1, 0, 1), iv(0, 1, 0, 1));
    CHECK(sq.lo == Q(0, 1));
    CHECK(sq.hi == Q(4, 1));

    // saddle xy on [-1,1]^2: corners suffice but interior critical point
    // (0,0) must not shrink the range
    Interval sad = range_on_box(F("x*y"), iv(-1, 1, 1, 1), iv(-1, 1, 1, 1), iv(0, 1, 0, 1));
    CHECK(sad.lo == Q(-1, 1));
    CHECK(sad.hi == Q(1, 1));

    // face critical point: x^2 + y^2 with z pinned
    Interval bowl =
        range_on_box(F("x^2 + y^2 + z"), iv(-1, 1, 2, 1), iv(-1, 1, 3, 1), iv(0, 1, 0, 1));
    CHECK(bowl.lo == Q(0, 1));
    CHECK(bowl.hi == Q(13, 1));

    // degenerate face Hessian: (x-y)^2 attains its minimum on the diagonal
    Interval ridge =
        range_on_box(F("(x-y)^2 + z"), iv(0, 1, 1, 1), iv(0, 1, 1, 1), iv(0, 1, 0, 1));
    CHECK(ridge.lo == Q(0, 1));
    CHECK(ridge.hi == Q(1, 1));
}

TEST_CASE("box range equals dense sampling extrema") {
    SplitMix64 rng(21);
    for (int iter = 0; iter < 40; ++iter) {
        Quadratic3 f;
        Rational* slots[10] = {&f.a, &f.b, &f.c, &f.d, &f.e, &f.g, &f.h, &f.i, &f.j, &f.k0};
        for (Rational* s : slots) *s = Rational(static_cast<long long>(rng.next() % 9) - 4);
        Interval X = iv(-1, 1, 1, 1), Y = iv(0, 1, 2, 1), Z = iv(-1, 2, 1, 2);
        Interval r = range_on_box(f, X, Y, Z);
        // sampled values must stay inside the computed range
        const int steps = 6;
        Rational best_lo, best_hi;
        bool first = true;
        for (int ix = 0; ix <= steps; ++ix)
            for (int iy = 0; iy <= steps; ++iy)
                for (int iz = 0; iz <= steps; ++iz) {
                    Rational x = X.lo + (X.hi - X.lo) * Q(ix, steps);
                    Rational y = Y.lo + (Y.hi - Y.lo) * Q(iy, steps);
                    Rational z = Z.lo + (Z.hi - Z.lo) * Q(iz, steps);
                    Rational v = f.eval(x, y, z);
                    if (first || v < best_lo) best_lo = v;
                    if (first || best_hi < v) best_hi = v;
                    first = false;
                    CHECK(!(v < r.lo));
                    CHECK(!(r.hi < v));
                }
        // and the endpoints are attained up to sampling resolution
        CHECK(!(best_hi < r.lo));
        CHECK(!(r.hi < best_lo));
    }
}

TEST_CASE("image measure examples") {
    IntervalCover pointA({Interval{Q(0, 1), Q(0, 1)}}, false);
    IntervalCover unit({Interval{Q(0, 1), Q(1, 1)}}, false);

    // collapse onto the third set: measure is the cover length of C
    IntervalCover c2 = cantor_cover({3, {0, 2}, 2});
    CHECK(image_measure(F("x*y + z"), pointA, unit, c2) == Q(4, 9));

    CHECK(image_measure(F("x + y + z"), unit, unit, unit) == Q(3, 1));

    IntervalCover pointB({Interval{Q(0, 1), Q(0, 1)}}, false);
    CHECK(image_measure(F("(x-y)^2 + z"), pointA, pointB, unit) == Q(1, 1));
}

TEST_CASE("image measure is monotone under refinement") {
    IntervalCover unit({Interval{Q(0, 1), Q(1, 1)}}, false);
    Quadratic3 f = F("x*y + z");
    Rational prev;
    for (std::uint32_t depth = 0; depth <= 5; ++depth) {
        IntervalCover c = cantor_cover({3, {0, 2}, depth});
        Rational m = image_measure(f, unit, unit, c);
        if (depth > 0) CHECK(!(prev < m));
        prev = m;
    }
}

TEST_CASE("image measure budget") {
    IntervalCover big = cantor_cover({2, {0, 1}, 10});
    CHECK_THROWS_AS(image_measure(F("x*y + z"), big, big, big, /*budget=*/1000), BudgetError);
}

TEST_CASE("near-zero mass basics") {
    IntervalCover unit({Interval{Q(0, 1), Q(1, 1)}}, true);
    SixCovers covers{unit, unit, unit, unit, unit, unit};
    // single box pair, overlapping ranges: mass 1 at eps = 1, ratio 1/eps
    auto row = near_zero_mass(F("x*y + z"), covers, Q(1, 1));
    CHECK(row.mass == Q(1, 1));
    CHECK(row.ratio == Q(1, 1));
    auto row2 = near_zero_mass(F("x*y + z"), covers, Q(1, 4));
    CHECK(row2.mass == Q(1, 1));
    CHECK(row2.ratio == Q(4, 1));
    CHECK_THROWS_AS(near_zero_mass(F("x*y + z"), covers, Q(0, 1)), ValidationError);
}

TEST_CASE("near-zero mass separates distant boxes") {
    // x-covers far apart: the difference f - f' is bounded away from 0
    IntervalCover left({Interval{Q(0, 1), Q(1, 1)}}, true);
    IntervalCover right({Interval{Q(10, 1), Q(11, 1)}}, true);
    IntervalCover point({Interval{Q(0, 1), Q(0, 1)}}, true);
    // f = x + y + z, unprimed in [0,1], primed around 10: gap is 9
    SixCovers covers{left, point, point, right, point, point};
    auto far = near_zero_mass(F("x + y + z"), covers, Q(1, 1));
    CHECK(far.mass == Q(0, 1));
    auto near = near_zero_mass(F("x + y + z"), covers, Q(5, 1));
    CHECK(near.mass == Q(1, 1));
}

TEST_CASE("near-zero mass is nondecreasing in eps and thread-stable") {
    Quadratic3 f = F("x*y + z");
    IntervalCover a = cantor_cover({3, {0, 2}, 3}, true);
    IntervalCover b = cantor_cover({2, {0, 1}, 3}, true);
    SixCovers covers{a, b, b, a, b, b};
    std::vector<Rational> eps = {Q(1, 16), Q(1, 8), Q(1, 4), Q(1, 2)};
    auto rows = near_zero_mass_table(f, covers, eps);
    REQUIRE(rows.size() == 4);
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(!(rows[k].mass < rows[k - 1].mass));
    auto rows4 = near_zero_mass_table(f, covers, eps, kDefaultBoxBudget, 4);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows[k].mass == rows4[k].mass);
        CHECK(rows[k].ratio == rows4[k].ratio);
    }
}

TEST_CASE("threshold chains") {
    CHECK(dimension_threshold(ThresholdChain::preset("distance-a3")) == Q(4, 7));
    CHECK(dimension_threshold(ThresholdChain::preset("equal-dims")) == Q(2, 3));
    CHECK(dimension_threshold(ThresholdChain::preset("trivial")) == Q(1, 1));
    CHECK_THROWS_AS(ThresholdChain::preset("nope"), ValidationError);

    ThresholdChain never;
    never.terms = {ChainTerm::Dim};
    never.rhs = Rational(2);
    CHECK_THROWS_AS(dimension_threshold(never), ValidationError);

    ThresholdChain json = ThresholdChain::from_json_text(
        R"({"terms": ["s", "s", "planar-distance-2s"], "rhs": "2"})");
    CHECK(dimension_threshold(json) == Q(4, 7));

    ThresholdChain zero_rhs;
    zero_rhs.terms = {ChainTerm::Dim};
    zero_rhs.rhs = Rational(0);
    CHECK(dimension_threshold(zero_rhs) == Q(0, 1));
}

TEST_CASE("sharpness decay table") {
    auto rows = sharpness_demo(10);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0].measure == Q(2, 3));
    CHECK(rows[3].measure == Q(16, 81));
    CHECK(rows[9].measure == Q(1024, 59049));
    for (std::uint32_t k = 0; k < rows.size(); ++k)
        CHECK(rows[k].measure == Rational::pow(Q(2, 3), k + 1));
    CHECK(rows[9].measure < Q(1, 50));  // < 0.02
}
