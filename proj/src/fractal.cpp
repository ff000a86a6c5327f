#include "falconer/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "falconer/errors.hpp"

namespace falconer::fractal {

namespace {
constexpr std::uint64_t kMaxCoverIntervals = 1ull << 21;
}

double CantorSpec::dimension() const {
    if (digits.empty()) return 0.0;
    return std::log(static_cast<double>(digits.size())) / std::log(static_cast<double>(base));
}

IntervalCover::IntervalCover(std::vector<Interval> intervals, bool weighted)
    : intervals_(std::move(intervals)), weighted_(weighted) {
    for (std::size_t k = 0; k < intervals_.size(); ++k) {
        if (intervals_[k].hi < intervals_[k].lo)
            throw ValidationError("interval with hi < lo");
        if (k > 0 && intervals_[k].lo < intervals_[k - 1].hi)
            throw ValidationError("cover intervals must not overlap");
    }
}

Rational IntervalCover::weight_per_interval() const {
    if (intervals_.empty()) throw ValidationError("empty cover has no weights");
    return Rational(BigInt(1), BigInt(static_cast<long long>(intervals_.size())));
}

Rational IntervalCover::total_length() const {
    Rational sum(0);
    for (const auto& iv : intervals_) sum += iv.length();
    return sum;
}

IntervalCover cantor_cover(const CantorSpec& spec, bool weighted) {
    if (spec.base < 2) throw ValidationError("cantor base must be at least 2");
    if (spec.digits.empty()) throw ValidationError("cantor digit set must be nonempty");
    std::vector<std::uint32_t> digits = spec.digits;
    std::sort(digits.begin(), digits.end());
    digits.erase(std::unique(digits.begin(), digits.end()), digits.end());
    for (std::uint32_t d : digits) {
        if (d >= spec.base) throw ValidationError("cantor digit out of range for base");
    }

    double approx = std::pow(static_cast<double>(digits.size()), static_cast<double>(spec.depth));
    if (approx > static_cast<double>(kMaxCoverIntervals))
        throw BudgetError("cantor cover interval count", static_cast<std::uint64_t>(approx),
                          kMaxCoverIntervals);

    BigInt denom = BigInt::pow(BigInt(static_cast<long long>(spec.base)), spec.depth);
    std::vector<Interval> out;
    // depth-first in digit order: intervals come out already sorted
    auto gen = [&](auto&& self, std::uint32_t depth_left, const BigInt& prefix) -> void {
        if (depth_left == 0) {
            out.push_back(Interval{Rational(prefix, denom), Rational(prefix + BigInt(1), denom)});
            return;
        }
        for (std::uint32_t d : digits) {
            self(self, depth_left - 1,
                 prefix * BigInt(static_cast<long long>(spec.base)) +
                     BigInt(static_cast<long long>(d)));
        }
    };
    gen(gen, spec.depth, BigInt(0));
    return IntervalCover(std::move(out), weighted);
}

namespace {

std::uint32_t parse_u32_field(const std::string& text, const char* what) {
    if (text.empty()) throw ValidationError(std::string("empty ") + what + " in cover spec");
    std::uint64_t v = 0;
    for (char c : text) {
        if (c < '0' || c > '9')
            throw ValidationError(std::string("invalid ") + what + " '" + text +
                                  "' in cover spec");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
        if (v > 0xffffffffull)
            throw ValidationError(std::string(what) + " out of range in cover spec");
    }
    return static_cast<std::uint32_t>(v);
}

}  // namespace

IntervalCover parse_cover_spec(std::string_view text, bool weighted) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t colon = text.find(':', start);
        if (colon == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            break;
        }
        parts.emplace_back(text.substr(start, colon - start));
        start = colon + 1;
    }
    if (parts.empty()) throw ValidationError("empty cover spec");
    if (parts[0] == "point") {
        if (parts.size() != 2) throw ValidationError("point cover: point:<rational>");
        Rational v = Rational::from_string(parts[1]);
        return IntervalCover({Interval{v, v}}, weighted);
    }
    if (parts[0] == "cantor") {
        if (parts.size() != 4)
            throw ValidationError("cantor cover: cantor:<base>:<d0,d1,...>:<depth>");
        CantorSpec spec;
        spec.base = parse_u32_field(parts[1], "base");
        std::size_t pos = 0;
        while (pos < parts[2].size()) {
            std::size_t comma = parts[2].find(',', pos);
            std::string piece = comma == std::string::npos ? parts[2].substr(pos)
                                                           : parts[2].substr(pos, comma - pos);
            spec.digits.push_back(parse_u32_field(piece, "digit"));
            pos = comma == std::string::npos ? parts[2].size() : comma + 1;
        }
        spec.depth = parse_u32_field(parts[3], "depth");
        return cantor_cover(spec, weighted);
    }
    throw ValidationError("unknown cover spec '" + parts[0] + "' (expected cantor or point)");
}

// ---------------------------------------------------------------------------
// exact quadratic range over a box

namespace {

bool in_closed(const Rational& v, const Interval& iv) { return !(v < iv.lo) && !(iv.hi < v); }
bool in_open(const Rational& v, const Interval& iv) { return iv.lo < v && v < iv.hi; }

struct RangeTracker {
    bool any = false;
    Rational lo, hi;
    void feed(const Rational& v) {
        if (!any) {
            lo = hi = v;
            any = true;
            return;
        }
        if (v < lo) lo = v;
        if (hi < v) hi = v;
    }
};

// 2x2 Cramer: [p q; r s] [u; v] = [t1; t2]
bool solve2(const Rational& p, const Rational& q, const Rational& r, const Rational& s,
            const Rational& t1, const Rational& t2, Rational& u, Rational& v) {
    Rational det = p * s - q * r;
    if (det.is_zero()) return false;
    u = (t1 * s - q * t2) / det;
    v = (p * t2 - t1 * r) / det;
    return true;
}

}  // namespace

Interval range_on_box(const Quadratic3& f, const Interval& X, const Interval& Y,
                      const Interval& Z) {
    RangeTracker range;
    const Rational two(2);
    const std::array<const Rational*, 2> xs{&X.lo, &X.hi}, ys{&Y.lo, &Y.hi}, zs{&Z.lo, &Z.hi};

    for (const Rational* x : xs)
        for (const Rational* y : ys)
            for (const Rational* z : zs) range.feed(f.eval(*x, *y, *z));

    // edge interior vertices: one variable free, two pinned at bounds
    if (!f.d.is_zero()) {
        for (const Rational* y : ys)
            for (const Rational* z : zs) {
                Rational x = -(f.a * *y + f.b * *z + f.h) / (two * f.d);
                if (in_open(x, X)) range.feed(f.eval(x, *y, *z));
            }
    }
    if (!f.e.is_zero()) {
        for (const Rational* x : xs)
            for (const Rational* z : zs) {
                Rational y = -(f.a * *x + f.c * *z + f.i) / (two * f.e);
                if (in_open(y, Y)) range.feed(f.eval(*x, y, *z));
            }
    }
    if (!f.g.is_zero()) {
        for (const Rational* x : xs)
            for (const Rational* y : ys) {
                Rational z = -(f.b * *x + f.c * *y + f.j) / (two * f.g);
                if (in_open(z, Z)) range.feed(f.eval(*x, *y, z));
            }
    }

    // face interior critical points: one variable pinned
    {
        Rational y, z;
        for (const Rational* x : xs) {
            if (solve2(two * f.e, f.c, f.c, two * f.g, -(f.a * *x + f.i), -(f.b * *x + f.j), y,
                       z) &&
                in_closed(y, Y) && in_closed(z, Z))
                range.feed(f.eval(*x, y, z));
        }
        Rational x;
        for (const Rational* yv : ys) {
            if (solve2(two * f.d, f.b, f.b, two * f.g, -(f.a * *yv + f.h), -(f.c * *yv + f.j), x,
                       z) &&
                in_closed(x, X) && in_closed(z, Z))
                range.feed(f.eval(x, *yv, z));
        }
        for (const Rational* zv : zs) {
            if (solve2(two * f.d, f.a, f.a, two * f.e, -(f.b * *zv + f.h), -(f.c * *zv + f.i), x,
                       y) &&
                in_closed(x, X) && in_closed(y, Y))
                range.feed(f.eval(x, y, *zv));
        }
    }

    // interior critical point: 3x3 Cramer on the gradient system
    {
        const Rational m00 = two * f.d, m01 = f.a, m02 = f.b;
        const Rational m10 = f.a, m11 = two * f.e, m12 = f.c;
        const Rational m20 = f.b, m21 = f.c, m22 = two * f.g;
        auto det3 = [](const Rational& a00, const Rational& a01, const Rational& a02,
                       const Rational& a10, const Rational& a11, const Rational& a12,
                       const Rational& a20, const Rational& a21, const Rational& a22) {
            return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
                   a02 * (a10 * a21 - a11 * a20);
        };
        Rational det = det3(m00, m01, m02, m10, m11, m12, m20, m21, m22);
        if (!det.is_zero()) {
            Rational b0 = -f.h, b1 = -f.i, b2 = -f.j;
            Rational x = det3(b0, m01, m02, b1, m11, m12, b2, m21, m22) / det;
            Rational y = det3(m00, b0, m02, m10, b1, m12, m20, b2, m22) / det;
            Rational z = det3(m00, m01, b0, m10, m11, b1, m20, m21, b2) / det;
            if (in_closed(x, X) && in_closed(y, Y) && in_closed(z, Z))
                range.feed(f.eval(x, y, z));
        }
    }

    return Interval{range.lo, range.hi};
}

// ---------------------------------------------------------------------------
// measure of the image

namespace {

struct BoxGrid {
    const IntervalCover *A, *B, *C;
    std::size_t size() const { return A->size() * B->size() * C->size(); }
    void unpack(std::size_t idx, std::size_t& ia, std::size_t& ib, std::size_t& ic) const {
        ic = idx % C->size();
        idx /= C->size();
        ib = idx % B->size();
        ia = idx / B->size();
    }
};

std::vector<Interval> ranges_of_grid(const Quadratic3& f, const BoxGrid& grid, unsigned threads) {
    std::vector<Interval> ranges(grid.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t idx = lo; idx < hi; ++idx) {
            std::size_t ia, ib, ic;
            grid.unpack(idx, ia, ib, ic);
            ranges[idx] = range_on_box(f, grid.A->intervals()[ia], grid.B->intervals()[ib],
                                       grid.C->intervals()[ic]);
        }
    };
    if (threads <= 1 || grid.size() < 2 * threads) {
        work(0, grid.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (grid.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t lo = std::min(static_cast<std::size_t>(t) * chunk, grid.size());
            std::size_t hi = std::min(lo + chunk, grid.size());
            pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return ranges;
}

void check_box_budget(std::uint64_t count, std::uint64_t budget) {
    if (count > budget) throw BudgetError("box evaluation count", count, budget);
}

}  // namespace

Rational image_measure(const Quadratic3& f, const IntervalCover& A, const IntervalCover& B,
                       const IntervalCover& C, std::uint64_t budget, unsigned threads) {
    if (A.size() == 0 || B.size() == 0 || C.size() == 0)
        throw ValidationError("image_measure needs nonempty covers");
    BoxGrid grid{&A, &B, &C};
    check_box_budget(grid.size(), budget);
    std::vector<Interval> ranges = ranges_of_grid(f, grid, threads);

    std::sort(ranges.begin(), ranges.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    Rational total(0);
    Rational cur_lo = ranges[0].lo, cur_hi = ranges[0].hi;
    for (std::size_t k = 1; k < ranges.size(); ++k) {
        if (ranges[k].lo < cur_hi || ranges[k].lo == cur_hi) {
            if (cur_hi < ranges[k].hi) cur_hi = ranges[k].hi;
        } else {
            total += cur_hi - cur_lo;
            cur_lo = ranges[k].lo;
            cur_hi = ranges[k].hi;
        }
    }
    total += cur_hi - cur_lo;
    return total;
}

// ---------------------------------------------------------------------------
// near-zero mass of f(x,y,z) - f(x',y',z')

namespace {

bool covers_equal(const IntervalCover& a, const IntervalCover& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!(a.intervals()[k].lo == b.intervals()[k].lo) ||
            !(a.intervals()[k].hi == b.intervals()[k].hi))
            return false;
    }
    return true;
}

// number of pairs (u, w) with w.lo > u.hi + gap, via sorted lows
std::uint64_t count_separated(const std::vector<Interval>& us, const std::vector<Rational>& w_lo,
                              const Rational& gap) {
    std::uint64_t total = 0;
    for (const Interval& u : us) {
        Rational bound = u.hi + gap;
        auto it = std::upper_bound(w_lo.begin(), w_lo.end(), bound);
        total += static_cast<std::uint64_t>(w_lo.end() - it);
    }
    return total;
}

}  // namespace

std::vector<NearZeroMass> near_zero_mass_table(const Quadratic3& f, const SixCovers& covers,
                                               const std::vector<Rational>& eps_values,
                                               std::uint64_t budget, unsigned threads) {
    for (const Rational& eps : eps_values)
        if (!(Rational(0) < eps)) throw ValidationError("epsilon must be positive");

    BoxGrid gu{&covers.x, &covers.y, &covers.z};
    BoxGrid gv{&covers.xp, &covers.yp, &covers.zp};
    if (gu.size() == 0 || gv.size() == 0) throw ValidationError("empty cover");
    check_box_budget(std::max(gu.size(), gv.size()), budget);

    std::vector<Interval> ru = ranges_of_grid(f, gu, threads);
    bool same = covers_equal(covers.x, covers.xp) && covers_equal(covers.y, covers.yp) &&
                covers_equal(covers.z, covers.zp);
    std::vector<Interval> rv = same ? ru : ranges_of_grid(f, gv, threads);

    std::vector<Rational> u_lo(ru.size()), v_lo(rv.size());
    for (std::size_t k = 0; k < ru.size(); ++k) u_lo[k] = ru[k].lo;
    for (std::size_t k = 0; k < rv.size(); ++k) v_lo[k] = rv[k].lo;
    std::sort(u_lo.begin(), u_lo.end());
    std::sort(v_lo.begin(), v_lo.end());

    BigInt pair_count = BigInt(static_cast<long long>(ru.size())) *
                        BigInt(static_cast<long long>(rv.size()));

    std::vector<NearZeroMass> out;
    out.reserve(eps_values.size());
    for (const Rational& eps : eps_values) {
        Rational gap = Rational(2) * eps;
        // a pair is excluded iff one range sits more than 2*eps above the other;
        // the two exclusion events cannot both happen
        std::uint64_t separated = count_separated(ru, v_lo, gap) + count_separated(rv, u_lo, gap);
        Rational excluded(BigInt(static_cast<long long>(separated)), pair_count);
        NearZeroMass row;
        row.mass = Rational(1) - excluded;
        row.ratio = row.mass / eps;
        out.push_back(std::move(row));
    }
    return out;
}

NearZeroMass near_zero_mass(const Quadratic3& f, const SixCovers& covers, const Rational& eps,
                            std::uint64_t budget, unsigned threads) {
    return near_zero_mass_table(f, covers, {eps}, budget, threads)[0];
}

// ---------------------------------------------------------------------------
// threshold arithmetic

namespace {

// exact value of one chain term at s (right-continuous at the branch point)
Rational term_value(ChainTerm t, const Rational& s) {
    switch (t) {
        case ChainTerm::Dim: return s;
        case ChainTerm::Zero: return Rational(0);
        case ChainTerm::PlanarDistanceOf2s: {
            Rational half(BigInt(1), BigInt(2));
            if (!(half < s)) return Rational(0);  // planar bound needs dim > 1
            Rational lin = Rational(BigInt(8), BigInt(3)) * s - Rational(BigInt(2), BigInt(3));
            Rational one(1);
            return lin < one ? lin : one;
        }
    }
    throw std::logic_error("unhandled chain term");
}

std::vector<Rational> term_breakpoints(ChainTerm t) {
    switch (t) {
        case ChainTerm::Dim:
        case ChainTerm::Zero: return {};
        case ChainTerm::PlanarDistanceOf2s:
            return {Rational(BigInt(1), BigInt(2)), Rational(BigInt(5), BigInt(8))};
    }
    return {};
}

std::string term_name(ChainTerm t) {
    switch (t) {
        case ChainTerm::Dim: return "s";
        case ChainTerm::Zero: return "zero";
        case ChainTerm::PlanarDistanceOf2s: return "planar-distance-2s";
    }
    return "?";
}

ChainTerm term_from_name(const std::string& name) {
    if (name == "s") return ChainTerm::Dim;
    if (name == "zero" || name == "0") return ChainTerm::Zero;
    if (name == "planar-distance-2s") return ChainTerm::PlanarDistanceOf2s;
    throw ValidationError("unknown chain term: " + name +
                          " (expected s, zero, or planar-distance-2s)");
}

}  // namespace

ThresholdChain ThresholdChain::preset(const std::string& name) {
    ThresholdChain chain;
    chain.rhs = Rational(2);
    if (name == "distance-a3") {
        chain.terms = {ChainTerm::Dim, ChainTerm::Dim, ChainTerm::PlanarDistanceOf2s};
        return chain;
    }
    if (name == "equal-dims") {
        chain.terms = {ChainTerm::Dim, ChainTerm::Dim, ChainTerm::Dim};
        return chain;
    }
    if (name == "trivial") {
        chain.terms = {ChainTerm::Dim, ChainTerm::Dim, ChainTerm::Zero};
        return chain;
    }
    throw ValidationError("unknown chain preset: " + name +
                          " (expected distance-a3, equal-dims, or trivial)");
}

ThresholdChain ThresholdChain::from_json_text(std::string_view json_text) {
    nlohmann::json doc = nlohmann::json::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) throw ValidationError("chain file is not valid JSON");
    ThresholdChain chain;
    if (!doc.contains("terms") || !doc["terms"].is_array())
        throw ValidationError("chain JSON needs a \"terms\" array");
    for (const auto& t : doc["terms"]) {
        if (!t.is_string()) throw ValidationError("chain terms must be strings");
        chain.terms.push_back(term_from_name(t.get<std::string>()));
    }
    if (doc.contains("rhs")) {
        if (!doc["rhs"].is_string())
            throw ValidationError("chain rhs must be a rational string like \"2\"");
        chain.rhs = Rational::from_string(doc["rhs"].get<std::string>());
    } else {
        chain.rhs = Rational(2);
    }
    return chain;
}

std::string ThresholdChain::describe() const {
    std::string out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        if (k) out += " + ";
        out += term_name(terms[k]);
    }
    out += " = " + rhs.to_string();
    return out;
}

Rational dimension_threshold(const ThresholdChain& chain) {
    if (chain.terms.empty()) throw ValidationError("empty threshold chain");
    auto value_at = [&](const Rational& s) {
        Rational v(0);
        for (ChainTerm t : chain.terms) v += term_value(t, s);
        return v;
    };

    std::vector<Rational> points{Rational(0), Rational(1)};
    for (ChainTerm t : chain.terms)
        for (const Rational& b : term_breakpoints(t)) points.push_back(b);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    Rational third(BigInt(1), BigInt(3));
    if (!(value_at(Rational(0)) < chain.rhs)) return Rational(0);

    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        const Rational& lo = points[k];
        const Rational& hi = points[k + 1];
        // interpolate the linear piece from two interior samples
        Rational s0 = lo + (hi - lo) * third;
        Rational s1 = lo + (hi - lo) * (third + third);
        Rational f0 = value_at(s0), f1 = value_at(s1);
        Rational slope = (f1 - f0) / (s1 - s0);
        Rational intercept = f0 - slope * s0;
        Rational at_lo = slope * lo + intercept;  // right limit at lo
        Rational at_hi = slope * hi + intercept;

        if (!(at_lo < chain.rhs)) return lo;  // crossed at a jump
        if (!(at_hi < chain.rhs)) {
            // at_lo < rhs <= at_hi forces a strictly positive slope
            return (chain.rhs - intercept) / slope;
        }
    }
    throw ValidationError("inconsistent chain: sum never reaches " + chain.rhs.to_string() +
                          " on [0, 1]");
}

std::vector<SharpnessRow> sharpness_demo(std::uint32_t max_depth) {
    if (max_depth < 1) throw ValidationError("sharpness table needs depth >= 1");
    Quadratic3 f;  // xy + z
    f.a = Rational(1);
    f.j = Rational(1);
    IntervalCover point_a({Interval{Rational(0), Rational(0)}}, false);
    IntervalCover unit_b({Interval{Rational(0), Rational(1)}}, false);
    std::vector<SharpnessRow> rows;
    for (std::uint32_t n = 1; n <= max_depth; ++n) {
        CantorSpec spec{3, {0, 2}, n};
        IntervalCover cover_c = cantor_cover(spec);
        rows.push_back(SharpnessRow{n, image_measure(f, point_a, unit_b, cover_c)});
    }
    return rows;
}

}  // namespace falconer::fractal
