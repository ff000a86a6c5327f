#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "falconer/quadratic.hpp"
#include "falconer/rational.hpp"

namespace falconer::fractal {

/// Base-b digit-restricted Cantor construction of prescribed dimension
/// log|D| / log b, truncated at a finite depth.
struct CantorSpec {
    std::uint32_t base = 3;
    std::vector<std::uint32_t> digits;  // nonempty subset of {0..base-1}
    std::uint32_t depth = 0;

    double dimension() const;
};

struct Interval {
    Rational lo, hi;  // lo <= hi; degenerate (point) intervals allowed
    Rational length() const { return hi - lo; }
};

/// Sorted intervals with pairwise non-overlapping interiors; optionally
/// weighted uniformly (mass 1/count each) as a Frostman-style surrogate.
class IntervalCover {
  public:
    IntervalCover() = default;
    IntervalCover(std::vector<Interval> intervals, bool weighted);

    const std::vector<Interval>& intervals() const { return intervals_; }
    std::size_t size() const { return intervals_.size(); }
    bool weighted() const { return weighted_; }
    Rational weight_per_interval() const;  // 1/count
    Rational total_length() const;

  private:
    std::vector<Interval> intervals_;
    bool weighted_ = false;
};

/// The depth-n generator intervals of the construction: |D|^n intervals
/// of length b^-n with rational endpoints, in increasing order.
IntervalCover cantor_cover(const CantorSpec& spec, bool weighted = false);

/// Cover grammar for the CLI and reports:
///   "cantor:<base>:<d0,d1,...>:<depth>"  digit-restricted cover
///   "point:<rational>"                   single degenerate interval
IntervalCover parse_cover_spec(std::string_view text, bool weighted = false);

/// Exact range [min, max] of the quadratic on the box X x Y x Z.
/// Since the box is connected, this interval IS the image.
Interval range_on_box(const Quadratic3& f, const Interval& X, const Interval& Y,
                      const Interval& Z);

inline constexpr std::uint64_t kDefaultBoxBudget = 100'000'000ull;

/// Exact Lebesgue measure of f(union A x union B x union C): per-box
/// exact ranges, then an exact sort-and-sweep union length.
Rational image_measure(const Quadratic3& f, const IntervalCover& A, const IntervalCover& B,
                       const IntervalCover& C, std::uint64_t budget = kDefaultBoxBudget,
                       unsigned threads = 1);

struct NearZeroMass {
    Rational mass;   // product weight of box pairs where |f - f'| <= 2 eps is possible
    Rational ratio;  // mass / eps
};

struct SixCovers {
    IntervalCover x, y, z, xp, yp, zp;
};

/// Discrete surrogate of the measure of {|f(x,y,z) - f(x',y',z')| <= 2 eps}
/// under the product of uniform cover weights. A box pair counts iff the
/// gap between the two exact f-ranges is at most 2 eps.
NearZeroMass near_zero_mass(const Quadratic3& f, const SixCovers& covers, const Rational& eps,
                            std::uint64_t budget = kDefaultBoxBudget, unsigned threads = 1);

/// Same computation over several eps values, computing box ranges once.
std::vector<NearZeroMass> near_zero_mass_table(const Quadratic3& f, const SixCovers& covers,
                                               const std::vector<Rational>& eps_values,
                                               std::uint64_t budget = kDefaultBoxBudget,
                                               unsigned threads = 1);

// ---------------------------------------------------------------------------
// dimension-threshold arithmetic (exact rationals end to end)

enum class ChainTerm {
    Dim,                 // the unknown dimension s itself
    Zero,                // trivial lower bound 0
    PlanarDistanceOf2s,  // min(4/3 * (2s) - 2/3, 1) for a planar set of
                         // dimension 2s > 1, with the squared-distance
                         // dimension-preservation step folded in
};

struct ThresholdChain {
    std::vector<ChainTerm> terms;
    Rational rhs;  // solve sum of terms = rhs

    static ThresholdChain preset(const std::string& name);
    static ThresholdChain from_json_text(std::string_view json_text);
    std::string describe() const;
};

/// Exact rational threshold: the smallest s in [0, 1] with
/// sum(terms at s) >= rhs, found piecewise. Throws if the chain never
/// reaches rhs on [0, 1].
Rational dimension_threshold(const ThresholdChain& chain);

struct SharpnessRow {
    std::uint32_t depth;
    Rational measure;  // image measure of xy+z over {0} x [0,1] x middle-thirds cover
};

/// Decay table for the boundary configuration: the image collapses onto
/// the third set, so the measure is exactly (2/3)^n at depth n.
std::vector<SharpnessRow> sharpness_demo(std::uint32_t max_depth);

}  // namespace falconer::fractal
