#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "falconer/quadratic.hpp"
#include "falconer/rng.hpp"

namespace falconer::ff {

bool is_prime_u64(std::uint64_t n);

/// Prime field F_p, p a word-size prime (checked on construction).
struct PrimeField {
    std::uint64_t p;
    explicit PrimeField(std::uint64_t modulus);

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p || s < a ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;  // a != 0
    std::uint64_t smallest_primitive_root() const;
};

/// Sorted duplicate-free set of residues in [0, p).
class FFSet {
  public:
    FFSet() = default;
    /// Validates sortedness, uniqueness, and range.
    FFSet(std::vector<std::uint64_t> sorted_elems, const PrimeField& field);
    static FFSet from_unsorted(std::vector<std::uint64_t> elems, const PrimeField& field);

    const std::vector<std::uint64_t>& elems() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool contains(std::uint64_t v) const;

    friend bool operator==(const FFSet&, const FFSet&) = default;

  private:
    std::vector<std::uint64_t> elems_;
};

/// Quadratic3 with coefficients reduced mod p. Throws if p divides a
/// coefficient denominator.
struct QuadraticMod {
    std::uint64_t a, b, c, d, e, g, h, i, j, k0;
    static QuadraticMod reduce(const Quadratic3& f, const PrimeField& field);
    std::uint64_t eval(std::uint64_t x, std::uint64_t y, std::uint64_t z,
                       const PrimeField& field) const;
};

inline constexpr std::uint64_t kDefaultBudget = 1'000'000'000ull;

/// Exactly { f(x,y,z) mod p : (x,y,z) in A x B x C }. Deterministic for
/// any thread count. Throws BudgetError if |A||B||C| exceeds the budget.
FFSet image_set(const QuadraticMod& f, const FFSet& A, const FFSet& B, const FFSet& C,
                const PrimeField& field, std::uint64_t budget = kDefaultBudget,
                unsigned threads = 1);

enum class SetFamily { UniformRandom, Interval, Geometric };

SetFamily family_from_name(const std::string& name);
std::string family_name(SetFamily f);

/// Draws one size-N set of the family from the given stream.
FFSet draw_set(SetFamily family, std::uint64_t n, const PrimeField& field, SplitMix64& rng);

struct CensusRow {
    std::uint64_t p;
    std::uint64_t n;
    SetFamily family;
    std::uint64_t seed;
    std::uint64_t trial;
    std::uint64_t image_size;
    double ratio;             // image_size / min(N^{3/2}, p)
    std::string ratio_exact;  // exact when the bound is p, else sqrt(q) form
};

struct CensusReport {
    std::vector<CensusRow> rows;  // sorted by (image_size, trial)
};

/// Seeded census of image sizes: per trial, draws A, B, C of size N and
/// records |f(A,B,C)| against min(N^{3/2}, p). Trial t uses the RNG
/// stream (seed, t), so results do not depend on the thread count.
CensusReport expander_census(const Quadratic3& f, const PrimeField& field, std::uint64_t n,
                             std::uint64_t trials, SetFamily family, std::uint64_t seed,
                             std::uint64_t budget = kDefaultBudget, unsigned threads = 1);

/// True iff { (x-y)^2 + (z-t)^2 : x,y,z,t in A } covers all of F_p.
/// Runs in O(|A|^2 + p * |squared differences|) via a histogram of
/// (x-y)^2 values and a p-length merge, never enumerating quadruples.
bool cover_check_distance(const FFSet& A, const PrimeField& field);

}  // namespace falconer::ff
