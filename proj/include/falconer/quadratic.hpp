#pragma once

#include <array>
#include <optional>
#include <string>

#include "falconer/mpoly.hpp"
#include "falconer/rational.hpp"

namespace falconer {

/// A trivariate quadratic with rational coefficients:
///   f = a*xy + b*xz + c*yz + d*x^2 + e*y^2 + g*z^2 + h*x + i*y + j*z + k0
struct Quadratic3 {
    Rational a, b, c, d, e, g, h, i, j, k0;

    bool is_constant() const;
    Rational eval(const Rational& x, const Rational& y, const Rational& z) const;

    MPoly to_mpoly(const std::string& xn = "x", const std::string& yn = "y",
                   const std::string& zn = "z") const;
    /// Extracts the ten coefficients; throws if the polynomial has degree
    /// above two or variables outside {x, y, z}.
    static Quadratic3 from_mpoly(const MPoly& p);
    static Quadratic3 from_string(std::string_view text);

    friend bool operator==(const Quadratic3&, const Quadratic3&) = default;
};

/// Maps variable slots: result(w0,w1,w2) = f(w[perm[0]], w[perm[1]], w[perm[2]]).
using Perm3 = std::array<int, 3>;

Quadratic3 permuted(const Quadratic3& f, const Perm3& perm);

/// True per slot iff the formal partial derivative in that variable is nonzero.
std::array<bool, 3> depends_on_all(const Quadratic3& f);

/// Witness for a degenerate quadratic: either f is already additive
/// (h(x)+k(y)+l(z)), or f = alpha*w^2 + beta*w + gamma with
/// w = h1*x + k1*y + l1*z.
struct DegenerateWitness {
    bool additive = false;
    Rational alpha, beta, gamma;
    Rational h1, k1, l1;
};

/// Exact re-expansion check of a witness against f.
bool verify_witness(const Quadratic3& f, const DegenerateWitness& w);

enum class Verdict { MissingVariable, DegenerateAdditive, DegenerateSquare, FalconerType };
enum class LemmaCase { TwoCrossTerms, AllCrossTerms };

struct Classification {
    Verdict verdict;
    std::array<bool, 3> depends{true, true, true};
    std::optional<DegenerateWitness> witness;        // DegenerateSquare / DegenerateAdditive
    std::optional<LemmaCase> lemma_case;             // FalconerType
    std::optional<Perm3> permutation;                // TwoCrossTerms: maps f into lemma shape
    bool is_degenerate() const {
        return verdict == Verdict::DegenerateAdditive || verdict == Verdict::DegenerateSquare;
    }
};

/// Decides missing-variable / degenerate / Falconer-type for a nonconstant
/// quadratic. Degenerate-square verdicts always carry a verified witness;
/// TwoCrossTerms verdicts carry a permutation that moves the nonzero cross
/// coefficient into the xy slot and zeroes the yz slot.
Classification classify(const Quadratic3& f);

/// Independent brute-force test used as the classifier's oracle: solves for
/// a candidate witness directly from the coefficient slots and re-expands,
/// with no shortcut conditions. Requires f to depend on all three variables.
bool oracle_is_degenerate(const Quadratic3& f);

std::string verdict_name(Verdict v);
std::string lemma_case_name(LemmaCase c);

}  // namespace falconer
