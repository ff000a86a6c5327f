#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "falconer/rational.hpp"

namespace falconer {

/// Exponent vector; length always equals the owning polynomial's
/// variable count. Compared graded-lexicographically.
using Monomial = std::vector<std::uint32_t>;

struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over the exact rationals.
///
/// Variables are identified by name and kept sorted; binary operations
/// align the two variable universes automatically. No zero coefficient
/// is ever stored, so structural equality after alignment is semantic
/// equality. All arithmetic is exact.
class MPoly {
  public:
    using TermMap = std::map<Monomial, Rational, GradedLexLess>;

    MPoly() = default;
    static MPoly zero() { return MPoly{}; }
    static MPoly constant(Rational c);
    static MPoly variable(const std::string& name);

    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()
    std::uint32_t total_degree() const;

    MPoly operator-() const;
    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    friend MPoly operator*(const Rational& c, const MPoly& p);
    static MPoly pow(const MPoly& base, std::uint32_t exp);

    friend bool operator==(const MPoly& a, const MPoly& b);

    /// Formal partial derivative. Throws if var is not in the universe.
    MPoly derivative(const std::string& var) const;

    /// Composition: replaces bound variables by polynomials, leaves the
    /// rest alone. Exact, a ring homomorphism.
    MPoly substitute(const std::map<std::string, MPoly>& bindings) const;

    /// Evaluates at a full rational point; every variable must be bound.
    Rational eval(const std::map<std::string, Rational>& point) const;

    /// Coefficient of the given monomial in the given variables
    /// (variables absent from the universe must carry exponent 0).
    Rational coefficient(const std::map<std::string, std::uint32_t>& monomial) const;

    /// Canonical string, terms in descending graded-lex order.
    std::string to_string() const;

    friend std::ostream& operator<<(std::ostream& os, const MPoly& p);

  private:
    std::vector<std::string> vars_;  // sorted, unique
    TermMap terms_;

    void insert_term(Monomial m, Rational c);
    MPoly remapped(const std::vector<std::string>& universe) const;
    static std::vector<std::string> merge_universes(const std::vector<std::string>& a,
                                                    const std::vector<std::string>& b);
    friend void align(const MPoly& a, const MPoly& b, MPoly& a2, MPoly& b2);
};

/// Parses the ASCII polynomial grammar: identifiers as variables, `^`
/// for powers, integer or integer/integer coefficients, `*` optional
/// between a coefficient and a variable, parentheses allowed.
MPoly parse_poly(std::string_view text);

using PolyMatrix = std::vector<std::vector<MPoly>>;

/// Exact determinant: cofactor expansion for n <= 4, fraction-free
/// Bareiss elimination above. Throws on a non-square matrix.
MPoly determinant(const PolyMatrix& m);

/// Exact quotient p/d; throws if d does not divide p exactly.
MPoly divide_exact(const MPoly& p, const MPoly& d);

}  // namespace falconer
