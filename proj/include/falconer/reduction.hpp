#pragma once

#include <array>
#include <optional>
#include <string>

#include "falconer/mpoly.hpp"
#include "falconer/quadratic.hpp"

namespace falconer {

/// The line p*y + q*z = r0 in the (y, z) plane.
struct Line {
    Rational p, q, r0;
    std::string to_string() const;
};

/// Assigns six concrete variable names to the slots (u1, u2, u3, v1, v2, v3)
/// of a curvature check. Defaults to the slot names themselves.
struct SplitSpec {
    std::array<std::string, 6> slots{"u1", "u2", "u3", "v1", "v2", "v3"};
    static SplitSpec identity() { return SplitSpec{}; }
};

/// Derived facts for the no-line branch of the bad-set analysis
/// (cross-slot combination b*c - 2*a*g = 0). If the fiber quadratic
/// degenerates identically, the coefficient identities i*b = j*a and
/// 4*e*g = c^2 are forced, so under the lemma hypothesis (one of them
/// fails) every fiber stays finite.
struct CaseTwoCertificate {
    bool quad_coeff_zero;    // b^2 e - a b c + a^2 g == 0
    bool lin_coeff_zero;     // i b == j a  (the v part vanished with bc - 2ag)
    bool derived_4eg_eq_c2;  // 4 e g == c^2, checked exactly
    bool fiber_bounded;      // not (quad_coeff_zero && lin_coeff_zero)
};

struct BadSetResult {
    std::optional<Line> line;                       // present iff bc - 2ag != 0
    std::optional<CaseTwoCertificate> certificate;  // present iff bc - 2ag == 0
};

/// The reduction data for a Falconer-type quadratic: the fixed bilinear
/// form psi over (u1,u2,u3,v1,v2,v3), the two lifting maps as polynomial
/// triples, the optional bad-set line, and the bordered-determinant value.
struct Reduction {
    MPoly psi;
    std::array<MPoly, 3> f1;  // components over (x, yp, z) or (x, yp, zp)
    std::array<MPoly, 3> f2;  // components over (xp, y, zp) or (xp, y, z)
    LemmaCase lemma_case;
    std::optional<Line> bad_set;
    MPoly ma_det;

    /// psi composed with (f1, f2) minus (f(x,y,z) - f(xp,yp,zp));
    /// the zero polynomial when the construction is correct.
    MPoly identity_defect(const Quadratic3& f) const;
};

/// Builds the reduction for a quadratic already in lemma shape:
/// TwoCrossTerms requires c = 0 and a != 0; AllCrossTerms requires
/// a, b, c all nonzero. Throws on degenerate or missing-variable input.
Reduction build_reduction(const Quadratic3& f, const Classification& cls);

/// Bad-set line for an AllCrossTerms quadratic, or the no-line
/// certificate when bc - 2ag = 0.
BadSetResult bad_set(const Quadratic3& f);

/// Bordered determinant
///   det [ 0        grad_u psi ]
///       [ -grad_v  d2 psi/du dv ]
/// with slots taken from the split. Throws if psi involves a variable
/// outside the split.
MPoly monge_ampere(const MPoly& psi, const SplitSpec& split = SplitSpec::identity());

struct FiberCount {
    bool infinite = false;
    int count = 0;  // meaningful when !infinite
};

/// Number of rational solutions yp of the fiber quadratic of an
/// AllCrossTerms f at image point (u, v, w); infinite only when all
/// three coefficients vanish.
FiberCount fiber_count(const Quadratic3& f, const Rational& u, const Rational& v,
                       const Rational& w);

}  // namespace falconer
