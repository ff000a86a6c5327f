#include "falconer/quadratic.hpp"

#include <algorithm>

#include "falconer/errors.hpp"

namespace falconer {

bool Quadratic3::is_constant() const {
    return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero() && e.is_zero() &&
           g.is_zero() && h.is_zero() && i.is_zero() && j.is_zero();
}

Rational Quadratic3::eval(const Rational& x, const Rational& y, const Rational& z) const {
    return a * x * y + b * x * z + c * y * z + d * x * x + e * y * y + g * z * z + h * x +
           i * y + j * z + k0;
}

MPoly Quadratic3::to_mpoly(const std::string& xn, const std::string& yn,
                           const std::string& zn) const {
    MPoly X = MPoly::variable(xn), Y = MPoly::variable(yn), Z = MPoly::variable(zn);
    return a * (X * Y) + b * (X * Z) + c * (Y * Z) + d * (X * X) + e * (Y * Y) + g * (Z * Z) +
           h * X + i * Y + j * Z + MPoly::constant(k0);
}

Quadratic3 Quadratic3::from_mpoly(const MPoly& p) {
    for (const auto& v : p.variables()) {
        if (v != "x" && v != "y" && v != "z")
            throw ValidationError("expected a polynomial in x, y, z; found variable " + v);
    }
    if (p.total_degree() > 2) throw ValidationError("polynomial has degree above two");
    auto coef = [&](std::uint32_t ex, std::uint32_t ey, std::uint32_t ez) {
        return p.coefficient({{"x", ex}, {"y", ey}, {"z", ez}});
    };
    Quadratic3 q;
    q.a = coef(1, 1, 0);
    q.b = coef(1, 0, 1);
    q.c = coef(0, 1, 1);
    q.d = coef(2, 0, 0);
    q.e = coef(0, 2, 0);
    q.g = coef(0, 0, 2);
    q.h = coef(1, 0, 0);
    q.i = coef(0, 1, 0);
    q.j = coef(0, 0, 1);
    q.k0 = coef(0, 0, 0);
    return q;
}

Quadratic3 Quadratic3::from_string(std::string_view text) {
    return from_mpoly(parse_poly(text));
}

Quadratic3 permuted(const Quadratic3& f, const Perm3& perm) {
    static const char* names[3] = {"x", "y", "z"};
    MPoly m = f.to_mpoly(names[perm[0]], names[perm[1]], names[perm[2]]);
    return Quadratic3::from_mpoly(m);
}

std::array<bool, 3> depends_on_all(const Quadratic3& f) {
    bool x = !(f.a.is_zero() && f.b.is_zero() && f.d.is_zero() && f.h.is_zero());
    bool y = !(f.a.is_zero() && f.c.is_zero() && f.e.is_zero() && f.i.is_zero());
    bool z = !(f.b.is_zero() && f.c.is_zero() && f.g.is_zero() && f.j.is_zero());
    return {x, y, z};
}

namespace {

/// Expands alpha*(h1 x + k1 y + l1 z)^2 + beta*(h1 x + k1 y + l1 z) + gamma.
Quadratic3 expand_witness(const DegenerateWitness& w) {
    Quadratic3 q;
    const Rational &al = w.alpha, &h1 = w.h1, &k1 = w.k1, &l1 = w.l1;
    Rational two(2);
    q.d = al * h1 * h1;
    q.e = al * k1 * k1;
    q.g = al * l1 * l1;
    q.a = two * al * h1 * k1;
    q.b = two * al * h1 * l1;
    q.c = two * al * k1 * l1;
    q.h = w.beta * h1;
    q.i = w.beta * k1;
    q.j = w.beta * l1;
    q.k0 = w.gamma;
    return q;
}

// The six slot permutations, identity first, so the selected permutation
// for TwoCrossTerms verdicts is deterministic.
constexpr std::array<Perm3, 6> kPerms = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

// Cross coefficients of permuted(f, p) without building polynomials.
// permuted maps f's variable u onto slot p_inverse... the monomial on
// f's pair (u, v) lands on the slot pair (p[u], p[v]) after renaming, so
// the slot pair (r, s) reads f's pair (inv[r], inv[s]).
struct CrossSlots {
    Rational xy, xz, yz;
};

CrossSlots cross_of_permuted(const Quadratic3& f, const Perm3& p) {
    int inv[3];
    for (int k = 0; k < 3; ++k) inv[p[k]] = k;
    auto pair_coef = [&](int u, int v) -> const Rational& {
        int lo = std::min(u, v), hi = std::max(u, v);
        if (lo == 0 && hi == 1) return f.a;
        if (lo == 0 && hi == 2) return f.b;
        return f.c;
    };
    return {pair_coef(inv[0], inv[1]), pair_coef(inv[0], inv[2]), pair_coef(inv[1], inv[2])};
}

}  // namespace

bool verify_witness(const Quadratic3& f, const DegenerateWitness& w) {
    if (w.additive) return f.a.is_zero() && f.b.is_zero() && f.c.is_zero();
    Quadratic3 expanded = expand_witness(w);
    return expanded == f;
}

Classification classify(const Quadratic3& f) {
    if (f.is_constant()) throw ValidationError("cannot classify a constant polynomial");

    Classification out;
    out.depends = depends_on_all(f);
    if (!out.depends[0] || !out.depends[1] || !out.depends[2]) {
        out.verdict = Verdict::MissingVariable;
        return out;
    }

    if (f.a.is_zero() && f.b.is_zero() && f.c.is_zero()) {
        out.verdict = Verdict::DegenerateAdditive;
        DegenerateWitness w;
        w.additive = true;
        out.witness = w;
        return out;
    }

    const bool all_cross = !f.a.is_zero() && !f.b.is_zero() && !f.c.is_zero();
    if (all_cross) {
        Rational two(2), four(4);
        bool square = four * f.d * f.e == f.a * f.a && four * f.d * f.g == f.b * f.b &&
                      four * f.e * f.g == f.c * f.c &&
                      two * f.d * f.c == f.a * f.b &&  // sign consistency
                      f.h * f.c == f.j * f.a && f.j * f.a == f.i * f.b;
        if (square) {
            // a != 0 with 4de = a^2 forces d != 0
            DegenerateWitness w;
            w.h1 = Rational(1);
            w.k1 = f.a / (two * f.d);
            w.l1 = f.b / (two * f.d);
            w.alpha = f.d;
            w.beta = f.h;
            w.gamma = f.k0;
            out.verdict = Verdict::DegenerateSquare;
            out.witness = w;
            return out;
        }
        out.verdict = Verdict::FalconerType;
        out.lemma_case = LemmaCase::AllCrossTerms;
        return out;
    }

    // one or two cross terms: pick the first permutation that moves a
    // nonzero coefficient into the xy slot and zero into the yz slot
    for (const Perm3& p : kPerms) {
        CrossSlots s = cross_of_permuted(f, p);
        if (!s.xy.is_zero() && s.yz.is_zero()) {
            out.verdict = Verdict::FalconerType;
            out.lemma_case = LemmaCase::TwoCrossTerms;
            out.permutation = p;
            return out;
        }
    }
    // unreachable: any triangle with 1 or 2 edges admits such a permutation
    throw std::logic_error("no lemma-shape permutation found");
}

bool oracle_is_degenerate(const Quadratic3& f) {
    if (f.a.is_zero() && f.b.is_zero() && f.c.is_zero()) return true;
    if (f.a.is_zero() || f.b.is_zero() || f.c.is_zero()) return false;
    // Normalize h1 = 1 (any witness must have h1, k1, l1 all nonzero here).
    // Solve alpha from the x^2 slot, k1 and l1 from the xy and xz slots,
    // beta from the x slot, gamma from the constant; then re-expand and
    // compare every slot.
    if (f.d.is_zero()) return false;  // alpha = d would vanish, no square witness
    Rational two(2);
    DegenerateWitness w;
    w.h1 = Rational(1);
    w.alpha = f.d;
    w.k1 = f.a / (two * w.alpha);
    w.l1 = f.b / (two * w.alpha);
    w.beta = f.h;
    w.gamma = f.k0;
    return expand_witness(w) == f;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::MissingVariable: return "missing-variable";
        case Verdict::DegenerateAdditive: return "degenerate-additive";
        case Verdict::DegenerateSquare: return "degenerate-square";
        case Verdict::FalconerType: return "falconer-type";
    }
    return "?";
}

std::string lemma_case_name(LemmaCase c) {
    return c == LemmaCase::TwoCrossTerms ? "two-cross-terms" : "all-cross-terms";
}

}  // namespace falconer
