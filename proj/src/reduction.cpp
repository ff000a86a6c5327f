#include "falconer/reduction.hpp"

#include <algorithm>
#include <set>

#include "falconer/errors.hpp"

namespace falconer {

std::string Line::to_string() const {
    return p.to_string() + "*y + " + q.to_string() + "*z = " + r0.to_string();
}

namespace {

MPoly bilinear_psi() {
    MPoly u1 = MPoly::variable("u1"), u2 = MPoly::variable("u2"), u3 = MPoly::variable("u3");
    MPoly v1 = MPoly::variable("v1"), v2 = MPoly::variable("v2"), v3 = MPoly::variable("v3");
    return u1 * v1 - u2 * v2 + u3 - v3;
}

// r, s, t single-variable views of the quadratic (constant term excluded;
// it cancels in f(x,y,z) - f(xp,yp,zp)).
MPoly r_of(const Quadratic3& f, const MPoly& x) { return f.d * (x * x) + f.h * x; }
MPoly s_of(const Quadratic3& f, const MPoly& y) { return f.e * (y * y) + f.i * y; }
MPoly t_of(const Quadratic3& f, const MPoly& z) { return f.g * (z * z) + f.j * z; }

}  // namespace

MPoly Reduction::identity_defect(const Quadratic3& f) const {
    std::map<std::string, MPoly> bind;
    bind["u1"] = f1[0];
    bind["u2"] = f1[1];
    bind["u3"] = f1[2];
    bind["v1"] = f2[0];
    bind["v2"] = f2[1];
    bind["v3"] = f2[2];
    MPoly composed = psi.substitute(bind);
    MPoly diff = f.to_mpoly("x", "y", "z") - f.to_mpoly("xp", "yp", "zp");
    return composed - diff;
}

Reduction build_reduction(const Quadratic3& f, const Classification& cls) {
    if (cls.verdict != Verdict::FalconerType)
        throw ValidationError("reduction requires a Falconer-type quadratic, got " +
                              verdict_name(cls.verdict));
    Reduction red;
    red.psi = bilinear_psi();
    red.lemma_case = *cls.lemma_case;

    MPoly x = MPoly::variable("x"), y = MPoly::variable("y"), z = MPoly::variable("z");
    MPoly xp = MPoly::variable("xp"), yp = MPoly::variable("yp"), zp = MPoly::variable("zp");

    if (red.lemma_case == LemmaCase::TwoCrossTerms) {
        if (!f.c.is_zero() || f.a.is_zero())
            throw ValidationError(
                "two-cross-terms reduction needs the lemma shape (yz coefficient zero, "
                "xy coefficient nonzero); apply the classification's permutation first");
        red.f1 = {x, yp, f.b * (x * z) + r_of(f, x) + t_of(f, z) - s_of(f, yp)};
        red.f2 = {f.a * y, f.a * xp, f.b * (xp * zp) + r_of(f, xp) + t_of(f, zp) - s_of(f, y)};
    } else {
        if (f.a.is_zero() || f.b.is_zero() || f.c.is_zero())
            throw ValidationError("all-cross-terms reduction needs a, b, c all nonzero");
        red.f1 = {x, f.a * yp + f.b * zp,
                  f.d * (x * x) - f.e * (yp * yp) - f.c * (yp * zp) - f.g * (zp * zp) +
                      f.h * x - f.i * yp - f.j * zp};
        red.f2 = {f.a * y + f.b * z, xp,
                  f.d * (xp * xp) - f.e * (y * y) - f.c * (y * z) - f.g * (z * z) + f.h * xp -
                      f.i * y - f.j * z};
        red.bad_set = bad_set(f).line;
    }
    red.ma_det = monge_ampere(red.psi);
    return red;
}

BadSetResult bad_set(const Quadratic3& f) {
    if (f.a.is_zero() || f.b.is_zero() || f.c.is_zero())
        throw ValidationError("bad-set analysis applies to the all-cross-terms case only");
    Rational two(2), four(4);
    Rational pivot = f.b * f.c - two * f.a * f.g;
    BadSetResult out;
    if (!pivot.is_zero()) {
        // remove the line a*y + b*z = -(i b^2 - j a b)/(b c - 2 a g)
        Rational rhs = -(f.i * f.b * f.b - f.j * f.a * f.b) / pivot;
        out.line = Line{f.a, f.b, rhs};
        return out;
    }
    CaseTwoCertificate cert;
    Rational quad = f.b * f.b * f.e - f.a * f.b * f.c + f.a * f.a * f.g;
    cert.quad_coeff_zero = quad.is_zero();
    cert.lin_coeff_zero = f.i * f.b == f.j * f.a;
    cert.derived_4eg_eq_c2 = four * f.e * f.g == f.c * f.c;
    cert.fiber_bounded = !(cert.quad_coeff_zero && cert.lin_coeff_zero);
    out.certificate = cert;
    return out;
}

MPoly monge_ampere(const MPoly& psi, const SplitSpec& split) {
    std::set<std::string> allowed(split.slots.begin(), split.slots.end());
    if (allowed.size() != 6) throw ValidationError("split must name six distinct variables");
    for (const auto& v : psi.variables()) {
        if (!allowed.count(v))
            throw ValidationError("psi variable " + v + " is not named by the split");
    }
    auto deriv = [](const MPoly& p, const std::string& var) {
        const auto& vs = p.variables();
        if (!std::binary_search(vs.begin(), vs.end(), var)) return MPoly::zero();
        return p.derivative(var);
    };
    std::array<MPoly, 3> du, dv;
    for (int k = 0; k < 3; ++k) {
        du[k] = deriv(psi, split.slots[k]);
        dv[k] = deriv(psi, split.slots[3 + k]);
    }
    PolyMatrix m(4, std::vector<MPoly>(4));
    m[0][0] = MPoly::zero();
    for (int k = 0; k < 3; ++k) {
        m[0][1 + k] = du[k];
        m[1 + k][0] = -dv[k];
    }
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m[1 + r][1 + c] = deriv(du[r], split.slots[3 + c]);
    return determinant(m);
}

namespace {

// Rational roots of A t^2 + B t + C = 0; infinite when A = B = C = 0.
FiberCount rational_root_count(const Rational& A, const Rational& B, const Rational& C) {
    if (A.is_zero()) {
        if (B.is_zero()) {
            if (C.is_zero()) return {true, 0};
            return {false, 0};
        }
        return {false, 1};
    }
    Rational disc = B * B - Rational(4) * A * C;
    if (disc.signum() < 0) return {false, 0};
    if (disc.is_zero()) return {false, 1};
    return {false, disc.is_perfect_square() ? 2 : 0};
}

}  // namespace

FiberCount fiber_count(const Quadratic3& f, const Rational& u, const Rational& v,
                       const Rational& w) {
    if (f.a.is_zero() || f.b.is_zero() || f.c.is_zero())
        throw ValidationError("fiber analysis applies to the all-cross-terms case only");
    Rational two(2);
    Rational A = f.b * f.b * f.e - f.a * f.b * f.c + f.a * f.a * f.g;
    Rational B = (f.b * f.c - two * f.a * f.g) * v + f.i * f.b * f.b - f.j * f.a * f.b;
    Rational C = f.b * f.b * w - f.b * f.b * f.d * u * u + f.g * v * v - f.b * f.b * f.h * u +
                 f.b * f.j * v;
    return rational_root_count(A, B, C);
}

}  // namespace falconer
