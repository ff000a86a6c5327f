#include "falconer/mpoly.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>

#include "falconer/errors.hpp"

namespace falconer {

namespace {
constexpr std::uint32_t kMaxExponent = 1u << 31;
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
    assert(a.size() == b.size());
    std::uint64_t da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    std::uint64_t db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MPoly MPoly::constant(Rational c) {
    MPoly p;
    if (!c.is_zero()) p.terms_.emplace(Monomial{}, std::move(c));
    return p;
}

MPoly MPoly::variable(const std::string& name) {
    MPoly p;
    p.vars_.push_back(name);
    p.terms_.emplace(Monomial{1}, Rational(1));
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const Monomial& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](std::uint32_t e) { return e == 0; });
}

Rational MPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw ValidationError("polynomial is not constant");
    return terms_.begin()->second;
}

std::uint32_t MPoly::total_degree() const {
    if (terms_.empty()) return 0;
    // graded order: the last term has maximal total degree
    const Monomial& m = terms_.rbegin()->first;
    return static_cast<std::uint32_t>(std::accumulate(m.begin(), m.end(), std::uint64_t{0}));
}

void MPoly::insert_term(Monomial m, Rational c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), std::move(c));
    if (!inserted) {
        it->second += c;  // try_emplace left c untouched
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::vector<std::string> MPoly::merge_universes(const std::vector<std::string>& a,
                                                const std::vector<std::string>& b) {
    std::vector<std::string> u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u;
}

MPoly MPoly::remapped(const std::vector<std::string>& universe) const {
    if (universe == vars_) return *this;
    std::vector<std::size_t> slot(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::lower_bound(universe.begin(), universe.end(), vars_[i]);
        assert(it != universe.end() && *it == vars_[i]);
        slot[i] = static_cast<std::size_t>(it - universe.begin());
    }
    MPoly r;
    r.vars_ = universe;
    for (const auto& [m, c] : terms_) {
        Monomial nm(universe.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i) nm[slot[i]] = m[i];
        r.terms_.emplace(std::move(nm), c);
    }
    return r;
}

void align(const MPoly& a, const MPoly& b, MPoly& a2, MPoly& b2) {
    std::vector<std::string> u = MPoly::merge_universes(a.vars_, b.vars_);
    a2 = a.remapped(u);
    b2 = b.remapped(u);
}

MPoly MPoly::operator-() const {
    MPoly r;
    r.vars_ = vars_;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly x, y;
    align(a, b, x, y);
    for (auto& [m, c] : y.terms_) x.insert_term(m, c);
    return x;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly x, y;
    align(a, b, x, y);
    MPoly r;
    r.vars_ = x.vars_;
    for (const auto& [ma, ca] : x.terms_) {
        for (const auto& [mb, cb] : y.terms_) {
            Monomial m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i) {
                std::uint64_t e = static_cast<std::uint64_t>(ma[i]) + mb[i];
                if (e > kMaxExponent) throw ValidationError("exponent overflow in product");
                m[i] = static_cast<std::uint32_t>(e);
            }
            r.insert_term(std::move(m), ca * cb);
        }
    }
    return r;
}

MPoly operator*(const Rational& c, const MPoly& p) {
    if (c.is_zero()) return MPoly{};
    MPoly r;
    r.vars_ = p.vars_;
    for (const auto& [m, co] : p.terms_) r.terms_.emplace(m, c * co);
    return r;
}

MPoly MPoly::pow(const MPoly& base, std::uint32_t exp) {
    MPoly result = MPoly::constant(Rational(1));
    MPoly b = base;
    while (exp) {
        if (exp & 1) result = result * b;
        exp >>= 1;
        if (exp) b = b * b;
    }
    return result;
}

bool operator==(const MPoly& a, const MPoly& b) {
    MPoly x, y;
    align(a, b, x, y);
    return x.terms_ == y.terms_;
}

MPoly MPoly::derivative(const std::string& var) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
    if (it == vars_.end() || *it != var) {
        if (is_constant()) return MPoly{};  // d/dx of a constant is 0 for any symbol
        throw ValidationError("unknown variable in derivative: " + var);
    }
    std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
    MPoly r;
    r.vars_ = vars_;
    for (const auto& [m, c] : terms_) {
        if (m[idx] == 0) continue;
        Monomial nm = m;
        Rational nc = c * Rational(static_cast<long long>(nm[idx]));
        nm[idx] -= 1;
        r.insert_term(std::move(nm), std::move(nc));
    }
    return r;
}

MPoly MPoly::substitute(const std::map<std::string, MPoly>& bindings) const {
    MPoly result;
    for (const auto& [m, c] : terms_) {
        MPoly term = MPoly::constant(c);
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (m[i] == 0) continue;
            auto it = bindings.find(vars_[i]);
            MPoly base = it != bindings.end() ? it->second : MPoly::variable(vars_[i]);
            term = term * MPoly::pow(base, m[i]);
        }
        result = result + term;
    }
    return result;
}

Rational MPoly::eval(const std::map<std::string, Rational>& point) const {
    Rational total(0);
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (m[i] == 0) continue;
            auto it = point.find(vars_[i]);
            if (it == point.end())
                throw ValidationError("eval is missing a value for variable " + vars_[i]);
            term *= Rational::pow(it->second, m[i]);
        }
        total += term;
    }
    return total;
}

Rational MPoly::coefficient(const std::map<std::string, std::uint32_t>& monomial) const {
    Monomial key(vars_.size(), 0);
    for (const auto& [name, e] : monomial) {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
        if (it == vars_.end() || *it != name) {
            if (e != 0) return Rational(0);
            continue;
        }
        key[static_cast<std::size_t>(it - vars_.begin())] = e;
    }
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // descending graded-lex: leading term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Monomial& m = it->first;
        const Rational& c = it->second;
        bool is_const_term = std::all_of(m.begin(), m.end(), [](std::uint32_t e) { return e == 0; });
        Rational ac = c.abs();
        if (first) {
            if (c.signum() < 0) out << "-";
            first = false;
        } else {
            out << (c.signum() < 0 ? " - " : " + ");
        }
        bool coef_printed = false;
        if (is_const_term || !(ac == Rational(1))) {
            out << ac.to_string();
            coef_printed = true;
        }
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (m[i] == 0) continue;
            if (coef_printed) out << "*";
            coef_printed = true;
            out << vars_[i];
            if (m[i] > 1) out << "^" << m[i];
        }
    }
    return out.str();
}

std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.to_string(); }

// ---------------------------------------------------------------------------
// parser

namespace {

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool at_end() { return peek() == '\0'; }
    char take() {
        char c = peek();
        ++pos;
        return c;
    }

    std::uint64_t take_uint() {
        skip_ws();
        std::size_t start = pos;
        std::uint64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
            if (v > kMaxExponent * 2ull) throw ParseError("number too large", start);
            ++pos;
        }
        if (pos == start) throw ParseError("expected a number", start);
        return v;
    }

    BigInt take_integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected an integer", start);
        return BigInt::from_string(text.substr(start, pos - start));
    }

    std::string take_ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            ++pos;
        }
        if (pos == start) throw ParseError("expected an identifier", start);
        return std::string(text.substr(start, pos - start));
    }
};

class PolyParser {
  public:
    explicit PolyParser(std::string_view text) : lex_{text} {}

    MPoly parse() {
        MPoly p = expr();
        if (!lex_.at_end())
            throw ParseError(std::string("unexpected character '") + lex_.peek() + "'", lex_.pos);
        return p;
    }

  private:
    Lexer lex_;

    MPoly expr() {
        bool neg = false;
        char c = lex_.peek();
        if (c == '+' || c == '-') {
            neg = c == '-';
            lex_.take();
        }
        MPoly p = term();
        if (neg) p = -p;
        while (true) {
            c = lex_.peek();
            if (c != '+' && c != '-') break;
            lex_.take();
            MPoly t = term();
            p = c == '+' ? p + t : p - t;
        }
        return p;
    }

    MPoly term() {
        MPoly p = factor();
        while (true) {
            char c = lex_.peek();
            if (c == '*') {
                lex_.take();
                p = p * factor();
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '(') {
                // juxtaposition: "2x", "3(x+y)"
                p = p * factor();
            } else {
                break;
            }
        }
        return p;
    }

    MPoly factor() {
        MPoly base = primary();
        if (lex_.peek() == '^') {
            lex_.take();
            std::uint64_t e = lex_.take_uint();
            if (e > kMaxExponent) throw ParseError("exponent exceeds 2^31", lex_.pos);
            base = MPoly::pow(base, static_cast<std::uint32_t>(e));
        }
        return base;
    }

    MPoly primary() {
        char c = lex_.peek();
        if (c == '(') {
            lex_.take();
            MPoly p = expr();
            if (lex_.peek() != ')') throw ParseError("expected ')'", lex_.pos);
            lex_.take();
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt n = lex_.take_integer();
            if (lex_.peek() == '/') {
                lex_.take();
                BigInt d = lex_.take_integer();
                if (d.is_zero()) throw ParseError("zero denominator", lex_.pos);
                return MPoly::constant(Rational(std::move(n), std::move(d)));
            }
            return MPoly::constant(Rational(std::move(n)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return MPoly::variable(lex_.take_ident());
        }
        throw ParseError(std::string("unexpected character '") + c + "'", lex_.pos);
    }
};

}  // namespace

MPoly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

// ---------------------------------------------------------------------------
// determinants

namespace {

MPoly det_cofactor(const PolyMatrix& m, std::vector<std::size_t> cols, std::size_t row) {
    if (cols.size() == 1) return m[row][cols[0]];
    MPoly acc;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const MPoly& pivot = m[row][cols[k]];
        if (pivot.is_zero()) continue;
        std::vector<std::size_t> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t t = 0; t < cols.size(); ++t)
            if (t != k) rest.push_back(cols[t]);
        MPoly minor = det_cofactor(m, std::move(rest), row + 1);
        MPoly contrib = pivot * minor;
        acc = (k % 2 == 0) ? acc + contrib : acc - contrib;
    }
    return acc;
}

MPoly det_bareiss(PolyMatrix m) {
    const std::size_t n = m.size();
    MPoly prev = MPoly::constant(Rational(1));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return MPoly{};  // singular
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                m[i][j] = divide_exact(num, prev);
            }
            m[i][k] = MPoly{};
        }
        prev = m[k][k];
    }
    MPoly d = m[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

}  // namespace

MPoly determinant(const PolyMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) throw ValidationError("determinant of empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw ValidationError("determinant of non-square matrix");
    if (n <= 4) {
        std::vector<std::size_t> cols(n);
        std::iota(cols.begin(), cols.end(), std::size_t{0});
        return det_cofactor(m, std::move(cols), 0);
    }
    return det_bareiss(m);
}

MPoly divide_exact(const MPoly& p, const MPoly& d) {
    if (d.is_zero()) throw ValidationError("exact division by zero polynomial");
    if (d.is_constant()) return d.constant_value().reciprocal() * p;
    MPoly rem, dd;
    align(p, d, rem, dd);
    const auto& lead = *dd.terms().rbegin();
    MPoly quot;
    while (!rem.is_zero()) {
        const auto& rl = *rem.terms().rbegin();
        Monomial qm(rl.first.size());
        for (std::size_t i = 0; i < qm.size(); ++i) {
            if (rl.first[i] < lead.first[i])
                throw ValidationError("polynomial division is not exact");
            qm[i] = rl.first[i] - lead.first[i];
        }
        MPoly mono = MPoly::constant(rl.second / lead.second);
        for (std::size_t i = 0; i < qm.size(); ++i) {
            if (qm[i] == 0) continue;
            mono = mono * MPoly::pow(MPoly::variable(rem.variables()[i]), qm[i]);
        }
        quot = quot + mono;
        rem = rem - mono * dd;
    }
    return quot;
}

}  // namespace falconer
