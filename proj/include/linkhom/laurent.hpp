#pragma once

// Exact arithmetic for integer-coefficient Laurent polynomials in d >= 1
// commuting variables u1..ud.  Terms live in an ordered map keyed by the
// exponent vector (lexicographic), so iteration and equality are
// deterministic.  Values are immutable after construction and all
// operations are pure.

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "linkhom/errors.hpp"

namespace linkhom {

using BigInt = boost::multiprecision::cpp_int;
using ExponentVec = std::vector<int>;
using Complex = std::complex<double>;

class LaurentPoly {
public:
    using TermMap = std::map<ExponentVec, BigInt>;

    LaurentPoly() : dim_(1) {}
    explicit LaurentPoly(int dim) : dim_(dim) {
        if (dim < 1) throw DimensionMismatch("variable count must be >= 1");
    }

    static LaurentPoly zero(int dim) { return LaurentPoly(dim); }

    static LaurentPoly constant(int dim, BigInt c) {
        LaurentPoly p(dim);
        if (c != 0) p.terms_[ExponentVec(dim, 0)] = std::move(c);
        return p;
    }

    static LaurentPoly monomial(int dim, ExponentVec e, BigInt c) {
        LaurentPoly p(dim);
        if (static_cast<int>(e.size()) != dim)
            throw DimensionMismatch("exponent vector length != dim");
        if (c != 0) p.terms_[std::move(e)] = std::move(c);
        return p;
    }

    // u_i (1-based index)
    static LaurentPoly variable(int dim, int i) {
        ExponentVec e(dim, 0);
        e.at(i - 1) = 1;
        return monomial(dim, std::move(e), 1);
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool operator==(const LaurentPoly& o) const {
        return dim_ == o.dim_ && terms_ == o.terms_;
    }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    BigInt coeff(const ExponentVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 &&
                terms_.begin()->first == ExponentVec(dim_, 0));
    }

    // gcd of all coefficients (0 for the zero polynomial)
    BigInt content() const {
        BigInt g = 0;
        for (const auto& [e, c] : terms_) g = boost::multiprecision::gcd(g, c);
        return g < 0 ? -g : g;
    }

    LaurentPoly operator-() const {
        LaurentPoly r(dim_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        check_dim(o);
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const {
        check_dim(o);
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }

    LaurentPoly operator*(const LaurentPoly& o) const {
        check_dim(o);
        LaurentPoly r(dim_);
        ExponentVec e(dim_);
        for (const auto& [e1, c1] : terms_) {
            for (const auto& [e2, c2] : o.terms_) {
                for (int k = 0; k < dim_; ++k) e[k] = e1[k] + e2[k];
                r.add_term(e, c1 * c2);
            }
        }
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    // Exact quotient in the Laurent ring; throws ExactDivisionError when the
    // divisor does not divide exactly.  Works by shifting both operands into
    // ordinary polynomials and stripping lex-leading terms.
    LaurentPoly exact_div(const LaurentPoly& g) const {
        check_dim(g);
        if (g.is_zero()) throw Error("division by zero polynomial");
        if (is_zero()) return zero(dim_);
        const ExponentVec fshift = min_exponents();
        const ExponentVec gshift = g.min_exponents();
        TermMap rem;
        for (const auto& [e, c] : terms_) rem[shifted(e, fshift)] = c;
        TermMap div;
        for (const auto& [e, c] : g.terms_) div[shifted(e, gshift)] = c;
        const ExponentVec glead = div.rbegin()->first;
        const BigInt& glc = div.rbegin()->second;
        LaurentPoly q(dim_);
        ExponentVec qe(dim_);
        while (!rem.empty()) {
            const auto& [flead, flc] = *rem.rbegin();
            for (int k = 0; k < dim_; ++k) {
                qe[k] = flead[k] - glead[k];
                if (qe[k] < 0)
                    throw ExactDivisionError("non-exact polynomial division");
            }
            if (flc % glc != 0)
                throw ExactDivisionError("non-exact polynomial division");
            BigInt qc = flc / glc;
            ExponentVec e(dim_);
            for (const auto& [ge, gc] : div) {
                for (int k = 0; k < dim_; ++k) e[k] = qe[k] + ge[k];
                auto it = rem.find(e);
                BigInt v = (it == rem.end() ? BigInt(0) : it->second) - qc * gc;
                if (v == 0) {
                    if (it != rem.end()) rem.erase(it);
                } else {
                    rem[e] = std::move(v);
                }
            }
            ExponentVec sh(dim_);
            for (int k = 0; k < dim_; ++k) sh[k] = qe[k] + fshift[k] - gshift[k];
            q.add_term(sh, qc);
        }
        return q;
    }

    // Numeric evaluation; coordinates must be nonzero wherever a negative
    // exponent occurs.
    Complex eval(const std::vector<Complex>& p) const {
        if (static_cast<int>(p.size()) != dim_)
            throw DimensionMismatch("point dimension != polynomial dimension");
        for (int k = 0; k < dim_; ++k) {
            if (p[k] == Complex(0.0, 0.0)) {
                for (const auto& [e, c] : terms_)
                    if (e[k] < 0)
                        throw Error("negative exponent at zero coordinate");
            }
        }
        Complex sum(0.0, 0.0);
        for (const auto& [e, c] : terms_) {
            Complex t(static_cast<double>(c), 0.0);
            for (int k = 0; k < dim_; ++k) t *= ipow(p[k], e[k]);
            sum += t;
        }
        return sum;
    }

    // Canonical representative of the unit orbit {+-u^a f}: shift every
    // variable's minimum exponent to 0, then force the lex-least term's
    // coefficient positive.  Idempotent; zero maps to zero.
    LaurentPoly normalize() const {
        if (is_zero()) return *this;
        const ExponentVec mins = min_exponents();
        LaurentPoly r(dim_);
        for (const auto& [e, c] : terms_) r.terms_[shifted(e, mins)] = c;
        if (r.terms_.begin()->second < 0) return -r;
        return r;
    }

    // Monomial substitution u_i -> u'^{images[i]} over new_dim variables.
    LaurentPoly substitute(const std::vector<ExponentVec>& images,
                           int new_dim) const {
        if (static_cast<int>(images.size()) != dim_)
            throw DimensionMismatch("need one image per variable");
        for (const auto& v : images)
            if (static_cast<int>(v.size()) != new_dim)
                throw DimensionMismatch("image length != target dimension");
        LaurentPoly r(new_dim);
        ExponentVec e(new_dim);
        for (const auto& [src, c] : terms_) {
            std::fill(e.begin(), e.end(), 0);
            for (int k = 0; k < dim_; ++k)
                for (int j = 0; j < new_dim; ++j) e[j] += src[k] * images[k][j];
            r.add_term(e, c);
        }
        return r;
    }

    std::string to_string() const;

private:
    void check_dim(const LaurentPoly& o) const {
        if (dim_ != o.dim_)
            throw DimensionMismatch("polynomial dimensions differ");
    }

    void add_term(const ExponentVec& e, const BigInt& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    ExponentVec min_exponents() const {
        ExponentVec m = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (int k = 0; k < dim_; ++k) m[k] = std::min(m[k], e[k]);
        return m;
    }

    static ExponentVec shifted(const ExponentVec& e, const ExponentVec& by) {
        ExponentVec r(e.size());
        for (std::size_t k = 0; k < e.size(); ++k) r[k] = e[k] - by[k];
        return r;
    }

    static Complex ipow(Complex z, int e) {
        if (e == 0) return {1.0, 0.0};
        bool inv = e < 0;
        unsigned n = inv ? static_cast<unsigned>(-(long long)e)
                         : static_cast<unsigned>(e);
        Complex acc(1.0, 0.0);
        while (n) {
            if (n & 1u) acc *= z;
            z *= z;
            n >>= 1u;
        }
        return inv ? Complex(1.0, 0.0) / acc : acc;
    }

    int dim_;
    TermMap terms_;
};

inline LaurentPoly operator*(const BigInt& c, const LaurentPoly& p) {
    return LaurentPoly::constant(p.dim(), c) * p;
}

// gcd in Z[t^+-1] up to unit, returned canonical; integer content included.
// Primitive-part pseudo-remainder Euclid.
inline LaurentPoly uni_gcd(const LaurentPoly& f, const LaurentPoly& g) {
    if (f.dim() != 1 || g.dim() != 1)
        throw DimensionMismatch("uni_gcd needs univariate input");
    if (f.is_zero()) return g.normalize();
    if (g.is_zero()) return f.normalize();

    // dense ascending coefficients of the shifted ordinary polynomial
    auto coeffs = [](const LaurentPoly& p) {
        LaurentPoly n = p.normalize();
        int deg = n.terms().rbegin()->first[0];
        std::vector<BigInt> c(deg + 1, BigInt(0));
        for (const auto& [e, v] : n.terms()) c[e[0]] = v;
        return c;
    };
    auto content_of = [](const std::vector<BigInt>& c) {
        BigInt g = 0;
        for (const auto& x : c) g = boost::multiprecision::gcd(g, x);
        return g;
    };
    auto primitive = [&](std::vector<BigInt> c) {
        BigInt ct = content_of(c);
        if (ct > 1)
            for (auto& x : c) x /= ct;
        return c;
    };
    auto trim = [](std::vector<BigInt>& c) {
        while (!c.empty() && c.back() == 0) c.pop_back();
    };

    std::vector<BigInt> a = coeffs(f), b = coeffs(g);
    BigInt cont = boost::multiprecision::gcd(content_of(a), content_of(b));
    a = primitive(a);
    b = primitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        // pseudo-remainder of a by b
        std::vector<BigInt> r = a;
        const BigInt lead = b.back();
        while (r.size() >= b.size()) {
            trim(r);
            if (r.size() < b.size()) break;
            BigInt q = r.back();
            std::size_t off = r.size() - b.size();
            for (auto& x : r) x *= lead;
            for (std::size_t k = 0; k < b.size(); ++k)
                r[off + k] -= q * b[k];
            trim(r);
        }
        a = std::move(b);
        b = primitive(std::move(r));
    }
    LaurentPoly res(1);
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] != 0)
            res += LaurentPoly::monomial(1, {static_cast<int>(k)}, a[k]);
    return (LaurentPoly::constant(1, cont) * res).normalize();
}

// ---- text grammar ----
// poly := term (('+'|'-') term)*
// term := [integer]['*']? factor*      (with optional '*' between factors)
// factor := 'u' INDEX ('^' SIGNED_INT)? | 't' ('^' SIGNED_INT)?
namespace detail {

class PolyParser {
public:
    explicit PolyParser(const std::string& s) : s_(s) {}

    LaurentPoly parse(int forced_dim) {
        struct RawTerm {
            BigInt coeff;
            std::map<int, int> exps;  // var index (1-based) -> exponent
        };
        std::vector<RawTerm> raw;
        int max_var = 1;
        skip_ws();
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                throw ParseError("expected '+' or '-' at position " +
                                 std::to_string(pos_));
            }
            first = false;
            skip_ws();
            RawTerm t;
            t.coeff = sign;
            bool have_any = false;
            if (std::isdigit(peek())) {
                t.coeff = sign * read_int();
                have_any = true;
                skip_ws();
                if (peek() == '*') {
                    ++pos_;
                    skip_ws();
                }
            }
            while (peek() == 'u' || peek() == 't') {
                int var;
                if (peek() == 'u') {
                    ++pos_;
                    if (!std::isdigit(peek()))
                        throw ParseError("expected variable index after 'u'");
                    var = static_cast<int>(read_int());
                    if (var < 1) throw ParseError("variable index must be >= 1");
                } else {
                    ++pos_;
                    var = 1;
                }
                int ex = 1;
                if (peek() == '^') {
                    ++pos_;
                    ex = read_signed();
                }
                t.exps[var] += ex;
                max_var = std::max(max_var, var);
                have_any = true;
                skip_ws();
                if (peek() == '*') {
                    ++pos_;
                    skip_ws();
                }
            }
            if (!have_any)
                throw ParseError("empty term at position " +
                                 std::to_string(pos_));
            raw.push_back(std::move(t));
            skip_ws();
        }
        if (raw.empty()) throw ParseError("empty polynomial");
        int dim = forced_dim > 0 ? forced_dim : max_var;
        if (max_var > dim)
            throw DimensionMismatch("variable index exceeds dimension");
        LaurentPoly p(dim);
        for (const auto& t : raw) {
            ExponentVec e(dim, 0);
            for (const auto& [v, ex] : t.exps) e[v - 1] = ex;
            p += LaurentPoly::monomial(dim, e, t.coeff);
        }
        return p;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    BigInt read_int() {
        std::string digits;
        while (std::isdigit(peek())) digits += s_[pos_++];
        if (digits.empty()) throw ParseError("expected integer");
        return BigInt(digits);
    }
    int read_signed() {
        int sign = 1;
        if (peek() == '-') {
            sign = -1;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        BigInt v = read_int();
        return sign * static_cast<int>(v);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline LaurentPoly parse_poly(const std::string& text, int dim = 0) {
    return detail::PolyParser(text).parse(dim);
}

inline std::string LaurentPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    // descending lex order reads naturally ("u1^2 - 3*u1 + 1")
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool any_var = std::any_of(e.begin(), e.end(), [](int x) { return x != 0; });
        if (mag != 1 || !any_var) {
            out << mag;
            if (any_var) out << "*";
        }
        bool first_factor = true;
        for (int k = 0; k < dim_; ++k) {
            if (e[k] == 0) continue;
            if (!first_factor) out << "*";
            first_factor = false;
            out << "u" << (k + 1);
            if (e[k] != 1) out << "^" << e[k];
        }
    }
    return out.str();
}

}  // namespace linkhom
