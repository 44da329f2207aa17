#pragma once

// Homogeneous binary forms in x0, x1 over a field.
//
// coeffs[i] multiplies x0^i * x1^(d-i). The dehomogenization z = x0/x1 is
// therefore just the coefficient vector read as a polynomial in z, and the
// multiplicity of the root at infinity (x1 = 0) is d minus its z-degree.

#include "cohiggs/rational.hpp"
#include "cohiggs/upoly.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cohiggs {

template <class F>
class BasicForm {
  public:
    BasicForm() = default;

    /// Zero form carrying a degree tag; negative tags are allowed for zero only.
    static BasicForm zero(int degree) {
        BasicForm f;
        f.degree_ = degree;
        if (degree >= 0) f.coeffs_.assign(static_cast<std::size_t>(degree) + 1, F(0));
        return f;
    }

    static BasicForm from_coeffs(std::vector<F> coeffs) {
        if (coeffs.empty()) throw Error("a form needs at least one coefficient");
        BasicForm f;
        f.degree_ = static_cast<int>(coeffs.size()) - 1;
        f.coeffs_ = std::move(coeffs);
        return f;
    }

    /// c * x0^i * x1^(d-i)
    static BasicForm monomial(int degree, int x0_power, const F& c = F(1)) {
        if (x0_power < 0 || x0_power > degree) throw Error("monomial exponent out of range");
        BasicForm f = zero(degree);
        f.coeffs_[static_cast<std::size_t>(x0_power)] = c;
        return f;
    }

    static BasicForm constant(const F& c) { return from_coeffs({c}); }

    /// Homogenizes a polynomial in z = x0/x1 to the given degree.
    static BasicForm from_poly(const upoly::Poly<F>& p, int degree) {
        if (upoly::degree(p) > degree) throw Error("polynomial degree exceeds form degree");
        BasicForm f = zero(degree);
        for (std::size_t i = 0; i < p.size() && static_cast<int>(i) <= degree; ++i) f.coeffs_[i] = p[i];
        return f;
    }

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] const std::vector<F>& coeffs() const { return coeffs_; }
    [[nodiscard]] const F& coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }

    [[nodiscard]] bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!cohiggs::is_zero(c)) return false;
        return true;
    }

    /// Nonzero and of degree zero.
    [[nodiscard]] bool is_constant() const { return degree_ == 0 && !is_zero(); }

    /// Coefficient of the highest x0 power that is nonzero.
    [[nodiscard]] F leading() const {
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            if (!cohiggs::is_zero(coeffs_[i])) return coeffs_[i];
        return F(0);
    }

    [[nodiscard]] upoly::Poly<F> dehomogenize() const {
        upoly::Poly<F> p = coeffs_;
        upoly::trim(p);
        return p;
    }

    /// Multiplicity of the root x1 = 0; -1 for the zero form.
    [[nodiscard]] int infinity_multiplicity() const {
        if (is_zero()) return -1;
        return degree_ - upoly::degree(dehomogenize());
    }

    /// Same form with x0 and x1 exchanged.
    [[nodiscard]] BasicForm swapped() const {
        BasicForm f = *this;
        std::reverse(f.coeffs_.begin(), f.coeffs_.end());
        return f;
    }

    [[nodiscard]] F evaluate(const F& x0, const F& x1) const {
        F acc(0);
        F p0(1);
        for (int i = 0; i <= degree_; ++i) {
            F term = coeffs_[static_cast<std::size_t>(i)] * p0;
            for (int j = 0; j < degree_ - i; ++j) term = term * x1;
            acc = acc + term;
            p0 = p0 * x0;
        }
        return acc;
    }

    /// Value of the dehomogenization at z.
    [[nodiscard]] F evaluate_z(const F& z) const { return upoly::eval(coeffs_, z); }

    BasicForm operator-() const {
        BasicForm f = *this;
        for (auto& c : f.coeffs_) c = -c;
        return f;
    }

    friend BasicForm operator+(const BasicForm& a, const BasicForm& b) {
        if (a.degree_ != b.degree_) {
            if (b.is_zero()) return a;
            if (a.is_zero()) return b;
            throw Error("adding forms of different degree (" + std::to_string(a.degree_) + " vs " +
                        std::to_string(b.degree_) + ")");
        }
        BasicForm r = a;
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
        return r;
    }
    friend BasicForm operator-(const BasicForm& a, const BasicForm& b) { return a + (-b); }

    friend BasicForm operator*(const BasicForm& a, const BasicForm& b) {
        const int d = a.degree_ + b.degree_;
        if (a.is_zero() || b.is_zero()) return zero(d);
        BasicForm r = zero(d);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (cohiggs::is_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return r;
    }

    friend BasicForm operator*(const F& c, const BasicForm& a) {
        BasicForm r = a;
        for (auto& x : r.coeffs_) x = c * x;
        return r;
    }

    BasicForm& operator+=(const BasicForm& o) { return *this = *this + o; }
    BasicForm& operator-=(const BasicForm& o) { return *this = *this - o; }

    [[nodiscard]] BasicForm pow(int e) const {
        BasicForm r = constant(F(1));
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    /// Zero forms compare equal regardless of their degree tag.
    friend bool operator==(const BasicForm& a, const BasicForm& b) {
        const bool za = a.is_zero(), zb = b.is_zero();
        if (za || zb) return za && zb;
        if (a.degree_ != b.degree_) return false;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            if (a.coeffs_[i] != b.coeffs_[i]) return false;
        return true;
    }
    friend bool operator!=(const BasicForm& a, const BasicForm& b) { return !(a == b); }

    /// Retags a zero form; nonzero forms must already have the requested degree.
    [[nodiscard]] BasicForm with_degree(int d) const {
        if (is_zero()) return zero(d);
        if (d != degree_) throw Error("cannot retag a nonzero form to a different degree");
        return *this;
    }

    [[nodiscard]] std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree_; i >= 0; --i) {
            const F& c = coeffs_[static_cast<std::size_t>(i)];
            if (cohiggs::is_zero(c)) continue;
            std::string cs = to_string(c);
            const bool compound = cs.find_first_of("+*", 1) != std::string::npos;
            bool neg = !compound && cs.front() == '-';
            if (neg) cs.erase(cs.begin());
            if (compound) cs = "(" + cs + ")";
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            first = false;
            std::string mono;
            const int e1 = degree_ - i;
            if (i > 0) mono += i == 1 ? "x0" : "x0^" + std::to_string(i);
            if (e1 > 0) mono += std::string(mono.empty() ? "" : "*") + (e1 == 1 ? "x1" : "x1^" + std::to_string(e1));
            if (mono.empty()) {
                os << cs;
            } else if (cs == "1") {
                os << mono;
            } else {
                os << cs << "*" << mono;
            }
        }
        return os.str();
    }

  private:
    int degree_ = 0;
    std::vector<F> coeffs_{F(0)};
};

using BinForm = BasicForm<Rat>;

template <class G, class F>
BasicForm<G> lift_form(const BasicForm<F>& f) {
    if (f.degree() < 0) return BasicForm<G>::zero(f.degree());
    std::vector<G> c;
    c.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) c.push_back(G(x));
    return BasicForm<G>::from_coeffs(std::move(c));
}

/// Rational form from a quadratic-field form with no irrational part.
inline BinForm to_rational_form(const BasicForm<QuadNumber>& f) {
    if (f.degree() < 0) return BinForm::zero(f.degree());
    std::vector<Rat> c;
    for (const auto& x : f.coeffs()) c.push_back(x.to_rational());
    return BinForm::from_coeffs(std::move(c));
}

/// Monic gcd of two forms, counting roots at 0 and infinity.
template <class F>
BasicForm<F> form_gcd(const BasicForm<F>& f, const BasicForm<F>& g) {
    const bool fz = f.is_zero(), gz = g.is_zero();
    if (fz && gz) throw Error("undefined gcd");
    if (fz || gz) {
        const BasicForm<F>& h = fz ? g : f;
        return (F(1) / h.leading()) * h;
    }
    upoly::Poly<F> h = upoly::gcd(f.dehomogenize(), g.dehomogenize());
    const int inf = std::min(f.infinity_multiplicity(), g.infinity_multiplicity());
    return BasicForm<F>::from_poly(h, upoly::degree(h) + inf);
}

/// f / g when g divides f exactly.
template <class F>
std::optional<BasicForm<F>> exact_divide(const BasicForm<F>& f, const BasicForm<F>& g) {
    if (g.is_zero()) throw Error("division by the zero form");
    const int d = f.degree() - g.degree();
    if (f.is_zero()) return BasicForm<F>::zero(d);
    if (d < 0) return std::nullopt;
    auto [q, r] = upoly::divmod(f.dehomogenize(), g.dehomogenize());
    if (upoly::degree(r) >= 0) return std::nullopt;
    if (upoly::degree(q) > d) return std::nullopt;
    return BasicForm<F>::from_poly(q, d);
}

template <class F>
bool divides(const BasicForm<F>& g, const BasicForm<F>& f) {
    return exact_divide(f, g).has_value();
}

/// Squarefree decomposition of a nonzero form: f = c * prod parts[i]^(i+1).
/// Each part is a monic form; the x1 factor is folded into the matching part.
template <class F>
std::vector<BasicForm<F>> form_squarefree_parts(const BasicForm<F>& f) {
    if (f.is_zero()) throw Error("squarefree decomposition of the zero form");
    auto polys = upoly::squarefree_factors(f.dehomogenize());
    const int inf = f.infinity_multiplicity();
    const std::size_t n = std::max(polys.size(), static_cast<std::size_t>(inf));
    std::vector<BasicForm<F>> parts;
    for (std::size_t i = 0; i < n; ++i) {
        upoly::Poly<F> p = i < polys.size() ? polys[i] : upoly::Poly<F>{F(1)};
        const int extra = static_cast<int>(i + 1) == inf ? 1 : 0;
        parts.push_back(BasicForm<F>::from_poly(p, upoly::degree(p) + extra));
    }
    return parts;
}

struct SquareTest {
    bool is_square = false;
    std::optional<int> half_degree;
};

/// Is f = c * g^2 for a form g over C? Decided by parity of root multiplicities.
template <class F>
SquareTest square_over_C_test(const BasicForm<F>& f) {
    if (f.is_zero()) throw Error("square test of the zero form");
    auto parts = form_squarefree_parts(f);
    for (std::size_t i = 0; i < parts.size(); i += 2)
        if (parts[i].degree() > 0) return {false, std::nullopt};
    return {true, f.degree() / 2};
}

/// For f = c * g^2 over C, returns (c, g) with g monic over the base field.
template <class F>
std::optional<std::pair<F, BasicForm<F>>> square_root_data(const BasicForm<F>& f) {
    if (!square_over_C_test(f).is_square) return std::nullopt;
    auto parts = form_squarefree_parts(f);
    BasicForm<F> g = BasicForm<F>::constant(F(1));
    for (std::size_t i = 1; i < parts.size(); i += 2) g = g * parts[i].pow(static_cast<int>(i + 1) / 2);
    return std::make_pair(f.leading(), g);
}

namespace detail {

class FormParser {
  public:
    explicit FormParser(std::string_view s) : s_(s) {}

    // Parses a sum of terms c*x0^a*x1^b into (coefficient, x0 power, x1 power).
    std::vector<std::tuple<Rat, int, int>> parse() {
        std::vector<std::tuple<Rat, int, int>> terms;
        skip();
        if (pos_ >= s_.size()) throw Error("empty form expression");
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            skip();
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                throw Error("expected '+' or '-' in form expression");
            }
            first = false;
            terms.push_back(term(sign));
            skip();
        }
        return terms;
    }

  private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    std::string digits() {
        std::string out;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) out += s_[pos_++];
        return out;
    }

    std::tuple<Rat, int, int> term(int sign) {
        Rat c(sign);
        int e0 = 0, e1 = 0;
        bool any = false;
        for (;;) {
            skip();
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                std::string num = digits();
                skip();
                if (peek() == '/') {
                    ++pos_;
                    skip();
                    std::string den = digits();
                    if (den.empty()) throw Error("malformed rational in form expression");
                    num += "/" + den;
                }
                c *= parse_rat(num);
            } else if (peek() == 'x') {
                ++pos_;
                const char v = peek();
                if (v != '0' && v != '1') throw Error("unknown variable in form expression");
                ++pos_;
                int e = 1;
                skip();
                if (peek() == '^') {
                    ++pos_;
                    skip();
                    std::string ds = digits();
                    if (ds.empty()) throw Error("missing exponent in form expression");
                    e = std::stoi(ds);
                }
                (v == '0' ? e0 : e1) += e;
            } else {
                throw Error("unexpected character in form expression");
            }
            any = true;
            skip();
            if (peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (!any) throw Error("empty term in form expression");
        return {c, e0, e1};
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses expressions like "x0^2*x1 - 3/2*x1^3". A zero or purely constant
/// expression needs an explicit degree; otherwise the degree is inferred.
inline BinForm parse_form(std::string_view text, std::optional<int> degree = std::nullopt) {
    auto terms = detail::FormParser(text).parse();
    std::optional<int> d = degree;
    for (const auto& [c, e0, e1] : terms) {
        if (is_zero(c)) continue;
        if (!d) d = e0 + e1;
        if (e0 + e1 != *d) throw Error("form expression is not homogeneous of degree " + std::to_string(*d));
    }
    BinForm f = BinForm::zero(d.value_or(0));
    for (const auto& [c, e0, e1] : terms)
        if (!is_zero(c)) f += BinForm::monomial(*d, e0, c);
    return f;
}

}  // namespace cohiggs
