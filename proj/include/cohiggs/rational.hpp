#pragma once

// Exact scalars: GMP rationals and elements of a quadratic extension Q(sqrt c).

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace cohiggs {

using Rat = mpq_class;
using BigInt = mpz_class;

/// Error raised for contract violations (bad input, ledger mismatch, ...).
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat parse_rat(std::string_view s) {
    std::string str(s);
    while (!str.empty() && str.front() == ' ') str.erase(str.begin());
    while (!str.empty() && str.back() == ' ') str.pop_back();
    if (!str.empty() && str.front() == '+') str.erase(str.begin());
    Rat r;
    if (str.empty() || r.set_str(str, 10) != 0) throw Error("malformed rational: '" + std::string(s) + "'");
    if (r.get_den() == 0) throw Error("zero denominator: '" + std::string(s) + "'");
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// Rational square test; on success writes the non-negative root.
inline bool rational_sqrt(const Rat& r, Rat* root = nullptr) {
    if (sgn(r) < 0) return false;
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) return false;
    if (root) {
        BigInt n = sqrt(r.get_num());
        BigInt d = sqrt(r.get_den());
        *root = Rat(n, d);
        root->canonicalize();
    }
    return true;
}

/// Element a + b*sqrt(c) of Q(sqrt c), c a non-square rational.
///
/// Rational elements carry b == 0 and c == 0. Arithmetic between two
/// irrational elements requires the radicands to agree up to a rational
/// square; otherwise an Error is thrown.
class QuadNumber {
  public:
    QuadNumber() = default;
    QuadNumber(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
    QuadNumber(const Rat& v) : a_(v) {}  // NOLINT(google-explicit-constructor)
    QuadNumber(Rat a, Rat b, Rat c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
        if (cohiggs::is_zero(b_)) {
            c_ = 0;
        } else if (rational_sqrt(c_)) {
            throw Error("QuadNumber radicand must not be a rational square");
        }
    }

    static QuadNumber sqrt_of(const Rat& c) {
        Rat root;
        if (rational_sqrt(c, &root)) return QuadNumber(root);
        return QuadNumber(Rat(0), Rat(1), c);
    }

    [[nodiscard]] const Rat& rational_part() const { return a_; }
    [[nodiscard]] const Rat& irrational_part() const { return b_; }
    [[nodiscard]] const Rat& radicand() const { return c_; }
    [[nodiscard]] bool is_rational() const { return cohiggs::is_zero(b_); }
    [[nodiscard]] bool is_zero() const { return cohiggs::is_zero(a_) && cohiggs::is_zero(b_); }

    [[nodiscard]] Rat to_rational() const {
        if (!is_rational()) throw Error("irrational value where a rational was required");
        return a_;
    }

    [[nodiscard]] QuadNumber conjugate() const {
        QuadNumber r = *this;
        r.b_ = -r.b_;
        return r;
    }

    QuadNumber operator-() const {
        QuadNumber r = *this;
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }

    friend QuadNumber operator+(const QuadNumber& x, const QuadNumber& y) {
        auto [u, v] = align(x, y);
        return QuadNumber::raw(u.a_ + v.a_, u.b_ + v.b_, u.c_);
    }
    friend QuadNumber operator-(const QuadNumber& x, const QuadNumber& y) { return x + (-y); }
    friend QuadNumber operator*(const QuadNumber& x, const QuadNumber& y) {
        auto [u, v] = align(x, y);
        return QuadNumber::raw(u.a_ * v.a_ + u.b_ * v.b_ * u.c_, u.a_ * v.b_ + u.b_ * v.a_, u.c_);
    }
    friend QuadNumber operator/(const QuadNumber& x, const QuadNumber& y) {
        if (y.is_zero()) throw Error("division by zero");
        if (y.is_rational()) return QuadNumber::raw(x.a_ / y.a_, x.b_ / y.a_, x.c_);
        Rat norm = y.a_ * y.a_ - y.b_ * y.b_ * y.c_;
        QuadNumber inv = QuadNumber::raw(y.a_ / norm, -y.b_ / norm, y.c_);
        return x * inv;
    }
    QuadNumber& operator+=(const QuadNumber& o) { return *this = *this + o; }
    QuadNumber& operator-=(const QuadNumber& o) { return *this = *this - o; }
    QuadNumber& operator*=(const QuadNumber& o) { return *this = *this * o; }
    QuadNumber& operator/=(const QuadNumber& o) { return *this = *this / o; }

    friend bool operator==(const QuadNumber& x, const QuadNumber& y) { return (x - y).is_zero(); }
    friend bool operator!=(const QuadNumber& x, const QuadNumber& y) { return !(x == y); }

    [[nodiscard]] std::string str() const {
        if (is_rational()) return to_string(a_);
        return to_string(a_) + "+" + to_string(b_) + "*sqrt(" + to_string(c_) + ")";
    }

  private:
    static QuadNumber raw(Rat a, Rat b, Rat c) {
        QuadNumber r;
        r.a_ = std::move(a);
        r.b_ = std::move(b);
        r.c_ = cohiggs::is_zero(r.b_) ? Rat(0) : std::move(c);
        return r;
    }

    // Rewrites both operands over a common radicand.
    static std::pair<QuadNumber, QuadNumber> align(const QuadNumber& x, const QuadNumber& y) {
        if (x.is_rational()) {
            QuadNumber u = x;
            u.c_ = y.c_;
            return {u, y};
        }
        if (y.is_rational() || x.c_ == y.c_) {
            QuadNumber v = y;
            v.c_ = x.c_;
            return {x, v};
        }
        // sqrt(c_y) = s * sqrt(c_x) when c_y / c_x = s^2
        Rat s;
        if (!rational_sqrt(Rat(y.c_ / x.c_), &s)) throw Error("incompatible quadratic fields");
        return {x, raw(y.a_, y.b_ * s, x.c_)};
    }

    Rat a_{0};
    Rat b_{0};
    Rat c_{0};
};

inline std::string to_string(const QuadNumber& q) { return q.str(); }

// Uniform scalar helpers so templates can treat Rat and QuadNumber alike.
template <class F>
F field_from(const Rat& r) {
    return F(r);
}

inline bool is_zero(const QuadNumber& q) { return q.is_zero(); }

}  // namespace cohiggs
