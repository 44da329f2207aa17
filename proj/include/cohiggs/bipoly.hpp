#pragma once

// Polynomials in t whose coefficients are binary forms (spectral data of a
// twisted endomorphism), and the Eisenstein irreducibility certificate.

#include "cohiggs/form_matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cohiggs {

/// sum_i coeffs[i] * t^(r-i), coeffs[i] a form of degree i*k.
template <class F>
class BasicBiPoly {
  public:
    using Form = BasicForm<F>;

    BasicBiPoly() = default;
    BasicBiPoly(int grading, std::vector<Form> coeffs) : grading_(grading), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw Error("empty t-polynomial");
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const int want = static_cast<int>(i) * grading_;
            if (!coeffs_[i].is_zero() && coeffs_[i].degree() != want)
                throw Error("t-polynomial coefficient violates the grading");
            if (coeffs_[i].is_zero()) coeffs_[i] = Form::zero(want);
        }
    }

    [[nodiscard]] int tdegree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] int grading() const { return grading_; }
    [[nodiscard]] const std::vector<Form>& coeffs() const { return coeffs_; }
    /// Coefficient of t^(r-i).
    [[nodiscard]] const Form& coeff(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }

    [[nodiscard]] bool is_monic() const {
        return coeffs_[0].degree() == 0 && !coeffs_[0].is_zero() && coeffs_[0].coeff(0) == F(1);
    }

    /// Univariate polynomial in t (ascending) at the point (x0 : x1).
    [[nodiscard]] upoly::Poly<F> specialize(const F& x0, const F& x1) const {
        upoly::Poly<F> p(coeffs_.size(), F(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) p[coeffs_.size() - 1 - i] = coeffs_[i].evaluate(x0, x1);
        upoly::trim(p);
        return p;
    }

    /// Substitutes t = lambda (a form of degree k) and returns the resulting form of degree r*k.
    [[nodiscard]] Form evaluate_at(const Form& lambda) const {
        const int r = tdegree();
        Form acc = Form::zero(r * grading_);
        for (int i = 0; i <= r; ++i) {
            if (coeff(i).is_zero()) continue;
            acc += coeff(i) * lambda.pow(r - i);
        }
        return acc.with_degree(r * grading_);
    }

    friend bool operator==(const BasicBiPoly& a, const BasicBiPoly& b) {
        return a.grading_ == b.grading_ && a.coeffs_ == b.coeffs_;
    }

    [[nodiscard]] std::string str() const {
        std::string s;
        const int r = tdegree();
        for (int i = 0; i <= r; ++i) {
            if (coeff(i).is_zero()) continue;
            std::string c = coeff(i).str();
            std::string tp = r - i == 0 ? "" : (r - i == 1 ? "t" : "t^" + std::to_string(r - i));
            std::string term;
            if (tp.empty()) term = "(" + c + ")";
            else if (c == "1") term = tp;
            else term = "(" + c + ")*" + tp;
            s += s.empty() ? term : " + " + term;
        }
        return s.empty() ? "0" : s;
    }

  private:
    int grading_ = 0;
    std::vector<Form> coeffs_;
};

using BiPoly = BasicBiPoly<Rat>;

/// True iff every nonzero entry of a square matrix has degree rowDeg - colDeg and
/// rowDeg - colDeg is the constant twist k on the diagonal.
template <class F>
bool is_twisted_endomorphism(const BasicFormMatrix<F>& m, int k) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m.row_degrees()[i] != m.col_degrees()[i] + k) return false;
    return m.ledger_ok();
}

/// det(t I - M) for M : E -> E(k), via Newton's identities on traces of powers.
template <class F>
BasicBiPoly<F> char_poly(const BasicFormMatrix<F>& m, int k) {
    using Form = BasicForm<F>;
    if (!is_twisted_endomorphism(m, k)) throw Error("not a valid twisted endomorphism");
    const std::size_t r = m.rows();
    auto trace = [&](const BasicFormMatrix<F>& a, int deg) {
        Form acc = Form::zero(deg);
        for (std::size_t i = 0; i < r; ++i) acc += a.at(i, i).with_degree(deg);
        return acc;
    };
    std::vector<Form> p(r + 1);
    BasicFormMatrix<F> power = m.normalized();
    for (std::size_t j = 1; j <= r; ++j) {
        p[j] = trace(power, static_cast<int>(j) * k);
        if (j < r) power = m.twisted(static_cast<int>(j) * k) * power;
    }
    // e_i = (1/i) sum_{j=1..i} (-1)^(j-1) e_{i-j} p_j
    std::vector<Form> e(r + 1);
    e[0] = Form::constant(F(1));
    for (std::size_t i = 1; i <= r; ++i) {
        const int deg = static_cast<int>(i) * k;
        Form acc = Form::zero(deg);
        for (std::size_t j = 1; j <= i; ++j) {
            Form term = (e[i - j] * p[j]).with_degree(deg);
            acc += (j % 2 == 1) ? term : -term;
        }
        e[i] = (F(1) / F(static_cast<long>(i))) * acc;
    }
    std::vector<Form> coeffs(r + 1);
    for (std::size_t i = 0; i <= r; ++i) coeffs[i] = (i % 2 == 0) ? e[i] : -e[i];
    return BasicBiPoly<F>(k, std::move(coeffs));
}

/// Eisenstein's criterion at the place z = place (z = x0/x1), or at z = infinity
/// when place is empty. true certifies irreducibility; false is inconclusive.
template <class F>
bool eisenstein_irreducible(const BasicBiPoly<F>& p, const std::optional<Rat>& place) {
    if (!p.is_monic()) throw Error("Eisenstein test needs a monic t-polynomial");
    const int r = p.tdegree();
    if (r < 1) return false;
    auto local = [&](const BasicForm<F>& f) { return place ? f.dehomogenize() : f.swapped().dehomogenize(); };
    const F c = place ? field_from<F>(*place) : F(0);
    for (int i = 1; i <= r; ++i) {
        if (p.coeff(i).is_zero()) {
            if (i == r) return false;
            continue;
        }
        if (!is_zero(upoly::eval(local(p.coeff(i)), c))) return false;
    }
    const auto last = local(p.coeff(r));
    return !is_zero(upoly::eval(upoly::derivative(last), c));
}

/// Places tried by the stability decision, in order; nullopt is the place at infinity.
inline std::vector<std::optional<Rat>> eisenstein_scan_places() {
    return {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), std::nullopt};
}

/// First place from the scan list at which Eisenstein certifies irreducibility.
template <class F>
std::optional<std::optional<Rat>> eisenstein_certificate(const BasicBiPoly<F>& p) {
    for (const auto& place : eisenstein_scan_places())
        if (eisenstein_irreducible(p, place)) return place;
    return std::nullopt;
}

}  // namespace cohiggs
