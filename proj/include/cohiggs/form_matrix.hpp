#pragma once

// Matrices of binary forms representing maps between sums of line bundles on P^1.
//
// A matrix with column degrees c and row degrees r is a map
// O(c_0) + ... + O(c_{n-1}) -> O(r_0) + ... + O(r_{m-1}); entry (j, i) is a
// form of degree r_j - c_i (the degree ledger), and is forced to vanish when
// that number is negative.

#include "cohiggs/binform.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace cohiggs {

template <class F>
class BasicFormMatrix {
  public:
    using Form = BasicForm<F>;

    BasicFormMatrix() = default;

    /// Stores entries as given; the ledger is not enforced (see ledger_ok()).
    BasicFormMatrix(std::vector<int> row_degrees, std::vector<int> col_degrees, std::vector<Form> entries)
        : row_degrees_(std::move(row_degrees)), col_degrees_(std::move(col_degrees)), entries_(std::move(entries)) {
        if (entries_.size() != rows() * cols()) throw Error("form matrix entry count does not match its shape");
    }

    /// Like the constructor, but rejects ledger violations.
    static BasicFormMatrix checked(std::vector<int> row_degrees, std::vector<int> col_degrees,
                                   std::vector<Form> entries) {
        BasicFormMatrix m(std::move(row_degrees), std::move(col_degrees), std::move(entries));
        if (!m.ledger_ok()) throw Error("form matrix violates the degree ledger");
        return m.normalized();
    }

    static BasicFormMatrix zero(std::vector<int> row_degrees, std::vector<int> col_degrees) {
        BasicFormMatrix m;
        m.row_degrees_ = std::move(row_degrees);
        m.col_degrees_ = std::move(col_degrees);
        for (std::size_t j = 0; j < m.rows(); ++j)
            for (std::size_t i = 0; i < m.cols(); ++i) m.entries_.push_back(Form::zero(m.expected_degree(j, i)));
        return m;
    }

    /// lambda * identity as a map E -> E(deg lambda).
    static BasicFormMatrix scalar(const std::vector<int>& degrees, const Form& lambda) {
        std::vector<int> rows = degrees;
        for (auto& r : rows) r += lambda.degree();
        BasicFormMatrix m = zero(rows, degrees);
        for (std::size_t j = 0; j < m.rows(); ++j) m.set(j, j, lambda);
        return m;
    }

    static BasicFormMatrix identity(const std::vector<int>& degrees) {
        return scalar(degrees, Form::constant(F(1)));
    }

    [[nodiscard]] std::size_t rows() const { return row_degrees_.size(); }
    [[nodiscard]] std::size_t cols() const { return col_degrees_.size(); }
    [[nodiscard]] const std::vector<int>& row_degrees() const { return row_degrees_; }
    [[nodiscard]] const std::vector<int>& col_degrees() const { return col_degrees_; }
    [[nodiscard]] const std::vector<Form>& entries() const { return entries_; }

    [[nodiscard]] int expected_degree(std::size_t j, std::size_t i) const { return row_degrees_[j] - col_degrees_[i]; }

    [[nodiscard]] const Form& at(std::size_t j, std::size_t i) const { return entries_.at(j * cols() + i); }
    void set(std::size_t j, std::size_t i, Form f) { entries_.at(j * cols() + i) = std::move(f); }

    [[nodiscard]] bool ledger_ok() const {
        for (std::size_t j = 0; j < rows(); ++j)
            for (std::size_t i = 0; i < cols(); ++i) {
                const Form& e = at(j, i);
                if (!e.is_zero() && e.degree() != expected_degree(j, i)) return false;
            }
        return true;
    }

    /// Zero entries retagged with their ledger degree.
    [[nodiscard]] BasicFormMatrix normalized() const {
        BasicFormMatrix m = *this;
        for (std::size_t j = 0; j < rows(); ++j)
            for (std::size_t i = 0; i < cols(); ++i)
                if (m.at(j, i).is_zero()) m.set(j, i, Form::zero(expected_degree(j, i)));
        return m;
    }

    [[nodiscard]] bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    /// Same entries viewed as a map twisted by O(t) on both sides.
    [[nodiscard]] BasicFormMatrix twisted(int t) const {
        BasicFormMatrix m = *this;
        for (auto& r : m.row_degrees_) r += t;
        for (auto& c : m.col_degrees_) c += t;
        return m;
    }

    friend BasicFormMatrix operator*(const BasicFormMatrix& a, const BasicFormMatrix& b) {
        if (a.col_degrees_ != b.row_degrees_) throw Error("composition of maps with mismatched degrees");
        BasicFormMatrix m = zero(a.row_degrees_, b.col_degrees_);
        for (std::size_t j = 0; j < m.rows(); ++j)
            for (std::size_t i = 0; i < m.cols(); ++i) {
                Form acc = Form::zero(m.expected_degree(j, i));
                for (std::size_t l = 0; l < a.cols(); ++l) {
                    const Form& x = a.at(j, l);
                    const Form& y = b.at(l, i);
                    if (x.is_zero() || y.is_zero()) continue;
                    acc += x * y;
                }
                m.set(j, i, acc.with_degree(m.expected_degree(j, i)));
            }
        return m;
    }

    friend BasicFormMatrix operator+(const BasicFormMatrix& a, const BasicFormMatrix& b) {
        if (a.row_degrees_ != b.row_degrees_ || a.col_degrees_ != b.col_degrees_)
            throw Error("adding maps with mismatched degrees");
        BasicFormMatrix m = a;
        for (std::size_t k = 0; k < m.entries_.size(); ++k)
            m.entries_[k] = (a.entries_[k] + b.entries_[k]).with_degree(a.expected_degree(k / m.cols(), k % m.cols()));
        return m;
    }

    BasicFormMatrix operator-() const {
        BasicFormMatrix m = *this;
        for (auto& e : m.entries_) e = -e;
        return m;
    }

    friend BasicFormMatrix operator-(const BasicFormMatrix& a, const BasicFormMatrix& b) { return a + (-b); }

    /// Multiplication by a form lambda: the target is twisted by deg lambda.
    friend BasicFormMatrix operator*(const Form& lambda, const BasicFormMatrix& a) {
        BasicFormMatrix m = a;
        for (auto& r : m.row_degrees_) r += lambda.degree();
        for (std::size_t k = 0; k < m.entries_.size(); ++k)
            m.entries_[k] = (lambda * a.entries_[k]).with_degree(m.expected_degree(k / m.cols(), k % m.cols()));
        return m;
    }

    /// Equal shape, equal degrees, equal entries.
    friend bool operator==(const BasicFormMatrix& a, const BasicFormMatrix& b) {
        return a.row_degrees_ == b.row_degrees_ && a.col_degrees_ == b.col_degrees_ && a.entries_ == b.entries_;
    }

    /// Transpose as a map between dual bundles, with summands re-sorted so
    /// that non-increasing degree lists stay non-increasing.
    [[nodiscard]] BasicFormMatrix dual() const {
        std::vector<int> rd, cd;
        for (std::size_t i = cols(); i-- > 0;) rd.push_back(-col_degrees_[i]);
        for (std::size_t j = rows(); j-- > 0;) cd.push_back(-row_degrees_[j]);
        BasicFormMatrix m = zero(rd, cd);
        for (std::size_t j = 0; j < rows(); ++j)
            for (std::size_t i = 0; i < cols(); ++i) m.set(cols() - 1 - i, rows() - 1 - j, at(j, i));
        return m;
    }

    [[nodiscard]] BasicFormMatrix submatrix(const std::vector<std::size_t>& row_idx,
                                            const std::vector<std::size_t>& col_idx) const {
        std::vector<int> rd, cd;
        for (auto j : row_idx) rd.push_back(row_degrees_.at(j));
        for (auto i : col_idx) cd.push_back(col_degrees_.at(i));
        std::vector<Form> e;
        for (auto j : row_idx)
            for (auto i : col_idx) e.push_back(at(j, i));
        return BasicFormMatrix(rd, cd, e);
    }

    [[nodiscard]] BasicFormMatrix column(std::size_t i) const {
        std::vector<std::size_t> all(rows());
        for (std::size_t j = 0; j < rows(); ++j) all[j] = j;
        return submatrix(all, {i});
    }

    /// [a | b]; both must have the same target.
    friend BasicFormMatrix hconcat(const BasicFormMatrix& a, const BasicFormMatrix& b) {
        if (a.row_degrees_ != b.row_degrees_) throw Error("concatenating maps with different targets");
        std::vector<int> cd = a.col_degrees_;
        cd.insert(cd.end(), b.col_degrees_.begin(), b.col_degrees_.end());
        BasicFormMatrix m = zero(a.row_degrees_, cd);
        for (std::size_t j = 0; j < m.rows(); ++j) {
            for (std::size_t i = 0; i < a.cols(); ++i) m.set(j, i, a.at(j, i));
            for (std::size_t i = 0; i < b.cols(); ++i) m.set(j, a.cols() + i, b.at(j, i));
        }
        return m;
    }

    /// Determinant by cofactor expansion; degree sum(rows) - sum(cols).
    [[nodiscard]] Form det() const {
        if (rows() != cols()) throw Error("determinant of a non-square matrix");
        int d = 0;
        for (auto r : row_degrees_) d += r;
        for (auto c : col_degrees_) d -= c;
        if (rows() == 0) return Form::constant(F(1));
        std::vector<std::size_t> ri(rows()), ci(cols());
        for (std::size_t k = 0; k < rows(); ++k) ri[k] = ci[k] = k;
        return det_rec(ri, ci).with_degree(d);
    }

    /// Determinants of all k x k submatrices (rows and columns in lexicographic order).
    [[nodiscard]] std::vector<Form> minors(std::size_t k) const {
        std::vector<Form> out;
        if (k == 0 || k > rows() || k > cols()) return out;
        for (const auto& rs : subsets(rows(), k))
            for (const auto& cs : subsets(cols(), k)) out.push_back(submatrix(rs, cs).det());
        return out;
    }

    /// Rank over the function field.
    [[nodiscard]] std::size_t rank() const {
        for (std::size_t k = std::min(rows(), cols()); k > 0; --k)
            for (const auto& m : minors(k))
                if (!m.is_zero()) return k;
        return 0;
    }

    /// Classical adjugate; for M: sum O(c) -> sum O(r), a map sum O(r) -> sum O(c)(D), D = deg det.
    [[nodiscard]] BasicFormMatrix adjugate() const {
        if (rows() != cols()) throw Error("adjugate of a non-square matrix");
        const std::size_t n = rows();
        int d = 0;
        for (auto r : row_degrees_) d += r;
        for (auto c : col_degrees_) d -= c;
        std::vector<int> rd = col_degrees_;
        for (auto& x : rd) x += d;
        BasicFormMatrix adj = zero(rd, row_degrees_);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<std::size_t> rs, cs;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k != j) rs.push_back(k);
                    if (k != i) cs.push_back(k);
                }
                Form c = n == 1 ? Form::constant(F(1)) : submatrix(rs, cs).det();
                if ((i + j) % 2 == 1) c = -c;
                adj.set(i, j, c.with_degree(adj.expected_degree(i, j)));
            }
        return adj;
    }

    static std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> cur;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (cur.size() == k) {
                out.push_back(cur);
                return;
            }
            for (std::size_t s = start; s < n; ++s) {
                cur.push_back(s);
                rec(s + 1);
                cur.pop_back();
            }
        };
        rec(0);
        return out;
    }

    [[nodiscard]] std::string str() const {
        std::string s = "[";
        for (std::size_t j = 0; j < rows(); ++j) {
            s += j ? ", [" : "[";
            for (std::size_t i = 0; i < cols(); ++i) s += (i ? ", " : "") + at(j, i).str();
            s += "]";
        }
        return s + "]";
    }

  private:
    Form det_rec(const std::vector<std::size_t>& ri, const std::vector<std::size_t>& ci) const {
        if (ri.size() == 1) return at(ri[0], ci[0]);
        Form acc;
        bool started = false;
        for (std::size_t k = 0; k < ci.size(); ++k) {
            const Form& e = at(ri[0], ci[k]);
            if (e.is_zero()) continue;
            std::vector<std::size_t> rr(ri.begin() + 1, ri.end());
            std::vector<std::size_t> cc;
            for (std::size_t l = 0; l < ci.size(); ++l)
                if (l != k) cc.push_back(ci[l]);
            Form term = e * det_rec(rr, cc);
            if (k % 2 == 1) term = -term;
            acc = started ? acc + term : term;
            started = true;
        }
        if (!started) {
            int d = 0;
            for (auto r : ri) d += row_degrees_[r];
            for (auto c : ci) d -= col_degrees_[c];
            return Form::zero(d);
        }
        return acc;
    }

    std::vector<int> row_degrees_;
    std::vector<int> col_degrees_;
    std::vector<Form> entries_;
};

using FormMatrix = BasicFormMatrix<Rat>;

template <class G, class F>
BasicFormMatrix<G> lift_matrix(const BasicFormMatrix<F>& m) {
    std::vector<BasicForm<G>> e;
    for (const auto& x : m.entries()) e.push_back(lift_form<G>(x));
    return BasicFormMatrix<G>(m.row_degrees(), m.col_degrees(), std::move(e));
}

inline FormMatrix to_rational_matrix(const BasicFormMatrix<QuadNumber>& m) {
    std::vector<BinForm> e;
    for (const auto& x : m.entries()) e.push_back(to_rational_form(x));
    return FormMatrix(m.row_degrees(), m.col_degrees(), std::move(e));
}

inline bool is_rational(const BasicFormMatrix<QuadNumber>& m) {
    for (const auto& f : m.entries())
        for (const auto& c : f.coeffs())
            if (!c.is_rational()) return false;
    return true;
}

/// Degrees of the gcds of the nonzero i x i minors, i = 1 .. rank.
template <class F>
std::vector<int> minor_gcd_profile(const BasicFormMatrix<F>& m) {
    std::vector<int> out;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
        std::optional<BasicForm<F>> g;
        for (const auto& x : m.minors(k)) {
            if (x.is_zero()) continue;
            g = g ? form_gcd(*g, x) : form_gcd(x, x);
        }
        if (!g) break;
        out.push_back(g->degree());
    }
    return out;
}

}  // namespace cohiggs
