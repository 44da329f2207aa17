#pragma once

// Split bundles O(a_1) + ... + O(a_r) on P^1 (and P^n for counting), maps
// between them, and saturated subbundles given by inclusion matrices.

#include "cohiggs/form_matrix.hpp"
#include "cohiggs/linalg.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace cohiggs {

class SplittingType {
  public:
    SplittingType() = default;
    explicit SplittingType(std::vector<int> summands, int ambient_dim = 1)
        : n_(ambient_dim), a_(std::move(summands)) {
        if (a_.empty()) throw Error("splitting type needs at least one summand");
        if (n_ < 1) throw Error("ambient dimension must be positive");
        if (!std::is_sorted(a_.begin(), a_.end(), std::greater<>())) throw Error("splitting type must be non-increasing");
    }

    /// The zero bundle, used as an absent factor of a triple.
    static SplittingType zero() { return SplittingType(); }

    [[nodiscard]] int ambient_dim() const { return n_; }
    [[nodiscard]] const std::vector<int>& summands() const { return a_; }
    [[nodiscard]] int rank() const { return static_cast<int>(a_.size()); }
    [[nodiscard]] int degree() const {
        int d = 0;
        for (int x : a_) d += x;
        return d;
    }
    [[nodiscard]] bool is_zero() const { return a_.empty(); }
    [[nodiscard]] bool is_balanced() const { return a_.empty() || a_.front() == a_.back(); }
    [[nodiscard]] int max_degree() const { return a_.front(); }

    /// Number of summands of maximal degree a_1.
    [[nodiscard]] int top_block() const {
        return static_cast<int>(std::count(a_.begin(), a_.end(), a_.front()));
    }

    [[nodiscard]] SplittingType twisted(int t) const {
        SplittingType e = *this;
        for (auto& x : e.a_) x += t;
        return e;
    }

    [[nodiscard]] SplittingType dual() const {
        SplittingType e = *this;
        std::reverse(e.a_.begin(), e.a_.end());
        for (auto& x : e.a_) x = -x;
        return e;
    }

    friend bool operator==(const SplittingType&, const SplittingType&) = default;

    [[nodiscard]] std::string str() const {
        if (a_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < a_.size(); ++i) s += (i ? " + O(" : "O(") + std::to_string(a_[i]) + ")";
        return s;
    }

  private:
    int n_ = 1;
    std::vector<int> a_;
};

inline Rat slope(const SplittingType& e) {
    if (e.is_zero()) throw Error("slope of the zero bundle");
    return make_rat(e.degree(), e.rank());
}

/// Entry (j, i) is the degree b_j - a_i of Hom(O(a_i), O(b_j)); negative means forced zero.
inline std::vector<std::vector<int>> hom_degree_ledger(const SplittingType& e, const SplittingType& f) {
    std::vector<std::vector<int>> out;
    for (int b : f.summands()) {
        std::vector<int> row;
        for (int a : e.summands()) row.push_back(b - a);
        out.push_back(std::move(row));
    }
    return out;
}

/// A map E -> F of split bundles.
struct BundleMap {
    SplittingType source;
    SplittingType target;
    FormMatrix matrix;

    BundleMap() = default;
    BundleMap(SplittingType s, SplittingType t, FormMatrix m)
        : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
        if (matrix.col_degrees() != source.summands() || matrix.row_degrees() != target.summands())
            throw Error("bundle map degrees do not match source and target");
        if (!matrix.ledger_ok()) throw Error("bundle map violates the degree ledger");
        matrix = matrix.normalized();
    }
};

/// Subbundle of a split bundle, given by an inclusion matrix of full column rank.
/// Coefficients may lie in a quadratic extension (eigen-lines of rank-2 fields).
struct SubbundleWitness {
    BasicFormMatrix<QuadNumber> inclusion;
    int rank = 0;
    int degree = 0;
    bool saturated = false;
    std::string tag;

    [[nodiscard]] Rat slope() const {
        if (rank == 0) throw Error("slope of the zero subsheaf");
        return make_rat(degree, rank);
    }
    [[nodiscard]] bool is_rational() const { return cohiggs::is_rational(inclusion); }
};

namespace detail {

template <class F>
BasicForm<F> maximal_minor_gcd(const BasicFormMatrix<F>& m) {
    std::optional<BasicForm<F>> g;
    for (const auto& x : m.minors(m.cols())) {
        if (x.is_zero()) continue;
        g = g ? form_gcd(*g, x) : form_gcd(x, x);
    }
    if (!g) throw Error("inclusion matrix is not of full column rank");
    return *g;
}

}  // namespace detail

/// Witness for the saturation of the image of `inclusion`; degree accounts for
/// the gcd of maximal minors even when the matrix itself is left as given.
template <class F>
SubbundleWitness make_subbundle(const BasicFormMatrix<F>& inclusion, std::string tag = {}) {
    SubbundleWitness w;
    w.inclusion = lift_matrix<QuadNumber>(inclusion.normalized());
    w.rank = static_cast<int>(inclusion.cols());
    if (w.rank == 0) {
        w.saturated = true;
        w.tag = std::move(tag);
        return w;
    }
    const auto g = detail::maximal_minor_gcd(inclusion);
    for (int c : inclusion.col_degrees()) w.degree += c;
    w.degree += g.degree();
    w.saturated = g.degree() == 0;
    w.tag = std::move(tag);
    return w;
}

/// The zero subsheaf of E.
inline SubbundleWitness zero_subbundle(const SplittingType& e) {
    return make_subbundle(FormMatrix::zero(e.summands(), {}), "zero");
}

/// The subbundle spanned by the chosen coordinate summands.
inline SubbundleWitness coordinate_subbundle(const SplittingType& e, const std::vector<std::size_t>& which,
                                             std::string tag = "coordinate") {
    std::vector<int> cd;
    for (auto i : which) cd.push_back(e.summands().at(i));
    FormMatrix m = FormMatrix::zero(e.summands(), cd);
    for (std::size_t c = 0; c < which.size(); ++c) m.set(which[c], c, BinForm::constant(Rat(1)));
    return make_subbundle(m, std::move(tag));
}

/// Leading block O(a_1) + ... + O(a_s).
inline SubbundleWitness leading_block(const SplittingType& e, int s, std::string tag = "top block") {
    std::vector<std::size_t> which;
    for (int i = 0; i < s; ++i) which.push_back(static_cast<std::size_t>(i));
    return coordinate_subbundle(e, which, std::move(tag));
}

inline SubbundleWitness full_subbundle(const SplittingType& e) {
    return leading_block(e, e.rank(), "whole");
}

/// Saturation of the image of a line O(c) -> E: entries divided by their gcd.
template <class F>
SubbundleWitness saturate_line_image(const BasicFormMatrix<F>& s, std::string tag = "line") {
    if (s.cols() != 1) throw Error("line image needs a rank-one source");
    if (s.is_zero()) throw Error("no image");
    std::optional<BasicForm<F>> g;
    for (const auto& x : s.entries()) {
        if (x.is_zero()) continue;
        g = g ? form_gcd(*g, x) : form_gcd(x, x);
    }
    const int c = s.col_degrees()[0] + g->degree();
    BasicFormMatrix<F> out = BasicFormMatrix<F>::zero(s.row_degrees(), {c});
    for (std::size_t j = 0; j < s.rows(); ++j)
        if (!s.at(j, 0).is_zero()) out.set(j, 0, *exact_divide(s.at(j, 0), *g));
    return make_subbundle(out, std::move(tag));
}

inline SubbundleWitness saturate_line_image(const BundleMap& s, std::string tag = "line") {
    return saturate_line_image(s.matrix, std::move(tag));
}

/// Generic rank of [a | b] for two maps into the same bundle (column degrees may differ).
template <class F>
std::size_t joined_rank(const BasicFormMatrix<F>& a, const BasicFormMatrix<F>& b) {
    if (a.row_degrees() != b.row_degrees()) throw Error("joined rank of maps into different bundles");
    std::vector<int> cd = a.col_degrees();
    cd.insert(cd.end(), b.col_degrees().begin(), b.col_degrees().end());
    std::vector<BasicForm<F>> e;
    for (std::size_t j = 0; j < a.rows(); ++j) {
        for (std::size_t i = 0; i < a.cols(); ++i) e.push_back(a.at(j, i));
        for (std::size_t i = 0; i < b.cols(); ++i) e.push_back(b.at(j, i));
    }
    return BasicFormMatrix<F>(a.row_degrees(), cd, e).rank();
}

/// Image of `m` lies in the saturated subbundle `big`.
inline bool contains(const SubbundleWitness& big, const BasicFormMatrix<QuadNumber>& m) {
    if (m.cols() == 0 || m.is_zero()) return true;
    if (big.rank == 0) return false;
    return joined_rank(big.inclusion, m) == static_cast<std::size_t>(big.rank);
}

inline bool contains(const SubbundleWitness& big, const SubbundleWitness& small) {
    return contains(big, small.inclusion);
}

inline bool same_subbundle(const SubbundleWitness& a, const SubbundleWitness& b) {
    return a.rank == b.rank && a.degree == b.degree && contains(a, b);
}

/// Dimension of the space of maps E -> O(t) killing the subbundle, i.e. h^0((E/S)^dual(t)).
inline std::size_t annihilator_dimension(const SplittingType& e, const BasicFormMatrix<QuadNumber>& n, int t) {
    // unknowns: coefficients of v_i, a form of degree t - a_i
    std::vector<std::size_t> offset;
    std::size_t unknowns = 0;
    for (int a : e.summands()) {
        offset.push_back(unknowns);
        if (t - a >= 0) unknowns += static_cast<std::size_t>(t - a + 1);
    }
    if (unknowns == 0) return 0;
    linalg::Matrix<QuadNumber> sys;
    for (std::size_t c = 0; c < n.cols(); ++c) {
        const int out_deg = t - n.col_degrees()[c];
        if (out_deg < 0) continue;
        std::vector<linalg::Vector<QuadNumber>> rows(static_cast<std::size_t>(out_deg + 1),
                                                     linalg::Vector<QuadNumber>(unknowns, QuadNumber(0)));
        for (std::size_t i = 0; i < e.summands().size(); ++i) {
            const int vd = t - e.summands()[i];
            if (vd < 0) continue;
            const auto& entry = n.at(i, c);
            if (entry.is_zero()) continue;
            for (int p = 0; p <= vd; ++p)
                for (int q = 0; q <= entry.degree(); ++q)
                    rows[static_cast<std::size_t>(p + q)][offset[i] + static_cast<std::size_t>(p)] += entry.coeff(q);
        }
        for (auto& r : rows) sys.push_back(std::move(r));
    }
    return unknowns - linalg::rank(sys);
}

/// Splitting type of E/S for a saturated S, read off from h^0 of twists of its dual.
inline SplittingType quotient_splitting_type(const SplittingType& e, const SubbundleWitness& s) {
    if (!s.saturated) throw Error("saturate first");
    const int q = e.rank() - s.rank;
    if (q < 0) throw Error("subbundle rank exceeds bundle rank");
    if (q == 0) return SplittingType::zero();
    const int total = e.degree() - s.degree;
    if (q == 1) return SplittingType({total});
    std::vector<int> degs;
    int below = 0;  // #{q_j <= t-1}
    std::size_t prev = 0;
    const int lo = e.summands().back();
    const int hi = total - (q - 1) * lo;
    for (int t = lo; t <= hi && static_cast<int>(degs.size()) < q; ++t) {
        const std::size_t h = annihilator_dimension(e, s.inclusion, t);
        const int count = static_cast<int>(h - prev);  // #{q_j <= t}
        for (int j = below; j < count; ++j) degs.push_back(t);
        below = count;
        prev = h;
    }
    if (static_cast<int>(degs.size()) != q) throw Error("quotient splitting type could not be determined");
    std::reverse(degs.begin(), degs.end());
    int sum = 0;
    for (int d : degs) sum += d;
    if (sum != total) throw Error("quotient degree is not conserved");
    return SplittingType(degs);
}

/// sum_i h^0(O(a_i + d)) on P^n.
inline long h0_twist(const SplittingType& e, int d) {
    long total = 0;
    const int n = e.ambient_dim();
    for (int a : e.summands()) {
        const int m = a + d;
        if (m < 0) continue;
        BigInt b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(m + n), static_cast<unsigned long>(n));
        total += b.get_si();
    }
    return total;
}

}  // namespace cohiggs
