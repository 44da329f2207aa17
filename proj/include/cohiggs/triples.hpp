#pragma once

// Holomorphic triples (E1, Phi1) -> (E2, Phi2) of co-Higgs pairs: compatibility,
// nu_alpha slopes and windows, duality, shifts, subtriples, the nu_alpha
// decision, the Harder-Narasimhan filtration, and the intertwiner solver.

#include "cohiggs/cohiggs.hpp"
#include "cohiggs/linalg.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace cohiggs {

struct Triple {
    int k = 0;
    CoHiggsPair p1;
    CoHiggsPair p2;
    FormMatrix f;  // E1 -> E2

    [[nodiscard]] int r1() const { return p1.E.rank(); }
    [[nodiscard]] int r2() const { return p2.E.rank(); }
    [[nodiscard]] int d1() const { return p1.E.degree(); }
    [[nodiscard]] int d2() const { return p2.E.degree(); }
};

/// Builds a triple from its parts; zero factors are allowed.
inline Triple make_triple(int k, const SplittingType& e1, FormMatrix phi1, const SplittingType& e2, FormMatrix phi2,
                          FormMatrix f) {
    return Triple{k, {e1, k, std::move(phi1)}, {e2, k, std::move(phi2)}, std::move(f)};
}

/// Triple with zero fields and zero connecting map.
inline Triple zero_triple(int k, const SplittingType& e1, const SplittingType& e2) {
    return make_triple(k, e1, zero_field(e1, k), e2, zero_field(e2, k), FormMatrix::zero(e2.summands(), e1.summands()));
}

/// Phi2 o f = f(k) o Phi1 exactly.
inline bool validate_triple(const Triple& t) {
    if (t.p1.k != t.k || t.p2.k != t.k) throw Error("twist mismatch");
    if (!validate_pair(t.p1) || !validate_pair(t.p2)) return false;
    if (t.f.col_degrees() != t.p1.E.summands() || t.f.row_degrees() != t.p2.E.summands()) return false;
    if (!t.f.ledger_ok()) return false;
    return t.p2.phi * t.f == t.f.twisted(t.k) * t.p1.phi;
}

/// (d1 + d2 + alpha r1) / (r1 + r2)
inline Rat nu_alpha(int d1, int d2, int r1, int r2, const Rat& alpha) {
    if (r1 + r2 == 0) throw Error("nu_alpha of the zero triple");
    return (Rat(d1 + d2) + alpha * r1) / Rat(r1 + r2);
}

inline Rat nu_alpha(const Triple& t, const Rat& alpha) { return nu_alpha(t.d1(), t.d2(), t.r1(), t.r2(), alpha); }

struct AlphaWindow {
    Rat alpha_m;
    std::optional<Rat> alpha_M;  // unbounded when r1 = r2
};

/// alpha_m = mu2 - mu1, alpha_M = (1 + (r1 + r2)/|r1 - r2|) alpha_m.
inline AlphaWindow alpha_window(int d1, int r1, int d2, int r2) {
    if (r1 < 1 || r2 < 1) throw Error("alpha window needs both factors nonzero");
    AlphaWindow w;
    w.alpha_m = make_rat(d2, r2) - make_rat(d1, r1);
    if (r1 != r2) w.alpha_M = (Rat(1) + make_rat(r1 + r2, std::abs(r1 - r2))) * w.alpha_m;
    return w;
}

inline AlphaWindow alpha_window(const Triple& t) { return alpha_window(t.d1(), t.r1(), t.d2(), t.r2()); }

/// ((E2^, Phi2^t), (E1^, Phi1^t), f^t).
inline Triple dual_triple(const Triple& t) {
    return make_triple(t.k, t.p2.E.dual(), t.p2.phi.dual().twisted(t.k), t.p1.E.dual(), t.p1.phi.dual().twisted(t.k),
                       t.f.dual());
}

/// Phi_i - c I on both factors; only defined for the trivial twist.
inline Triple shift_family(const Triple& t, const Rat& c) {
    if (t.k != 0) throw Error("identity twist mismatch");
    Triple s = t;
    s.p1.phi = t.p1.phi - FormMatrix::scalar(t.p1.E.summands(), BinForm::constant(c));
    s.p2.phi = t.p2.phi - FormMatrix::scalar(t.p2.E.summands(), BinForm::constant(c));
    return s;
}

struct Subtriple {
    SubbundleWitness s1;
    SubbundleWitness s2;

    [[nodiscard]] int rank() const { return s1.rank + s2.rank; }
    [[nodiscard]] Rat nu(const Rat& alpha) const { return nu_alpha(s1.degree, s2.degree, s1.rank, s2.rank, alpha); }
    [[nodiscard]] bool is_zero() const { return rank() == 0; }
};

namespace detail {

using QMatrix = BasicFormMatrix<QuadNumber>;

/// Saturation of the image of m : (sum of lines) -> E, for rank(E) <= 2.
inline SubbundleWitness saturated_image(const QMatrix& m, const SplittingType& e, const std::string& tag) {
    const std::size_t rho = m.cols() == 0 ? 0 : m.rank();
    if (rho == 0) return zero_subbundle(e);
    if (rho == static_cast<std::size_t>(e.rank())) return full_subbundle(e);
    if (rho != 1) throw Error("desk-scale bound exceeded");
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!m.column(c).is_zero()) return saturate_line_image(m.column(c), tag);
    throw Error("no image");
}

/// Saturated kernel of a 1 x 2 row w : E -> O(b).
inline SubbundleWitness row_kernel_2(const QMatrix& w, const SplittingType& e, const std::string& tag) {
    const auto& a = e.summands();
    const int b = w.row_degrees()[0];
    QMatrix v = QMatrix::zero(a, {a[0] + a[1] - b});
    v.set(0, 0, (-w.at(0, 1)).with_degree(v.expected_degree(0, 0)));
    v.set(1, 0, w.at(0, 0).with_degree(v.expected_degree(1, 0)));
    return saturate_line_image(v, tag);
}

/// Projection E -> E/L for a line L in a rank-2 bundle: [-v1, v0].
inline QMatrix line_projection(const SubbundleWitness& l) {
    const auto& v = l.inclusion;
    const auto& a = v.row_degrees();
    const int b = a[0] + a[1] - v.col_degrees()[0];
    QMatrix p = QMatrix::zero({b}, a);
    p.set(0, 0, (-v.at(1, 0)).with_degree(p.expected_degree(0, 0)));
    p.set(0, 1, v.at(0, 0).with_degree(p.expected_degree(0, 1)));
    return p;
}

/// Saturated preimage f^{-1}(S2) inside E1.
inline SubbundleWitness preimage(const QMatrix& f, const SplittingType& e1, const SplittingType& e2,
                                 const SubbundleWitness& s2) {
    if (e1.is_zero()) return zero_subbundle(e1);
    if (s2.rank == e2.rank()) return full_subbundle(e1);
    QMatrix comp;
    if (s2.rank == 0) {
        comp = f;
    } else {
        if (e2.rank() != 2) throw Error("desk-scale bound exceeded");
        comp = line_projection(s2) * f;
    }
    const std::size_t rho = comp.rank();
    if (rho == 0) return full_subbundle(e1);
    if (rho == static_cast<std::size_t>(e1.rank())) return zero_subbundle(e1);
    if (e1.rank() != 2) throw Error("desk-scale bound exceeded");
    for (std::size_t j = 0; j < comp.rows(); ++j) {
        auto row = comp.submatrix({j}, {0, 1});
        if (!row.is_zero()) return row_kernel_2(row, e1, "preimage");
    }
    throw Error("preimage computation failed");
}

/// Invariant saturated subbundles of a factor used as candidates (lines stand in
/// for the whole family when the field is scalar).
inline std::vector<SubbundleWitness> factor_candidates(const CoHiggsPair& p) {
    std::vector<SubbundleWitness> out;
    if (p.E.is_zero()) {
        out.push_back(zero_subbundle(p.E));
        return out;
    }
    if (p.E.rank() > 2) throw Error("desk-scale bound exceeded");
    out.push_back(zero_subbundle(p.E));
    out.push_back(full_subbundle(p.E));
    if (p.E.rank() == 2) {
        if (is_scalar_field(p.phi)) {
            out.push_back(coordinate_subbundle(p.E, {0}, "maximal line"));
            out.push_back(coordinate_subbundle(p.E, {1}, "coordinate line"));
        } else {
            for (auto& l : invariant_line_subbundles_rank2(p)) out.push_back(std::move(l));
        }
    }
    return out;
}

inline void add_unique(std::vector<SubbundleWitness>& v, SubbundleWitness w) {
    for (const auto& x : v)
        if (same_subbundle(x, w)) return;
    v.push_back(std::move(w));
}

}  // namespace detail

/// Candidate subtriples (S1, S2): invariant saturated pieces closed under
/// images and preimages of f, filtered by f(S1) in S2.
inline std::vector<Subtriple> enumerate_subtriples(const Triple& t) {
    if (t.r1() > 2 || t.r2() > 2) throw Error("desk-scale bound exceeded");
    const auto f = lift_matrix<QuadNumber>(t.f);
    std::vector<SubbundleWitness> c1, c2;
    for (auto& w : detail::factor_candidates(t.p1)) detail::add_unique(c1, std::move(w));
    for (auto& w : detail::factor_candidates(t.p2)) detail::add_unique(c2, std::move(w));
    for (int round = 0; round < 3; ++round) {
        const std::size_t n1 = c1.size(), n2 = c2.size();
        for (std::size_t i = 0; i < n1; ++i)
            if (!t.p2.E.is_zero()) detail::add_unique(c2, detail::saturated_image(f * c1[i].inclusion, t.p2.E, "image"));
        for (std::size_t j = 0; j < n2; ++j)
            detail::add_unique(c1, detail::preimage(f, t.p1.E, t.p2.E, c2[j]));
        if (c1.size() == n1 && c2.size() == n2) break;
    }
    std::vector<Subtriple> out;
    for (const auto& s1 : c1) {
        const auto image = f * s1.inclusion;
        for (const auto& s2 : c2) {
            if (!contains(s2, image)) continue;
            if (!is_invariant(t.p1, s1) || !is_invariant(t.p2, s2)) continue;
            out.push_back({s1, s2});
        }
    }
    return out;
}

struct TripleVerdict {
    Status status = Status::Unknown;
    std::optional<Subtriple> witness;
    Rat nu;
    std::vector<std::string> transcript;
};

/// nu_alpha-(semi)stability by maximizing over candidate subtriples.
inline TripleVerdict decide_nu_alpha(const Triple& t, const Rat& alpha) {
    if (!validate_triple(t)) throw Error("invalid triple");
    TripleVerdict v;
    v.nu = nu_alpha(t, alpha);
    std::optional<Rat> best;
    for (const auto& s : enumerate_subtriples(t)) {
        if (s.is_zero() || (s.s1.rank == t.r1() && s.s2.rank == t.r2())) continue;
        const Rat val = s.nu(alpha);
        if (!best || val > *best) {
            best = val;
            v.witness = s;
        }
    }
    if (!best) {
        v.status = Status::Stable;
        v.transcript.push_back("no proper subtriple");
        return v;
    }
    if (*best > v.nu) v.status = Status::NotSemistable;
    else if (*best == v.nu) v.status = Status::StrictlySemistable;
    else v.status = Status::Stable;
    v.transcript.push_back("maximal proper nu = " + to_string(*best) + " against " + to_string(v.nu));
    return v;
}

namespace detail {

/// g with m = v * g for a column v (rows must agree up to a uniform twist).
inline FormMatrix divide_by_column(const FormMatrix& m, const FormMatrix& v) {
    const int shift = m.row_degrees()[0] - v.row_degrees()[0];
    std::size_t j = 0;
    while (v.at(j, 0).is_zero()) ++j;
    FormMatrix g = FormMatrix::zero({v.col_degrees()[0] + shift}, m.col_degrees());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        auto q = exact_divide(m.at(j, c), v.at(j, 0));
        if (!q) throw Error("restriction is not defined over the form ring");
        g.set(0, c, q->with_degree(g.expected_degree(0, c)));
    }
    if (v.twisted(shift) * g != m) throw Error("restriction is not defined over the form ring");
    return g;
}

/// h with m = h * p for a row p (columns must agree).
inline FormMatrix divide_by_row(const FormMatrix& m, const FormMatrix& p) {
    std::size_t i = 0;
    while (p.at(0, i).is_zero()) ++i;
    FormMatrix h = FormMatrix::zero(m.row_degrees(), {p.row_degrees()[0]});
    for (std::size_t r = 0; r < m.rows(); ++r) {
        auto q = exact_divide(m.at(r, i), p.at(0, i));
        if (!q) throw Error("induced map is not defined over the form ring");
        h.set(r, 0, q->with_degree(h.expected_degree(r, 0)));
    }
    if (h * p != m) throw Error("induced map is not defined over the form ring");
    return h;
}

struct Presentation {
    FormMatrix inclusion;   // sub -> E
    FormMatrix projection;  // E -> quotient
    SplittingType sub;
    SplittingType quotient;
};

inline Presentation present(const SplittingType& e, const SubbundleWitness& s) {
    if (!s.is_rational()) throw Error("HN uniqueness violation");
    Presentation p;
    const auto n = to_rational_matrix(s.inclusion);
    if (s.rank == 0) {
        p.inclusion = n;
        p.projection = FormMatrix::identity(e.summands());
        p.sub = SplittingType::zero();
        p.quotient = e;
    } else if (s.rank == e.rank()) {
        p.inclusion = FormMatrix::identity(e.summands());
        p.projection = FormMatrix::zero({}, e.summands());
        p.sub = e;
        p.quotient = SplittingType::zero();
    } else {
        if (e.rank() != 2) throw Error("desk-scale bound exceeded");
        p.inclusion = n;
        p.projection = to_rational_matrix(line_projection(s));
        p.sub = SplittingType({n.col_degrees()[0]});
        p.quotient = SplittingType({p.projection.row_degrees()[0]});
    }
    return p;
}

inline FormMatrix restrict_field(const CoHiggsPair& p, const Presentation& pr) {
    if (pr.sub.is_zero()) return zero_field(pr.sub, p.k);
    if (pr.sub == p.E) return p.phi;
    return divide_by_column(p.phi * pr.inclusion, pr.inclusion);
}

inline FormMatrix quotient_field(const CoHiggsPair& p, const Presentation& pr) {
    if (pr.quotient.is_zero()) return zero_field(pr.quotient, p.k);
    if (pr.quotient == p.E && pr.sub.is_zero()) return p.phi;
    return divide_by_row(pr.projection.twisted(p.k) * p.phi, pr.projection);
}

}  // namespace detail

/// The subtriple as a triple in its own right (restricted fields and map).
inline Triple restrict_triple(const Triple& t, const Subtriple& s) {
    const auto a = detail::present(t.p1.E, s.s1);
    const auto b = detail::present(t.p2.E, s.s2);
    FormMatrix g;
    if (a.sub.is_zero() || b.sub.is_zero()) g = FormMatrix::zero(b.sub.summands(), a.sub.summands());
    else if (b.sub == t.p2.E) g = t.f * a.inclusion;
    else g = detail::divide_by_column(t.f * a.inclusion, b.inclusion);
    return make_triple(t.k, a.sub, detail::restrict_field(t.p1, a), b.sub, detail::restrict_field(t.p2, b), g);
}

/// The quotient triple T / S with induced fields and map.
inline Triple quotient_triple(const Triple& t, const Subtriple& s) {
    const auto a = detail::present(t.p1.E, s.s1);
    const auto b = detail::present(t.p2.E, s.s2);
    FormMatrix g;
    if (a.quotient.is_zero() || b.quotient.is_zero()) g = FormMatrix::zero(b.quotient.summands(), a.quotient.summands());
    else if (a.sub.is_zero()) g = b.projection * t.f;
    else g = detail::divide_by_row(b.projection * t.f, a.projection);
    return make_triple(t.k, a.quotient, detail::quotient_field(t.p1, a), b.quotient, detail::quotient_field(t.p2, b),
                       g);
}

/// Unique maximal destabilizing subtriple: maximal nu, then maximal rank.
inline Subtriple maximal_destabilizer(const Triple& t, const Rat& alpha) {
    const auto cands = enumerate_subtriples(t);
    std::optional<Rat> best;
    for (const auto& s : cands)
        if (!s.is_zero() && (!best || s.nu(alpha) > *best)) best = s.nu(alpha);
    std::vector<Subtriple> top;
    for (const auto& s : cands)
        if (!s.is_zero() && s.nu(alpha) == *best) top.push_back(s);
    const auto d = std::max_element(top.begin(), top.end(), [](const auto& x, const auto& y) { return x.rank() < y.rank(); });
    for (const auto& s : top) {
        if (!contains(d->s1, s.s1) || !contains(d->s2, s.s2)) throw Error("HN uniqueness violation");
    }
    return *d;
}

struct HNStep {
    Subtriple sub;  // in the coordinates of the current quotient
    Triple piece;   // graded piece
    Rat nu;
};

struct HNChain {
    Rat alpha;
    std::vector<HNStep> steps;
};

/// Harder-Narasimhan filtration of a desk-scale triple.
inline HNChain hn_filtration(const Triple& t, const Rat& alpha) {
    if (!validate_triple(t)) throw Error("invalid triple");
    HNChain chain;
    chain.alpha = alpha;
    Triple cur = t;
    while (cur.r1() + cur.r2() > 0) {
        const Subtriple d = maximal_destabilizer(cur, alpha);
        HNStep step{d, restrict_triple(cur, d), d.nu(alpha)};
        if (!validate_triple(step.piece)) throw Error("graded piece is not a triple");
        chain.steps.push_back(step);
        if (d.s1.rank == cur.r1() && d.s2.rank == cur.r2()) break;
        cur = quotient_triple(cur, d);
        if (!validate_triple(cur)) throw Error("quotient is not a triple");
    }
    return chain;
}

struct AffineSolution {
    bool consistent = false;
    std::vector<std::vector<Rat>> particular;                // r2 x r2
    std::vector<std::vector<std::vector<Rat>>> null_basis;  // each r2 x r2
};

namespace detail {

/// Solves X M - N = 0 for constant X (r2 x r2) where N is fixed; X is restricted
/// to entries between summands of equal degree.
inline AffineSolution solve_constant_left(const FormMatrix& m, const FormMatrix& rhs) {
    const std::size_t r2 = m.rows();
    const auto& rd = m.row_degrees();
    std::vector<std::pair<std::size_t, std::size_t>> vars;
    for (std::size_t j = 0; j < r2; ++j)
        for (std::size_t l = 0; l < r2; ++l)
            if (rd[j] == rd[l]) vars.emplace_back(j, l);
    linalg::Matrix<Rat> a;
    linalg::Vector<Rat> b;
    for (std::size_t j = 0; j < r2; ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) {
            const int deg = m.expected_degree(j, i);
            if (deg < 0) continue;
            for (int c = 0; c <= deg; ++c) {
                linalg::Vector<Rat> row(vars.size(), Rat(0));
                for (std::size_t v = 0; v < vars.size(); ++v) {
                    if (vars[v].first != j) continue;
                    const auto& e = m.at(vars[v].second, i);
                    if (!e.is_zero()) row[v] = e.coeff(c);
                }
                a.push_back(row);
                const auto& r = rhs.at(j, i);
                b.push_back(r.is_zero() ? Rat(0) : r.coeff(c));
            }
        }
    AffineSolution s;
    auto x = linalg::solve(a, b, vars.size());
    if (!x) return s;
    s.consistent = true;
    auto to_matrix = [&](const linalg::Vector<Rat>& vec) {
        std::vector<std::vector<Rat>> out(r2, std::vector<Rat>(r2, Rat(0)));
        for (std::size_t v = 0; v < vars.size(); ++v) out[vars[v].first][vars[v].second] = vec[v];
        return out;
    };
    s.particular = to_matrix(*x);
    for (const auto& n : linalg::null_space(a, vars.size())) s.null_basis.push_back(to_matrix(n));
    return s;
}

inline FormMatrix constant_matrix(const std::vector<std::vector<Rat>>& a, const std::vector<int>& degrees) {
    FormMatrix m = FormMatrix::zero(degrees, degrees);
    for (std::size_t j = 0; j < degrees.size(); ++j)
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            if (is_zero(a.at(j).at(i))) continue;
            if (degrees[j] != degrees[i]) throw Error("constant matrix entry between summands of different degree");
            m.set(j, i, BinForm::constant(a[j][i]));
        }
    return m;
}

}  // namespace detail

/// All constant A2 with A2 M = M A1.
inline AffineSolution intertwiner_solve(const std::vector<std::vector<Rat>>& a1, const FormMatrix& m) {
    if (a1.size() != m.cols()) throw Error("A1 size does not match the source of M");
    if (!m.ledger_ok()) throw Error("M violates the degree ledger");
    const FormMatrix rhs = m * detail::constant_matrix(a1, m.col_degrees());
    return detail::solve_constant_left(m, rhs);
}

/// Constant matrices commuting with A (on a bundle with the given degrees).
inline AffineSolution commutant(const std::vector<std::vector<Rat>>& a, const std::vector<int>& degrees) {
    // X A - A X = 0: treat A as the map M and solve X A = A X with X unknown on both sides.
    const std::size_t n = degrees.size();
    std::vector<std::pair<std::size_t, std::size_t>> vars;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
            if (degrees[j] == degrees[l]) vars.emplace_back(j, l);
    linalg::Matrix<Rat> sys;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            linalg::Vector<Rat> row(vars.size(), Rat(0));
            for (std::size_t v = 0; v < vars.size(); ++v) {
                const auto [p, q] = vars[v];
                if (p == j) row[v] += a.at(q).at(i);  // (X A)_{ji}
                if (q == i) row[v] -= a.at(j).at(p);  // (A X)_{ji}
            }
            sys.push_back(row);
        }
    AffineSolution s;
    s.consistent = true;
    s.particular.assign(n, std::vector<Rat>(n, Rat(0)));
    for (const auto& v : linalg::null_space(sys, vars.size())) {
        std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
        for (std::size_t i = 0; i < vars.size(); ++i) m[vars[i].first][vars[i].second] = v[i];
        s.null_basis.push_back(m);
    }
    return s;
}

}  // namespace cohiggs
