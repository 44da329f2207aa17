#pragma once

// Co-Higgs pairs (E, Phi : E -> E(k)) on P^1: validity, nilpotency,
// integrability, the explicit stable field, and the stability decision.

#include "cohiggs/bipoly.hpp"
#include "cohiggs/random.hpp"
#include "cohiggs/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cohiggs {

struct CoHiggsPair {
    SplittingType E;
    int k = 0;
    FormMatrix phi;

    [[nodiscard]] CoHiggsPair twisted(int t) const {
        return {E.twisted(t), k, phi.twisted(t)};
    }
};

/// Zero field E -> E(k).
inline FormMatrix zero_field(const SplittingType& e, int k) {
    return FormMatrix::zero(e.twisted(k).summands(), e.summands());
}

inline bool validate_pair(const CoHiggsPair& p) {
    if (p.phi.cols() != static_cast<std::size_t>(p.E.rank()) || p.phi.rows() != p.phi.cols()) return false;
    if (p.phi.col_degrees() != p.E.summands()) return false;
    if (p.phi.row_degrees() != p.E.twisted(p.k).summands()) return false;
    return p.phi.ledger_ok();
}

/// Phi o Phi = 0 with Phi != 0.
inline bool is_2nilpotent(const CoHiggsPair& p) {
    if (!validate_pair(p)) throw Error("invalid co-Higgs pair");
    if (p.phi.is_zero()) return false;
    return (p.phi.twisted(p.k) * p.phi).is_zero();
}

/// Field into a split tangent target L_1 + ... + L_s, one component per summand.
struct MultiField {
    SplittingType E;
    std::vector<int> twists;
    std::vector<FormMatrix> components;
};

/// Pairwise commutation phi_i o phi_j = phi_j o phi_i with twist bookkeeping.
inline bool is_integrable(const MultiField& mf) {
    if (mf.twists.size() != mf.components.size()) throw Error("one twist per component required");
    for (std::size_t i = 0; i < mf.components.size(); ++i) {
        if (!validate_pair({mf.E, mf.twists[i], mf.components[i]}))
            throw Error("multi-field components must share the source bundle");
    }
    for (std::size_t i = 0; i < mf.components.size(); ++i)
        for (std::size_t j = i + 1; j < mf.components.size(); ++j) {
            const auto& a = mf.components[i];
            const auto& b = mf.components[j];
            if (a.twisted(mf.twists[j]) * b != b.twisted(mf.twists[i]) * a) return false;
        }
    return true;
}

/// Total field nonzero with every composition phi_i o phi_j zero.
inline bool is_2nilpotent(const MultiField& mf) {
    if (mf.twists.size() != mf.components.size()) throw Error("one twist per component required");
    bool nonzero = false;
    for (std::size_t i = 0; i < mf.components.size(); ++i) {
        if (!validate_pair({mf.E, mf.twists[i], mf.components[i]}))
            throw Error("multi-field components must share the source bundle");
        nonzero = nonzero || !mf.components[i].is_zero();
    }
    if (!nonzero) return false;
    for (std::size_t i = 0; i < mf.components.size(); ++i)
        for (std::size_t j = 0; j < mf.components.size(); ++j)
            if (!(mf.components[i].twisted(mf.twists[j]) * mf.components[j]).is_zero()) return false;
    return true;
}

/// a_i - a_{i+1} <= k for all i.
inline bool gap_condition(const SplittingType& e, int k) {
    const auto& a = e.summands();
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i] - a[i + 1] > k) return false;
    return true;
}

/// First index i (1-based block size) with a_i - a_{i+1} > k, or 0.
inline int first_gap(const SplittingType& e, int k) {
    const auto& a = e.summands();
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i] - a[i + 1] > k) return static_cast<int>(i + 1);
    return 0;
}

/// Weighted cycle: O(a_i) -> O(a_{i+1} + k) by x1^(a_{i+1}-a_i+k), closed by
/// O(a_r) -> O(a_1 + k) via (-1)^r x0 x1^(a_1-a_r+k-1). det(tI - B) = t^r + (-1)^(r-1) x0 x1^(rk-1).
inline std::optional<FormMatrix> explicit_stable_field(const SplittingType& e, int k) {
    const auto& a = e.summands();
    const int r = e.rank();
    FormMatrix b = zero_field(e, k);
    if (r < 2) return b;
    for (int i = 0; i + 1 < r; ++i) {
        const int ex = a[static_cast<std::size_t>(i + 1)] - a[static_cast<std::size_t>(i)] + k;
        if (ex < 0) return std::nullopt;
        b.set(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i), BinForm::monomial(ex, 0));
    }
    const int corner = a.front() - a.back() + k - 1;
    if (corner < 0) return std::nullopt;
    b.set(0, static_cast<std::size_t>(r - 1), BinForm::monomial(corner + 1, 1, Rat(r % 2 == 0 ? 1 : -1)));
    return b;
}

/// Homogenized t^r + (-1)^(r-1) z, the spectral polynomial of the explicit field.
inline BiPoly explicit_char_poly(int r, int k) {
    std::vector<BinForm> c;
    c.push_back(BinForm::constant(Rat(1)));
    for (int i = 1; i < r; ++i) c.push_back(BinForm::zero(i * k));
    c.push_back(BinForm::monomial(r * k, 1, Rat(r % 2 == 1 ? 1 : -1)));
    return BiPoly(k, c);
}

enum class Status { Stable, StrictlySemistable, NotSemistable, Unknown };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::Stable: return "Stable";
        case Status::StrictlySemistable: return "StrictlySemistable";
        case Status::NotSemistable: return "NotSemistable";
        case Status::Unknown: return "Unknown";
    }
    return "Unknown";
}

inline Status parse_status(const std::string& s) {
    if (s == "Stable") return Status::Stable;
    if (s == "StrictlySemistable") return Status::StrictlySemistable;
    if (s == "NotSemistable") return Status::NotSemistable;
    if (s == "Unknown") return Status::Unknown;
    throw Error("unknown status '" + s + "'");
}

inline bool is_semistable(Status s) { return s == Status::Stable || s == Status::StrictlySemistable; }

struct StabilityVerdict {
    Status status = Status::Unknown;
    /// Destabilizer, or a maximal-slope invariant subbundle.
    std::optional<SubbundleWitness> witness;
    /// Eisenstein place certifying irreducibility (inner nullopt is infinity).
    std::optional<std::optional<Rat>> eisenstein_place;
    std::vector<std::string> transcript;
};

/// Phi(N) lies in N(k), tested by rank([Phi N | N] ) = rank N.
inline bool is_invariant(const CoHiggsPair& p, const SubbundleWitness& w) {
    if (w.rank == 0 || w.rank == p.E.rank()) return true;
    const auto phi = lift_matrix<QuadNumber>(p.phi);
    const auto image = phi * w.inclusion;
    return hconcat(image, w.inclusion.twisted(p.k)).rank() == static_cast<std::size_t>(w.rank);
}

/// Re-checks a verdict's witness: invariance plus the slope relation the status claims.
inline bool check_witness(const CoHiggsPair& p, const StabilityVerdict& v) {
    if (!v.witness) return v.status != Status::NotSemistable;
    const auto& w = *v.witness;
    if (w.rank <= 0 || w.rank >= p.E.rank()) return false;
    if (w.inclusion.row_degrees() != p.E.summands()) return false;
    if (!is_invariant(p, w)) return false;
    const Rat mu = slope(p.E);
    switch (v.status) {
        case Status::NotSemistable: return w.slope() > mu;
        case Status::StrictlySemistable: return w.slope() == mu;
        case Status::Unknown: return w.slope() <= mu;
        default: return w.slope() < mu;
    }
}

inline bool is_scalar_field(const FormMatrix& phi) {
    for (std::size_t j = 0; j < phi.rows(); ++j)
        for (std::size_t i = 0; i < phi.cols(); ++i) {
            if (i != j && !phi.at(j, i).is_zero()) return false;
            if (i == j && phi.at(j, i) != phi.at(0, 0)) return false;
        }
    return true;
}

namespace detail {

/// Kernel line of a rank-one 2x2 matrix M : E -> E(k), as a map O(c) -> E.
template <class F>
BasicFormMatrix<F> kernel_line_2x2(const BasicFormMatrix<F>& m, const SplittingType& e, int k) {
    const auto& a = e.summands();
    const auto &p = m.at(0, 0), &q = m.at(0, 1), &r = m.at(1, 0), &s = m.at(1, 1);
    if (!p.is_zero() || !q.is_zero()) {
        auto v = BasicFormMatrix<F>::zero(a, {a[1] - k});
        v.set(0, 0, (-q).with_degree(v.expected_degree(0, 0)));
        v.set(1, 0, p.with_degree(v.expected_degree(1, 0)));
        return v;
    }
    auto v = BasicFormMatrix<F>::zero(a, {a[0] - k});
    v.set(0, 0, s.with_degree(v.expected_degree(0, 0)));
    v.set(1, 0, (-r).with_degree(v.expected_degree(1, 0)));
    return v;
}

template <class F>
std::vector<SubbundleWitness> eigen_lines(const CoHiggsPair& p, const BasicForm<F>& lambda, const std::string& tag) {
    const auto phi = lift_matrix<F>(p.phi);
    const auto m = phi - BasicFormMatrix<F>::scalar(p.E.summands(), lambda);
    if (m.is_zero()) return {};
    return {saturate_line_image(kernel_line_2x2(m, p.E, p.k), tag)};
}

}  // namespace detail

/// Every Phi-invariant saturated line subbundle of a rank-2 pair with non-scalar Phi.
inline std::vector<SubbundleWitness> invariant_line_subbundles_rank2(const CoHiggsPair& p) {
    if (p.E.rank() != 2) throw Error("rank-2 analysis needs a rank-2 bundle");
    if (!validate_pair(p)) throw Error("invalid co-Higgs pair");
    if (is_scalar_field(p.phi)) throw Error("every line subbundle invariant");
    const int k = p.k;
    const BinForm tau = (p.phi.at(0, 0) + p.phi.at(1, 1)).with_degree(k);
    const BinForm delta = p.phi.det().with_degree(2 * k);
    const BinForm disc = (tau * tau - Rat(4) * delta).with_degree(2 * k);
    if (disc.is_zero()) return detail::eigen_lines(p, Rat(1, 2) * tau, "eigen (double)");
    auto root = square_root_data(disc);
    if (!root) return {};
    const auto& [lc, g] = *root;
    const QuadNumber s = QuadNumber::sqrt_of(lc);
    const auto tq = lift_form<QuadNumber>(tau);
    const auto gq = s * lift_form<QuadNumber>(g).with_degree(k);
    const QuadNumber half(Rat(1, 2));
    std::vector<SubbundleWitness> out;
    for (int sign : {1, -1}) {
        const auto lambda = half * (sign > 0 ? tq + gq : tq - gq);
        const std::string tag = s.is_rational() ? "eigen" : "eigen over Q(sqrt(" + to_string(lc) + "))";
        for (auto& w : detail::eigen_lines(p, lambda, tag)) out.push_back(std::move(w));
    }
    return out;
}

namespace detail {

/// Rational roots of a univariate polynomial: numeric roots, rationalized and checked exactly.
inline std::vector<Rat> rational_roots(const upoly::Poly<Rat>& poly) {
    std::vector<Rat> out;
    if (upoly::degree(poly) < 1) return out;
    upoly::Poly<Rat> p = upoly::monic(poly);
    // squarefree part keeps roots simple for the iteration
    const auto g = upoly::gcd(p, upoly::derivative(p));
    if (upoly::degree(g) > 0) p = upoly::divmod(p, g).first;
    const int n = upoly::degree(p);
    if (is_zero(p[0])) out.push_back(Rat(0));
    using C = std::complex<long double>;
    std::vector<long double> c;
    for (const auto& x : p) c.push_back(static_cast<long double>(x.get_d()));
    auto eval = [&](C z) {
        C acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + C(c[i]);
        return acc;
    };
    long double bound = 1;
    for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::abs(c[static_cast<std::size_t>(i)]));
    std::vector<C> z;
    for (int i = 0; i < n; ++i) z.push_back(std::polar(bound * 0.9L, 0.4L + 2.0L * 3.14159265358979L * i / n));
    for (int it = 0; it < 500; ++it) {
        long double change = 0;
        for (int i = 0; i < n; ++i) {
            C den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            if (std::abs(den) == 0) den = 1e-12L;
            const C step = eval(z[static_cast<std::size_t>(i)]) / den;
            z[static_cast<std::size_t>(i)] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-24L) break;
    }
    for (const auto& root : z) {
        if (std::abs(root.imag()) > 1e-6L * std::max<long double>(1, std::abs(root))) continue;
        // continued-fraction convergents of the real part
        long double x = root.real();
        BigInt h0 = 1, h1 = 0, k0 = 0, k1 = 1;
        for (int step = 0; step < 40; ++step) {
            const long double fl = std::floor(x);
            const BigInt a(static_cast<double>(fl));
            BigInt h = a * h0 + h1, kk = a * k0 + k1;
            h1 = h0, h0 = h, k1 = k0, k0 = kk;
            Rat cand(h0, k0);
            cand.canonicalize();
            if (is_zero(upoly::eval(p, cand))) {
                if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
                break;
            }
            const long double frac = x - fl;
            if (frac < 1e-18L || k0 > BigInt(1000000000)) break;
            x = 1 / frac;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline upoly::Poly<Rat> lagrange(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    upoly::Poly<Rat> acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        upoly::Poly<Rat> basis{Rat(1)};
        Rat den(1);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = upoly::mul(basis, upoly::Poly<Rat>{Rat(-xs[j]), Rat(1)});
            den *= xs[i] - xs[j];
        }
        acc = upoly::add(acc, upoly::scale(basis, Rat(ys[i] / den)));
    }
    return acc;
}

}  // namespace detail

/// Rational forms lambda of degree k with chi(lambda) = 0, found by root
/// interpolation through k+1 sample points and verified exactly.
inline std::vector<BinForm> rational_eigen_forms(const BiPoly& chi) {
    const int k = chi.grading();
    std::vector<BinForm> out;
    if (k < 0) return out;
    std::vector<Rat> xs;
    std::vector<std::vector<Rat>> roots;
    for (int j = 0; j <= k; ++j) {
        xs.emplace_back(j);
        roots.push_back(detail::rational_roots(chi.specialize(Rat(j), Rat(1))));
        if (roots.back().empty()) return out;
    }
    std::vector<std::size_t> idx(xs.size(), 0);
    while (true) {
        std::vector<Rat> ys;
        for (std::size_t j = 0; j < xs.size(); ++j) ys.push_back(roots[j][idx[j]]);
        const auto poly = detail::lagrange(xs, ys);
        const auto lambda = BinForm::from_poly(poly, k);
        if (chi.evaluate_at(lambda).is_zero() && std::find(out.begin(), out.end(), lambda) == out.end())
            out.push_back(lambda);
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == roots[pos].size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    return out;
}

namespace detail {

/// Saturated kernel of a single nonzero row w : E -> O(b), rank r-1.
inline SubbundleWitness row_kernel(const FormMatrix& m, std::size_t row, const SplittingType& e, std::string tag) {
    const auto& a = e.summands();
    const int b = m.row_degrees()[row];
    std::size_t piv = 0;
    while (m.at(row, piv).is_zero()) ++piv;
    const auto& wp = m.at(row, piv);
    std::vector<int> cd;
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == piv) continue;
        others.push_back(j);
        cd.push_back(a[j] - (b - a[piv]));
    }
    FormMatrix n = FormMatrix::zero(a, cd);
    for (std::size_t c = 0; c < others.size(); ++c) {
        n.set(others[c], c, wp);
        n.set(piv, c, (-m.at(row, others[c])).with_degree(n.expected_degree(piv, c)));
    }
    return make_subbundle(n, std::move(tag));
}

/// Invariant subbundles attached to an eigen-form: kernel and image of Phi - lambda.
inline std::vector<SubbundleWitness> eigen_subbundles(const CoHiggsPair& p, const BinForm& lambda) {
    std::vector<SubbundleWitness> out;
    const auto m = p.phi - FormMatrix::scalar(p.E.summands(), lambda);
    const std::size_t r = m.rows();
    const std::size_t rho = m.rank();
    const std::string tag = "eigen " + lambda.str();
    if (rho + 1 == r) {
        const auto adj = m.adjugate();
        for (std::size_t c = 0; c < r; ++c) {
            const auto col = adj.column(c);
            if (!col.is_zero()) {
                // adj(M) lands in E(deg det M)
                const int shift = col.row_degrees()[0] - p.E.summands()[0];
                out.push_back(saturate_line_image(col.twisted(-shift), "kernel of " + tag));
                break;
            }
        }
    }
    if (rho == 1) {
        for (std::size_t c = 0; c < r; ++c) {
            const auto col = m.column(c);
            if (!col.is_zero()) {
                out.push_back(saturate_line_image(col.twisted(-p.k), "image of " + tag));
                break;
            }
        }
        for (std::size_t j = 0; j < r; ++j) {
            bool nz = false;
            for (std::size_t i = 0; i < r; ++i) nz = nz || !m.at(j, i).is_zero();
            if (nz) {
                out.push_back(row_kernel(m, j, p.E, "kernel of " + tag));
                break;
            }
        }
    }
    return out;
}

}  // namespace detail

/// Stability of a co-Higgs pair on P^1.
inline StabilityVerdict decide_stability(const CoHiggsPair& p) {
    if (!validate_pair(p)) throw Error("invalid co-Higgs pair");
    StabilityVerdict v;
    const auto& e = p.E;
    const int r = e.rank();
    const Rat mu = slope(e);
    if (r == 1) {
        v.status = Status::Stable;
        v.transcript.push_back("rank one");
        return v;
    }
    if (p.k <= 0) {
        if (!e.is_balanced()) {
            v.status = Status::NotSemistable;
            v.witness = leading_block(e, e.top_block());
            v.transcript.push_back("k <= 0 and E unbalanced: top block is invariant");
            return v;
        }
        if (p.k < 0 && !p.phi.is_zero()) throw Error("negative twist forces the zero field");
        v.status = Status::StrictlySemistable;
        v.transcript.push_back(p.k < 0 ? "balanced, field forced zero" : "balanced with constant field");
        if (p.phi.is_zero()) v.witness = leading_block(e, 1, "coordinate line");
        return v;
    }
    if (is_scalar_field(p.phi)) {
        v.transcript.push_back("scalar field: every subbundle invariant");
        if (e.is_balanced()) {
            v.status = Status::StrictlySemistable;
            v.witness = leading_block(e, 1, "coordinate line");
        } else {
            v.status = Status::NotSemistable;
            v.witness = leading_block(e, e.top_block());
        }
        return v;
    }
    if (r == 2) {
        const auto lines = invariant_line_subbundles_rank2(p);
        v.transcript.push_back(std::to_string(lines.size()) + " invariant line(s)");
        if (lines.empty()) {
            v.status = Status::Stable;
            return v;
        }
        const auto best = std::max_element(lines.begin(), lines.end(),
                                           [](const auto& x, const auto& y) { return x.degree < y.degree; });
        v.witness = *best;
        const Rat d(best->degree);
        v.status = d > mu ? Status::NotSemistable : (d == mu ? Status::StrictlySemistable : Status::Stable);
        return v;
    }
    if (const int gap = first_gap(e, p.k)) {
        v.status = Status::NotSemistable;
        v.witness = leading_block(e, gap);
        v.transcript.push_back("gap condition fails after summand " + std::to_string(gap));
        return v;
    }
    const BiPoly chi = char_poly(p.phi, p.k);
    if (auto place = eisenstein_certificate(chi)) {
        v.status = Status::Stable;
        v.eisenstein_place = *place;
        v.transcript.push_back("Eisenstein at " + (*place ? "z = " + to_string(**place) : std::string("infinity")));
        return v;
    }
    v.transcript.push_back("no Eisenstein place in scan list");
    std::vector<SubbundleWitness> cands;
    for (int s = 1; s < r; ++s) cands.push_back(leading_block(e, s));
    for (const auto& lambda : rational_eigen_forms(chi)) {
        v.transcript.push_back("rational eigen-form " + lambda.str());
        for (auto& w : detail::eigen_subbundles(p, lambda)) cands.push_back(std::move(w));
    }
    std::optional<SubbundleWitness> best;
    for (const auto& w : cands) {
        if (!is_invariant(p, w)) continue;
        if (!best || w.slope() > best->slope()) best = w;
    }
    if (best && best->slope() > mu) {
        v.status = Status::NotSemistable;
        v.witness = best;
        return v;
    }
    if (best) v.witness = best;
    v.status = Status::Unknown;
    v.transcript.push_back("no destabilizer found; semistability not certified");
    return v;
}

struct Construction {
    CoHiggsPair pair;
    StabilityVerdict verdict;
    bool used_fallback = false;
    int attempts = 0;
};

/// A pair on E with a stable field: the explicit cycle when it certifies, otherwise random search.
inline Construction construct_stable_field(const SplittingType& e, int k, std::uint64_t seed = 0, int retry_cap = 200) {
    if (k < 1) throw Error("construction needs k >= 1");
    if (!gap_condition(e, k)) throw Error("gap condition fails");
    Construction c;
    if (auto b = explicit_stable_field(e, k)) {
        c.pair = {e, k, *b};
        c.verdict = decide_stability(c.pair);
        if (c.verdict.status == Status::Stable) return c;
    }
    c.used_fallback = true;
    Rng rng(seed);
    for (c.attempts = 1; c.attempts <= retry_cap; ++c.attempts) {
        c.pair = {e, k, random_map(e.twisted(k).summands(), e.summands(), rng)};
        c.verdict = decide_stability(c.pair);
        if (c.verdict.status == Status::Stable) return c;
    }
    throw Error("construction fallback exhausted");
}

}  // namespace cohiggs
