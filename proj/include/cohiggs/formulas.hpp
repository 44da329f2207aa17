#pragma once

// Closed-form numeric rules, the quadric extension screen, and the detector
// for degenerate members of a pencil of binary forms.

#include "cohiggs/binform.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cohiggs {

/// (2 - m) r^2 + 1, the dimension of the moduli of rank-r pairs with m marked points.
inline long moduli_dimension(int r, int m) {
    if (r < 1) throw Error("rank must be positive");
    if (m < 0 || m > 2) throw Error("moduli dimension rule needs 0 <= m <= 2");
    return static_cast<long>(2 - m) * r * r + 1;
}

/// n = r - (r-1)(r-2) L^2 - (r-1)^2 R^2 - (2r-3)(r-1) L.R
inline long chern_bound(int r, long l2, long r2, long lr) {
    if (r < 1) throw Error("rank must be positive");
    const long rr = r;
    return rr - (rr - 1) * (rr - 2) * l2 - (rr - 1) * (rr - 1) * r2 - (2 * rr - 3) * (rr - 1) * lr;
}

/// Dimension of the space of nilpotent fields: n - m + 1 when c1 + 2x = -3, else 0.
inline long nilpotent_space_dimension(int n, int m, int c1, int x) {
    if (n < 1) throw Error("dimension must be positive");
    if (m < 1 || m > n + 1) throw Error("hyperplane count must satisfy 1 <= m <= n+1");
    return c1 + 2 * x == -3 ? n - m + 1 : 0;
}

/// True when no semistable meromorphic pair with nonzero field exists: g >= 2 and 2 - 2g + l < 0.
inline bool genus_nonexistence(int g, int l) {
    if (g < 0) throw Error("genus must be non-negative");
    return g >= 2 && 2 - 2 * g + l < 0;
}

struct QuadricScreen {
    std::pair<int, int> c1;
    long c2 = 0;
    Rat sub_slope;
    Rat quotient_slope;
    Rat total_slope;
    std::string verdict;
};

/// Middle term of 0 -> O(r,d) -> E -> O(r',d') (x) I_Z -> 0 on P^1 x P^1, with
/// slopes taken against the polarization O(h1,h2).
inline QuadricScreen quadric_extension_screen(int r, int d, int rp, int dp, long deg_z, std::pair<int, int> h = {1, 1}) {
    if (deg_z < 0) throw Error("deg Z must be non-negative");
    if (h.first <= 0 || h.second <= 0) throw Error("polarization must be ample");
    QuadricScreen s;
    s.c1 = {r + rp, d + dp};
    s.c2 = deg_z + static_cast<long>(r) * dp + static_cast<long>(rp) * d;
    auto deg = [&](int p, int q) { return Rat(p * h.second + q * h.first); };
    s.sub_slope = deg(r, d);
    s.quotient_slope = deg(rp, dp);
    s.total_slope = deg(s.c1.first, s.c1.second) / 2;
    if (s.sub_slope < s.total_slope) s.verdict = "stable candidate";
    else if (s.sub_slope == s.total_slope) s.verdict = "strictly semistable candidate";
    else s.verdict = "fails screen";
    return s;
}

namespace detail {

inline Rat binomial(int n, int k) {
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rat(b);
}

/// True iff f = c * l^d for a linear form l over the coefficient field's closure
/// (rank of the catalecticant at most one).
template <class F>
bool is_power_of_linear(const BasicForm<F>& f) {
    if (f.is_zero()) return true;
    const int d = f.degree();
    std::vector<F> g;
    for (int i = 0; i <= d; ++i) g.push_back(f.coeff(i) / F(binomial(d, i)));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (!is_zero(g[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(j + 1)] -
                         g[static_cast<std::size_t>(i + 1)] * g[static_cast<std::size_t>(j)]))
                return false;
    return true;
}

}  // namespace detail

/// Nonzero (a, b) with a u + b v identically zero or a d-th power of a linear form, if any.
inline std::optional<std::pair<QuadNumber, QuadNumber>> pencil_degenerate_member(const BinForm& u, const BinForm& v) {
    if (u.degree() != v.degree()) throw Error("pencil members must have equal degree");
    const int d = u.degree();
    if (d < 1) throw Error("pencil degree must be at least 1");
    if (u.is_zero()) return std::make_pair(QuadNumber(1), QuadNumber(0));
    if (v.is_zero()) return std::make_pair(QuadNumber(0), QuadNumber(1));
    // proportional: u = c v
    {
        int i = 0;
        while (is_zero(v.coeff(i))) ++i;
        const Rat c = u.coeff(i) / v.coeff(i);
        if (u == c * v) return std::make_pair(QuadNumber(1), QuadNumber(Rat(-c)));
    }
    // 2x2 catalecticant minors of a u + b v are quadrics in (a, b); coefficient
    // index i of a form in (a, b) multiplies a^i b^(2-i).
    std::vector<Rat> gu, gv;
    for (int i = 0; i <= d; ++i) {
        const Rat bin = detail::binomial(d, i);
        gu.push_back(u.coeff(i) / bin);
        gv.push_back(v.coeff(i) / bin);
    }
    auto quad = [&](std::size_t i, std::size_t j) {
        // (a gu_i + b gv_i)(a gu_j' + b gv_j') for j' = j+1 minus the crossed product
        auto prod = [&](std::size_t p, std::size_t q) {
            return BinForm::from_coeffs({gv[p] * gv[q], gu[p] * gv[q] + gv[p] * gu[q], gu[p] * gu[q]});
        };
        return prod(i, j + 1) - prod(i + 1, j);
    };
    std::optional<BinForm> g;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const BinForm q = quad(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (q.is_zero()) continue;
            g = g ? form_gcd(*g, q) : form_gcd(q, q);
        }
    if (!g) return std::make_pair(QuadNumber(1), QuadNumber(0));  // every member is a power (d = 1)
    if (g->degree() == 0) return std::nullopt;
    // prefer the member u itself (b = 0)
    if (is_zero(g->coeff(g->degree()))) return std::make_pair(QuadNumber(1), QuadNumber(0));
    const auto h = g->swapped().dehomogenize();  // h(b) = g(1, b)
    if (upoly::degree(h) == 1) return std::make_pair(QuadNumber(1), QuadNumber(Rat(-h[0] / h[1])));
    // quadratic: b = (-B + sqrt(B^2 - 4AC)) / 2A
    const Rat a2 = h[2], a1 = h[1], a0 = h[0];
    const QuadNumber root = (QuadNumber(Rat(-a1)) + QuadNumber::sqrt_of(Rat(a1 * a1 - 4 * a2 * a0))) / QuadNumber(Rat(2 * a2));
    return std::make_pair(QuadNumber(1), root);
}

/// The explicit pencil u = x0^d + x0 x1^(d-1), v = x0 x1^(d-1) + x1^d.
inline std::pair<BinForm, BinForm> reference_pencil(int d) {
    if (d < 1) throw Error("pencil degree must be at least 1");
    const BinForm mid = BinForm::monomial(d, 1);
    return {BinForm::monomial(d, d) + mid, mid + BinForm::monomial(d, 0)};
}

}  // namespace cohiggs
