#pragma once

// Dense univariate polynomials over a field, ascending coefficient order.
// Internal machinery for binary forms (dehomogenized at x1 = 1).

#include "cohiggs/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace cohiggs::upoly {

template <class F>
using Poly = std::vector<F>;

template <class F>
void trim(Poly<F>& p) {
    while (!p.empty() && is_zero(p.back())) p.pop_back();
}

/// Degree, -1 for the zero polynomial.
template <class F>
int degree(const Poly<F>& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (!is_zero(p[static_cast<std::size_t>(i)])) return i;
    return -1;
}

template <class F>
Poly<F> add(const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r(std::max(a.size(), b.size()), F(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

template <class F>
Poly<F> scale(const Poly<F>& a, const F& c) {
    Poly<F> r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(x * c);
    trim(r);
    return r;
}

template <class F>
Poly<F> sub(const Poly<F>& a, const Poly<F>& b) {
    return add(a, scale(b, F(-1)));
}

template <class F>
Poly<F> mul(const Poly<F>& a, const Poly<F>& b) {
    if (degree(a) < 0 || degree(b) < 0) return {};
    Poly<F> r(a.size() + b.size() - 1, F(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

template <class F>
Poly<F> derivative(const Poly<F>& a) {
    Poly<F> r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * F(static_cast<long>(i)));
    trim(r);
    return r;
}

template <class F>
F eval(const Poly<F>& a, const F& x) {
    F acc(0);
    for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

/// Quotient and remainder; divisor must be nonzero.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(Poly<F> a, Poly<F> b) {
    trim(a);
    trim(b);
    const int db = degree(b);
    if (db < 0) throw Error("polynomial division by zero");
    int da = degree(a);
    if (da < db) return {Poly<F>{}, a};
    Poly<F> q(static_cast<std::size_t>(da - db + 1), F(0));
    const F lead = b[static_cast<std::size_t>(db)];
    while ((da = degree(a)) >= db) {
        F c = a[static_cast<std::size_t>(da)] / lead;
        const auto shift = static_cast<std::size_t>(da - db);
        q[shift] = c;
        for (int i = 0; i <= db; ++i) a[shift + static_cast<std::size_t>(i)] -= c * b[static_cast<std::size_t>(i)];
        a[static_cast<std::size_t>(da)] = F(0);
        trim(a);
    }
    trim(q);
    return {q, a};
}

template <class F>
Poly<F> monic(const Poly<F>& a) {
    const int d = degree(a);
    if (d < 0) return {};
    return scale(a, F(F(1) / a[static_cast<std::size_t>(d)]));
}

/// Monic gcd; gcd(0, 0) is the zero polynomial.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    trim(a);
    trim(b);
    while (degree(b) >= 0) {
        Poly<F> r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Yun's squarefree decomposition: a = lc * prod factors[i]^(i+1), factors monic.
template <class F>
std::vector<Poly<F>> squarefree_factors(const Poly<F>& a) {
    std::vector<Poly<F>> out;
    if (degree(a) <= 0) return out;
    Poly<F> da = derivative(a);
    Poly<F> g = gcd(a, da);
    Poly<F> b = divmod(a, g).first;
    Poly<F> c = divmod(da, g).first;
    Poly<F> d = sub(c, derivative(b));
    while (degree(b) > 0) {
        Poly<F> f = gcd(b, d);
        out.push_back(f);
        b = divmod(b, f).first;
        c = divmod(d, f).first;
        d = sub(c, derivative(b));
    }
    return out;
}

}  // namespace cohiggs::upoly
