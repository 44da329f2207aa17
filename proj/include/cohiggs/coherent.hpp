#pragma once

// Coherent-system pairs (F, G) with F in G in E and Phi(F) in G(k): the
// mu_alpha slopes, the alpha thresholds, and the rank-2 mu_alpha decision.

#include "cohiggs/cohiggs.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace cohiggs {

/// mu(F) + alpha * rk F / rk G
inline Rat mu_alpha(const SubbundleWitness& f, const SubbundleWitness& g, const Rat& alpha) {
    if (g.rank == 0) throw Error("G must be nonzero");
    return f.slope() + alpha * make_rat(f.rank, g.rank);
}

/// mu(F) + alpha * rk F / (rk F + rk G)
inline Rat mu_alpha_prime(const SubbundleWitness& f, const SubbundleWitness& g, const Rat& alpha) {
    return f.slope() + alpha * make_rat(f.rank, f.rank + g.rank);
}

/// F in G and Phi(F) in G(k), by rank tests on concatenated inclusions.
inline bool is_cs_pair(const CoHiggsPair& p, const SubbundleWitness& f, const SubbundleWitness& g) {
    if (f.rank == 0 || g.rank == 0) return false;
    const auto gr = static_cast<std::size_t>(g.rank);
    if (joined_rank(g.inclusion, f.inclusion) != gr) return false;
    const auto image = lift_matrix<QuadNumber>(p.phi) * f.inclusion;
    return joined_rank(g.inclusion.twisted(p.k), image) == gr;
}

struct AlphaThresholds {
    std::optional<Rat> beta;   // undefined for balanced E
    std::optional<Rat> gamma;  // undefined for balanced E
    Rat gamma0;
};

/// beta = max_s r (b_s - mu) / (r - s) over s with b_s > mu; gamma = r (a_1 - mu);
/// gamma0 = max_s (s + 1)(b_s - c_1 / r); b_s the mean of the top s summands.
inline AlphaThresholds alpha_thresholds(const SplittingType& e) {
    const int r = e.rank();
    if (r < 2) throw Error("thresholds need rank at least 2");
    const Rat mu = slope(e);
    AlphaThresholds t;
    long partial = 0;
    for (int s = 1; s < r; ++s) {
        partial += e.summands()[static_cast<std::size_t>(s - 1)];
        const Rat b = make_rat(partial, s);
        const Rat g0 = Rat(s + 1) * (b - mu);
        if (s == 1 || g0 > t.gamma0) t.gamma0 = g0;
        if (b > mu) {
            const Rat beta = Rat(r) * (b - mu) / Rat(r - s);
            if (!t.beta || beta > *t.beta) t.beta = beta;
        }
    }
    if (!e.is_balanced()) t.gamma = Rat(r) * (Rat(e.max_degree()) - mu);
    return t;
}

inline AlphaThresholds alpha_thresholds(const CoHiggsPair& p) { return alpha_thresholds(p.E); }

struct CSVerdict {
    Status status = Status::Unknown;
    std::optional<SubbundleWitness> F;
    std::optional<SubbundleWitness> G;
    Rat value;   // mu_alpha of the worst pair found
    Rat target;  // mu_alpha(E, E) = mu + alpha
    std::vector<std::string> transcript;
};

/// mu_alpha-stability of (E, Phi) as a coherent system.
inline CSVerdict decide_mu_alpha(const CoHiggsPair& p, const Rat& alpha) {
    if (sgn(alpha) < 0) throw Error("alpha must be non-negative");
    CSVerdict v;
    const auto& e = p.E;
    const Rat mu = slope(e);
    v.target = mu + alpha;
    const auto higgs = decide_stability(p);
    if (higgs.status == Status::NotSemistable) {
        v.status = Status::NotSemistable;
        v.F = v.G = higgs.witness;
        v.value = higgs.witness->slope() + alpha;
        v.transcript.push_back("co-Higgs destabilizer F gives (F, F) above (E, E) for every alpha");
        return v;
    }
    const int r = e.rank();
    if (r == 1) {
        v.status = Status::Stable;
        v.value = v.target;
        return v;
    }
    // (F, E) is admissible for every subbundle F; the top summands maximize mu_alpha.
    const auto whole = full_subbundle(e);
    std::optional<Rat> best;
    for (int s = 1; s < r; ++s) {
        auto f = leading_block(e, s);
        const Rat val = mu_alpha(f, whole, alpha);
        if (!best || val > *best) {
            best = val;
            v.F = f;
            v.G = whole;
        }
    }
    if (r >= 3) {
        if (*best > v.target) {
            v.status = Status::NotSemistable;
            v.value = *best;
            return v;
        }
        v.status = Status::Unknown;
        v.value = *best;
        v.transcript.push_back("rank >= 3: only pairs (F, E) were tested");
        return v;
    }
    // rank 2: remaining pairs are (L, L) for invariant lines L
    std::vector<SubbundleWitness> lines;
    if (is_scalar_field(p.phi)) lines.push_back(leading_block(e, 1, "maximal line"));
    else lines = invariant_line_subbundles_rank2(p);
    for (const auto& l : lines) {
        const Rat val = mu_alpha(l, l, alpha);
        if (val > *best) {
            best = val;
            v.F = v.G = l;
        }
    }
    v.value = *best;
    v.transcript.push_back(std::to_string(lines.size()) + " invariant line(s) tested as (L, L)");
    if (*best > v.target) v.status = Status::NotSemistable;
    else if (*best == v.target) v.status = Status::StrictlySemistable;
    else v.status = Status::Stable;
    return v;
}

}  // namespace cohiggs
