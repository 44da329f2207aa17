// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace cohiggs;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Records the first few failures with context.
class Check {
public:
    void expect(bool cond, const std::string& what) {
        if (cond) return;
        ++failures_;
        if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
    }
    void count() { ++cases_; }
    [[nodiscard]] Outcome outcome(const std::string& summary) const {
        std::ostringstream s;
        s << summary << ", " << cases_ << " cases";
        if (failures_) s << ", " << failures_ << " failures: " << notes_;
        return {failures_ == 0, s.str()};
    }

private:
    int cases_ = 0;
    int failures_ = 0;
    std::string notes_;
};

BinForm f(const char* s, int d) { return parse_form(s, d); }

CoHiggsPair random_pair(const SplittingType& e, int k, Rng& rng) {
    return {e, k, random_map(e.twisted(k).summands(), e.summands(), rng)};
}

// Non-increasing splitting types of rank r with entries in [lo, hi].
std::vector<SplittingType> splitting_types(int r, int lo, int hi) {
    std::vector<SplittingType> out;
    std::vector<int> a(static_cast<std::size_t>(r), hi);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int top) {
        if (i == a.size()) {
            out.emplace_back(a);
            return;
        }
        for (int v = top; v >= lo; --v) {
            a[i] = v;
            rec(i + 1, v);
        }
    };
    rec(0, hi);
    return out;
}

Outcome criterion1() {
    Check c;
    for (int r = 2; r <= 4; ++r)
        for (const auto& e : splitting_types(r, -3, 3))
            for (int k = 1; k <= 3; ++k) {
                if (!gap_condition(e, k)) continue;
                c.count();
                const auto con = construct_stable_field(e, k);
                c.expect(con.verdict.status == Status::Stable, e.str() + " k=" + std::to_string(k) + " not Stable");
                if (!con.used_fallback)
                    c.expect(char_poly(con.pair.phi, k) == oracle::expected_explicit_char_poly(r, k),
                             e.str() + " k=" + std::to_string(k) + " char poly");
            }
    return c.outcome("gap-condition types constructed Stable");
}

Outcome criterion2() {
    Check c;
    std::vector<std::pair<SplittingType, int>> types;
    for (int r = 2; r <= 3 && types.size() < 50; ++r)
        for (const auto& e : splitting_types(r, -3, 3))
            for (int k = 1; k <= 2 && types.size() < 50; ++k)
                if (!gap_condition(e, k)) types.emplace_back(e, k);
    Rng rng(2024);
    for (const auto& [e, k] : types)
        for (int trial = 0; trial < 100; ++trial) {
            c.count();
            const auto p = random_pair(e, k, rng);
            const auto v = decide_stability(p);
            c.expect(v.status == Status::NotSemistable && check_witness(p, v),
                     e.str() + " k=" + std::to_string(k) + " " + to_string(v.status));
        }
    return c.outcome(std::to_string(types.size()) + " gap-violating types");
}

Outcome criterion3() {
    Check c;
    Rng rng(303);
    for (int trial = 0; trial < 240; ++trial) {
        const int k = static_cast<int>(random_int(rng, 1, 3));
        const int a0 = static_cast<int>(random_int(rng, -2, 2));
        const int a1 = a0 - static_cast<int>(random_int(rng, 0, k + 1));
        const SplittingType e({a0, a1});
        auto p = random_pair(e, k, rng);
        // a third of the samples triangular, a third diagonal
        if (trial % 3 >= 1) p.phi.set(1, 0, BinForm::zero(p.phi.expected_degree(1, 0)));
        if (trial % 3 == 2) p.phi.set(0, 1, BinForm::zero(p.phi.expected_degree(0, 1)));
        c.count();
        const auto v = decide_stability(p);
        const auto expect = oracle::rank2_status(p);
        c.expect(v.status == expect, e.str() + " k=" + std::to_string(k) + " " + to_string(v.status) + " vs " +
                                         to_string(expect));
        if (v.witness) c.expect(check_witness(p, v), "witness fails for " + e.str());
    }
    return c.outcome("random rank-2 pairs agree with oracle");
}

Outcome criterion4() {
    Check c;
    Rng rng(44);
    for (const auto& e : {SplittingType({1, 0}), SplittingType({2, 0, -1}), SplittingType({3, 3, 1})}) {
        c.count();
        const auto p = random_pair(e, -1, rng);
        c.expect(decide_stability(p).status == Status::NotSemistable, "k=-1 unbalanced " + e.str());
    }
    for (int k = -3; k <= -1; ++k)
        for (const auto& e : {SplittingType({0, 0}), SplittingType({2, 2, 2})}) {
            c.count();
            const auto p = random_pair(e, k, rng);
            c.expect(p.phi.is_zero(), "field not forced zero");
            c.expect(decide_stability(p).status == Status::StrictlySemistable, "k<0 balanced " + e.str());
        }
    for (int trial = 0; trial < 100; ++trial) {
        c.count();
        const SplittingType e(std::vector<int>(static_cast<std::size_t>(2 + trial % 3), trial % 5 - 2));
        const auto p = random_pair(e, 0, rng);
        c.expect(decide_stability(p).status == Status::StrictlySemistable, "k=0 balanced " + e.str());
    }
    for (const auto& e : {SplittingType({1, 0}), SplittingType({0, 0, -1}), SplittingType({2, 1, 1})}) {
        c.count();
        const auto p = random_pair(e, 0, rng);
        c.expect(decide_stability(p).status == Status::NotSemistable, "k=0 unbalanced " + e.str());
    }
    return c.outcome("non-positive twist regimes");
}

Outcome criterion5() {
    Check c;
    const CoHiggsPair p{SplittingType({0, -1}), 1,
                        FormMatrix::checked({1, 0}, {0, -1}, {f("0", 1), f("0", 2), f("1", 0), f("0", 1)})};
    c.expect(is_semistable(decide_stability(p).status), "pair not semistable");
    const auto t = alpha_thresholds(p);
    c.expect(t.gamma0 == Rat(1), "gamma0 = " + to_string(t.gamma0));
    c.expect(t.beta.has_value(), "beta missing");
    for (int i = 1; i <= 20; ++i) {
        const Rat alpha = 2 * t.gamma0 * make_rat(i, 20);
        const auto s = decide_mu_alpha(p, alpha).status;
        c.count();
        if (t.beta && alpha < *t.beta) c.expect(s == Status::NotSemistable, "below beta at " + to_string(alpha));
        if (alpha >= t.gamma0) c.expect(is_semistable(s), "unstable at " + to_string(alpha));
    }
    return c.outcome("E = O + O(-1), gamma0 = " + to_string(t.gamma0));
}

// Small triples with k = 0 and unequal ranks.
std::vector<Triple> triple_family(bool equal_ranks_too) {
    std::vector<Triple> out;
    Rng rng(606);
    const std::vector<std::pair<SplittingType, SplittingType>> shapes = {
        {SplittingType({0}), SplittingType({1, 0})},  {SplittingType({1}), SplittingType({0, 0})},
        {SplittingType({0}), SplittingType({0, -1})}, {SplittingType({1, 0}), SplittingType({0})},
        {SplittingType({0, 0}), SplittingType({1})},  {SplittingType({2, 0}), SplittingType({1})}};
    for (const auto& [e1, e2] : shapes)
        for (int trial = 0; trial < 9; ++trial) {
            const auto c = BinForm::constant(Rat(random_int(rng, -2, 2)));
            out.push_back(make_triple(0, e1, FormMatrix::scalar(e1.summands(), c), e2,
                                      FormMatrix::scalar(e2.summands(), c),
                                      random_map(e2.summands(), e1.summands(), rng, -3, 3)));
        }
    // non-scalar factor: Jordan block on O + O with f landing in its kernel
    const SplittingType line({0}), plane({0, 0});
    const auto jordan = FormMatrix::checked({0, 0}, {0, 0}, {f("0", 0), f("1", 0), f("0", 0), f("0", 0)});
    for (int trial = 0; trial < 6; ++trial) {
        const auto g = BinForm::constant(Rat(random_int(rng, -3, 3)));
        out.push_back(make_triple(0, line, zero_field(line, 0), plane, jordan,
                                  FormMatrix::checked({0, 0}, {0}, {g, BinForm::zero(0)})));
    }
    if (equal_ranks_too)
        for (int trial = 0; trial < 6; ++trial) {
            const SplittingType e1({static_cast<int>(random_int(rng, -1, 2))});
            const SplittingType e2({static_cast<int>(random_int(rng, -1, 2))});
            out.push_back(make_triple(0, e1, zero_field(e1, 0), e2, zero_field(e2, 0),
                                      random_map(e2.summands(), e1.summands(), rng)));
        }
    return out;
}

Outcome criterion6() {
    Check c;
    const auto family = triple_family(false);
    for (const auto& t : family) {
        c.count();
        const auto w = alpha_window(t);
        const Rat top = w.alpha_M ? *w.alpha_M : w.alpha_m + 4;
        for (Rat alpha = w.alpha_m - 2; alpha <= top + 2; alpha += Rat(1, 2)) {
            const auto s = decide_nu_alpha(t, alpha).status;
            const bool inside = alpha >= w.alpha_m && (!w.alpha_M || alpha <= *w.alpha_M);
            c.expect(!is_semistable(s) || inside, "semistable outside window at " + to_string(alpha));
            c.expect(decide_nu_alpha(dual_triple(t), alpha).status == s, "duality at " + to_string(alpha));
            c.expect(decide_nu_alpha(shift_family(t, Rat(2)), alpha).status == s, "shift at " + to_string(alpha));
        }
    }
    return c.outcome("triples with unequal ranks");
}

Outcome criterion7() {
    Check c;
    Rng rng(707);
    for (const auto& t : triple_family(true)) {
        c.count();
        const Rat alpha = make_rat(static_cast<long>(random_int(rng, -2, 8)), 2);
        try {
            const auto chain = hn_filtration(t, alpha);
            int r1 = 0, r2 = 0, d1 = 0, d2 = 0;
            for (std::size_t i = 0; i < chain.steps.size(); ++i) {
                const auto& s = chain.steps[i];
                if (i > 0) c.expect(s.nu < chain.steps[i - 1].nu, "slopes not decreasing");
                c.expect(is_semistable(decide_nu_alpha(s.piece, alpha).status), "piece not semistable");
                r1 += s.piece.r1();
                r2 += s.piece.r2();
                d1 += s.piece.d1();
                d2 += s.piece.d2();
            }
            c.expect(r1 == t.r1() && r2 == t.r2(), "rank not conserved");
            c.expect(d1 == t.d1() && d2 == t.d2(), "degree not conserved");
        } catch (const Error& e) {
            c.expect(false, e.what());
        }
    }
    return c.outcome("HN chains");
}

Outcome criterion8() {
    Check c;
    for (int d = 2; d <= 6; ++d) {
        c.count();
        const auto [u, v] = reference_pencil(d);
        const auto w = pencil_degenerate_member(u, v);
        std::string member;
        if (w) member = " (" + w->first.str() + ")u + (" + w->second.str() + ")v";
        c.expect(!w, "reference pencil d=" + std::to_string(d) + " has degenerate member" + member);
    }
    Rng rng(808);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 5;
        BinForm l = random_form(1, rng);
        if (l.is_zero()) l = f("x0", 1);
        const BinForm v = random_form(d, rng);
        c.count();
        c.expect(pencil_degenerate_member(l.pow(d), v).has_value(), "power pencil without witness");
        c.count();
        c.expect(pencil_degenerate_member(v, v * BinForm::constant(Rat(trial + 2))).has_value() || v.is_zero(),
                 "proportional pencil without witness");
    }
    return c.outcome("pencil detector");
}

Outcome criterion9() {
    Check c;
    auto row = [&](bool ok, const char* what) {
        c.count();
        c.expect(ok, what);
    };
    row(moduli_dimension(2, 0) == 9, "moduli r=2 m=0");
    row(moduli_dimension(3, 1) == 10, "moduli r=3 m=1");
    row(moduli_dimension(2, 2) == 1, "moduli r=2 m=2");
    row(chern_bound(2, 1, 4, 2) == -4, "chern r=2");
    row(chern_bound(3, 1, 0, 0) == 1, "chern r=3 L2=1");
    row(chern_bound(3, 0, 1, 1) == -7, "chern r=3 R2=1 LR=1");
    row(nilpotent_space_dimension(3, 1, -1, -1) == 3, "nilpotent n=3 m=1");
    row(nilpotent_space_dimension(3, 2, -3, 0) == 2, "nilpotent n=3 m=2");
    row(quadric_extension_screen(1, 0, 0, 1, 2).c2 == 3, "quadric c2");
    row(genus_nonexistence(2, 1), "genus 2 pole order 1");
    row(log_tangent_catalog({Ambient::P1Points, 1, 3}).twist() == -1, "P1 three points");
    row(log_tangent_catalog({Ambient::PnHyperplanes, 3, 2}).str() == "O + O(1) + O(1)", "P3 two hyperplanes");
    row(log_tangent_catalog({Ambient::QuadricLines, 2, 0, 1, 1}).str() == "O(1,0) + O(0,1)", "quadric lines");
    row(log_tangent_catalog({Ambient::QuadricTMinusD}).str() == "O(1,0) + O(-1,2)", "quadric T(-D)");
    LogTangentDescriptor mero{Ambient::P1Meromorphic};
    mero.pole_orders = {1, 2};
    row(log_tangent_catalog(mero).twist() == 5, "meromorphic poles 1,2");
    return c.outcome("closed-form table");
}

Outcome criterion10() {
    Check c;
    Rng rng(1010);
    auto implication = [&](const MultiField& mf) {
        c.expect(!is_2nilpotent(mf) || is_integrable(mf), "nilpotent but not integrable");
    };
    for (int trial = 0; trial < 100; ++trial) {
        const int r = 2 + trial % 2;
        std::vector<int> a;
        for (int i = 0; i < r; ++i) a.push_back(static_cast<int>(random_int(rng, -1, 2)));
        std::sort(a.rbegin(), a.rend());
        const SplittingType e(a);
        MultiField mf{e, {1, 2}, {}};
        for (int t : mf.twists) {
            // nonzero entries only in row 0 and columns >= 1, so every composition vanishes
            auto m = FormMatrix::zero(e.twisted(t).summands(), e.summands());
            for (std::size_t i = 1; i < m.cols(); ++i) m.set(0, i, random_form(m.expected_degree(0, i), rng));
            if (m.is_zero()) m.set(0, 1, BinForm::monomial(m.expected_degree(0, 1), 0));
            mf.components.push_back(m);
        }
        c.count();
        c.expect(is_2nilpotent(mf) && is_integrable(mf), "triangular field " + e.str());
        implication(mf);
    }
    const SplittingType e({0, 0});
    for (int trial = 0; trial < 100; ++trial) {
        auto nonzero = [&](int d) {
            BinForm g = random_form(d, rng);
            return g.is_zero() ? BinForm::monomial(d, 0) : g;
        };
        const int t1 = 1 + trial % 2, t2 = 1 + (trial / 2) % 2;
        // (0,0) entries of the two compositions differ by the product a b
        auto m1 = FormMatrix::zero(e.twisted(t1).summands(), e.summands());
        m1.set(0, 0, random_form(t1, rng));
        m1.set(1, 1, random_form(t1, rng));
        m1.set(0, 1, nonzero(t1));
        auto m2 = FormMatrix::zero(e.twisted(t2).summands(), e.summands());
        m2.set(0, 0, random_form(t2, rng));
        m2.set(1, 1, random_form(t2, rng));
        m2.set(1, 0, nonzero(t2));
        const MultiField mf{e, {t1, t2}, {m1, m2}};
        c.count();
        c.expect(!is_integrable(mf), "non-commuting pair judged integrable");
        implication(mf);
    }
    return c.outcome("multi-fields");
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"1 explicit stable construction", criterion1}, {"2 gap necessity", criterion2},
        {"3 rank-2 oracle agreement", criterion3},      {"4 non-positive twists", criterion4},
        {"5 coherent thresholds", criterion5},          {"6 triple window", criterion6},
        {"7 HN filtration", criterion7},                {"8 pencil detector", criterion8},
        {"9 closed forms", criterion9},                 {"10 integrability", criterion10}};
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %s (%.2fs): %s\n", o.ok ? "PASS" : "FAIL", name, secs, o.detail.c_str());
        if (!o.ok) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
