#pragma once

// JSON serialization of forms, matrices, splitting types, pairs, verdicts,
// triples and filtrations. Rationals travel as "p/q" strings.

#include "cohiggs/catalog.hpp"
#include "cohiggs/coherent.hpp"
#include "cohiggs/formulas.hpp"
#include "cohiggs/triples.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace cohiggs::json_io {

using Json = nlohmann::json;

inline Json to_json(const Rat& r) { return to_string(r); }

inline Rat rat_from_json(const Json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw Error("expected a rational as a \"p/q\" string or an integer");
}

inline int int_from_json(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) throw Error(std::string("missing integer field '") + key + "'");
    return j.at(key).get<int>();
}

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(std::string("missing field '") + key + "'");
    return j.at(key);
}

// forms

inline Json to_json(const BinForm& f) {
    Json c = Json::array();
    if (f.degree() >= 0)
        for (const auto& x : f.coeffs()) c.push_back(to_string(x));
    return {{"degree", f.degree()}, {"coeffs", c}};
}

inline Json to_json(const BasicForm<QuadNumber>& f) {
    Rat radicand = 0;
    for (const auto& x : f.coeffs())
        if (!x.is_rational()) radicand = x.radicand();
    if (is_zero(radicand)) return to_json(to_rational_form(f));
    Json a = Json::array(), b = Json::array();
    for (const auto& x : f.coeffs()) {
        a.push_back(to_string(x.rational_part()));
        b.push_back(to_string(x.irrational_part()));
    }
    return {{"degree", f.degree()}, {"coeffs", a}, {"sqrtCoeffs", b}, {"radicand", to_string(radicand)}};
}

/// Accepts {"degree","coeffs"} or an expression string such as "x0^2 - 3*x1^2".
inline BinForm form_from_json(const Json& j, std::optional<int> degree = std::nullopt) {
    if (j.is_string()) return parse_form(j.get<std::string>(), degree);
    if (j.is_number_integer()) return parse_form(std::to_string(j.get<long>()), degree);
    const int d = int_from_json(j, "degree");
    const Json& c = field(j, "coeffs");
    if (!c.is_array()) throw Error("form coeffs must be an array");
    if (d < 0) {
        if (!c.empty()) throw Error("a form of negative degree must be zero");
        return BinForm::zero(d);
    }
    if (c.size() != static_cast<std::size_t>(d) + 1) throw Error("form needs degree+1 coefficients");
    std::vector<Rat> v;
    for (const auto& x : c) v.push_back(rat_from_json(x));
    auto f = BinForm::from_coeffs(v);
    if (degree && *degree != d) {
        if (!f.is_zero()) throw Error("form degree does not match the degree ledger");
        return BinForm::zero(*degree);
    }
    return f;
}

inline BasicForm<QuadNumber> quad_form_from_json(const Json& j, std::optional<int> degree = std::nullopt) {
    if (!j.is_object() || !j.contains("sqrtCoeffs")) return lift_form<QuadNumber>(form_from_json(j, degree));
    const int d = int_from_json(j, "degree");
    const Json& a = field(j, "coeffs");
    const Json& b = field(j, "sqrtCoeffs");
    const Rat c = rat_from_json(field(j, "radicand"));
    if (a.size() != static_cast<std::size_t>(d) + 1 || b.size() != a.size()) throw Error("form needs degree+1 coefficients");
    std::vector<QuadNumber> v;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rat bi = rat_from_json(b[i]);
        v.push_back(is_zero(bi) ? QuadNumber(rat_from_json(a[i])) : QuadNumber(rat_from_json(a[i]), bi, c));
    }
    return BasicForm<QuadNumber>::from_coeffs(v);
}

// matrices

template <class F>
Json matrix_to_json(const BasicFormMatrix<F>& m) {
    Json e = Json::array();
    for (std::size_t j = 0; j < m.rows(); ++j) {
        Json row = Json::array();
        for (std::size_t i = 0; i < m.cols(); ++i) {
            auto x = m.at(j, i);
            if (x.is_zero()) x = BasicForm<F>::zero(m.expected_degree(j, i));
            row.push_back(to_json(x));
        }
        e.push_back(row);
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"rowDegrees", m.row_degrees()}, {"colDegrees", m.col_degrees()},
            {"entries", e}};
}

inline Json to_json(const FormMatrix& m) { return matrix_to_json(m); }
inline Json to_json(const BasicFormMatrix<QuadNumber>& m) { return matrix_to_json(m); }

template <class F, class Parse>
BasicFormMatrix<F> parse_matrix(const Json& j, Parse parse) {
    const auto rd = field(j, "rowDegrees").get<std::vector<int>>();
    const auto cd = field(j, "colDegrees").get<std::vector<int>>();
    if (j.contains("rows") && j.at("rows").get<std::size_t>() != rd.size()) throw Error("rows does not match rowDegrees");
    if (j.contains("cols") && j.at("cols").get<std::size_t>() != cd.size()) throw Error("cols does not match colDegrees");
    const Json& e = field(j, "entries");
    if (!e.is_array() || e.size() != rd.size()) throw Error("entries must have one array per row");
    auto m = BasicFormMatrix<F>::zero(rd, cd);
    for (std::size_t r = 0; r < rd.size(); ++r) {
        if (!e[r].is_array() || e[r].size() != cd.size()) throw Error("entries row has the wrong length");
        for (std::size_t c = 0; c < cd.size(); ++c) {
            const int deg = m.expected_degree(r, c);
            m.set(r, c, parse(e[r][c], deg));
        }
    }
    if (!m.ledger_ok()) throw Error("form matrix violates the degree ledger");
    return m;
}

inline FormMatrix matrix_from_json(const Json& j) {
    return parse_matrix<Rat>(j, [](const Json& x, int d) { return form_from_json(x, d); });
}

inline BasicFormMatrix<QuadNumber> quad_matrix_from_json(const Json& j) {
    return parse_matrix<QuadNumber>(j, [](const Json& x, int d) { return quad_form_from_json(x, d); });
}

// bundles

inline Json to_json(const SplittingType& e) { return {{"n", 1}, {"summands", e.summands()}}; }

/// Accepts {"n":1,"summands":[...]}, a bare array, or a string "[a1,...]".
inline SplittingType splitting_from_json(const Json& j) {
    if (j.is_string()) return splitting_from_json(Json::parse(j.get<std::string>()));
    if (j.is_array()) return j.empty() ? SplittingType::zero() : SplittingType(j.get<std::vector<int>>());
    if (j.contains("n") && j.at("n") != 1) throw Error("only bundles on the projective line are supported");
    const auto s = field(j, "summands").get<std::vector<int>>();
    return s.empty() ? SplittingType::zero() : SplittingType(s);
}

inline Json to_json(const BundleMap& m) {
    Json j = to_json(m.matrix);
    j["source"] = to_json(m.source);
    j["target"] = to_json(m.target);
    return j;
}

inline BundleMap bundle_map_from_json(const Json& j) {
    return BundleMap{splitting_from_json(field(j, "source")), splitting_from_json(field(j, "target")), matrix_from_json(j)};
}

inline Json to_json(const SubbundleWitness& w) {
    return {{"rank", w.rank},           {"degree", w.degree},
            {"slope", w.rank ? Json(to_string(w.slope())) : Json(nullptr)},
            {"saturated", w.saturated}, {"tag", w.tag},
            {"inclusion", to_json(w.inclusion)}};
}

inline SubbundleWitness witness_from_json(const Json& j) {
    SubbundleWitness w;
    w.inclusion = quad_matrix_from_json(field(j, "inclusion"));
    w.rank = int_from_json(j, "rank");
    w.degree = int_from_json(j, "degree");
    w.saturated = field(j, "saturated").get<bool>();
    w.tag = field(j, "tag").get<std::string>();
    return w;
}

inline bool same_witness(const SubbundleWitness& a, const SubbundleWitness& b) {
    return a.inclusion == b.inclusion && a.rank == b.rank && a.degree == b.degree && a.saturated == b.saturated &&
           a.tag == b.tag;
}

// pairs and verdicts

inline Json to_json(const CoHiggsPair& p) { return {{"E", to_json(p.E)}, {"k", p.k}, {"phi", to_json(p.phi)}}; }

inline CoHiggsPair pair_from_json(const Json& j) {
    CoHiggsPair p{splitting_from_json(field(j, "E")), int_from_json(j, "k"), matrix_from_json(field(j, "phi"))};
    if (!validate_pair(p)) throw Error("phi is not a map E -> E(k)");
    return p;
}

inline Json place_to_json(const std::optional<Rat>& place) { return place ? Json(to_string(*place)) : Json("infinity"); }

inline std::optional<Rat> place_from_json(const Json& j) {
    if (j == "infinity") return std::nullopt;
    return rat_from_json(j);
}

inline Json to_json(const StabilityVerdict& v) {
    Json cert = Json::object();
    cert["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
    cert["eisensteinPlace"] = v.eisenstein_place ? place_to_json(*v.eisenstein_place) : Json(nullptr);
    cert["transcript"] = v.transcript;
    return {{"status", to_string(v.status)}, {"certificate", cert}};
}

inline StabilityVerdict verdict_from_json(const Json& j) {
    StabilityVerdict v;
    v.status = parse_status(field(j, "status").get<std::string>());
    const Json& c = field(j, "certificate");
    if (c.contains("witness") && !c.at("witness").is_null()) v.witness = witness_from_json(c.at("witness"));
    if (c.contains("eisensteinPlace") && !c.at("eisensteinPlace").is_null())
        v.eisenstein_place = place_from_json(c.at("eisensteinPlace"));
    if (c.contains("transcript")) v.transcript = c.at("transcript").get<std::vector<std::string>>();
    return v;
}

inline bool same_verdict(const StabilityVerdict& a, const StabilityVerdict& b) {
    if (a.status != b.status || a.transcript != b.transcript || a.eisenstein_place != b.eisenstein_place) return false;
    if (a.witness.has_value() != b.witness.has_value()) return false;
    return !a.witness || same_witness(*a.witness, *b.witness);
}

inline bool same_pair(const CoHiggsPair& a, const CoHiggsPair& b) { return a.E == b.E && a.k == b.k && a.phi == b.phi; }

inline Json to_json(const AlphaThresholds& t) {
    return {{"beta", t.beta ? Json(to_string(*t.beta)) : Json(nullptr)},
            {"gamma", t.gamma ? Json(to_string(*t.gamma)) : Json(nullptr)},
            {"gamma0", to_string(t.gamma0)}};
}

inline Json to_json(const CSVerdict& v) {
    return {{"status", to_string(v.status)},
            {"value", to_string(v.value)},
            {"target", to_string(v.target)},
            {"F", v.F ? to_json(*v.F) : Json(nullptr)},
            {"G", v.G ? to_json(*v.G) : Json(nullptr)},
            {"transcript", v.transcript}};
}

// triples

inline Json to_json(const Triple& t) {
    return {{"k", t.k},
            {"E1", to_json(t.p1.E)},
            {"phi1", to_json(t.p1.phi)},
            {"E2", to_json(t.p2.E)},
            {"phi2", to_json(t.p2.phi)},
            {"f", to_json(t.f)}};
}

inline Triple triple_from_json(const Json& j) {
    const int k = int_from_json(j, "k");
    Triple t = make_triple(k, splitting_from_json(field(j, "E1")), matrix_from_json(field(j, "phi1")),
                           splitting_from_json(field(j, "E2")), matrix_from_json(field(j, "phi2")),
                           matrix_from_json(field(j, "f")));
    if (!validate_triple(t)) throw Error("f does not intertwine the fields");
    return t;
}

inline bool same_triple(const Triple& a, const Triple& b) {
    return a.k == b.k && same_pair(a.p1, b.p1) && same_pair(a.p2, b.p2) && a.f == b.f;
}

inline Json to_json(const Subtriple& s) {
    return {{"S1", to_json(s.s1)}, {"S2", to_json(s.s2)}};
}

inline Json to_json(const TripleVerdict& v) {
    return {{"status", to_string(v.status)},
            {"nu", to_string(v.nu)},
            {"certificate", {{"witness", v.witness ? to_json(*v.witness) : Json(nullptr)}, {"transcript", v.transcript}}}};
}

inline Json to_json(const HNChain& c) {
    Json steps = Json::array();
    for (const auto& s : c.steps) {
        steps.push_back({{"nu", to_string(s.nu)},
                         {"ranks", {s.piece.r1(), s.piece.r2()}},
                         {"degrees", {s.piece.d1(), s.piece.d2()}},
                         {"piece", to_json(s.piece)}});
    }
    return {{"alpha", to_string(c.alpha)}, {"steps", steps}};
}

inline Json to_json(const AlphaWindow& w) {
    return {{"alphaMin", to_string(w.alpha_m)}, {"alphaMax", w.alpha_M ? Json(to_string(*w.alpha_M)) : Json(nullptr)}};
}

// misc

inline Json to_json(const LogTangentBundle& b) {
    Json s = Json::array();
    for (const auto& l : b.summands) s.push_back(l);
    Json j = {{"summands", s}, {"labels", b.labels()}, {"text", b.str()}};
    if (auto k = b.twist()) j["twist"] = *k;
    return j;
}

inline Json to_json(const QuadricScreen& s) {
    return {{"c1", {s.c1.first, s.c1.second}},
            {"c2", s.c2},
            {"subSlope", to_string(s.sub_slope)},
            {"quotientSlope", to_string(s.quotient_slope)},
            {"totalSlope", to_string(s.total_slope)},
            {"verdict", s.verdict}};
}

inline Json to_json(const AffineSolution& s) {
    auto mat = [](const std::vector<std::vector<Rat>>& m) {
        Json out = Json::array();
        for (const auto& row : m) {
            Json r = Json::array();
            for (const auto& x : row) r.push_back(to_string(x));
            out.push_back(r);
        }
        return out;
    };
    Json basis = Json::array();
    for (const auto& b : s.null_basis) basis.push_back(mat(b));
    return {{"consistent", s.consistent},
            {"particular", s.consistent ? mat(s.particular) : Json(nullptr)},
            {"nullBasis", basis}};
}

inline std::vector<std::vector<Rat>> rat_matrix_from_json(const Json& j) {
    if (!j.is_array()) throw Error("expected a matrix as an array of rows");
    std::vector<std::vector<Rat>> out;
    for (const auto& row : j) {
        if (!row.is_array()) throw Error("expected a matrix as an array of rows");
        std::vector<Rat> r;
        for (const auto& x : row) r.push_back(rat_from_json(x));
        if (!out.empty() && r.size() != out.front().size()) throw Error("ragged matrix");
        out.push_back(r);
    }
    return out;
}

}  // namespace cohiggs::json_io
