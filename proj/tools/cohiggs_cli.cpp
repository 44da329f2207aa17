// Command-line front end: every operation takes JSON (file, inline, or "-" for
// stdin) and prints a JSON report. Exit 0 on success, 2 on validation errors,
// 3 on Unknown verdicts under --strict.

#include "cohiggs/all.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace {

using cohiggs::Error;
using cohiggs::Rat;
using Json = cohiggs::json_io::Json;
namespace jio = cohiggs::json_io;

constexpr int kExitValidation = 2;
constexpr int kExitUnknown = 3;

struct Options {
    std::string input;
    std::string output;
    std::uint64_t seed = 0;
    bool strict = false;
};

Json read_input(const std::string& src) {
    if (src.empty()) throw Error("no input given");
    std::string text;
    if (src == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else if (src.front() == '{' || src.front() == '[') {
        text = src;
    } else {
        std::ifstream in(src);
        if (!in) throw Error("cannot open input '" + src + "'");
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(std::string("malformed JSON: ") + e.what());
    }
}

void write_output(const Options& o, const Json& j) {
    const std::string text = j.dump(2) + "\n";
    if (o.output.empty() || o.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw Error("cannot write output '" + o.output + "'");
    out << text;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(cohiggs::parse_rat(item));
    return out;
}

int exit_for(const Options& o, cohiggs::Status s) { return o.strict && s == cohiggs::Status::Unknown ? kExitUnknown : 0; }

Json char_poly_json(const cohiggs::CoHiggsPair& p) {
    const auto chi = cohiggs::char_poly(p.phi, p.k);
    Json c = Json::array();
    for (const auto& f : chi.coeffs()) c.push_back(jio::to_json(f));
    return {{"grading", chi.grading()}, {"coeffs", c}, {"text", chi.str()}};
}

cohiggs::Ambient parse_ambient(const std::string& s) {
    if (s == "p1") return cohiggs::Ambient::P1Points;
    if (s == "pn") return cohiggs::Ambient::PnHyperplanes;
    if (s == "quadric") return cohiggs::Ambient::QuadricLines;
    if (s == "quadric-t-minus-d") return cohiggs::Ambient::QuadricTMinusD;
    if (s == "p1-meromorphic") return cohiggs::Ambient::P1Meromorphic;
    throw Error("not cataloged");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact stability decisions for co-Higgs pairs, coherent systems and triples on P^1"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--seed", o.seed, "Seed for randomized steps");
    app.add_option("-o,--output", o.output, "Output path (default stdout)");
    app.add_flag("--strict", o.strict, "Exit 3 on Unknown verdicts");

    auto input_opt = [&](CLI::App* c) { c->add_option("input", o.input, "JSON file, inline JSON, or - for stdin"); };

    // catalog
    std::string ambient = "p1";
    int cat_n = 1, cat_m = 0, cat_a = 0, cat_b = 0;
    std::vector<int> poles;
    auto* catalog = app.add_subcommand("catalog", "Logarithmic tangent bundle of an ambient space");
    catalog->add_option("--ambient", ambient, "p1 | pn | quadric | quadric-t-minus-d | p1-meromorphic");
    catalog->add_option("--n", cat_n, "Dimension of P^n");
    catalog->add_option("--m", cat_m, "Number of points or hyperplanes");
    catalog->add_option("--a", cat_a, "Lines of the first ruling");
    catalog->add_option("--b", cat_b, "Lines of the second ruling");
    catalog->add_option("--poles", poles, "Pole orders")->delimiter(',');

    auto* check = app.add_subcommand("check-pair", "Decide stability of a co-Higgs pair");
    input_opt(check);

    std::string cons_e;
    int cons_k = 1;
    auto* construct = app.add_subcommand("construct-stable", "Build a stable field on E with twist k");
    construct->add_option("--E", cons_e, "Splitting type, e.g. \"[0,0,0]\"")->required();
    construct->add_option("--k", cons_k, "Twist k >= 1")->required();

    auto* report = app.add_subcommand("stability-report", "Verdict with characteristic polynomial and invariants");
    input_opt(report);

    std::string alphas;
    int grid = 20;
    auto* scan = app.add_subcommand("coherent-alpha-scan", "mu_alpha verdicts over an alpha grid");
    input_opt(scan);
    scan->add_option("--alphas", alphas, "Comma-separated alpha values (default: grid over (0, 2 gamma0])");
    scan->add_option("--grid", grid, "Number of grid points when --alphas is absent");

    std::string alpha_text = "0";
    auto* tcheck = app.add_subcommand("triple-check", "Validate a triple and decide nu_alpha-stability");
    input_opt(tcheck);
    tcheck->add_option("--alpha", alpha_text, "Parameter alpha");

    auto* thn = app.add_subcommand("triple-hn", "Harder-Narasimhan filtration of a triple");
    input_opt(thn);
    thn->add_option("--alpha", alpha_text, "Parameter alpha");

    std::string pu, pv;
    int pd = 0;
    auto* pencil = app.add_subcommand("pencil-check", "Search a pencil for a zero or perfect-power member");
    pencil->add_option("--u", pu, "First member as an expression");
    pencil->add_option("--v", pv, "Second member as an expression");
    pencil->add_option("--reference", pd, "Use the explicit pencil of this degree");

    std::string rule;
    int f_r = 1, f_m = 0, f_n = 1, f_c1 = 0, f_x = 0, f_g = 0, f_l = 0;
    long f_l2 = 0, f_r2 = 0, f_lr = 0;
    auto* formulas = app.add_subcommand("formulas", "Closed-form numeric rules");
    formulas->add_option("--rule", rule, "moduli-dimension | chern-bound | nilpotent-dimension | genus-nonexistence")
        ->required();
    formulas->add_option("--r", f_r, "Rank");
    formulas->add_option("--m", f_m, "Marked points or hyperplanes");
    formulas->add_option("--n", f_n, "Dimension");
    formulas->add_option("--c1", f_c1, "First Chern class");
    formulas->add_option("--x", f_x, "Maximal twist with sections");
    formulas->add_option("--g", f_g, "Genus");
    formulas->add_option("--l", f_l, "Pole order");
    formulas->add_option("--L2", f_l2, "L.L");
    formulas->add_option("--R2", f_r2, "R.R");
    formulas->add_option("--LR", f_lr, "L.R");

    int q_r = 0, q_d = 0, q_rp = 0, q_dp = 0, q_h1 = 1, q_h2 = 1;
    long q_z = 0;
    auto* quadric = app.add_subcommand("quadric-screen", "Numeric screen of an extension on P^1 x P^1");
    quadric->add_option("--r", q_r, "Sub line bundle O(r,d): r")->required();
    quadric->add_option("--d", q_d, "Sub line bundle O(r,d): d")->required();
    quadric->add_option("--rp", q_rp, "Quotient O(r',d'): r'")->required();
    quadric->add_option("--dp", q_dp, "Quotient O(r',d'): d'")->required();
    quadric->add_option("--degZ", q_z, "Length of Z");
    quadric->add_option("--h1", q_h1, "Polarization O(h1,h2): h1");
    quadric->add_option("--h2", q_h2, "Polarization O(h1,h2): h2");

    auto* inter = app.add_subcommand("intertwiner", "Constant A2 with A2 M = M A1, or the commutant of A");
    input_opt(inter);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << Json{{"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump(2) << "\n";
        return kExitValidation;
    }

    try {
        Json out;
        int code = 0;
        if (catalog->parsed()) {
            cohiggs::LogTangentDescriptor d;
            d.ambient = parse_ambient(ambient);
            d.n = cat_n;
            d.m = cat_m;
            d.a = cat_a;
            d.b = cat_b;
            d.pole_orders = poles;
            out = {{"ambient", ambient}, {"bundle", jio::to_json(cohiggs::log_tangent_catalog(d))}};
        } else if (check->parsed()) {
            const auto p = jio::pair_from_json(read_input(o.input));
            const auto v = cohiggs::decide_stability(p);
            out = {{"pair", jio::to_json(p)}, {"verdict", jio::to_json(v)}};
            code = exit_for(o, v.status);
        } else if (construct->parsed()) {
            const auto e = jio::splitting_from_json(Json(cons_e));
            const auto c = cohiggs::construct_stable_field(e, cons_k, o.seed);
            out = {{"pair", jio::to_json(c.pair)},
                   {"verdict", jio::to_json(c.verdict)},
                   {"usedFallback", c.used_fallback},
                   {"attempts", c.attempts},
                   {"seed", o.seed}};
            code = exit_for(o, c.verdict.status);
        } else if (report->parsed()) {
            const auto p = jio::pair_from_json(read_input(o.input));
            const auto v = cohiggs::decide_stability(p);
            out = {{"pair", jio::to_json(p)},
                   {"verdict", jio::to_json(v)},
                   {"slope", cohiggs::to_string(cohiggs::slope(p.E))},
                   {"balanced", p.E.is_balanced()},
                   {"gapCondition", p.k >= 1 ? Json(cohiggs::gap_condition(p.E, p.k)) : Json(nullptr)},
                   {"twoNilpotent", cohiggs::is_2nilpotent(p)},
                   {"charPoly", char_poly_json(p)}};
            if (p.E.rank() >= 2) out["alphaThresholds"] = jio::to_json(cohiggs::alpha_thresholds(p));
            code = exit_for(o, v.status);
        } else if (scan->parsed()) {
            const Json in = read_input(o.input);
            const auto p = jio::pair_from_json(in.contains("pair") ? in.at("pair") : in);
            if (p.E.rank() < 2) throw Error("alpha scan needs rank at least 2");
            const auto t = cohiggs::alpha_thresholds(p);
            std::vector<Rat> grid_values;
            if (!alphas.empty()) {
                grid_values = parse_rat_list(alphas);
            } else if (in.contains("alphas")) {
                for (const auto& a : in.at("alphas")) grid_values.push_back(jio::rat_from_json(a));
            } else {
                if (grid < 1) throw Error("grid needs at least one point");
                const Rat top = t.gamma0 > 0 ? Rat(2 * t.gamma0) : Rat(2);
                for (int i = 1; i <= grid; ++i) grid_values.push_back(top * cohiggs::make_rat(i, grid));
            }
            Json table = Json::array();
            bool unknown = false;
            for (const auto& a : grid_values) {
                const auto v = cohiggs::decide_mu_alpha(p, a);
                unknown = unknown || v.status == cohiggs::Status::Unknown;
                table.push_back({{"alpha", cohiggs::to_string(a)}, {"verdict", jio::to_json(v)}});
            }
            out = {{"pair", jio::to_json(p)}, {"thresholds", jio::to_json(t)}, {"table", table}};
            code = unknown && o.strict ? kExitUnknown : 0;
        } else if (tcheck->parsed()) {
            const auto t = jio::triple_from_json(read_input(o.input));
            const Rat alpha = cohiggs::parse_rat(alpha_text);
            const auto v = cohiggs::decide_nu_alpha(t, alpha);
            out = {{"triple", jio::to_json(t)}, {"alpha", cohiggs::to_string(alpha)}, {"verdict", jio::to_json(v)}};
            if (t.r1() > 0 && t.r2() > 0) out["window"] = jio::to_json(cohiggs::alpha_window(t));
            code = exit_for(o, v.status);
        } else if (thn->parsed()) {
            const auto t = jio::triple_from_json(read_input(o.input));
            const Rat alpha = cohiggs::parse_rat(alpha_text);
            out = {{"triple", jio::to_json(t)}, {"filtration", jio::to_json(cohiggs::hn_filtration(t, alpha))}};
        } else if (pencil->parsed()) {
            cohiggs::BinForm u, v;
            if (pd > 0) {
                std::tie(u, v) = cohiggs::reference_pencil(pd);
            } else {
                if (pu.empty() || pv.empty()) throw Error("pencil-check needs --u and --v, or --reference");
                u = cohiggs::parse_form(pu);
                v = cohiggs::parse_form(pv, u.degree());
                if (u.is_zero()) u = cohiggs::BinForm::zero(v.degree());
            }
            const auto w = cohiggs::pencil_degenerate_member(u, v);
            out = {{"u", jio::to_json(u)}, {"v", jio::to_json(v)}, {"degenerate", w.has_value()}};
            out["witness"] = w ? Json::array({w->first.str(), w->second.str()}) : Json(nullptr);
        } else if (formulas->parsed()) {
            out = {{"rule", rule}};
            if (rule == "moduli-dimension") out["value"] = cohiggs::moduli_dimension(f_r, f_m);
            else if (rule == "chern-bound") out["value"] = cohiggs::chern_bound(f_r, f_l2, f_r2, f_lr);
            else if (rule == "nilpotent-dimension") out["value"] = cohiggs::nilpotent_space_dimension(f_n, f_m, f_c1, f_x);
            else if (rule == "genus-nonexistence") out["value"] = cohiggs::genus_nonexistence(f_g, f_l);
            else throw Error("unknown rule '" + rule + "'");
        } else if (quadric->parsed()) {
            out = jio::to_json(cohiggs::quadric_extension_screen(q_r, q_d, q_rp, q_dp, q_z, {q_h1, q_h2}));
        } else if (inter->parsed()) {
            const Json in = read_input(o.input);
            if (in.contains("A1")) {
                const auto a1 = jio::rat_matrix_from_json(in.at("A1"));
                const auto m = jio::matrix_from_json(jio::field(in, "M"));
                out = jio::to_json(cohiggs::intertwiner_solve(a1, m));
            } else {
                const auto a = jio::rat_matrix_from_json(jio::field(in, "A"));
                std::vector<int> deg(a.size(), 0);
                if (in.contains("degrees")) deg = in.at("degrees").get<std::vector<int>>();
                out = jio::to_json(cohiggs::commutant(a, deg));
            }
        }
        write_output(o, out);
        return code;
    } catch (const std::exception& e) {
        std::cout << Json{{"error", {{"kind", "validation"}, {"message", e.what()}}}}.dump(2) << "\n";
        return kExitValidation;
    }
}
