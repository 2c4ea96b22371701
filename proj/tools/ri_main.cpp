#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ri/conditions.hpp"
#include "ri/csv.hpp"
#include "ri/norm_spec.hpp"
#include "ri/operators.hpp"
#include "ri/optimal.hpp"
#include "ri/suites.hpp"

namespace {

using nlohmann::ordered_json;

ordered_json json_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

ordered_json condition_json(const ri::ConditionReport& r) {
    ordered_json j;
    j["condition"] = r.condition;
    j["pass"] = r.pass;
    j["sup_ratio"] = json_number(r.sup_ratio);
    j["divergent"] = r.divergent;
    j["grid_size"] = r.grid_size;
    j["stable"] = r.stable;
    j["witness"] = json_number(r.witness);
    return j;
}

// --at accepts a single point or lo:hi:count (log-spaced when lo > 0)
std::vector<double> parse_at(const std::string& at) {
    auto c1 = at.find(':');
    if (c1 == std::string::npos) return {std::stod(at)};
    auto c2 = at.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument("--at expects <t> or <lo>:<hi>:<count>");
    double lo = std::stod(at.substr(0, c1));
    double hi = std::stod(at.substr(c1 + 1, c2 - c1 - 1));
    int count = std::stoi(at.substr(c2 + 1));
    if (!(lo > 0.0 && hi > lo && hi < 1.0 && count >= 2))
        throw std::invalid_argument("--at grid must satisfy 0 < lo < hi < 1, count >= 2");
    std::vector<double> pts;
    double span = std::log(hi / lo);
    for (int i = 0; i < count; ++i)
        pts.push_back(lo * std::exp(span * i / (count - 1)));
    return pts;
}

int cmd_check_profile(const std::string& spec, std::size_t grid_points,
                      const std::string& json_out) {
    auto profile = ri::parse_profile_spec(spec);
    ri::GridSpec gs;
    if (grid_points > 0) gs.points = grid_points;
    ordered_json out;
    out["profile"] = profile.spec();
    out["checks"] = ordered_json::array();
    out["checks"].push_back(condition_json(ri::check_quasiconcave(profile, gs)));
    out["checks"].push_back(condition_json(ri::check_delta2(profile, gs)));
    out["checks"].push_back(condition_json(ri::check_cond1(profile, gs)));
    out["checks"].push_back(condition_json(ri::check_average(profile, gs)));
    out["checks"].push_back(condition_json(ri::check_cond4(profile, gs)));
    bool all_info = true;
    try {
        auto q = ri::classQ_constants(profile, gs);
        ordered_json jq;
        jq["c"] = json_number(q.c);
        jq["d"] = json_number(q.d);
        jq["member"] = q.member;
        jq["c_in_range"] = q.c_in_range;
        out["classQ"] = jq;
    } catch (const std::exception& e) {
        out["classQ"] = std::string("not applicable: ") + e.what();
    }
    std::string text = out.dump(2) + "\n";
    if (!json_out.empty()) {
        std::ofstream f(json_out);
        f << text;
    }
    std::cout << text;
    (void)all_info;
    return 0;
}

int cmd_eval(const std::string& norm_spec, const std::string& op,
             const std::string& profile_spec, const std::string& fn_path,
             const std::string& at, int order) {
    auto f = ri::load_step_csv(fn_path);
    if (!norm_spec.empty()) {
        auto n = ri::parse_norm_spec(norm_spec);
        double v = n(f);
        std::cout << ri::format_double(v) << "\n";
        if (!n.admissible())
            std::cerr << "note: " << n.admissibility_note() << "\n";
        return 0;
    }
    if (op.empty()) throw std::invalid_argument("eval: pass --norm or --op");
    auto I = ri::parse_profile_spec(profile_spec);
    ri::EvalFunction g;
    if (op == "SI")
        g = ri::apply_SI(I, f);
    else if (op == "TI")
        g = ri::apply_TI(I, f);
    else if (op == "HI")
        g = ri::apply_HI(I, f, order);
    else if (op == "RI")
        g = ri::apply_RI(I, f);
    else if (op == "GI")
        g = ri::apply_GI(I, f);
    else if (op == "H")
        g = ri::apply_H_aux(I, f);
    else if (op == "Rprime")
        g = ri::apply_Rprime(I, f);
    else
        throw std::invalid_argument("unknown --op '" + op +
                                    "' (SI|TI|HI|RI|GI|H|Rprime)");
    std::cout << "t,value\n";
    for (double t : parse_at(at))
        std::cout << ri::format_double(t) << "," << ri::format_double(g(t)) << "\n";
    return 0;
}

int cmd_optimal(const std::string& mode, const std::string& space,
                const std::string& profile_spec, const std::string& fn_path) {
    auto X = ri::parse_norm_spec(space);
    auto I = ri::parse_profile_spec(profile_spec);
    auto f = ri::load_step_csv(fn_path);
    ordered_json out;
    out["mode"] = mode;
    out["space"] = X.id();
    ri::NormValue v;
    try {
        if (mode == "target")
            v = ri::target_norm(X, I, f);
        else if (mode == "domain")
            v = ri::domain_norm(X, I, f);
        else if (mode == "target-assoc")
            v = ri::target_assoc_norm(X, I, f);
        else
            throw std::invalid_argument("--mode must be target|domain|target-assoc");
    } catch (const ri::NoOptimalDomain& e) {
        out["error"] = e.what();
        ordered_json jp;
        jp["profile"] = I.spec();
        jp["quasiconcave"] = I.quasiconcave_hint();
        out["profile_report"] = jp;
        std::cout << out.dump(2) << "\n";
        return 2;
    }
    out["value"] = json_number(v.value);
    out["warnings"] = v.warnings;
    ordered_json jp;
    jp["profile"] = I.spec();
    jp["quasiconcave"] = I.quasiconcave_hint();
    out["profile_report"] = jp;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::size_t size,
               const std::string& json_out, bool timing) {
    ri::SuiteOptions opts;
    opts.seed = seed;
    opts.size = size;
    opts.timing = timing;
    std::vector<ri::SuiteResult> results;
    if (suite == "all") {
        results = ri::run_all(opts);
    } else {
        try {
            results.push_back(ri::run_suite(suite, opts));
        } catch (const ri::UnknownSuite& e) {
            std::cerr << e.what() << "\nregistered suites:\n";
            for (const auto& n : e.registry) std::cerr << "  " << n << "\n";
            std::cerr << "  all\n";
            return 2;
        }
    }
    std::string text = ri::to_json(results);
    if (!json_out.empty()) {
        std::ofstream f(json_out);
        f << text;
    }
    bool ok = true;
    for (const auto& r : results) {
        for (const auto& a : r.assertions) {
            if (!a.pass) ok = false;
            std::cout << (a.pass ? "[PASS] " : "[FAIL] ") << r.suite << "/" << a.id
                      << "  measured=" << ri::format_double(a.measured) << "\n";
        }
    }
    std::cout << (ok ? "all assertions passed" : "FAILURES present") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rearrangement-invariant function space toolkit"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check-profile", "run condition checks on a profile");
    std::string profile_spec;
    std::size_t grid_points = 0;
    std::string json_out;
    check->add_option("--profile", profile_spec, "power(a)|gaussian|exp|phi:<b>|log|table:<path>")
        ->required();
    check->add_option("--grid", grid_points, "grid points (default 10000)");
    check->add_option("--json", json_out, "write the report to this file");

    auto* eval = app.add_subcommand("eval", "evaluate a norm or an operator");
    std::string norm_spec, op, fn_path, at = "0.5";
    int order = 1;
    eval->add_option("--norm", norm_spec, "norm spec, e.g. Lp:2 or Z:Lp:2@power(0.5)");
    eval->add_option("--op", op, "operator: SI|TI|HI|RI|GI|H|Rprime");
    eval->add_option("--profile", profile_spec, "profile spec (for --op)");
    eval->add_option("--fn", fn_path, "step function CSV")->required();
    eval->add_option("--at", at, "evaluation point t or lo:hi:count");
    eval->add_option("--order", order, "iteration order for HI");

    auto* optimal = app.add_subcommand("optimal", "optimal target/domain norms");
    std::string mode;
    optimal->add_option("--mode", mode, "target|domain|target-assoc")->required();
    optimal->add_option("--space", norm_spec, "norm spec")->required();
    optimal->add_option("--profile", profile_spec, "profile spec")->required();
    optimal->add_option("--fn", fn_path, "step function CSV")->required();

    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    std::uint64_t seed = 42;
    std::size_t size = 200;
    bool timing = false;
    verify->add_option("--suite", suite, "suite name or 'all'")->required();
    verify->add_option("--seed", seed, "corpus seed");
    verify->add_option("--size", size, "corpus size");
    verify->add_option("--json", json_out, "write the JSON report to this file");
    verify->add_flag("--timing", timing,
                     "include wall-clock runtimes (breaks byte-identical reports)");

    CLI11_PARSE(app, argc, argv);
    try {
        if (check->parsed()) return cmd_check_profile(profile_spec, grid_points, json_out);
        if (eval->parsed()) return cmd_eval(norm_spec, op, profile_spec, fn_path, at, order);
        if (optimal->parsed()) return cmd_optimal(mode, norm_spec, profile_spec, fn_path);
        if (verify->parsed()) return cmd_verify(suite, seed, size, json_out, timing);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
