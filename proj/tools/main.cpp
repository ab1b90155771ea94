/*
   Copyright 2026 The rootperturb authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rootperturb/distances.hpp"
#include "rootperturb/errors.hpp"
#include "rootperturb/json_io.hpp"
#include "rootperturb/k_functionals.hpp"
#include "rootperturb/operators.hpp"
#include "rootperturb/poly.hpp"
#include "rootperturb/roots.hpp"
#include "rootperturb/search.hpp"
#include "rootperturb/star_apolar.hpp"
#include "rootperturb/verification.hpp"

namespace {

using nlohmann::json;
using namespace rootperturb;

// exit codes: 0 ok, 1 verification failure, 2 parse error, 3 precondition
// violation, 4 numerical failure
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitNumerical = 4;

json load_json(const std::string& arg) {
    std::string text;
    if (arg == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw ParseError("cannot open input file: " + arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

void emit(const json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump() << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    if (format == "csv") {
        std::cout << "key,value\n";
        for (const auto& [k, v] : rows) std::cout << k << "," << v << "\n";
    } else {
        std::size_t w = 0;
        for (const auto& [k, v] : rows) w = std::max(w, k.size());
        for (const auto& [k, v] : rows)
            std::cout << k << std::string(w - k.size() + 2, ' ') << v << "\n";
    }
}

std::vector<Strategy> parse_strategies(const std::string& csv) {
    std::vector<Strategy> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "iid_disk")
            out.push_back(Strategy::iid_disk);
        else if (item == "repeated_root")
            out.push_back(Strategy::repeated_root);
        else if (item == "circle")
            out.push_back(Strategy::circle);
        else if (item == "hill_climb")
            out.push_back(Strategy::hill_climb);
        else
            throw ParseError("unknown strategy: " + item);
    }
    if (out.empty()) throw ParseError("no strategies given");
    return out;
}

DistKind parse_dist_kind(const std::string& s) {
    if (s == "m") return DistKind::m;
    if (s == "h") return DistKind::h;
    if (s == "H") return DistKind::H;
    if (s == "F") return DistKind::F;
    throw ParseError("distance must be one of m|h|H|F");
}

struct SearchFlags {
    std::uint64_t seed = 0;
    int trials = 200;
    double radius = 2.0;
    std::string strategies = "iid_disk,circle,hill_climb";
    int hill_steps = 20;
    double step_scale = 0.25;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "search seed");
        cmd->add_option("--trials", trials, "trials per strategy");
        cmd->add_option("--radius", radius, "sampling disk radius");
        cmd->add_option("--strategies", strategies, "comma list of iid_disk|repeated_root|circle|hill_climb");
        cmd->add_option("--hill-steps", hill_steps, "hill-climb steps per chain");
        cmd->add_option("--step-scale", step_scale, "hill-climb step scale (times radius)");
    }

    SearchConfig config() const {
        SearchConfig cfg;
        cfg.seed = seed;
        cfg.trials = trials;
        cfg.radius = radius;
        cfg.strategies = parse_strategies(strategies);
        cfg.hill_steps = hill_steps;
        cfg.step_scale = step_scale;
        return cfg;
    }
};

int run(int argc, char** argv) {
    CLI::App app{"operator algebra on polynomials, root-multiset distances, and the bounded-perturbation classifier"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string format = "json";
    std::optional<int> ambient_n;
    app.add_option("--format", format, "json|csv|table")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--n", ambient_n, "ambient degree bound when the input document omits n");

    // apply
    auto* c_apply = app.add_subcommand("apply", "apply an operator to a polynomial");
    std::string apply_op, apply_poly;
    c_apply->add_option("operator", apply_op, "operator JSON (file, inline, or -)")->required();
    c_apply->add_option("poly", apply_poly, "polynomial JSON")->required();

    // roots
    auto* c_roots = app.add_subcommand("roots", "root multiset of a polynomial");
    std::string roots_poly;
    double roots_tol = kSolverTol;
    c_roots->add_option("poly", roots_poly)->required();
    c_roots->add_option("--tol", roots_tol, "solver tolerance");

    // dist
    auto* c_dist = app.add_subcommand("dist", "all four distances between the root multisets of two polynomials");
    std::string dist_a, dist_b;
    double dist_tol = kSolverTol;
    c_dist->add_option("polyA", dist_a)->required();
    c_dist->add_option("polyB", dist_b)->required();
    c_dist->add_option("--tol", dist_tol, "solver tolerance");

    // bounds
    auto* c_bounds = app.add_subcommand("bounds", "exact values and upper bounds for the worst-case root displacement");
    std::string bounds_op;
    double bounds_tol = 1e-9;
    c_bounds->add_option("operator", bounds_op)->required();
    c_bounds->add_option("--tol", bounds_tol, "membership tolerance for matrix inputs");

    // classify
    auto* c_classify = app.add_subcommand("classify", "decide whether the operator perturbs roots boundedly");
    std::string classify_op;
    double classify_tol = 1e-9;
    SearchFlags classify_flags;
    c_classify->add_option("operator", classify_op)->required();
    c_classify->add_option("--tol", classify_tol, "membership tolerance");
    classify_flags.attach(c_classify);

    // search
    auto* c_search = app.add_subcommand("search", "seeded lower-bound search for a worst-case distance");
    std::string search_op, search_dist = "h";
    SearchFlags search_flags;
    c_search->add_option("operator", search_op)->required();
    c_search->add_option("--dist", search_dist, "m|h|H|F")->required();
    search_flags.attach(c_search);

    // grace
    auto* c_grace = app.add_subcommand("grace", "apolarity-based containment check for a pair of polynomials");
    std::string grace_f, grace_g, grace_dom;
    double grace_tol = kContainmentTol;
    c_grace->add_option("f", grace_f)->required();
    c_grace->add_option("g", grace_g)->required();
    c_grace->add_option("domain", grace_dom)->required();
    c_grace->add_option("--tol", grace_tol, "containment tolerance");

    // verify
    auto* c_verify = app.add_subcommand("verify", "run the built-in verification suite");
    std::string verify_suite = "all";
    std::uint64_t verify_seed = 0;
    c_verify->add_option("--suite", verify_suite, "all|examples|theorems")
        ->check(CLI::IsMember({"all", "examples", "theorems"}));
    c_verify->add_option("--seed", verify_seed, "seed for the randomized audits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitParse;
    }

    if (c_apply->parsed()) {
        const io::OperatorVariant op = io::operator_from_json(load_json(apply_op), ambient_n);
        const Poly f = io::poly_from_json(load_json(apply_poly), ambient_n);
        const Poly out = std::holds_alternative<DAlgOperator>(op)
                             ? apply(std::get<DAlgOperator>(op), f)
                             : apply(std::get<MatrixOperator>(op), f);
        emit(io::to_json(out), format);
        return kExitOk;
    }

    if (c_roots->parsed()) {
        const Poly f = io::poly_from_json(load_json(roots_poly), ambient_n);
        emit(io::to_json(find_roots(f, roots_tol)), format);
        return kExitOk;
    }

    if (c_dist->parsed()) {
        const Poly a = io::poly_from_json(load_json(dist_a), ambient_n);
        const Poly b = io::poly_from_json(load_json(dist_b), ambient_n);
        const RootMultiset za = find_roots(a, dist_tol);
        const RootMultiset zb = find_roots(b, dist_tol);
        json out{{"d_m", io::extended_to_json(dist_m(za, zb))},
                 {"d_h", io::extended_to_json(dist_h(za, zb))},
                 {"d_H", io::extended_to_json(dist_H(za, zb))}};
        if (za.is_finite() && zb.is_finite() && za.size() == zb.size() && za.size() > 0) {
            const BottleneckResult bf = dist_F_matched(za, zb);
            out["d_F"] = bf.value;
            json match = json::array();
            for (std::size_t k = 0; k < bf.matching.size(); ++k)
                match.push_back(json::array({static_cast<int>(k), bf.matching[k]}));
            out["matching"] = match;
        } else {
            out["d_F"] = nullptr;
            out["matching"] = nullptr;
        }
        emit(out, format);
        return kExitOk;
    }

    if (c_bounds->parsed()) {
        const DAlgOperator t = io::as_dalg(io::operator_from_json(load_json(bounds_op), ambient_n), bounds_tol);
        const T13Bounds ub = k_bounds_t13(t);
        json out{{"K_h_exact", k_h_exact(t)},
                 {"K_H_exact", k_H_exact(t)},
                 {"t13", json{{"sum_gamma", ub.sum_gamma},
                              {"K_h_ub", ub.k_h_ub},
                              {"K_H_ub", ub.k_H_ub},
                              {"K_F_ub", ub.k_F_ub}}}};
        out["krks_factor"] = t.cap() >= 2 ? json(k_F_vs_k_H_factor(t.cap())) : json(nullptr);
        emit(out, format);
        return kExitOk;
    }

    if (c_classify->parsed()) {
        const MatrixOperator m = io::to_matrix(io::operator_from_json(load_json(classify_op), ambient_n));
        emit(io::to_json(classify(m, classify_flags.config(), classify_tol)), format);
        return kExitOk;
    }

    if (c_search->parsed()) {
        const MatrixOperator m = io::to_matrix(io::operator_from_json(load_json(search_op), ambient_n));
        const DistKind kind = parse_dist_kind(search_dist);
        emit(io::to_json(empirical_sup(m, kind, search_flags.config()), kind), format);
        return kExitOk;
    }

    if (c_grace->parsed()) {
        const Poly f = io::poly_from_json(load_json(grace_f), ambient_n);
        const Poly g = io::poly_from_json(load_json(grace_g), ambient_n);
        const CircularDomain om = io::domain_from_json(load_json(grace_dom));
        const ContainmentReport rep = check_grace(f, g, om, grace_tol);
        json out{{"passed", rep.passed}, {"worst_margin", rep.worst_margin}};
        out["witness"] = rep.witness ? io::complex_to_json(*rep.witness) : json(nullptr);
        emit(out, format);
        return kExitOk;
    }

    if (c_verify->parsed()) {
        const std::vector<verification::CheckResult> results =
            verification::run_acceptance(verify_suite, verify_seed);
        bool all_ok = true;
        if (format == "json") {
            json rows = json::array();
            for (const auto& r : results) {
                rows.push_back(json{{"check", r.id},
                                    {"expected", r.expected},
                                    {"observed", r.observed},
                                    {"margin", r.margin},
                                    {"status", r.passed ? "pass" : "FAIL"}});
                all_ok = all_ok && r.passed;
            }
            emit(json{{"suite", verify_suite}, {"seed", verify_seed}, {"checks", rows}}, format);
        } else {
            for (const auto& r : results) {
                std::printf("%-4s %-32s margin=%-12.3g expected: %s | observed: %s\n",
                            r.passed ? "ok" : "FAIL", r.id.c_str(), r.margin, r.expected.c_str(),
                            r.observed.c_str());
                all_ok = all_ok && r.passed;
            }
        }
        return all_ok ? kExitOk : kExitVerifyFailed;
    }

    return kExitParse;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    }
}
