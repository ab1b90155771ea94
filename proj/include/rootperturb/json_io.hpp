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

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "rootperturb/errors.hpp"
#include "rootperturb/operators.hpp"
#include "rootperturb/poly.hpp"
#include "rootperturb/roots.hpp"
#include "rootperturb/search.hpp"
#include "rootperturb/star_apolar.hpp"

namespace rootperturb::io {

using nlohmann::json;

inline json complex_to_json(Cplx z) { return json::array({z.real(), z.imag()}); }

inline Cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex values are encoded as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json complex_vec_to_json(const std::vector<Cplx>& v) {
    json out = json::array();
    for (const Cplx& z : v) out.push_back(complex_to_json(z));
    return out;
}

inline std::vector<Cplx> complex_vec_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of [re, im] pairs");
    std::vector<Cplx> out;
    out.reserve(j.size());
    for (const json& e : j) out.push_back(complex_from_json(e));
    return out;
}

/// +inf is encoded as the string "inf".
inline json extended_to_json(double v) {
    if (std::isinf(v)) return json("inf");
    return json(v);
}

// ---- polynomials: {"n": cap, "basis": "monomial"|"phi", "coeffs": [...]}

inline json to_json(const Poly& p) {
    return json{{"n", p.cap()}, {"basis", "monomial"}, {"coeffs", complex_vec_to_json(p.monomial_coeffs())}};
}

inline Poly poly_from_json(const json& j, std::optional<int> default_n = std::nullopt) {
    if (!j.is_object() || !j.contains("coeffs")) throw ParseError("polynomial document needs a coeffs field");
    std::vector<Cplx> coeffs = complex_vec_from_json(j.at("coeffs"));
    int n;
    if (j.contains("n"))
        n = j.at("n").get<int>();
    else if (default_n)
        n = *default_n;
    else
        n = static_cast<int>(coeffs.size()) - 1;
    if (n < 0 || static_cast<int>(coeffs.size()) > n + 1)
        throw ParseError("coefficient list longer than n+1");
    coeffs.resize(static_cast<std::size_t>(n) + 1, Cplx{});
    const std::string basis = j.value("basis", std::string("monomial"));
    if (basis == "monomial") return Poly(n, std::move(coeffs));
    if (basis == "phi") return Poly::from_phi(n, coeffs);
    throw ParseError("basis must be \"monomial\" or \"phi\"");
}

// ---- root multisets

inline json to_json(const RootMultiset& z) {
    switch (z.kind) {
        case RootMultiset::Kind::finite:
            return json{{"kind", "finite"}, {"points", complex_vec_to_json(z.points)}};
        case RootMultiset::Kind::empty_set:
            return json{{"kind", "empty"}};
        case RootMultiset::Kind::whole_plane:
            return json{{"kind", "whole_plane"}};
    }
    return {};
}

inline RootMultiset multiset_from_json(const json& j) {
    const std::string kind = j.value("kind", std::string());
    if (kind == "finite") return RootMultiset::finite(complex_vec_from_json(j.at("points")));
    if (kind == "empty") return RootMultiset::empty();
    if (kind == "whole_plane") return RootMultiset::whole_plane();
    throw ParseError("root multiset kind must be finite|empty|whole_plane");
}

// ---- operators

using OperatorVariant = std::variant<DAlgOperator, MatrixOperator>;

inline json to_json(const DAlgOperator& t) {
    return json{{"kind", "dalg"}, {"n", t.cap()}, {"a", complex_vec_to_json(t.coeffs())}};
}

inline json to_json(const MatrixOperator& m) {
    json rows = json::array();
    for (int i = 0; i <= m.cap(); ++i) {
        json row = json::array();
        for (int j = 0; j <= m.cap(); ++j) row.push_back(complex_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return json{{"kind", "matrix"}, {"n", m.cap()}, {"rows", rows}};
}

inline OperatorVariant operator_from_json(const json& j, std::optional<int> default_n = std::nullopt) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError("operator document needs a kind field");
    const std::string kind = j.at("kind").get<std::string>();
    const auto get_n = [&]() -> int {
        if (j.contains("n")) return j.at("n").get<int>();
        if (default_n) return *default_n;
        throw ParseError("operator document needs n (or pass --n)");
    };
    if (kind == "dalg") {
        const int n = get_n();
        std::vector<Cplx> a = complex_vec_from_json(j.at("a"));
        if (static_cast<int>(a.size()) > n + 1) throw ParseError("coefficient list longer than n+1");
        a.resize(static_cast<std::size_t>(n) + 1, Cplx{});
        return DAlgOperator(n, std::move(a));
    }
    if (kind == "shift") return shift_operator(complex_from_json(j.at("alpha")), get_n());
    if (kind == "hk") return hk_operator(j.at("k").get<int>(), complex_from_json(j.at("gamma")), get_n());
    if (kind == "reflect") return MatrixOperator::reflection(get_n());
    if (kind == "matrix") {
        const int n = get_n();
        const json& rows = j.at("rows");
        if (!rows.is_array() || static_cast<int>(rows.size()) != n + 1)
            throw ParseError("matrix needs (n+1) rows");
        MatrixOperator m(n);
        for (int r = 0; r <= n; ++r) {
            const std::vector<Cplx> row = complex_vec_from_json(rows[static_cast<std::size_t>(r)]);
            if (static_cast<int>(row.size()) != n + 1) throw ParseError("matrix rows need n+1 entries");
            for (int c = 0; c <= n; ++c) m.at(r, c) = row[static_cast<std::size_t>(c)];
        }
        return m;
    }
    throw ParseError("operator kind must be dalg|matrix|shift|hk|reflect");
}

inline MatrixOperator to_matrix(const OperatorVariant& op) {
    if (std::holds_alternative<DAlgOperator>(op)) return matrix_of(std::get<DAlgOperator>(op));
    return std::get<MatrixOperator>(op);
}

/// The algebra element behind the variant; matrices go through membership.
inline DAlgOperator as_dalg(const OperatorVariant& op, double tol) {
    if (std::holds_alternative<DAlgOperator>(op)) return std::get<DAlgOperator>(op);
    const MembershipResult mem = membership(std::get<MatrixOperator>(op), tol);
    if (!mem.in_algebra())
        throw PreconditionError("matrix operator is not in the differentiation algebra (commutator norm " +
                                std::to_string(mem.commutator_norm) + ")");
    return *mem.op;
}

// ---- circular domains

inline json to_json(const CircularDomain& d) {
    switch (d.kind) {
        case CircularDomain::Kind::disk:
            return json{{"kind", "disk"}, {"center", complex_to_json(d.center)}, {"radius", d.radius}};
        case CircularDomain::Kind::disk_exterior:
            return json{{"kind", "disk_exterior"}, {"center", complex_to_json(d.center)}, {"radius", d.radius}};
        case CircularDomain::Kind::half_plane:
            return json{{"kind", "half_plane"}, {"normal", complex_to_json(d.normal)}, {"offset", d.offset}};
    }
    return {};
}

inline CircularDomain domain_from_json(const json& j) {
    const std::string kind = j.value("kind", std::string());
    if (kind == "disk")
        return CircularDomain::closed_disk(complex_from_json(j.at("center")), j.at("radius").get<double>());
    if (kind == "disk_exterior")
        return CircularDomain::disk_exterior(complex_from_json(j.at("center")), j.at("radius").get<double>());
    if (kind == "half_plane")
        return CircularDomain::half_plane(complex_from_json(j.at("normal")), j.at("offset").get<double>());
    throw ParseError("domain kind must be disk|disk_exterior|half_plane");
}

// ---- search reports

inline json to_json(const EmpiricalSup& e, DistKind kind) {
    json per = json::object();
    for (const StrategyStats& s : e.per_strategy)
        per[to_string(s.strategy)] = json{{"sup", s.sup}, {"trials", s.trials}};
    return json{{"dist", to_string(kind)},
                {"empirical_sup_lower_bound", e.sup_value},
                {"witness", to_json(e.witness)},
                {"per_strategy", per}};
}

inline json to_json(const DivergenceFamily& f) {
    json pts = json::array();
    for (const DivergencePoint& p : f.points)
        pts.push_back(json{{"scale", p.scale}, {"f", to_json(p.f)}, {"distance", extended_to_json(p.distance)}});
    return json{{"family", f.name},
                {"points", pts},
                {"monotone", f.monotone},
                {"min_step_ratio", extended_to_json(f.min_step_ratio)},
                {"overall_ratio", extended_to_json(f.overall_ratio)}};
}

inline json to_json(const ClassificationVerdict& v) {
    json out{{"is_in_algebra", v.is_in_algebra},
             {"commutator_norm", v.commutator_norm},
             {"is_invertible", v.is_invertible},
             {"verdict", v.grace ? "grace" : "not_grace"}};
    if (v.op) out["operator"] = to_json(*v.op);
    if (v.grace_evidence) {
        const GraceEvidence& e = *v.grace_evidence;
        out["evidence"] = json{
            {"K_h_exact", e.k_h},
            {"K_H_exact", e.k_H},
            {"t13", json{{"sum_gamma", e.t13.sum_gamma},
                         {"K_h_ub", e.t13.k_h_ub},
                         {"K_H_ub", e.t13.k_H_ub},
                         {"K_F_ub", e.t13.k_F_ub}}},
            {"empirical_sup_lower_bound",
             json{{"m", e.sup_m}, {"h", e.sup_h}, {"H", e.sup_H}, {"F", e.sup_F}}}};
    } else if (!v.divergence_evidence.empty()) {
        json fams = json::array();
        for (const DivergenceFamily& f : v.divergence_evidence) fams.push_back(to_json(f));
        out["evidence"] = json{{"divergence", fams}};
    }
    return out;
}

}  // namespace rootperturb::io
