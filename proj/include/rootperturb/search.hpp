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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "rootperturb/distances.hpp"
#include "rootperturb/errors.hpp"
#include "rootperturb/k_functionals.hpp"
#include "rootperturb/operators.hpp"
#include "rootperturb/poly.hpp"
#include "rootperturb/roots.hpp"

namespace rootperturb {

enum class Strategy { iid_disk, repeated_root, circle, hill_climb };
enum class DistKind { m, h, H, F };

struct SearchConfig {
    std::uint64_t seed = 0;
    int trials = 200;
    double radius = 2.0;
    std::vector<Strategy> strategies{Strategy::iid_disk, Strategy::circle, Strategy::hill_climb};
    int hill_steps = 20;
    double step_scale = 0.25;
};

/// Counter-based generator keyed by (seed, stream, index); no shared state,
/// so trials are replayable and order-independent.
struct CounterRng {
    std::uint64_t state;

    CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
        state = seed;
        absorb(stream);
        absorb(index);
    }

    void absorb(std::uint64_t v) {
        state ^= v + 0x9e3779b97f4a7c15ULL + (state << 6) + (state >> 2);
        (void)next();
    }

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    Cplx uniform_disk(double radius) {
        const double r = radius * std::sqrt(uniform01());
        const double th = 2.0 * std::numbers::pi * uniform01();
        return {r * std::cos(th), r * std::sin(th)};
    }

    Cplx gaussian() {
        double u1 = uniform01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * std::numbers::pi * u2),
                r * std::sin(2.0 * std::numbers::pi * u2)};
    }
};

/// A sampled monic polynomial together with the roots it was built from.
struct Sample {
    Poly poly;
    std::vector<Cplx> roots;
};

namespace detail {

inline std::uint64_t strategy_stream(Strategy s) {
    switch (s) {
        case Strategy::iid_disk: return 1;
        case Strategy::repeated_root: return 2;
        case Strategy::circle: return 3;
        case Strategy::hill_climb: return 4;
    }
    return 0;
}

inline Sample sample_from_roots(std::vector<Cplx> roots, int n) {
    Poly p = from_roots(roots, Cplx{1.0, 0.0}, n);
    return {std::move(p), std::move(roots)};
}

}  // namespace detail

inline std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::iid_disk: return "iid_disk";
        case Strategy::repeated_root: return "repeated_root";
        case Strategy::circle: return "circle";
        case Strategy::hill_climb: return "hill_climb";
    }
    return "?";
}

inline std::string to_string(DistKind k) {
    switch (k) {
        case DistKind::m: return "m";
        case DistKind::h: return "h";
        case DistKind::H: return "H";
        case DistKind::F: return "F";
    }
    return "?";
}

/// Draw a degree-n monic sample.  iid_disk: roots i.i.d. uniform in the
/// disk; repeated_root: one root with full multiplicity; circle: equally
/// spaced on a random-radius circle.  hill_climb chains start from an
/// iid_disk draw and are driven inside empirical_sup.
inline Sample sample_polynomial(Strategy strategy, CounterRng& rng, int n, double radius) {
    std::vector<Cplx> roots;
    roots.reserve(static_cast<std::size_t>(n));
    switch (strategy) {
        case Strategy::repeated_root: {
            const Cplx w = rng.uniform_disk(radius);
            roots.assign(static_cast<std::size_t>(n), w);
            break;
        }
        case Strategy::circle: {
            const double r = radius * rng.uniform01();
            const double phase = 2.0 * std::numbers::pi * rng.uniform01();
            for (int k = 0; k < n; ++k) {
                const double th = phase + 2.0 * std::numbers::pi * k / n;
                roots.emplace_back(r * std::cos(th), r * std::sin(th));
            }
            break;
        }
        case Strategy::iid_disk:
        case Strategy::hill_climb:
        default: {
            for (int k = 0; k < n; ++k) roots.push_back(rng.uniform_disk(radius));
            break;
        }
    }
    return detail::sample_from_roots(std::move(roots), n);
}

inline double eval_distance(DistKind kind, const RootMultiset& a, const RootMultiset& b) {
    switch (kind) {
        case DistKind::m: return dist_m(a, b);
        case DistKind::h: return dist_h(a, b);
        case DistKind::H: return dist_H(a, b);
        case DistKind::F: return dist_F(a, b);
    }
    return 0.0;
}

struct StrategyStats {
    Strategy strategy;
    double sup = 0.0;
    int trials = 0;
};

/// An empirical lower bound for the sup; the exact worst-case formulas supply
/// the matching upper bounds.
struct EmpiricalSup {
    double sup_value = 0.0;
    Poly witness{0};
    std::vector<StrategyStats> per_strategy;
};

namespace detail {

template <typename ApplyFn>
double eval_sample(ApplyFn&& apply_fn, DistKind kind, const Sample& s) {
    const Poly tf = apply_fn(s.poly);
    const RootMultiset b = find_roots(tf);
    const RootMultiset a = RootMultiset::finite(s.roots);
    if (kind == DistKind::F && (!b.is_finite() || b.size() != a.size()))
        throw DegreeNotPreserved("operator changed the degree of a sampled polynomial");
    return eval_distance(kind, a, b);
}

template <typename ApplyFn>
void probe_degree_preservation(ApplyFn&& apply_fn, int n, const SearchConfig& cfg) {
    for (int i = 0; i < 50; ++i) {
        const int k = 1 + i % n;
        CounterRng rng(cfg.seed, 99, static_cast<std::uint64_t>(i));
        std::vector<Cplx> roots;
        for (int j = 0; j < k; ++j) roots.push_back(rng.uniform_disk(std::max(cfg.radius, 1.0)));
        const Poly f = from_roots(roots, Cplx{1.0, 0.0}, n);
        if (apply_fn(f).degree(DegreeMode::floating) != k)
            throw DegreeNotPreserved("operator does not preserve degree " + std::to_string(k));
    }
}

template <typename ApplyFn>
EmpiricalSup empirical_sup_impl(ApplyFn&& apply_fn, int n, DistKind kind, const SearchConfig& cfg) {
    if (cfg.trials < 1) throw BadIndex("trials must be >= 1");
    if (cfg.radius <= 0.0) throw BadIndex("radius must be positive");
    if (kind == DistKind::F) probe_degree_preservation(apply_fn, n, cfg);

    EmpiricalSup out;
    out.witness = Poly::phi(n, n);
    out.sup_value = -1.0;
    for (const Strategy strat : cfg.strategies) {
        StrategyStats stats{strat, 0.0, cfg.trials};
        bool first = true;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            CounterRng rng(cfg.seed, strategy_stream(strat), static_cast<std::uint64_t>(trial));
            Sample cur = sample_polynomial(strat, rng, n, cfg.radius);
            double d = eval_sample(apply_fn, kind, cur);
            if (strat == Strategy::hill_climb) {
                for (int step = 0; step < cfg.hill_steps; ++step) {
                    std::vector<Cplx> prop = cur.roots;
                    for (Cplx& r : prop) r += cfg.step_scale * cfg.radius * rng.gaussian();
                    Sample cand = sample_from_roots(std::move(prop), n);
                    const double dc = eval_sample(apply_fn, kind, cand);
                    if (dc > d) {
                        d = dc;
                        cur = std::move(cand);
                    }
                }
            }
            if (first || d > stats.sup) stats.sup = d;
            first = false;
            if (d > out.sup_value) {
                out.sup_value = d;
                out.witness = cur.poly;
            }
        }
        out.per_strategy.push_back(stats);
    }
    if (out.sup_value < 0.0) out.sup_value = 0.0;
    return out;
}

}  // namespace detail

inline EmpiricalSup empirical_sup(const MatrixOperator& m, DistKind kind, const SearchConfig& cfg) {
    return detail::empirical_sup_impl([&m](const Poly& f) { return apply(m, f); }, m.cap(), kind, cfg);
}

inline EmpiricalSup empirical_sup(const DAlgOperator& t, DistKind kind, const SearchConfig& cfg) {
    return detail::empirical_sup_impl([&t](const Poly& f) { return apply(t, f); }, t.cap(), kind, cfg);
}

struct DivergencePoint {
    double scale = 0.0;
    Poly f{0};
    double distance = 0.0;
};

struct DivergenceFamily {
    std::string name;
    std::vector<DivergencePoint> points;
    bool monotone = false;       // strictly increasing distances
    double min_step_ratio = 0.0;
    double overall_ratio = 0.0;  // last / first
};

namespace detail {

inline DivergenceFamily summarize(std::string name, std::vector<DivergencePoint> pts) {
    DivergenceFamily fam{std::move(name), std::move(pts), true, kInfDist, 0.0};
    for (std::size_t i = 1; i < fam.points.size(); ++i) {
        const double prev = fam.points[i - 1].distance;
        const double cur = fam.points[i].distance;
        if (!(cur > prev)) fam.monotone = false;
        const double ratio = prev > 0.0 ? cur / prev : kInfDist;
        fam.min_step_ratio = std::min(fam.min_step_ratio, ratio);
    }
    if (!fam.points.empty() && fam.points.front().distance > 0.0)
        fam.overall_ratio = fam.points.back().distance / fam.points.front().distance;
    return fam;
}

}  // namespace detail

/// Distances along the built-in divergence families at scales 1,10,100,1000.
/// Family roots are known in closed form; only Z(Mf) goes through the
/// solver.  Undefined bottleneck distances are reported as +inf.
inline std::vector<DivergenceFamily> divergence_witness(const MatrixOperator& m, DistKind kind,
                                                        const SearchConfig& cfg) {
    (void)cfg;
    const int n = m.cap();
    if (n < 1) throw BadIndex("divergence families need n >= 1");
    const std::array<double, 4> scales{1.0, 10.0, 100.0, 1000.0};
    double nfact = 1.0;
    for (int j = 2; j <= n; ++j) nfact *= j;

    const auto eval_point = [&](double scale, Poly f, std::vector<Cplx> known) {
        DivergencePoint pt{scale, f, 0.0};
        const RootMultiset a = RootMultiset::finite(std::move(known));
        const RootMultiset b = find_roots(apply(m, f));
        try {
            pt.distance = eval_distance(kind, a, b);
        } catch (const PreconditionError&) {
            pt.distance = kInfDist;
        }
        return pt;
    };

    std::vector<DivergenceFamily> fams;

    {
        // f_t = (z - t)^n, t = scale
        std::vector<DivergencePoint> pts;
        for (const double s : scales) {
            std::vector<Cplx> roots(static_cast<std::size_t>(n), Cplx{s, 0.0});
            pts.push_back(eval_point(s, from_roots(roots, Cplx{1.0, 0.0}, n), roots));
        }
        fams.push_back(detail::summarize("root_scaling", std::move(pts)));
    }

    const auto monomial_minus_constant = [&](double w) {
        Poly f = Poly::phi(n, n) - Poly::constant(n, Cplx{w, 0.0});
        const double r = std::pow(nfact * std::abs(w), 1.0 / n);
        std::vector<Cplx> roots;
        for (int k = 0; k < n; ++k) {
            const double th = 2.0 * std::numbers::pi * k / n + (w < 0.0 ? std::numbers::pi / n : 0.0);
            roots.emplace_back(r * std::cos(th), r * std::sin(th));
        }
        return std::make_pair(std::move(f), std::move(roots));
    };

    {
        // phi_n - w phi_0 with w -> 1 from below, tuned so the root radius of
        // the image under f |-> f + f(0) phi_n passes through decades
        std::vector<DivergencePoint> pts;
        for (const double s : scales) {
            const double sigma = std::pow(10.0 * s, n);
            const double w = sigma / (nfact + sigma);
            auto [f, roots] = monomial_minus_constant(w);
            pts.push_back(eval_point(s, std::move(f), std::move(roots)));
        }
        fams.push_back(detail::summarize("offset_to_one", std::move(pts)));
    }

    {
        // phi_n - w phi_0 with |w| -> infinity; rho[f] = (n! |w|)^{1/n} = 10 s
        std::vector<DivergencePoint> pts;
        for (const double s : scales) {
            const double w = std::pow(10.0 * s, n) / nfact;
            auto [f, roots] = monomial_minus_constant(w);
            pts.push_back(eval_point(s, std::move(f), std::move(roots)));
        }
        fams.push_back(detail::summarize("offset_growing", std::move(pts)));
    }

    {
        // (z - w)^n with |w| = (10 s)^n, so |w|^{1/n} passes through decades
        std::vector<DivergencePoint> pts;
        for (const double s : scales) {
            const double w = std::pow(10.0 * s, n);
            std::vector<Cplx> roots(static_cast<std::size_t>(n), Cplx{w, 0.0});
            pts.push_back(eval_point(s, from_roots(roots, Cplx{1.0, 0.0}, n), roots));
        }
        fams.push_back(detail::summarize("repeated_root_drift", std::move(pts)));
    }

    return fams;
}

struct GraceEvidence {
    double k_h = 0.0;
    double k_H = 0.0;
    T13Bounds t13;
    double sup_m = 0.0;
    double sup_h = 0.0;
    double sup_H = 0.0;
    double sup_F = 0.0;
};

struct ClassificationVerdict {
    bool is_in_algebra = false;
    double commutator_norm = 0.0;
    bool is_invertible = false;
    bool grace = false;
    std::optional<DAlgOperator> op;
    std::optional<GraceEvidence> grace_evidence;
    std::vector<DivergenceFamily> divergence_evidence;
};

/// The verdict depends only on the algebraic tests (commutation with D and
/// a_0 != 0); searches and divergence runs are evidence, never the decision.
inline ClassificationVerdict classify(const MatrixOperator& m, const SearchConfig& cfg,
                                      double tol) {
    if (m.is_zero()) throw ZeroOperator("cannot classify the zero operator");
    const MembershipResult mem = membership(m, tol);
    ClassificationVerdict v;
    v.is_in_algebra = mem.in_algebra();
    v.commutator_norm = mem.commutator_norm;
    if (mem.in_algebra()) {
        v.op = mem.op;
        v.is_invertible = mem.op->is_invertible();
    }
    v.grace = v.is_in_algebra && v.is_invertible;
    if (v.grace) {
        GraceEvidence ev;
        ev.k_h = k_h_exact(*v.op);
        ev.k_H = k_H_exact(*v.op);
        ev.t13 = k_bounds_t13(*v.op);
        ev.sup_m = empirical_sup(*v.op, DistKind::m, cfg).sup_value;
        ev.sup_h = empirical_sup(*v.op, DistKind::h, cfg).sup_value;
        ev.sup_H = empirical_sup(*v.op, DistKind::H, cfg).sup_value;
        ev.sup_F = empirical_sup(*v.op, DistKind::F, cfg).sup_value;
        v.grace_evidence = ev;
    } else {
        // d_m is the weakest distance: its divergence implies the others'
        v.divergence_evidence = divergence_witness(m, DistKind::m, cfg);
    }
    return v;
}

}  // namespace rootperturb
