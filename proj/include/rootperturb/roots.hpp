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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "rootperturb/errors.hpp"
#include "rootperturb/poly.hpp"
#include "rootperturb/quad.hpp"

namespace rootperturb {

inline constexpr double kSolverTol = 1e-13;
inline constexpr int kSolverSweepCap = 500;

/// The root multiset Z(f).  Z(f) of a nonzero constant is Empty; Z(0) is the
/// whole plane.  Finite multisets carry multiplicity by repetition.
struct RootMultiset {
    enum class Kind { finite, empty_set, whole_plane };

    Kind kind = Kind::finite;
    std::vector<Cplx> points;

    static RootMultiset finite(std::vector<Cplx> pts) {
        return {Kind::finite, std::move(pts)};
    }
    static RootMultiset empty() { return {Kind::empty_set, {}}; }
    static RootMultiset whole_plane() { return {Kind::whole_plane, {}}; }

    bool is_finite() const { return kind == Kind::finite; }
    bool is_empty() const { return kind == Kind::empty_set; }
    bool is_whole_plane() const { return kind == Kind::whole_plane; }
    std::size_t size() const { return points.size(); }
};

/// 1 + max_k |c_k / c_deg|: every root lies inside this radius.
inline double cauchy_bound(const Poly& p) {
    const int d = p.degree(DegreeMode::exact);
    if (d < 1) throw NotNonconstant("cauchy_bound requires degree >= 1");
    const double lead = std::abs(p.coeff(d));
    double m = 0.0;
    for (int k = 0; k < d; ++k) m = std::max(m, std::abs(p.coeff(k)) / lead);
    return 1.0 + m;
}

namespace detail {

// Initial radii from the upper convex hull of (k, log|c_k|): each hull edge
// of slope -log r contributes its width in starting points at radius r.
// Works in log space, so wide coefficient ranges cannot overflow, and the
// radii bracket the actual root moduli.
inline std::vector<double> newton_polygon_radii(const std::vector<Cplx>& c) {
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<std::pair<double, double>> pts;  // (k, log|c_k|)
    for (int k = 0; k <= d; ++k)
        if (std::abs(c[k]) > 0.0) pts.emplace_back(k, std::log(std::abs(c[k])));
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (hull.size() >= 2) {
            const auto& o = pts[hull[hull.size() - 2]];
            const auto& a = pts[hull[hull.size() - 1]];
            const double cr = (a.first - o.first) * (pts[i].second - o.second) -
                              (a.second - o.second) * (pts[i].first - o.first);
            if (cr < 0.0) break;  // keep only clockwise turns: the upper hull
            hull.pop_back();
        }
        hull.push_back(i);
    }
    std::vector<double> radii;
    radii.reserve(static_cast<std::size_t>(d));
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        const auto& lo = pts[hull[e]];
        const auto& hi = pts[hull[e + 1]];
        const double r = std::exp((lo.second - hi.second) / (hi.first - lo.first));
        for (int t = 0; t < static_cast<int>(hi.first - lo.first); ++t) radii.push_back(r);
    }
    while (static_cast<int>(radii.size()) < d) radii.push_back(radii.empty() ? 1.0 : radii.back());
    return radii;
}

// Ehrlich-Aberth simultaneous iteration on c_0..c_d (c_d != 0, c_0 != 0
// after the caller stripped exact zero roots).  Initial points sit on
// Newton-polygon radii with an irrational angular offset; no randomness
// anywhere.  A point settles when its correction is below tol or its
// residual is below the running evaluation-error bound (multiple-root
// clusters stop there).
inline std::vector<Cplx> aberth(const std::vector<Cplx>& c, double tol) {
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<Cplx> z(static_cast<std::size_t>(d));
    const std::vector<double> radii = newton_polygon_radii(c);
    for (int j = 0; j < d; ++j) {
        const double th = 2.0 * std::numbers::pi * j / d + 0.37;
        z[j] = Cplx{radii[static_cast<std::size_t>(j)] * std::cos(th),
                    radii[static_cast<std::size_t>(j)] * std::sin(th)};
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<bool> settled(static_cast<std::size_t>(d), false);
    for (int sweep = 0; sweep < kSolverSweepCap; ++sweep) {
        bool all = true;
        for (int j = 0; j < d; ++j) {
            if (settled[j]) continue;
            // Horner for p, p' and the coefficient-magnitude bound B(z).
            Cplx p = c.back(), dp{};
            double bz = std::abs(c.back());
            const double az = std::abs(z[j]);
            for (int k = d - 1; k >= 0; --k) {
                dp = dp * z[j] + p;
                p = p * z[j] + c[k];
                bz = bz * az + std::abs(c[k]);
            }
            const double ap = std::abs(p);
            if (!std::isfinite(ap) || !std::isfinite(bz)) {
                z[j] *= 0.5;  // left the representable range; pull inward
                all = false;
                continue;
            }
            if (ap <= 8.0 * eps * bz) {
                settled[j] = true;
                continue;
            }
            Cplx w;
            if (std::abs(dp) == 0.0) {
                w = Cplx{tol * (1.0 + az), 0.0};
            } else {
                w = p / dp;
            }
            Cplx s{};
            for (int k = 0; k < d; ++k) {
                if (k == j) continue;
                Cplx diff = z[j] - z[k];
                if (std::abs(diff) == 0.0) diff = Cplx{1e-20, 0.0};
                s += 1.0 / diff;
            }
            const Cplx denom = 1.0 - w * s;
            const Cplx delta = std::abs(denom) == 0.0 ? w : w / denom;
            z[j] -= delta;
            if (std::abs(delta) <= tol * (1.0 + std::abs(z[j])))
                settled[j] = true;
            else
                all = false;
        }
        if (all) return z;
    }
    for (int j = 0; j < d; ++j)
        if (!settled[j])
            throw NoConvergence("simultaneous iteration hit the sweep cap", z);
    return z;
}

}  // namespace detail

/// All deg(p) roots of p (multiplicity by repetition, no clustering), Empty
/// for nonzero constants and the whole plane for p = 0.  Exact zero roots
/// are stripped first; the rest run Ehrlich-Aberth and a quad-precision
/// refinement pass.
inline RootMultiset find_roots(const Poly& p, double tol = kSolverTol) {
    if (tol <= 0.0) throw BadIndex("tol must be positive");
    // hard-zero degree detection: a small leading coefficient is a genuine
    // leading coefficient (its roots are genuinely far out), not noise
    const int deg = p.degree(DegreeMode::exact);
    if (deg == kDegZero) return RootMultiset::whole_plane();
    if (deg == 0) return RootMultiset::empty();

    int m = 0;
    while (m < deg && std::abs(p.coeff(m)) <= kDegreeAbsThreshold) ++m;
    std::vector<Cplx> roots(static_cast<std::size_t>(m), Cplx{0.0, 0.0});
    const int d = deg - m;
    if (d == 0) return RootMultiset::finite(std::move(roots));

    std::vector<Cplx> c(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) c[k] = p.coeff(m + k);

    std::vector<Cplx> rest;
    if (d == 1) {
        rest = {-c[0] / c[1]};
    } else {
        rest = detail::aberth(c, tol);
        detail::refine_roots(c, rest);
    }
    roots.insert(roots.end(), rest.begin(), rest.end());
    return RootMultiset::finite(std::move(roots));
}

/// max{|u| : u in Z(p)}.
inline double root_radius(const Poly& p) {
    if (p.degree(DegreeMode::exact) < 1)
        throw NotNonconstant("root radius requires degree >= 1");
    const RootMultiset z = find_roots(p);
    double r = 0.0;
    for (const Cplx& u : z.points) r = std::max(r, std::abs(u));
    return r;
}

namespace detail {

inline double cross(Cplx o, Cplx a, Cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

inline double dist_to_segment(Cplx z, Cplx a, Cplx b) {
    const Cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

// Monotone chain; returns hull vertices counter-clockwise (may be 1 or 2
// points for degenerate inputs).
inline std::vector<Cplx> convex_hull(std::vector<Cplx> pts) {
    std::sort(pts.begin(), pts.end(), [](Cplx a, Cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Cplx a, Cplx b) { return a == b; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Cplx> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace detail

/// True iff z lies within distance tol of the convex hull of points.
inline bool in_convex_hull(std::span<const Cplx> points, Cplx z, double tol) {
    if (points.empty()) throw BadIndex("convex hull of an empty set");
    const std::vector<Cplx> hull =
        detail::convex_hull(std::vector<Cplx>(points.begin(), points.end()));
    if (hull.size() == 1) return std::abs(z - hull[0]) <= tol;
    if (hull.size() == 2) return detail::dist_to_segment(z, hull[0], hull[1]) <= tol;
    bool inside = true;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Cplx a = hull[i];
        const Cplx b = hull[(i + 1) % hull.size()];
        if (detail::cross(a, b, z) < 0.0) inside = false;
        d = std::min(d, detail::dist_to_segment(z, a, b));
    }
    return inside || d <= tol;
}

inline bool in_convex_hull(const std::vector<Cplx>& points, Cplx z, double tol) {
    return in_convex_hull(std::span<const Cplx>(points), z, tol);
}

}  // namespace rootperturb
