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
#include <optional>
#include <string>
#include <vector>

#include "rootperturb/errors.hpp"
#include "rootperturb/operators.hpp"
#include "rootperturb/poly.hpp"
#include "rootperturb/roots.hpp"

namespace rootperturb {

inline constexpr double kContainmentTol = 1e-7;

/// A closed circular domain: disk, half plane, or disk exterior.
struct CircularDomain {
    enum class Kind { disk, half_plane, disk_exterior };

    Kind kind = Kind::disk;
    Cplx center{};
    double radius = 0.0;
    Cplx normal{};   // unit; the half plane is {z : Re(z * conj(normal)) <= offset}
    double offset = 0.0;

    static CircularDomain closed_disk(Cplx center, double radius) {
        if (radius <= 0.0) throw BadIndex("disk radius must be positive");
        CircularDomain d;
        d.kind = Kind::disk;
        d.center = center;
        d.radius = radius;
        return d;
    }

    static CircularDomain half_plane(Cplx normal, double offset) {
        const double n = std::abs(normal);
        if (std::abs(n - 1.0) > 1e-12) throw BadIndex("half-plane normal must be a unit vector");
        CircularDomain d;
        d.kind = Kind::half_plane;
        d.normal = normal;
        d.offset = offset;
        return d;
    }

    static CircularDomain disk_exterior(Cplx center, double radius) {
        if (radius <= 0.0) throw BadIndex("disk radius must be positive");
        CircularDomain d;
        d.kind = Kind::disk_exterior;
        d.center = center;
        d.radius = radius;
        return d;
    }

    bool is_convex() const { return kind != Kind::disk_exterior; }
};

/// Distance from z to the domain; 0 when z is inside.
inline double domain_distance(const CircularDomain& om, Cplx z) {
    switch (om.kind) {
        case CircularDomain::Kind::disk:
            return std::max(0.0, std::abs(z - om.center) - om.radius);
        case CircularDomain::Kind::half_plane:
            return std::max(0.0, (z * std::conj(om.normal)).real() - om.offset);
        case CircularDomain::Kind::disk_exterior:
            return std::max(0.0, om.radius - std::abs(z - om.center));
    }
    return 0.0;
}

inline bool domain_contains(const CircularDomain& om, Cplx z, double tol) {
    return domain_distance(om, z) <= tol;
}

/// The degree-m product (f * g)(z) = sum_k (sum_j a_{k+j} b_{m-j}) z^k/k!
/// with a_k = f^(k)(0), b_k = g^(k)(0); requires deg f = deg g = m > 0.
inline Poly star_m(const Poly& f, const Poly& g) {
    f.require_same_cap(g);
    const int m = f.degree(DegreeMode::floating);
    if (m != g.degree(DegreeMode::floating) || m < 1)
        throw DegreeMismatch("star product needs equal positive degrees");
    const std::vector<Cplx> a = f.phi_coords();
    const std::vector<Cplx> b = g.phi_coords();
    std::vector<Cplx> out(static_cast<std::size_t>(f.cap()) + 1, Cplx{});
    for (int k = 0; k <= m; ++k) {
        Cplx acc{};
        for (int j = 0; j + k <= m; ++j) acc += a[static_cast<std::size_t>(k + j)] * b[static_cast<std::size_t>(m - j)];
        out[static_cast<std::size_t>(k)] = acc;
    }
    return Poly::from_phi(f.cap(), out);
}

/// The cap-level product (f ⋆ g)_k = sum_j a_{k+j} b_{n-j}, the image of
/// operator composition under varpi; unit element phi_n.
inline Poly star_n(const Poly& f, const Poly& g) {
    f.require_same_cap(g);
    const int n = f.cap();
    const std::vector<Cplx> a = f.phi_coords();
    const std::vector<Cplx> b = g.phi_coords();
    std::vector<Cplx> out(static_cast<std::size_t>(n) + 1, Cplx{});
    for (int k = 0; k <= n; ++k) {
        Cplx acc{};
        for (int j = 0; j + k <= n; ++j) acc += a[static_cast<std::size_t>(k + j)] * b[static_cast<std::size_t>(n - j)];
        out[static_cast<std::size_t>(k)] = acc;
    }
    return Poly::from_phi(n, out);
}

struct ApolarityResult {
    bool apolar = false;
    double residual = 0.0;  // |(f * (Rg))(0)|
    double scale = 1.0;     // largest phi coordinate of f * (Rg)
};

/// f, g are apolar iff (f * (Rg))(0) = 0.
inline ApolarityResult is_apolar(const Poly& f, const Poly& g, double tol) {
    const Poly h = star_m(f, reflect(g));
    ApolarityResult r;
    r.residual = std::abs(h(Cplx{0.0, 0.0}));
    double s = 0.0;
    for (int k = 0; k <= h.cap(); ++k) s = std::max(s, std::abs(h.phi_coord(k)));
    r.scale = std::max(1.0, s);
    r.apolar = r.residual <= tol * r.scale;
    return r;
}

struct ContainmentReport {
    bool passed = false;
    double worst_margin = 0.0;       // largest distance beyond the domain seen
    std::optional<Cplx> witness;     // root realizing the verdict
};

/// Grace's theorem, executably: if f, g are apolar and Z(g) is inside Omega,
/// some root of f must lie in Omega.
inline ContainmentReport check_grace(const Poly& f, const Poly& g, const CircularDomain& om,
                                     double tol = kContainmentTol) {
    const ApolarityResult ap = is_apolar(f, g, tol);
    if (!ap.apolar)
        throw PreconditionFailed(PreconditionFailed::Reason::not_apolar,
                                 "polynomials are not apolar (residual " +
                                     std::to_string(ap.residual) + ")");
    for (const Cplx& v : find_roots(g).points)
        if (!domain_contains(om, v, tol))
            throw PreconditionFailed(PreconditionFailed::Reason::roots_not_in_domain,
                                     "a root of g escapes the domain");

    ContainmentReport rep;
    double best = std::numeric_limits<double>::infinity();
    for (const Cplx& u : find_roots(f).points) {
        const double d = domain_distance(om, u);
        if (d < best) {
            best = d;
            rep.witness = u;
        }
    }
    rep.worst_margin = best;
    rep.passed = best <= tol;
    return rep;
}

/// For each v in Z(f*g) there must be u in Z(f) with v - u in Omega,
/// provided Z(g) is inside Omega.
inline ContainmentReport check_composite_containment(const Poly& f, const Poly& g,
                                                     const CircularDomain& om,
                                                     double tol = kContainmentTol) {
    const int m = f.degree(DegreeMode::floating);
    if (m != g.degree(DegreeMode::floating) || m < 1)
        throw DegreeMismatch("containment check needs equal positive degrees");
    for (const Cplx& v : find_roots(g).points)
        if (!domain_contains(om, v, tol))
            throw PreconditionFailed(PreconditionFailed::Reason::roots_not_in_domain,
                                     "a root of g escapes the domain");

    const std::vector<Cplx> zf = find_roots(f).points;
    ContainmentReport rep;
    rep.passed = true;
    for (const Cplx& v : find_roots(star_m(f, g)).points) {
        double d = std::numeric_limits<double>::infinity();
        for (const Cplx& u : zf) d = std::min(d, domain_distance(om, v - u));
        if (d > rep.worst_margin) {
            rep.worst_margin = d;
            rep.witness = v;
        }
        if (d > tol) rep.passed = false;
    }
    return rep;
}

/// Operator form: Z(Tf) must sit inside Z(f) + Omega whenever Omega covers
/// Z(T phi_k), k = 1..n.  For convex domains covering Z(T phi_n) suffices
/// (the lower phi-images stay inside its hull).
inline ContainmentReport check_operator_grace(const DAlgOperator& t, const Poly& f,
                                              const CircularDomain& om,
                                              double tol = kContainmentTol) {
    if (!t.is_invertible())
        throw PreconditionFailed(PreconditionFailed::Reason::not_invertible,
                                 "operator is not invertible");
    const int n = t.cap();
    const int k_lo = om.is_convex() ? n : 1;
    for (int k = k_lo; k <= n; ++k)
        for (const Cplx& v : find_roots(apply(t, Poly::phi(n, k))).points)
            if (!domain_contains(om, v, tol))
                throw PreconditionFailed(PreconditionFailed::Reason::roots_not_in_domain,
                                         "a root of T phi_k escapes the domain");

    const std::vector<Cplx> zf = find_roots(f).points;
    ContainmentReport rep;
    rep.passed = true;
    for (const Cplx& v : find_roots(apply(t, f)).points) {
        double d = std::numeric_limits<double>::infinity();
        for (const Cplx& u : zf) d = std::min(d, domain_distance(om, v - u));
        if (d > rep.worst_margin) {
            rep.worst_margin = d;
            rep.witness = v;
        }
        if (d > tol) rep.passed = false;
    }
    return rep;
}

}  // namespace rootperturb
