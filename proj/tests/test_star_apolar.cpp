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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "rootperturb/operators.hpp"
#include "rootperturb/poly.hpp"
#include "rootperturb/roots.hpp"
#include "rootperturb/search.hpp"
#include "rootperturb/star_apolar.hpp"

using namespace rootperturb;

namespace {

double coeff_dist(const Poly& a, const Poly& b) {
    double d = 0.0;
    for (int k = 0; k <= a.cap(); ++k) d = std::max(d, std::abs(a.coeff(k) - b.coeff(k)));
    return d;
}

// independent oracle: (f * g)(z) = sum_k b_k f^{(m-k)}(z), via repeated
// differentiation -- none of the product's coefficient formulas
Poly star_via_f_derivatives(const Poly& f, const Poly& g, int m) {
    const std::vector<Cplx> b = g.phi_coords();
    Poly out(f.cap());
    std::vector<Poly> ders{f};
    for (int k = 1; k <= m; ++k) ders.push_back(derivative(ders.back()));
    for (int k = 0; k <= m; ++k) out = out + ders[static_cast<std::size_t>(m - k)] * b[static_cast<std::size_t>(k)];
    return out;
}

Poly star_via_g_derivatives(const Poly& f, const Poly& g, int m) {
    return star_via_f_derivatives(g, f, m);
}

Poly random_poly_of_degree(std::uint64_t seed, std::uint64_t idx, int cap, int deg) {
    CounterRng rng(seed, 5, idx);
    for (;;) {
        std::vector<Cplx> a(static_cast<std::size_t>(cap) + 1, Cplx{});
        for (int k = 0; k <= deg; ++k) a[static_cast<std::size_t>(k)] = rng.uniform_disk(2.0);
        if (std::abs(a[static_cast<std::size_t>(deg)]) < 0.2) continue;
        return Poly::from_phi(cap, a);
    }
}

}  // namespace

TEST_CASE("equal-degree product, degree one") {
    // phi coords f = (2, 3), g = (5, 7): product coords (29, 21)
    const Poly f = Poly::from_phi(1, {Cplx{2, 0}, Cplx{3, 0}});
    const Poly g = Poly::from_phi(1, {Cplx{5, 0}, Cplx{7, 0}});
    const Poly h = star_m(f, g);
    CHECK(std::abs(h.phi_coord(0) - Cplx{29, 0}) <= 1e-14);
    CHECK(std::abs(h.phi_coord(1) - Cplx{21, 0}) <= 1e-14);
}

TEST_CASE("the three defining sums agree") {
    for (int trial = 0; trial < 500; ++trial) {
        CounterRng rng(51, 1, static_cast<std::uint64_t>(trial));
        const int m = 1 + static_cast<int>(rng.next() % 10);
        const Poly f = random_poly_of_degree(51, 2 * trial, m, m);
        const Poly g = random_poly_of_degree(51, 2 * trial + 1, m, m);
        const Poly h = star_m(f, g);
        const Poly h1 = star_via_f_derivatives(f, g, m);
        const Poly h2 = star_via_g_derivatives(f, g, m);
        const double scale = std::max(1.0, h.max_abs_coeff());
        CHECK(coeff_dist(h, h1) <= 1e-10 * scale);
        CHECK(coeff_dist(h, h2) <= 1e-10 * scale);
        // pointwise agreement at sample points
        CounterRng zrng(51, 3, static_cast<std::uint64_t>(trial));
        for (int i = 0; i < 20; ++i) {
            const Cplx z = zrng.uniform_disk(2.0);
            const Cplx scale_z = std::max(std::abs(h(z)), 1.0);
            CHECK(std::abs(h(z) - h1(z)) <= 1e-9 * std::abs(scale_z));
        }
        // commutativity
        CHECK(coeff_dist(star_m(g, f), h) <= 1e-12 * scale);
    }
    CHECK_THROWS_AS(star_m(Poly::phi(3, 2), Poly::phi(3, 3)), DegreeMismatch);
    CHECK_THROWS_AS(star_m(Poly::constant(3, Cplx{1, 0}), Poly::constant(3, Cplx{1, 0})),
                    DegreeMismatch);
}

TEST_CASE("cap-level product") {
    const int n = 6;
    for (int trial = 0; trial < 100; ++trial) {
        CounterRng rng(52, 1, static_cast<std::uint64_t>(trial));
        std::vector<Cplx> a(static_cast<std::size_t>(n) + 1), b(a);
        for (Cplx& v : a) v = rng.uniform_disk(2.0);
        for (Cplx& v : b) v = rng.uniform_disk(2.0);
        const Poly f = Poly::from_phi(n, a);
        const Poly g = Poly::from_phi(n, b);

        // unit element
        CHECK(coeff_dist(star_n(f, Poly::phi(n, n)), f) <= 1e-13 * std::max(1.0, f.max_abs_coeff()));
        // commutativity
        const double scale = std::max(1.0, star_n(f, g).max_abs_coeff());
        CHECK(coeff_dist(star_n(f, g), star_n(g, f)) <= 1e-12 * scale);
    }

    // full-degree pairs: the two products coincide
    for (int trial = 0; trial < 50; ++trial) {
        const Poly f = random_poly_of_degree(53, 2 * trial, n, n);
        const Poly g = random_poly_of_degree(53, 2 * trial + 1, n, n);
        const Poly lhs = star_n(f, g);
        CHECK(coeff_dist(lhs, star_m(f, g)) <= 1e-11 * std::max(1.0, lhs.max_abs_coeff()));
    }
}

TEST_CASE("bridge between the two products") {
    const int n = 7;
    for (int trial = 0; trial < 100; ++trial) {
        CounterRng rng(54, 1, static_cast<std::uint64_t>(trial));
        const int m = 1 + static_cast<int>(rng.next() % n);
        const Poly f = random_poly_of_degree(54, 2 * trial, n, m);
        const Poly g = random_poly_of_degree(54, 2 * trial + 1, n, n);
        Poly dg = g;
        for (int k = 0; k < n - m; ++k) dg = derivative(dg);
        const Poly lhs = star_n(f, g);
        CHECK(coeff_dist(lhs, star_m(f, dg)) <= 1e-10 * std::max(1.0, lhs.max_abs_coeff()));
    }
}

TEST_CASE("operator action is the cap-level product with the phi_n image") {
    const int n = 6;
    for (int trial = 0; trial < 100; ++trial) {
        CounterRng rng(55, 1, static_cast<std::uint64_t>(trial));
        std::vector<Cplx> a(static_cast<std::size_t>(n) + 1), c(a);
        for (Cplx& v : a) v = rng.uniform_disk(2.0);
        for (Cplx& v : c) v = rng.uniform_disk(2.0);
        const DAlgOperator t(n, a);
        const Poly f(n, c);
        const Poly lhs = apply(t, f);
        CHECK(coeff_dist(lhs, star_n(f, varpi(t))) <= 1e-10 * std::max(1.0, lhs.max_abs_coeff()));
    }

    // varpi turns composition into the product
    for (int trial = 0; trial < 100; ++trial) {
        CounterRng rng(56, 1, static_cast<std::uint64_t>(trial));
        std::vector<Cplx> a(static_cast<std::size_t>(n) + 1), b(a);
        for (Cplx& v : a) v = rng.uniform_disk(2.0);
        for (Cplx& v : b) v = rng.uniform_disk(2.0);
        const DAlgOperator t1(n, a), t2(n, b);
        const Poly lhs = varpi(compose(t1, t2));
        CHECK(coeff_dist(lhs, star_n(varpi(t1), varpi(t2))) <=
              1e-10 * std::max(1.0, lhs.max_abs_coeff()));
    }
}

TEST_CASE("apolarity") {
    // z^2 - 1 and z^2 + 1 are apolar
    const Poly f(2, {Cplx{-1, 0}, Cplx{0, 0}, Cplx{1, 0}});
    const Poly g(2, {Cplx{1, 0}, Cplx{0, 0}, Cplx{1, 0}});
    CHECK(is_apolar(f, g, 1e-12).apolar);

    // z^m + 1 is not self-apolar for even m (the pairing form gives 2 a_0 a_m)
    for (int m = 2; m <= 6; m += 2) {
        std::vector<Cplx> c(static_cast<std::size_t>(m) + 1, Cplx{});
        c[0] = Cplx{1, 0};
        c[static_cast<std::size_t>(m)] = Cplx{1, 0};
        const Poly p(m, c);
        CHECK_FALSE(is_apolar(p, p, 1e-9).apolar);
    }
    // for odd m every polynomial is self-apolar: g*(Rf) = (-1)^m f*(Rg)
    for (int trial = 0; trial < 50; ++trial) {
        CounterRng rng(59, 1, static_cast<std::uint64_t>(trial));
        const int m = 1 + 2 * static_cast<int>(rng.next() % 4);
        const Poly p = random_poly_of_degree(59, trial, m, m);
        CHECK(is_apolar(p, p, 1e-9).apolar);
    }

    // symmetric verdicts
    for (int trial = 0; trial < 1000; ++trial) {
        CounterRng rng(57, 1, static_cast<std::uint64_t>(trial));
        const int m = 1 + static_cast<int>(rng.next() % 8);
        const Poly a = random_poly_of_degree(57, 2 * trial, m, m);
        const Poly b = random_poly_of_degree(57, 2 * trial + 1, m, m);
        CHECK(is_apolar(a, b, 1e-9).apolar == is_apolar(b, a, 1e-9).apolar);
    }
}

TEST_CASE("domain membership") {
    const CircularDomain disk = CircularDomain::closed_disk(Cplx{}, 1.0);
    CHECK(domain_contains(disk, Cplx{1, 0}, 0.0));
    CHECK_FALSE(domain_contains(disk, Cplx{1.0 + 2e-7, 0}, 1e-7));
    const CircularDomain hp = CircularDomain::half_plane(Cplx{1, 0}, 0.0);
    CHECK(domain_contains(hp, Cplx{-5, 0}, 0.0));
    CHECK_FALSE(domain_contains(hp, Cplx{0.1, 0}, 1e-3));
    const CircularDomain ext = CircularDomain::disk_exterior(Cplx{}, 2.0);
    CHECK(domain_contains(ext, Cplx{3, 0}, 0.0));
    CHECK_FALSE(domain_contains(ext, Cplx{0.5, 0}, 1e-3));
    CHECK_THROWS_AS(CircularDomain::closed_disk(Cplx{}, 0.0), BadIndex);
    CHECK_THROWS_AS(CircularDomain::half_plane(Cplx{2, 0}, 0.0), BadIndex);
}

TEST_CASE("apolar containment check") {
    const Poly f(2, {Cplx{-1, 0}, Cplx{0, 0}, Cplx{1, 0}});
    const Poly g(2, {Cplx{1, 0}, Cplx{0, 0}, Cplx{1, 0}});
    const ContainmentReport rep =
        check_grace(f, g, CircularDomain::closed_disk(Cplx{}, 1.0 + 1e-9), 1e-7);
    CHECK(rep.passed);

    // precondition failures are distinguished
    const Poly h(2, {Cplx{2, 0}, Cplx{0, 0}, Cplx{1, 0}});  // z^2 + 2: not apolar with f
    try {
        check_grace(f, h, CircularDomain::closed_disk(Cplx{}, 3.0), 1e-9);
        FAIL("expected a precondition failure");
    } catch (const PreconditionFailed& e) {
        CHECK(e.reason == PreconditionFailed::Reason::not_apolar);
    }
    try {
        check_grace(f, g, CircularDomain::closed_disk(Cplx{}, 0.5), 1e-9);
        FAIL("expected a precondition failure");
    } catch (const PreconditionFailed& e) {
        CHECK(e.reason == PreconditionFailed::Reason::roots_not_in_domain);
    }
}

TEST_CASE("composite containment") {
    for (int trial = 0; trial < 100; ++trial) {
        CounterRng rng(58, 1, static_cast<std::uint64_t>(trial));
        const int m = 2 + static_cast<int>(rng.next() % 5);
        std::vector<Cplx> rf(static_cast<std::size_t>(m)), rg(rf);
        for (Cplx& r : rf) r = rng.uniform_disk(2.0);
        for (Cplx& r : rg) r = rng.uniform_disk(2.0);
        const Poly f = from_roots(rf, Cplx{1, 0}, m);
        const Poly g = from_roots(rg, Cplx{1, 0}, m);
        double rho = 1e-9;
        for (const Cplx& r : rg) rho = std::max(rho, std::abs(r));
        const ContainmentReport rep = check_composite_containment(
            f, g, CircularDomain::closed_disk(Cplx{}, rho), 1e-7 * (1 + rho));
        CHECK(rep.passed);
    }
}

TEST_CASE("operator containment") {
    // shift: roots move by exactly -alpha
    const Cplx alpha{0.8, -0.6};
    const DAlgOperator s = shift_operator(alpha, 4);
    // the domain radius must absorb the eps^{1/4} scatter of the fourfold
    // root of S(alpha) phi_4 at -alpha
    const Poly f = from_roots(std::vector<Cplx>{{1, 0}, {0, 1}, {-2, 0}, {0.5, 0.5}}, Cplx{1, 0}, 4);
    const ContainmentReport rep = check_operator_grace(
        s, f, CircularDomain::closed_disk(-alpha, 1e-3), 1e-7);
    CHECK(rep.passed);

    // H_1(gamma) admits the halved disk
    const int n = 5;
    const Cplx gamma{0.3, 0.1};
    const DAlgOperator h1 = hk_operator(1, gamma, n);
    const Poly f2 = from_roots(std::vector<Cplx>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0.3, 0}},
                               Cplx{1, 0}, n);
    const ContainmentReport rep2 = check_operator_grace(
        h1, f2,
        CircularDomain::closed_disk(0.5 * static_cast<double>(n) * gamma,
                                    0.5 * n * std::abs(gamma)),
        1e-7);
    CHECK(rep2.passed);

    // convex shortcut with a half plane: H_1(gamma) phi_n has roots {0, n*gamma}
    {
        const int nn = 4;
        const double g = 0.6;
        const DAlgOperator h = hk_operator(1, Cplx{g, 0}, nn);
        const CircularDomain hp = CircularDomain::half_plane(Cplx{1, 0}, nn * g);
        const Poly f3 = from_roots(std::vector<Cplx>{{2, 0}, {0, 2}, {-2, 0}, {1, 1}}, Cplx{1, 0}, nn);
        CHECK(check_operator_grace(h, f3, hp, 1e-7).passed);
    }

    // not invertible -> distinguished precondition failure
    try {
        check_operator_grace(DAlgOperator::differentiation(3), Poly::phi(3, 3),
                             CircularDomain::closed_disk(Cplx{}, 1.0), 1e-9);
        FAIL("expected a precondition failure");
    } catch (const PreconditionFailed& e) {
        CHECK(e.reason == PreconditionFailed::Reason::not_invertible);
    }
}
