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
#include <numbers>
#include <optional>
#include <vector>

#include "rootperturb/errors.hpp"
#include "rootperturb/operators.hpp"
#include "rootperturb/poly.hpp"
#include "rootperturb/roots.hpp"

namespace rootperturb {

/// K_h(H_k(gamma)) = (|gamma| n!/(n-k)!)^{1/k} in closed form.
inline double k_hk_exact(int n, int k, Cplx gamma) {
    if (k < 1 || k > n) throw BadIndex("H_k needs 1 <= k <= n");
    double falling = 1.0;
    for (int j = n; j > n - k; --j) falling *= j;
    return std::pow(std::abs(gamma) * falling, 1.0 / k);
}

namespace detail {

// rho[T phi_n] is known in closed form for scalar multiples of shift
// operators (|a_1/a_0|) and of H_k (the k_hk_exact value).  These are also
// exactly the operators whose T phi_n has a multiple root, where a solver on
// stored coefficients is limited to ~eps^{1/mult}; match them up front.
inline std::optional<double> exact_class_radius(const DAlgOperator& t) {
    const int n = t.cap();
    const Cplx a0 = t.coeff(0);
    const double scale = t.max_abs_coeff();
    const double tol = 1e-12 * scale;

    int nonzero = 0, last = 0;
    for (int k = 1; k <= n; ++k)
        if (std::abs(t.coeff(k)) > tol) {
            ++nonzero;
            last = k;
        }
    if (nonzero == 0) return 0.0;
    if (nonzero == 1) return k_hk_exact(n, last, -t.coeff(last) / a0);

    const Cplx beta = t.coeff(1) / a0;
    Cplx expect = a0;
    bool shift = true;
    for (int k = 1; k <= n; ++k) {
        expect = expect * beta / static_cast<double>(k);
        if (std::abs(t.coeff(k) - expect) > tol) {
            shift = false;
            break;
        }
    }
    if (shift) return std::abs(beta);
    return std::nullopt;
}

}  // namespace detail

/// K_h(T) = rho[T phi_n]: the worst asymmetric-Hausdorff root displacement,
/// attained at phi_n.  Shift and H_k shapes get their closed-form radii;
/// everything else goes through the root solver.
inline double k_h_exact(const DAlgOperator& t) {
    if (!t.is_invertible()) throw NotInvertible("K_h is finite only for invertible operators");
    const int n = t.cap();
    if (n == 0) return 0.0;
    if (const std::optional<double> r = detail::exact_class_radius(t)) return *r;
    return root_radius(apply(t, Poly::phi(n, n)));
}

/// K_H(T) = max{rho[T phi_n], rho[T^{-1} phi_n]}.
inline double k_H_exact(const DAlgOperator& t) {
    return std::max(k_h_exact(t), k_h_exact(invert(t)));
}

struct T13Bounds {
    double sum_gamma = 0.0;
    double k_h_ub = 0.0;
    double k_H_ub = 0.0;
    double k_F_ub = 0.0;
};

/// Coefficient-only upper bounds through the factorization
/// T = a_0 prod (I - gamma_j D): K_h, K_H <= n * sum |gamma_j| and
/// K_F <= n^2 * sum |gamma_j|.
inline T13Bounds k_bounds_t13(const DAlgOperator& t) {
    const Factorization f = factor(t);
    double s = 0.0;
    for (const Cplx& g : f.gammas) s += std::abs(g);
    const double n = static_cast<double>(t.cap());
    return {s, n * s, n * s, n * n * s};
}

struct H1InverseBracket {
    double lower = 0.0;  // (n!)^{1/n} |gamma|
    double upper = 0.0;  // n |gamma|
    Poly witness{0};     // g with H_1(gamma) g = phi_n - gamma^n phi_0
};

/// Sandwich for K_h(H_1(gamma)^{-1}), with the witness polynomial
/// g = gamma^{n-1} phi_1 + ... + gamma phi_{n-1} + phi_n.
inline H1InverseBracket k_h_inverse_h1_bracket(int n, Cplx gamma) {
    if (n < 1) throw BadIndex("bracket needs n >= 1");
    double nfact = 1.0;
    for (int j = 2; j <= n; ++j) nfact *= j;
    std::vector<Cplx> phi(static_cast<std::size_t>(n) + 1, Cplx{});
    Cplx pw{1.0, 0.0};
    for (int k = n; k >= 1; --k) {
        phi[static_cast<std::size_t>(k)] = pw;
        pw *= gamma;
    }
    H1InverseBracket b{std::pow(nfact, 1.0 / n) * std::abs(gamma),
                       n * std::abs(gamma), Poly::from_phi(n, phi)};
    return b;
}

/// The comparison factor e n^3 ln n in K_H <= K_F <= (e n^3 ln n) K_H.
inline double k_F_vs_k_H_factor(int n) {
    if (n < 2) throw BadIndex("the comparison factor degenerates for n < 2");
    return std::numbers::e * n * n * n * std::log(static_cast<double>(n));
}

struct QuadraticImage {
    Cplx z1{};
    Cplx z2{};
    double displacement_bound = 0.0;
};

/// Closed form for the roots of T(a0,a1,a2) applied to (z-w1)(z-w2) on P_2,
/// with delta1 = a1/a0 and delta2 = delta1^2 - 2 a2/a0:
///   z = (w1+w2)/2 - delta1 +- sqrt(((w1-w2)/2)^2 + delta2),
/// and each root lies within |delta1| + sqrt|delta2| of {w1, w2}.
inline QuadraticImage quadratic_image_roots(Cplx a0, Cplx a1, Cplx a2, Cplx w1, Cplx w2) {
    if (std::abs(a0) == 0.0) throw NotInvertible("a_0 must be nonzero");
    const Cplx d1 = a1 / a0;
    const Cplx d2 = d1 * d1 - 2.0 * a2 / a0;
    const Cplx mid = (w1 + w2) / 2.0;
    const Cplx half = (w1 - w2) / 2.0;
    const Cplx q = std::sqrt(half * half + d2);
    QuadraticImage out;
    out.z1 = mid - d1 + q;
    out.z2 = mid - d1 - q;
    out.displacement_bound = std::abs(d1) + std::sqrt(std::abs(d2));
    return out;
}

}  // namespace rootperturb
