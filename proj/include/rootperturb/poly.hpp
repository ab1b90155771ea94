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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rootperturb/errors.hpp"

namespace rootperturb {

using Cplx = std::complex<double>;

// Degree detection needs an explicit zero test.  `exact` treats only hard
// zeros (|c| <= 1e-300) as zero and suits hand-constructed inputs; `floating`
// measures against the largest coefficient and suits results of computation.
enum class DegreeMode { exact, floating };

inline constexpr double kDegreeAbsThreshold = 1e-300;
inline constexpr double kDegreeRelThreshold = 1e-12;

// Sentinel degree of the zero polynomial ("minus infinity").
inline constexpr int kDegZero = -1;

/// A complex polynomial of degree <= cap, stored by monomial coefficients
/// c_0..c_cap.  The phi-basis view (phi_k(z) = z^k/k!) is the diagonal
/// rescaling a_k = k! * c_k.  Values are immutable after construction.
class Poly {
  public:
    explicit Poly(int cap) : cap_(check_cap(cap)), c_(cap + 1, Cplx{0.0, 0.0}) {}

    Poly(int cap, std::vector<Cplx> monomial_coeffs)
        : cap_(check_cap(cap)), c_(std::move(monomial_coeffs)) {
        if (static_cast<int>(c_.size()) != cap_ + 1)
            throw CapacityExceeded("coefficient sequence must have length cap+1");
    }

    static Poly from_phi(int cap, const std::vector<Cplx>& phi_coords) {
        if (static_cast<int>(phi_coords.size()) != cap + 1)
            throw CapacityExceeded("phi coordinate sequence must have length cap+1");
        std::vector<Cplx> c(phi_coords.size());
        double kfact = 1.0;
        for (int k = 0; k <= cap; ++k) {
            if (k > 0) kfact *= k;
            c[k] = phi_coords[k] / kfact;
        }
        return Poly(cap, std::move(c));
    }

    static Poly constant(int cap, Cplx value) {
        Poly p(cap);
        p.c_[0] = value;
        return p;
    }

    /// phi_k(z) = z^k / k!
    static Poly phi(int cap, int k) {
        if (k < 0 || k > cap) throw BadIndex("phi index outside 0..cap");
        Poly p(cap);
        double kfact = 1.0;
        for (int j = 2; j <= k; ++j) kfact *= j;
        p.c_[static_cast<std::size_t>(k)] = 1.0 / kfact;
        return p;
    }

    int cap() const { return cap_; }
    const std::vector<Cplx>& monomial_coeffs() const { return c_; }

    Cplx coeff(int k) const { return (k < 0 || k > cap_) ? Cplx{} : c_[static_cast<std::size_t>(k)]; }

    Cplx phi_coord(int k) const {
        double kfact = 1.0;
        for (int j = 2; j <= k; ++j) kfact *= j;
        return coeff(k) * kfact;
    }

    std::vector<Cplx> phi_coords() const {
        std::vector<Cplx> a(c_.size());
        double kfact = 1.0;
        for (int k = 0; k <= cap_; ++k) {
            if (k > 0) kfact *= k;
            a[k] = c_[k] * kfact;
        }
        return a;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const Cplx& v : c_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Largest k with |c_k| above the mode's zero threshold; kDegZero for 0.
    int degree(DegreeMode mode = DegreeMode::exact) const {
        const double thr = mode == DegreeMode::exact
                               ? kDegreeAbsThreshold
                               : kDegreeRelThreshold * max_abs_coeff();
        for (int k = cap_; k >= 0; --k)
            if (std::abs(c_[k]) > thr) return k;
        return kDegZero;
    }

    bool is_zero(DegreeMode mode = DegreeMode::exact) const { return degree(mode) == kDegZero; }

    Cplx leading_coeff(DegreeMode mode = DegreeMode::exact) const {
        const int d = degree(mode);
        return d == kDegZero ? Cplx{} : c_[static_cast<std::size_t>(d)];
    }

    /// Horner evaluation.
    Cplx operator()(Cplx z) const {
        Cplx acc{0.0, 0.0};
        for (int k = cap_; k >= 0; --k) acc = acc * z + c_[k];
        return acc;
    }

    Poly operator+(const Poly& rhs) const {
        require_same_cap(rhs);
        Poly out(cap_);
        for (int k = 0; k <= cap_; ++k) out.c_[k] = c_[k] + rhs.c_[k];
        return out;
    }

    Poly operator-(const Poly& rhs) const {
        require_same_cap(rhs);
        Poly out(cap_);
        for (int k = 0; k <= cap_; ++k) out.c_[k] = c_[k] - rhs.c_[k];
        return out;
    }

    Poly operator*(Cplx s) const {
        Poly out(cap_);
        for (int k = 0; k <= cap_; ++k) out.c_[k] = c_[k] * s;
        return out;
    }

    void require_same_cap(const Poly& other) const {
        if (cap_ != other.cap_)
            throw CapMismatch("polynomials live on different ambient caps (" +
                              std::to_string(cap_) + " vs " + std::to_string(other.cap_) + ")");
    }

  private:
    static int check_cap(int cap) {
        if (cap < 0) throw CapacityExceeded("cap must be non-negative");
        return cap;
    }

    int cap_;
    std::vector<Cplx> c_;
};

inline Poly derivative(const Poly& p) {
    Poly out(p.cap());
    std::vector<Cplx> c(p.cap() + 1, Cplx{});
    for (int k = 1; k <= p.cap(); ++k) c[k - 1] = p.coeff(k) * static_cast<double>(k);
    return Poly(p.cap(), std::move(c));
}

/// (Rf)(z) = f(-z): c_k -> (-1)^k c_k.
inline Poly reflect(const Poly& p) {
    std::vector<Cplx> c(p.monomial_coeffs());
    for (int k = 1; k <= p.cap(); k += 2) c[k] = -c[k];
    return Poly(p.cap(), std::move(c));
}

/// z |-> p(z + alpha), by the in-place Horner/Taylor shift.
inline Poly shift_argument(const Poly& p, Cplx alpha) {
    std::vector<Cplx> b(p.monomial_coeffs());
    const int n = p.cap();
    for (int k = 0; k < n; ++k)
        for (int j = n - 1; j >= k; --j) b[j] += alpha * b[j + 1];
    return Poly(n, std::move(b));
}

/// leading * prod (z - r_j), expanded.
inline Poly from_roots(std::span<const Cplx> roots, Cplx leading, int cap) {
    if (static_cast<int>(roots.size()) > cap)
        throw CapacityExceeded("more roots than the ambient cap admits");
    std::vector<Cplx> c(static_cast<std::size_t>(cap) + 1, Cplx{});
    c[0] = leading;
    std::size_t deg = 0;
    for (const Cplx& r : roots) {
        ++deg;
        c[deg] = c[deg - 1];
        for (std::size_t j = deg - 1; j >= 1; --j) c[j] = c[j - 1] - r * c[j];
        c[0] = -r * c[0];
    }
    return Poly(cap, std::move(c));
}

inline Poly from_roots(const std::vector<Cplx>& roots, Cplx leading, int cap) {
    return from_roots(std::span<const Cplx>(roots), leading, cap);
}

}  // namespace rootperturb
