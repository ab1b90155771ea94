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

#include <quadmath.h>

#include <complex>
#include <vector>

namespace rootperturb::detail {

// Minimal complex arithmetic over __float128, used only by the final
// refinement sweeps of the simultaneous root iteration.  Division uses
// Smith's scheme to avoid overflow.
struct QComplex {
    __float128 re{0};
    __float128 im{0};

    QComplex() = default;
    QComplex(__float128 r, __float128 i) : re(r), im(i) {}
    explicit QComplex(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_double() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

inline QComplex operator+(QComplex a, QComplex b) { return {a.re + b.re, a.im + b.im}; }
inline QComplex operator-(QComplex a, QComplex b) { return {a.re - b.re, a.im - b.im}; }
inline QComplex operator*(QComplex a, QComplex b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline QComplex operator/(QComplex a, QComplex b) {
    if (fabsq(b.re) >= fabsq(b.im)) {
        const __float128 r = b.im / b.re;
        const __float128 d = b.re + b.im * r;
        return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    const __float128 r = b.re / b.im;
    const __float128 d = b.im + b.re * r;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

inline __float128 qabs(QComplex a) { return sqrtq(a.re * a.re + a.im * a.im); }

// One evaluation of p and p' at z (Horner).
inline void qeval(const std::vector<QComplex>& c, QComplex z, QComplex& p, QComplex& dp) {
    p = c.back();
    dp = QComplex{};
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + c[static_cast<std::size_t>(k)];
    }
}

// Refine a full set of simultaneous approximations with Aberth sweeps in
// quad precision.  Simple roots settle after a couple of sweeps; clusters
// around a multiple root contract linearly until the quad noise floor, so
// sweeping continues while the largest correction keeps shrinking.
inline void refine_roots(const std::vector<std::complex<double>>& coeffs,
                         std::vector<std::complex<double>>& roots) {
    const std::size_t d = roots.size();
    if (d == 0) return;
    std::vector<QComplex> c(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) c[k] = QComplex(coeffs[k]);
    std::vector<QComplex> z(d);
    for (std::size_t j = 0; j < d; ++j) z[j] = QComplex(roots[j]);

    constexpr int kMaxSweeps = 80;
    __float128 prev_max = 0;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        __float128 max_rel = 0;
        std::vector<QComplex> delta(d);
        for (std::size_t j = 0; j < d; ++j) {
            QComplex p, dp;
            qeval(c, z[j], p, dp);
            if (qabs(dp) == 0) continue;
            const QComplex w = p / dp;
            QComplex s{};
            for (std::size_t k = 0; k < d; ++k) {
                if (k == j) continue;
                QComplex diff = z[j] - z[k];
                if (qabs(diff) == 0) diff = QComplex{1e-40Q, 0};
                s = s + QComplex{1, 0} / diff;
            }
            const QComplex denom = QComplex{1, 0} - w * s;
            delta[j] = qabs(denom) == 0 ? w : w / denom;
        }
        for (std::size_t j = 0; j < d; ++j) {
            z[j] = z[j] - delta[j];
            const __float128 rel = qabs(delta[j]) / (1 + qabs(z[j]));
            if (rel > max_rel) max_rel = rel;
        }
        if (max_rel <= 1e-30Q) break;
        if (sweep > 0 && max_rel > prev_max * 0.92Q) break;
        prev_max = max_rel;
    }
    for (std::size_t j = 0; j < d; ++j) roots[j] = z[j].to_double();
}

}  // namespace rootperturb::detail
