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
#include <utility>
#include <vector>

#include "rootperturb/errors.hpp"
#include "rootperturb/poly.hpp"
#include "rootperturb/roots.hpp"

namespace rootperturb {

// Scale-aware invertibility test: a_0 = 0 is structural, floating inputs
// need a relative threshold.
inline constexpr double kInvertibilityRel = 1e-14;

/// T = a_0 I + a_1 D + ... + a_n D^n acting on polynomials of degree <= n.
class DAlgOperator {
  public:
    DAlgOperator(int cap, std::vector<Cplx> a) : cap_(cap), a_(std::move(a)) {
        if (cap < 0) throw CapacityExceeded("cap must be non-negative");
        if (static_cast<int>(a_.size()) != cap_ + 1)
            throw CapacityExceeded("coefficient sequence must have length cap+1");
    }

    static DAlgOperator identity(int n) {
        std::vector<Cplx> a(static_cast<std::size_t>(n) + 1, Cplx{});
        a[0] = 1.0;
        return {n, std::move(a)};
    }

    static DAlgOperator scalar(int n, Cplx a0) {
        std::vector<Cplx> a(static_cast<std::size_t>(n) + 1, Cplx{});
        a[0] = a0;
        return {n, std::move(a)};
    }

    static DAlgOperator differentiation(int n) {
        std::vector<Cplx> a(static_cast<std::size_t>(n) + 1, Cplx{});
        if (n >= 1) a[1] = 1.0;
        return {n, std::move(a)};
    }

    int cap() const { return cap_; }
    const std::vector<Cplx>& coeffs() const { return a_; }
    Cplx coeff(int k) const { return (k < 0 || k > cap_) ? Cplx{} : a_[static_cast<std::size_t>(k)]; }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const Cplx& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Invertible iff T phi_0 = a_0 phi_0 is nonzero.
    bool is_invertible() const {
        const double a0 = std::abs(a_[0]);
        return a0 > 0.0 && a0 > kInvertibilityRel * max_abs_coeff();
    }

  private:
    int cap_;
    std::vector<Cplx> a_;
};

/// S(alpha): f |-> f(. + alpha) = sum alpha^k/k! D^k.
inline DAlgOperator shift_operator(Cplx alpha, int n) {
    std::vector<Cplx> a(static_cast<std::size_t>(n) + 1);
    a[0] = 1.0;
    for (int k = 1; k <= n; ++k) a[k] = a[k - 1] * alpha / static_cast<double>(k);
    return {n, std::move(a)};
}

/// H_k(gamma) = I - gamma D^k, 1 <= k <= n.
inline DAlgOperator hk_operator(int k, Cplx gamma, int n) {
    if (k < 1 || k > n) throw BadIndex("H_k needs 1 <= k <= n");
    std::vector<Cplx> a(static_cast<std::size_t>(n) + 1, Cplx{});
    a[0] = 1.0;
    a[static_cast<std::size_t>(k)] = -gamma;
    return {n, std::move(a)};
}

/// sum_k a_k D^k f.  In phi coordinates (Tf)_j = sum_k a_k f_{j+k}.
inline Poly apply(const DAlgOperator& t, const Poly& f) {
    if (t.cap() != f.cap()) throw CapMismatch("operator and polynomial caps differ");
    const int n = t.cap();
    const std::vector<Cplx> phi = f.phi_coords();
    std::vector<Cplx> out(static_cast<std::size_t>(n) + 1, Cplx{});
    for (int j = 0; j <= n; ++j) {
        Cplx acc{};
        for (int k = 0; k + j <= n; ++k) acc += t.coeff(k) * phi[static_cast<std::size_t>(j + k)];
        out[static_cast<std::size_t>(j)] = acc;
    }
    return Poly::from_phi(n, out);
}

/// Coefficient convolution truncated at n (D^{n+1} = 0).
inline DAlgOperator compose(const DAlgOperator& t1, const DAlgOperator& t2) {
    if (t1.cap() != t2.cap()) throw CapMismatch("operator caps differ");
    const int n = t1.cap();
    std::vector<Cplx> a(static_cast<std::size_t>(n) + 1, Cplx{});
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) a[static_cast<std::size_t>(i + j)] += t1.coeff(i) * t2.coeff(j);
    return {n, std::move(a)};
}

/// Truncated Neumann series of the nilpotent part:
/// T^{-1} = a_0^{-1} sum_{j<=n} (-N/a_0)^j with N = T - a_0 I.
inline DAlgOperator invert(const DAlgOperator& t) {
    if (!t.is_invertible()) throw NotInvertible("operator has (numerically) vanishing a_0");
    const int n = t.cap();
    const Cplx a0 = t.coeff(0);
    std::vector<Cplx> m(static_cast<std::size_t>(n) + 1, Cplx{});  // -N/a_0
    for (int k = 1; k <= n; ++k) m[static_cast<std::size_t>(k)] = -t.coeff(k) / a0;
    DAlgOperator mm(n, std::move(m));
    DAlgOperator acc = DAlgOperator::identity(n);
    DAlgOperator power = DAlgOperator::identity(n);
    for (int j = 1; j <= n; ++j) {
        power = compose(power, mm);
        std::vector<Cplx> a(acc.coeffs());
        for (int k = 0; k <= n; ++k) a[static_cast<std::size_t>(k)] += power.coeff(k);
        acc = DAlgOperator(n, std::move(a));
    }
    std::vector<Cplx> a(acc.coeffs());
    for (Cplx& v : a) v /= a0;
    return {n, std::move(a)};
}

struct Factorization {
    Cplx a0;
    std::vector<Cplx> gammas;  // T = a0 * prod (I - gamma_j D)
};

/// gamma_j are the roots of a_0 z^n + a_1 z^{n-1} + ... + a_n.
inline Factorization factor(const DAlgOperator& t) {
    if (!t.is_invertible()) throw NotInvertible("factorization requires a_0 != 0");
    const int n = t.cap();
    if (n == 0) return {t.coeff(0), {}};
    std::vector<Cplx> rev(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) rev[static_cast<std::size_t>(k)] = t.coeff(n - k);
    const RootMultiset z = find_roots(Poly(n, std::move(rev)));
    return {t.coeff(0), z.points};
}

/// varpi(T) = T phi_n = a_0 phi_n + a_1 phi_{n-1} + ... + a_n phi_0.
inline Poly varpi(const DAlgOperator& t) {
    const int n = t.cap();
    std::vector<Cplx> phi(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) phi[static_cast<std::size_t>(j)] = t.coeff(n - j);
    return Poly::from_phi(n, phi);
}

inline DAlgOperator varpi_inv(const Poly& f) {
    const int n = f.cap();
    std::vector<Cplx> a(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) a[static_cast<std::size_t>(k)] = f.phi_coord(n - k);
    return {n, std::move(a)};
}

/// An arbitrary linear operator on P_n: column m holds the phi coordinates
/// of T phi_m.
class MatrixOperator {
  public:
    explicit MatrixOperator(int cap)
        : cap_(cap), e_(static_cast<std::size_t>(cap + 1) * (cap + 1), Cplx{}) {
        if (cap < 0) throw CapacityExceeded("cap must be non-negative");
    }

    static MatrixOperator identity(int n) {
        MatrixOperator m(n);
        for (int j = 0; j <= n; ++j) m.at(j, j) = 1.0;
        return m;
    }

    /// R f = f(-.) is diagonal in the phi basis: R phi_m = (-1)^m phi_m.
    static MatrixOperator reflection(int n) {
        MatrixOperator m(n);
        for (int j = 0; j <= n; ++j) m.at(j, j) = (j % 2 == 0) ? 1.0 : -1.0;
        return m;
    }

    static MatrixOperator differentiation(int n) {
        MatrixOperator m(n);
        for (int col = 1; col <= n; ++col) m.at(col - 1, col) = 1.0;
        return m;
    }

    int cap() const { return cap_; }

    Cplx& at(int row, int col) { return e_[idx(row, col)]; }
    const Cplx& at(int row, int col) const { return e_[idx(row, col)]; }

    double max_norm() const {
        double m = 0.0;
        for (const Cplx& v : e_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_zero() const { return max_norm() == 0.0; }

  private:
    std::size_t idx(int row, int col) const {
        if (row < 0 || col < 0 || row > cap_ || col > cap_) throw BadIndex("matrix index out of range");
        return static_cast<std::size_t>(row) * (cap_ + 1) + col;
    }

    int cap_;
    std::vector<Cplx> e_;
};

/// Upper triangular Toeplitz matrix: entry (j, m) = a_{m-j} for j <= m.
inline MatrixOperator matrix_of(const DAlgOperator& t) {
    MatrixOperator m(t.cap());
    for (int col = 0; col <= t.cap(); ++col)
        for (int row = 0; row <= col; ++row) m.at(row, col) = t.coeff(col - row);
    return m;
}

inline Poly apply(const MatrixOperator& m, const Poly& f) {
    if (m.cap() != f.cap()) throw CapMismatch("operator and polynomial caps differ");
    const int n = m.cap();
    const std::vector<Cplx> phi = f.phi_coords();
    std::vector<Cplx> out(static_cast<std::size_t>(n) + 1, Cplx{});
    for (int row = 0; row <= n; ++row) {
        Cplx acc{};
        for (int col = 0; col <= n; ++col) acc += m.at(row, col) * phi[static_cast<std::size_t>(col)];
        out[static_cast<std::size_t>(row)] = acc;
    }
    return Poly::from_phi(n, out);
}

inline MatrixOperator multiply(const MatrixOperator& a, const MatrixOperator& b) {
    if (a.cap() != b.cap()) throw CapMismatch("operator caps differ");
    const int n = a.cap();
    MatrixOperator out(n);
    for (int i = 0; i <= n; ++i)
        for (int k = 0; k <= n; ++k) {
            const Cplx aik = a.at(i, k);
            if (aik == Cplx{}) continue;
            for (int j = 0; j <= n; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

struct MembershipResult {
    std::optional<DAlgOperator> op;
    double commutator_norm = 0.0;
    double reconstruction_error = 0.0;

    bool in_algebra() const { return op.has_value(); }
};

/// T is in the algebra iff it commutes with D; on success the coefficients
/// are read off the first row (a_k = (T phi_k)(0)) and cross-checked against
/// the Toeplitz reconstruction.
inline MembershipResult membership(const MatrixOperator& m, double tol) {
    if (tol <= 0.0) throw BadIndex("tol must be positive");
    const int n = m.cap();
    const MatrixOperator d = MatrixOperator::differentiation(n);
    const MatrixOperator md = multiply(m, d);
    const MatrixOperator dm = multiply(d, m);
    double comm = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) comm = std::max(comm, std::abs(md.at(i, j) - dm.at(i, j)));

    const double gate = tol * (1.0 + m.max_norm());
    MembershipResult res;
    res.commutator_norm = comm;
    if (comm > gate) return res;

    std::vector<Cplx> a(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) a[static_cast<std::size_t>(k)] = m.at(0, k);
    DAlgOperator cand(n, std::move(a));
    const MatrixOperator rebuilt = matrix_of(cand);
    double rec = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) rec = std::max(rec, std::abs(rebuilt.at(i, j) - m.at(i, j)));
    res.reconstruction_error = rec;
    if (rec > gate) return res;

    res.op = std::move(cand);
    return res;
}

}  // namespace rootperturb
