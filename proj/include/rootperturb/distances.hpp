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
#include <numeric>
#include <vector>

#include "rootperturb/errors.hpp"
#include "rootperturb/roots.hpp"

namespace rootperturb {

inline constexpr double kInfDist = std::numeric_limits<double>::infinity();

namespace detail {

// Both dist_F routes draw their answers from this one table, which is what
// makes them bitwise comparable.
inline std::vector<std::vector<double>> pairwise_table(const std::vector<Cplx>& u,
                                                       const std::vector<Cplx>& v) {
    std::vector<std::vector<double>> d(u.size(), std::vector<double>(v.size()));
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) d[i][j] = std::abs(u[i] - v[j]);
    return d;
}

// d_m / d_h / d_H share the extended conventions of the degenerate variants:
// two empty sets are at distance 0, an empty set is infinitely far from
// anything else, and the whole plane is at distance 0 from any nonempty set.
inline bool degenerate(const RootMultiset& a, const RootMultiset& b, double& out) {
    if (a.is_empty() || b.is_empty()) {
        out = (a.is_empty() && b.is_empty()) ? 0.0 : kInfDist;
        return true;
    }
    if (a.is_whole_plane() || b.is_whole_plane()) {
        out = 0.0;
        return true;
    }
    if (a.points.empty() || b.points.empty()) {
        // finite multiset with no points behaves like the empty set
        out = (a.points.empty() && b.points.empty()) ? 0.0 : kInfDist;
        return true;
    }
    return false;
}

}  // namespace detail

/// min{|x-y| : x in A, y in B}.
inline double dist_m(const RootMultiset& a, const RootMultiset& b) {
    double deg;
    if (detail::degenerate(a, b, deg)) return deg;
    double best = kInfDist;
    for (const Cplx& x : a.points)
        for (const Cplx& y : b.points) best = std::min(best, std::abs(x - y));
    return best;
}

/// max over y in B of the distance from y to A: how far B's points stray
/// from A (for Z(f) vs Z(Tf) pass A = Z(f), B = Z(Tf)).
inline double dist_h(const RootMultiset& a, const RootMultiset& b) {
    double deg;
    if (detail::degenerate(a, b, deg)) return deg;
    double worst = 0.0;
    for (const Cplx& y : b.points) {
        double d = kInfDist;
        for (const Cplx& x : a.points) d = std::min(d, std::abs(x - y));
        worst = std::max(worst, d);
    }
    return worst;
}

/// The Hausdorff metric max{d_h(A,B), d_h(B,A)}.
inline double dist_H(const RootMultiset& a, const RootMultiset& b) {
    double deg;
    if (detail::degenerate(a, b, deg)) return deg;
    return std::max(dist_h(a, b), dist_h(b, a));
}

namespace detail {

// Kuhn's augmenting-path matching restricted to pairs with distance <= thr.
// match_v[j] = row matched to column j, or -1.
inline bool feasible(const std::vector<std::vector<double>>& d, double thr,
                     std::vector<int>& match_v) {
    const std::size_t m = d.size();
    match_v.assign(m, -1);
    std::vector<char> seen(m);
    auto try_row = [&](auto&& self, std::size_t i) -> bool {
        for (std::size_t j = 0; j < m; ++j) {
            if (seen[j] || d[i][j] > thr) continue;
            seen[j] = 1;
            if (match_v[j] < 0 || self(self, static_cast<std::size_t>(match_v[j]))) {
                match_v[j] = static_cast<int>(i);
                return true;
            }
        }
        return false;
    };
    for (std::size_t i = 0; i < m; ++i) {
        std::fill(seen.begin(), seen.end(), 0);
        if (!try_row(try_row, i)) return false;
    }
    return true;
}

inline void require_equal_finite(const RootMultiset& u, const RootMultiset& v) {
    if (!u.is_finite() || !v.is_finite())
        throw DegenerateVariant("bottleneck distance needs finite multisets");
    if (u.size() != v.size())
        throw CardinalityMismatch("bottleneck distance needs equal cardinalities");
    if (u.size() == 0) throw CardinalityMismatch("bottleneck distance needs m >= 1");
}

}  // namespace detail

struct BottleneckResult {
    double value = 0.0;
    std::vector<int> matching;  // matching[k] = index in V paired with U's k-th point
};

/// Exact bottleneck matching: binary search over the sorted distinct table
/// values, feasibility by augmenting paths.  The result is always one of the
/// m^2 pairwise distances.
inline BottleneckResult dist_F_matched(const RootMultiset& u, const RootMultiset& v) {
    detail::require_equal_finite(u, v);
    const std::size_t m = u.size();
    const auto d = detail::pairwise_table(u.points, v.points);
    std::vector<double> vals;
    vals.reserve(m * m);
    for (const auto& row : d) vals.insert(vals.end(), row.begin(), row.end());
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

    std::vector<int> match_v;
    std::size_t lo = 0, hi = vals.size() - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (detail::feasible(d, vals[mid], match_v))
            hi = mid;
        else
            lo = mid + 1;
    }
    detail::feasible(d, vals[lo], match_v);

    BottleneckResult res;
    res.value = vals[lo];
    res.matching.assign(m, -1);
    for (std::size_t j = 0; j < m; ++j)
        if (match_v[j] >= 0) res.matching[static_cast<std::size_t>(match_v[j])] = static_cast<int>(j);
    return res;
}

/// d_F(U,V) = min over permutations of the max pair distance.
inline double dist_F(const RootMultiset& u, const RootMultiset& v) {
    return dist_F_matched(u, v).value;
}

/// Exhaustive oracle over all m! permutations; m <= 8.
inline double dist_F_bruteforce(const RootMultiset& u, const RootMultiset& v) {
    detail::require_equal_finite(u, v);
    const std::size_t m = u.size();
    if (m > 8) throw TooLarge("brute-force bottleneck is limited to m <= 8");
    const auto d = detail::pairwise_table(u.points, v.points);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    double best = kInfDist;
    do {
        double worst = 0.0;
        for (std::size_t k = 0; k < m; ++k) worst = std::max(worst, d[k][perm[k]]);
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace rootperturb
