#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lodisq/pointset.hpp"

namespace lodisq {

// Sorted multiset of sample values in [0,1). When num/den is present the
// values are exactly num[i]/den and the star discrepancy is computed in
// integer arithmetic.
struct EmpiricalMeasure1D {
    std::vector<double> values;       // distinct, ascending
    std::vector<std::uint64_t> mult;  // same length
    std::uint64_t count = 0;          // N = sum of mult
    std::vector<std::int64_t> num;    // empty when no exact representation
    std::int64_t den = 0;

    bool exact() const { return den > 0 && num.size() == values.size(); }

    static EmpiricalMeasure1D from_values(std::vector<double> v) {
        if (v.empty()) throw std::invalid_argument("EmpiricalMeasure1D: empty input");
        std::sort(v.begin(), v.end());
        EmpiricalMeasure1D mu;
        mu.count = v.size();
        for (double x : v) {
            if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("EmpiricalMeasure1D: value outside [0,1)");
            if (!mu.values.empty() && mu.values.back() == x)
                ++mu.mult.back();
            else {
                mu.values.push_back(x);
                mu.mult.push_back(1);
            }
        }
        return mu;
    }

    static EmpiricalMeasure1D from_exact(std::vector<std::int64_t> nums, std::int64_t den) {
        if (nums.empty()) throw std::invalid_argument("EmpiricalMeasure1D: empty input");
        if (den <= 0) throw std::invalid_argument("EmpiricalMeasure1D: bad denominator");
        std::sort(nums.begin(), nums.end());
        EmpiricalMeasure1D mu;
        mu.count = nums.size();
        mu.den = den;
        for (std::int64_t n : nums) {
            if (n < 0 || n >= den) throw std::invalid_argument("EmpiricalMeasure1D: value outside [0,1)");
            if (!mu.num.empty() && mu.num.back() == n)
                ++mu.mult.back();
            else {
                mu.num.push_back(n);
                mu.mult.push_back(1);
            }
        }
        mu.values.resize(mu.num.size());
        for (std::size_t i = 0; i < mu.num.size(); ++i)
            mu.values[i] = static_cast<double>(mu.num[i]) / static_cast<double>(den);
        return mu;
    }

    static EmpiricalMeasure1D from_pointset(const PointSet& ps) {
        if (ps.dim != 1) throw std::invalid_argument("EmpiricalMeasure1D: point set must be one-dimensional");
        if (ps.size() == 0) throw std::invalid_argument("EmpiricalMeasure1D: empty input");
        if (ps.exact) {
            const std::int64_t den = static_cast<std::int64_t>(
                pow_u64(static_cast<std::uint64_t>(ps.base), static_cast<unsigned>(ps.level)));
            return from_exact(ps.cell, den);
        }
        return from_values(ps.pts);
    }
};

// ---------------------------------------------------------------------------
// Star discrepancy: N * D_inf over T = {[0,t] : 0 < t < 1}
// ---------------------------------------------------------------------------

// Supremum of |#{z_j <= t} - N t| over 0 < t < 1, taken over both one-sided
// limits at every sample value (and the t->0+ limit, which picks up points
// sitting at the origin).
inline double star_discrepancy(const EmpiricalMeasure1D& mu) {
    const std::size_t K = mu.values.size();
    if (mu.count == 0) throw std::invalid_argument("star_discrepancy: empty measure");
    if (mu.exact() && mu.count <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max() / mu.den)) {
        const std::int64_t N = static_cast<std::int64_t>(mu.count);
        std::int64_t best = 0;
        std::int64_t cum = 0;
        for (std::size_t k = 0; k < K; ++k) {
            const std::int64_t target = N * mu.num[k];
            if (mu.num[k] > 0) best = std::max(best, std::abs(cum * mu.den - target));
            cum += static_cast<std::int64_t>(mu.mult[k]);
            best = std::max(best, std::abs(cum * mu.den - target));
        }
        if (mu.num[0] == 0) best = std::max(best, static_cast<std::int64_t>(mu.mult[0]) * mu.den);
        return static_cast<double>(best) / static_cast<double>(mu.den);
    }
    const double N = static_cast<double>(mu.count);
    double best = 0.0;
    double cum = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        const double target = N * mu.values[k];
        if (mu.values[k] > 0.0) best = std::max(best, std::abs(cum - target));
        cum += static_cast<double>(mu.mult[k]);
        best = std::max(best, std::abs(cum - target));
    }
    if (mu.values[0] == 0.0) best = std::max(best, static_cast<double>(mu.mult[0]));
    return best;
}

// ---------------------------------------------------------------------------
// L^p discrepancy: N^p * D_p over anchored half-open intervals [0,t)
// ---------------------------------------------------------------------------

namespace detail {

// antiderivative of |x|^p, with fast paths for the common exponents
inline double abs_pow_primitive(double x, double p) {
    const double a = std::abs(x);
    double v;
    if (p == 1.0)
        v = a * a / 2.0;
    else if (p == 2.0)
        v = a * a * a / 3.0;
    else if (p == 3.0)
        v = a * a * a * a / 4.0;
    else if (p == 0.5)
        v = a * std::sqrt(a) / 1.5;
    else
        v = std::pow(a, p + 1.0) / (p + 1.0);
    return x < 0.0 ? -v : v;
}

// integral of |c - N t|^p over (a, e)
inline double segment_integral(double c, double a, double e, double N, double p) {
    if (e <= a) return 0.0;
    return (abs_pow_primitive(N * e - c, p) - abs_pow_primitive(N * a - c, p)) / N;
}

}  // namespace detail

// Exact piecewise integration of |#{z_j < t} - N t|^p over (0,1); the
// integrand between consecutive order statistics is |c - Nt|^p and each
// segment integrates in closed form.
inline double lp_discrepancy(const EmpiricalMeasure1D& mu, double p) {
    if (mu.count == 0) throw std::invalid_argument("lp_discrepancy: empty measure");
    if (!(p > 0.0)) throw std::invalid_argument("lp_discrepancy: p must be positive");
    const double N = static_cast<double>(mu.count);
    double total = 0.0;
    double cum = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < mu.values.size(); ++k) {
        total += detail::segment_integral(cum, prev, mu.values[k], N, p);
        cum += static_cast<double>(mu.mult[k]);
        prev = mu.values[k];
    }
    total += detail::segment_integral(N, prev, 1.0, N, p);
    return total;
}

// D_p of the translated lattice omega(b,m,v) = ((Z + v) b^-m) on [0,1):
// (v^{p+1} + (1-v)^{p+1}) / (p+1) * b^{-mp}.
inline double closed_form_lattice_lp(int b, int m, double v, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("closed_form_lattice_lp: p must be positive");
    if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument("closed_form_lattice_lp: v must be in [0,1)");
    const double top = std::pow(v, p + 1.0) + std::pow(1.0 - v, p + 1.0);
    return top / (p + 1.0) * std::pow(static_cast<double>(b), -m * p);
}

// D_p of the paired extremal set: points doubled up at spacing 2/b^m starting
// at the origin (one trailing singleton when b^m is odd). Bounded by
// 2^p / (p+1) * b^{-mp}, with equality for even b^m.
inline double extremal_pair_lp(int b, int m, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("extremal_pair_lp: p must be positive");
    const std::uint64_t K = pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(m));
    const std::uint64_t pairs = K / 2;
    const bool odd = (K % 2) != 0;
    const double unit = std::pow(static_cast<double>(b), -static_cast<double>(m) * (p + 1.0));
    double total = static_cast<double>(pairs) * unit * std::pow(2.0, p + 1.0) / (p + 1.0);
    if (odd) total += unit / (p + 1.0);
    return total;
}

// ---------------------------------------------------------------------------
// Perturbed lattice check (any dimension)
// ---------------------------------------------------------------------------

struct PerturbedLatticeReport {
    bool ok = true;
    std::uint64_t offending_cell = 0;
    explicit operator bool() const { return ok; }
};

// True iff every cell q + b^-m [0,1)^d, q in the lattice of resolution b^m,
// contains exactly one point.
inline PerturbedLatticeReport verify_perturbed_lattice(const PointSet& ps, int b, int m) {
    const std::uint64_t side = pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(m));
    std::uint64_t cells = 1;
    for (int j = 0; j < ps.dim; ++j) {
        if (cells > UINT64_MAX / side) throw std::overflow_error("verify_perturbed_lattice: too many cells");
        cells *= side;
    }
    if (ps.size() != cells)
        throw std::invalid_argument("verify_perturbed_lattice: need exactly b^{dm} points, got " +
                                    std::to_string(ps.size()));
    std::vector<bool> seen(cells, false);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        std::uint64_t flat = 0;
        for (int j = ps.dim; j-- > 0;)
            flat = flat * side + static_cast<std::uint64_t>(derived_cell(ps, i, j, m, b));
        if (seen[flat]) return {false, flat};
        seen[flat] = true;
    }
    return {};
}

// ---------------------------------------------------------------------------
// f-sublinearity check
// ---------------------------------------------------------------------------

// D(sum of parts) <= f(#parts) * sum D(part_i), within relative tolerance.
inline bool check_f_sublinearity(const std::function<double(const EmpiricalMeasure1D&)>& D,
                                 const std::function<double(std::size_t)>& f,
                                 const std::vector<EmpiricalMeasure1D>& parts,
                                 double rel_tol = 1e-9) {
    if (parts.empty()) throw std::invalid_argument("check_f_sublinearity: no parts");
    std::vector<double> all;
    double rhs = 0.0;
    for (const auto& part : parts) {
        rhs += D(part);
        for (std::size_t k = 0; k < part.values.size(); ++k)
            all.insert(all.end(), part.mult[k], part.values[k]);
    }
    rhs *= f(parts.size());
    const double lhs = D(EmpiricalMeasure1D::from_values(std::move(all)));
    return lhs <= rhs + rel_tol * std::max(1.0, std::abs(rhs));
}

// ---------------------------------------------------------------------------
// All-prefix star evaluator
// ---------------------------------------------------------------------------

// N * D_inf of every prefix (z_1), (z_1,z_2), ... of an ordered sample list.
// Shared rank bookkeeping keeps the whole sweep at O(N) per prefix.
inline std::vector<double> star_all_prefixes(std::span<const double> points,
                                             std::span<const std::int64_t> nums = {},
                                             std::int64_t den = 0) {
    const std::size_t N = points.size();
    const bool exact = den > 0 && nums.size() == N &&
                       static_cast<std::uint64_t>(N) <=
                           static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max() / den);
    // distinct sorted values and the slot of each point
    std::vector<std::size_t> order(N);
    for (std::size_t i = 0; i < N; ++i) order[i] = i;
    if (exact)
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nums[a] < nums[b]; });
    else
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    std::vector<std::size_t> slot_of(N);
    std::vector<double> slot_value;
    std::vector<std::int64_t> slot_num;
    slot_value.reserve(N);
    for (std::size_t r = 0; r < N; ++r) {
        const std::size_t i = order[r];
        const bool fresh = slot_value.empty() ||
                           (exact ? slot_num.back() != nums[i] : slot_value.back() != points[i]);
        if (fresh) {
            slot_value.push_back(points[i]);
            if (exact) slot_num.push_back(nums[i]);
        }
        slot_of[i] = slot_value.size() - 1;
    }
    const std::size_t U = slot_value.size();
    std::vector<std::uint32_t> cnt(U, 0);
    std::vector<double> out(N);
    for (std::size_t mlen = 1; mlen <= N; ++mlen) {
        ++cnt[slot_of[mlen - 1]];
        if (exact) {
            const std::int64_t M = static_cast<std::int64_t>(mlen);
            std::int64_t best = 0, cum = 0;
            for (std::size_t k = 0; k < U; ++k) {
                if (cnt[k] == 0) continue;
                const std::int64_t target = M * slot_num[k];
                if (slot_num[k] > 0) best = std::max(best, std::abs(cum * den - target));
                cum += cnt[k];
                best = std::max(best, std::abs(cum * den - target));
            }
            if (slot_num[0] == 0 && cnt[0] > 0) best = std::max(best, static_cast<std::int64_t>(cnt[0]) * den);
            out[mlen - 1] = static_cast<double>(best) / static_cast<double>(den);
        } else {
            const double M = static_cast<double>(mlen);
            double best = 0.0, cum = 0.0;
            for (std::size_t k = 0; k < U; ++k) {
                if (cnt[k] == 0) continue;
                const double target = M * slot_value[k];
                if (slot_value[k] > 0.0) best = std::max(best, std::abs(cum - target));
                cum += cnt[k];
                best = std::max(best, std::abs(cum - target));
            }
            if (slot_value[0] == 0.0 && cnt[0] > 0) best = std::max(best, static_cast<double>(cnt[0]));
            out[mlen - 1] = best;
        }
    }
    return out;
}

}  // namespace lodisq
