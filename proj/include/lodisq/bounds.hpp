#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lodisq/discrepancy1d.hpp"
#include "lodisq/radix.hpp"
#include "lodisq/rng.hpp"
#include "lodisq/sphere.hpp"

namespace lodisq {

// ---------------------------------------------------------------------------
// h-tables
// ---------------------------------------------------------------------------

enum class HProvenance { closed_form, fitted, supplied };

inline const char* to_string(HProvenance p) {
    switch (p) {
        case HProvenance::closed_form: return "closed-form";
        case HProvenance::fitted: return "fitted";
        default: return "supplied";
    }
}

struct HEntry {
    double value = 0.0;
    HProvenance provenance = HProvenance::supplied;
    int depth_n = -1;  // -1 = infinity-type entry h_m^inf, otherwise h_m^n
};

// Per-resolution discrepancy suprema h_m feeding the bound engine.
struct HTable {
    std::map<int, HEntry> entries;

    double at(int m) const {
        auto it = entries.find(m);
        if (it == entries.end()) throw std::out_of_range("HTable: missing entry for m=" + std::to_string(m));
        return it->second.value;
    }

    void set(int m, double value, HProvenance prov = HProvenance::supplied, int depth_n = -1) {
        entries[m] = {value, prov, depth_n};
    }

    static HTable constant(double value, int m_max, HProvenance prov = HProvenance::closed_form) {
        HTable t;
        for (int m = 0; m <= m_max; ++m) t.set(m, value, prov);
        return t;
    }
};

// f(n) = max(n^{p-1}, 1) for L^p discrepancies, f == 1 for sup-type ones.
struct FSpec {
    bool sup = true;
    double p = 1.0;

    static FSpec sup_type() { return {}; }
    static FSpec lp(double p) { return {false, p}; }
};

inline double f_eval(const FSpec& f, std::uint64_t n) {
    if (f.sup || f.p <= 1.0) return 1.0;
    return std::max(std::pow(static_cast<double>(n), f.p - 1.0), 1.0);
}

// ---------------------------------------------------------------------------
// Theorem-1 bound engine over digit expansions
// ---------------------------------------------------------------------------

// f(sum eps_j) * sum_j eps_j h_j
inline double theorem1_eq1(const RadixExpansion& e, const HTable& h, const FSpec& f) {
    if (e.value_n == 0) throw std::invalid_argument("theorem1_eq1: N must be positive");
    double sum = 0.0;
    for (std::size_t j = 0; j < e.digits.size(); ++j)
        sum += static_cast<double>(e.digits[j]) * h.at(static_cast<int>(j));
    return f_eval(f, digit_sum(e)) * sum;
}

// f(2 + sum (b^d - 1 - eps_j)) * (h_{n+1} + h_0 + sum (b^d - 1 - eps_j) h_j)
inline double theorem1_eq2(const RadixExpansion& e, const HTable& h, const FSpec& f) {
    if (e.value_n == 0) throw std::invalid_argument("theorem1_eq2: N must be positive");
    const std::uint64_t B = radix_of(e.base_b, e.dim_d);
    const int n = e.top_index();
    double sum = h.at(n + 1) + h.at(0);
    std::uint64_t co_digits = 0;
    for (std::size_t j = 0; j < e.digits.size(); ++j) {
        const std::uint64_t c = B - 1 - e.digits[j];
        co_digits += c;
        sum += static_cast<double>(c) * h.at(static_cast<int>(j));
    }
    return f_eval(f, 2 + co_digits) * sum;
}

struct BoundReport {
    std::uint64_t N = 0;
    RadixExpansion expansion;
    double bound_eq1 = 0.0;
    double bound_eq2 = 0.0;
    double best = 0.0;
    FSpec f;
    std::string h_provenance;
};

inline BoundReport theorem1_report(const RadixExpansion& e, const HTable& h, const FSpec& f) {
    BoundReport r;
    r.N = e.value_n;
    r.expansion = e;
    r.bound_eq1 = theorem1_eq1(e, h, f);
    r.bound_eq2 = theorem1_eq2(e, h, f);
    r.best = std::min(r.bound_eq1, r.bound_eq2);
    r.f = f;
    bool any_fitted = false, any_closed = false, any_supplied = false;
    for (const auto& [m, entry] : h.entries) {
        (void)m;
        switch (entry.provenance) {
            case HProvenance::closed_form: any_closed = true; break;
            case HProvenance::fitted: any_fitted = true; break;
            case HProvenance::supplied: any_supplied = true; break;
        }
    }
    if (any_fitted && !any_closed && !any_supplied) r.h_provenance = "fitted";
    else if (any_closed && !any_fitted && !any_supplied) r.h_provenance = "closed-form";
    else if (any_supplied && !any_fitted && !any_closed) r.h_provenance = "supplied";
    else r.h_provenance = "mixed";
    return r;
}

// ---------------------------------------------------------------------------
// Specialized bounds
// ---------------------------------------------------------------------------

// Bound on N * D_p^{1/p} of the base-b radical-inverse sequence.
inline double thm2_bound(std::uint64_t N, int b, double p) {
    if (N == 0) throw std::invalid_argument("thm2_bound: N must be positive");
    if (!(p > 0.0)) throw std::invalid_argument("thm2_bound: p must be positive");
    const double M = static_cast<double>(m_b_of(N, b));
    if (std::isinf(p)) return M;
    if (p >= 1.0) return M / std::pow(p + 1.0, 1.0 / p);
    return std::pow(M / (p + 1.0), 1.0 / p);
}

// Same for the guided ((0,1)-type) sequences: twice the lattice bound.
inline double thm3_bound(std::uint64_t N, int b, double p) {
    if (N == 0) throw std::invalid_argument("thm3_bound: N must be positive");
    if (!(p > 0.0)) throw std::invalid_argument("thm3_bound: p must be positive");
    const double M = static_cast<double>(m_b_of(N, b));
    if (std::isinf(p)) return 2.0 * M;
    if (p >= 1.0) return 2.0 * M / std::pow(p + 1.0, 1.0 / p);
    return 2.0 * std::pow(M / (p + 1.0), 1.0 / p);
}

struct SphereBound {
    double digit_form = 0.0;
    double simplified = 0.0;
};

// Cap-discrepancy bound (D_inf scale) for the Lambert image of a guided
// sequence in dimension two; digits of N in base b^2.
inline SphereBound thm4_bound(std::uint64_t N, int b, double fitted_c) {
    if (N == 0) throw std::invalid_argument("thm4_bound: N must be positive");
    const RadixExpansion e = expand(N, b, 2);
    double A = 0.0, bp = 1.0;
    for (std::size_t j = 0; j < e.digits.size(); ++j) {
        A += static_cast<double>(e.digits[j]) * bp;
        bp *= b;
    }
    const double alt = bp * (b + 2) - A;  // bp == b^{n+1}
    const double Nd = static_cast<double>(N);
    const double logterm = fitted_c * std::log(Nd) / Nd;
    SphereBound r;
    r.digit_form = 7.0 * std::sqrt(2.0) / Nd * std::min(A, alt) + logterm;
    r.simplified = 7.0 / std::sqrt(2.0) * static_cast<double>(b) * (b + 2) / std::sqrt(Nd) + logterm;
    return r;
}

// Same for the 12-fold HEALPix image of S-box in base 2; N = 12K + k with
// digits of K in base 4.
inline SphereBound thm5_bound(std::uint64_t N, double fitted_c) {
    if (N == 0) throw std::invalid_argument("thm5_bound: N must be positive");
    const std::uint64_t K = N / 12;
    const RadixExpansion e = expand(K, 2, 2);
    double A = 0.0, tp = 1.0;
    for (std::size_t j = 0; j < e.digits.size(); ++j) {
        A += static_cast<double>(e.digits[j]) * tp;
        tp *= 2.0;
    }
    const double alt = tp * 4.0 - A;  // tp == 2^{n+1}
    const double Nd = static_cast<double>(N);
    const double logterm = fitted_c * std::log(Nd) / Nd;
    SphereBound r;
    r.digit_form = 4.0 * (5.0 + std::sqrt(2.0)) / Nd * std::min(A, alt) + logterm;
    r.simplified = 8.0 / std::sqrt(3.0) * (5.0 + std::sqrt(2.0)) / std::sqrt(Nd) + logterm;
    return r;
}

// ---------------------------------------------------------------------------
// h-table fitting
// ---------------------------------------------------------------------------

enum class HKind {
    lattice_1d_star,
    lattice_1d_lp,
    perturbed_1d_star,
    perturbed_1d_lp,
    sphere_lambert,
    sphere_healpix,
};

struct HFitParams {
    int b = 2;
    double p = 1.0;                 // exponent for the lp kinds
    int m_min = 0;
    int m_max = 8;
    int depth_n = -1;               // translate grid depth; default m+2 per entry
    std::size_t max_translates = 10000;
    std::size_t n_perturbed = 4;    // perturbed-lattice samples per translate
    std::size_t cap_centers = 256;  // random cap centers inside the estimator
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

namespace detail {

// Sup of the cap estimator over sampled (omega, v) pairs at resolution b^m.
inline double fit_sphere_h(HKind kind, const HFitParams& prm, int m) {
    const int b = kind == HKind::sphere_healpix ? 2 : prm.b;
    const std::uint64_t side = pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(m));
    const int n = prm.depth_n >= 0 ? std::max(prm.depth_n, m) : m + 2;
    const std::uint64_t grid = pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(n + 1 - m));
    const double v_unit = 1.0 / static_cast<double>(
        pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(n + 1)));
    const std::uint64_t total = grid * grid;
    SplitMix64 pick(keyed_u64(prm.seed, 0x68666974u /*"hfit"*/, static_cast<std::uint64_t>(m)));

    std::vector<std::pair<std::uint64_t, std::uint64_t>> translates;
    if (total <= prm.max_translates) {
        for (std::uint64_t a = 0; a < grid; ++a)
            for (std::uint64_t c = 0; c < grid; ++c) translates.emplace_back(a, c);
    } else {
        for (std::size_t i = 0; i < prm.max_translates; ++i)
            translates.emplace_back(pick.below(grid), pick.below(grid));
    }

    double h = 0.0;
    std::vector<Vec3> sphere_pts;
    const std::size_t samples = kind == HKind::sphere_healpix ? 1 : prm.n_perturbed;
    for (const auto& [a1, a2] : translates) {
        const double v1 = static_cast<double>(a1) * v_unit;
        const double v2 = static_cast<double>(a2) * v_unit;
        for (std::size_t s = 0; s < samples; ++s) {
            sphere_pts.clear();
            if (kind == HKind::sphere_healpix) {
                for (std::uint64_t c1 = 0; c1 < side; ++c1)
                    for (std::uint64_t c2 = 0; c2 < side; ++c2) {
                        const double x1 = static_cast<double>(c1) / static_cast<double>(side) + v1;
                        const double x2 = static_cast<double>(c2) / static_cast<double>(side) + v2;
                        const auto block = g_projection(x1, x2);
                        sphere_pts.insert(sphere_pts.end(), block.begin(), block.end());
                    }
            } else {
                SplitMix64 rng(keyed_u64(prm.seed, 0x70657274u /*"pert"*/, static_cast<std::uint64_t>(m),
                                         a1 * grid + a2, s));
                for (std::uint64_t c1 = 0; c1 < side; ++c1)
                    for (std::uint64_t c2 = 0; c2 < side; ++c2) {
                        // shrink the top cells so the translate stays valid
                        const double cap1 = (c1 + 1 == side) ? 1.0 - v1 * static_cast<double>(side) : 1.0;
                        const double cap2 = (c2 + 1 == side) ? 1.0 - v2 * static_cast<double>(side) : 1.0;
                        const double x1 = (static_cast<double>(c1) + rng.unit() * cap1) / static_cast<double>(side) + v1;
                        const double x2 = (static_cast<double>(c2) + rng.unit() * cap2) / static_cast<double>(side) + v2;
                        sphere_pts.push_back(lambert(x1, x2));
                    }
            }
            CenterSpec cs;
            cs.n_random = prm.cap_centers;
            cs.seed = keyed_u64(prm.seed, 0x63656e74u /*"cent"*/, static_cast<std::uint64_t>(m));
            h = std::max(h, cap_discrepancy_estimate(sphere_pts, cs, prm.threads).max_value);
        }
    }
    return h;
}

}  // namespace detail

// Closed-form kinds return the exact per-resolution suprema; the sphere kinds
// estimate them by sampling translates (and perturbations) and are tagged
// "fitted".
inline HTable fit_h_table(HKind kind, const HFitParams& prm) {
    HTable t;
    switch (kind) {
        case HKind::lattice_1d_star:
            for (int m = prm.m_min; m <= prm.m_max; ++m) t.set(m, 1.0, HProvenance::closed_form);
            return t;
        case HKind::perturbed_1d_star:
            for (int m = prm.m_min; m <= prm.m_max; ++m) t.set(m, 2.0, HProvenance::closed_form);
            return t;
        case HKind::lattice_1d_lp:
            if (!(prm.p > 0.0)) throw std::invalid_argument("fit_h_table: p must be positive");
            for (int m = prm.m_min; m <= prm.m_max; ++m)
                t.set(m, 1.0 / (prm.p + 1.0), HProvenance::closed_form);
            return t;
        case HKind::perturbed_1d_lp:
            if (!(prm.p > 0.0)) throw std::invalid_argument("fit_h_table: p must be positive");
            for (int m = prm.m_min; m <= prm.m_max; ++m)
                t.set(m, std::pow(2.0, prm.p) / (prm.p + 1.0), HProvenance::closed_form);
            return t;
        case HKind::sphere_lambert:
        case HKind::sphere_healpix:
            for (int m = prm.m_min; m <= prm.m_max; ++m) {
                const int n = prm.depth_n >= 0 ? std::max(prm.depth_n, m) : m + 2;
                t.set(m, detail::fit_sphere_h(kind, prm, m), HProvenance::fitted, n);
            }
            return t;
    }
    throw std::invalid_argument("fit_h_table: unknown kind");
}

}  // namespace lodisq
