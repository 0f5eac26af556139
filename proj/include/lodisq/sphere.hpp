#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "lodisq/parallel.hpp"
#include "lodisq/rng.hpp"
#include "lodisq/seqgen.hpp"

namespace lodisq {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 antipode(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

// ---------------------------------------------------------------------------
// Lambert cylindrical equal-area projection
// ---------------------------------------------------------------------------

// longitude 2*pi*u1, height z = 2*u2 - 1; pushes the uniform measure on
// [0,1)^2 to the normalized surface measure
inline Vec3 lambert(double u1, double u2) {
    if (!(u1 >= 0.0 && u1 < 1.0 && u2 >= 0.0 && u2 < 1.0))
        throw std::invalid_argument("lambert: input outside [0,1)^2");
    const double phi = 2.0 * M_PI * u1;
    const double z = 2.0 * u2 - 1.0;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

// ---------------------------------------------------------------------------
// HEALPix-style projection
// ---------------------------------------------------------------------------
//
// Plane coordinates here are the standard HEALPix plane scaled by 2/pi:
// x' in [0,4), y' in [-1,1]. The twelve base facets are diamonds of
// half-diagonal 1/2 (squares of side sqrt(2)/2): four polar ones per cap
// centered at (k + 1/2, +-1/2) and four equatorial ones at (k, 0).

// Equal-area inverse map from the plane to the sphere.
inline Vec3 healpix_plane_to_sphere(double xp, double yp) {
    xp = xp - 4.0 * std::floor(xp / 4.0);  // wrap longitude into [0,4)
    double z, phi;
    if (std::abs(yp) <= 0.5) {
        z = (4.0 / 3.0) * yp;
        phi = xp * (M_PI / 2.0);
    } else {
        const double s = 2.0 - 2.0 * std::abs(yp);  // 1 at |y'|=1/2, 0 at the pole
        z = std::copysign(1.0 - s * s / 3.0, yp);
        const double xc = std::floor(xp) + 0.5;
        phi = (s > 0.0 ? xc + (xp - xc) / s : xc) * (M_PI / 2.0);
    }
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

// Base facet centers in plane coordinates, ring order: north 0-3,
// equatorial 4-7, south 8-11.
inline std::array<std::array<double, 2>, 12> healpix_facet_centers() {
    std::array<std::array<double, 2>, 12> c{};
    for (int k = 0; k < 4; ++k) {
        c[static_cast<std::size_t>(k)] = {0.5 + k, 0.5};
        c[static_cast<std::size_t>(4 + k)] = {static_cast<double>(k), 0.0};
        c[static_cast<std::size_t>(8 + k)] = {0.5 + k, -0.5};
    }
    return c;
}

// The 12 images of u: the unit square scaled by sqrt(2)/2, rotated by 45
// degrees and placed on each base facet, then mapped to the sphere.
inline std::array<Vec3, 12> g_projection(double u1, double u2) {
    if (!(u1 >= 0.0 && u1 < 1.0 && u2 >= 0.0 && u2 < 1.0))
        throw std::invalid_argument("g_projection: input outside [0,1)^2");
    const double vx = (u1 - u2) / 2.0;
    const double vy = (u1 + u2 - 1.0) / 2.0;
    const auto centers = healpix_facet_centers();
    std::array<Vec3, 12> out;
    for (std::size_t f = 0; f < 12; ++f)
        out[f] = healpix_plane_to_sphere(centers[f][0] + vx, centers[f][1] + vy);
    return out;
}

// ---------------------------------------------------------------------------
// Spherical cap discrepancy estimator
// ---------------------------------------------------------------------------

struct CapCenterResult {
    int kind = 0;  // 0 = sample point, 1 = antipode, 2 = random
    std::uint64_t index = 0;
    double argmax_t = 0.0;
    double value = 0.0;
};

struct CapDiscrepancyReport {
    std::size_t n_points = 0;
    double max_value = 0.0;   // estimate of N * D_inf
    double argmax_t = 0.0;
    std::vector<CapCenterResult> per_center;
};

struct CenterSpec {
    bool use_points = true;
    bool use_antipodes = true;
    std::size_t n_random = 4096;
    std::uint64_t seed = 0;
};

inline Vec3 random_sphere_point(std::uint64_t seed, std::uint64_t index) {
    const double z = 2.0 * keyed_unit(seed, 0x63617063u /*"capc"*/, index, 0) - 1.0;
    const double phi = 2.0 * M_PI * keyed_unit(seed, 0x63617063u, index, 1);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

namespace detail {

// Exact sup over cap radii for one center: sort dot products descending and
// take both one-sided limits at every critical value (plus the open ends
// t -> 0+ and t -> pi-).
inline void cap_sweep(std::span<const Vec3> pts, const Vec3& w, double& best, double& arg_c,
                      std::vector<double>& dots) {
    const std::size_t N = pts.size();
    dots.resize(N);
    for (std::size_t i = 0; i < N; ++i) dots[i] = std::clamp(dot(pts[i], w), -1.0, 1.0);
    std::sort(dots.begin(), dots.end(), std::greater<double>());
    const double Nd = static_cast<double>(N);
    best = 0.0;
    arg_c = 1.0;
    std::size_t i = 0;
    double cum = 0.0;
    while (i < N) {
        std::size_t j = i;
        while (j < N && dots[j] == dots[i]) ++j;
        const double c = dots[i];
        const double target = Nd * (1.0 - c) / 2.0;
        if (c > -1.0 && c < 1.0) {
            const double v_left = std::abs(cum - target);  // t -> acos(c)-
            if (v_left > best) { best = v_left; arg_c = c; }
        }
        cum += static_cast<double>(j - i);
        if (c > -1.0 && c < 1.0) {
            const double v_at = std::abs(cum - target);  // t = acos(c)
            if (v_at > best) { best = v_at; arg_c = c; }
        }
        i = j;
    }
    // open ends: caps shrinking to the center / growing to the whole sphere
    double at_one = 0.0, at_minus_one = 0.0;
    for (std::size_t k = 0; k < N && dots[k] == 1.0; ++k) at_one += 1.0;
    for (std::size_t k = N; k-- > 0 && dots[k] == -1.0;) at_minus_one += 1.0;
    if (at_one > best) { best = at_one; arg_c = 1.0; }
    if (at_minus_one > best) { best = at_minus_one; arg_c = -1.0; }
}

}  // namespace detail

// Estimate with an explicit list of (kind-tagged) centers.
inline CapDiscrepancyReport cap_discrepancy_core(std::span<const Vec3> pts,
                                                 const std::vector<std::pair<Vec3, int>>& centers,
                                                 unsigned threads = 1) {
    if (pts.empty()) throw std::invalid_argument("cap_discrepancy: empty point set");
    CapDiscrepancyReport rep;
    rep.n_points = pts.size();
    rep.per_center.resize(centers.size());
    parallel_chunks(centers.size(), threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> scratch;
        for (std::size_t c = lo; c < hi; ++c) {
            double best, arg_c;
            detail::cap_sweep(pts, centers[c].first, best, arg_c, scratch);
            rep.per_center[c] = {centers[c].second, c, std::acos(std::clamp(arg_c, -1.0, 1.0)), best};
        }
    });
    for (const auto& r : rep.per_center) {
        if (r.value > rep.max_value) {
            rep.max_value = r.value;
            rep.argmax_t = r.argmax_t;
        }
    }
    return rep;
}

// Lower-bound estimate of N * D_inf: caps centered at the points themselves,
// their antipodes, and n_random seeded centers. Monotone nondecreasing in
// n_random (the random stream is indexed, so a larger M extends the list).
inline CapDiscrepancyReport cap_discrepancy_estimate(std::span<const Vec3> pts, const CenterSpec& spec,
                                                     unsigned threads = 1) {
    std::vector<std::pair<Vec3, int>> centers;
    centers.reserve((spec.use_points ? pts.size() : 0) + (spec.use_antipodes ? pts.size() : 0) +
                    spec.n_random);
    if (spec.use_points)
        for (const auto& p : pts) centers.emplace_back(p, 0);
    if (spec.use_antipodes)
        for (const auto& p : pts) centers.emplace_back(antipode(p), 1);
    for (std::size_t i = 0; i < spec.n_random; ++i)
        centers.emplace_back(random_sphere_point(spec.seed, i), 2);
    return cap_discrepancy_core(pts, centers, threads);
}

// ---------------------------------------------------------------------------
// Sequences on the sphere
// ---------------------------------------------------------------------------

// z_{n+1} = L(q_n) for an S-box guided sequence in [0,1)^2
inline std::vector<Vec3> lambert_sboxplus_prefix(std::uint64_t N, int b,
                                                 const PermutationPolicy& perm = {},
                                                 const GuidedPolicy& gp = {}) {
    const PointSet q = sboxplus_prefix(N, b, 2, perm, gp);
    std::vector<Vec3> out(N);
    for (std::uint64_t i = 0; i < N; ++i) out[i] = lambert(q.at(i, 0), q.at(i, 1));
    return out;
}

// blocks of 12 images G(s_n), facet index ascending, so Z_{12K} = G(S_K)
inline std::vector<Vec3> healpix_sbox_prefix(std::uint64_t N, const PermutationPolicy& perm = {}) {
    const std::uint64_t K = (N + 11) / 12;
    const PointSet s = sbox_prefix(K, 2, 2, perm);
    std::vector<Vec3> out;
    out.reserve(N);
    for (std::uint64_t n = 0; n < K && out.size() < N; ++n) {
        const auto block = g_projection(s.at(n, 0), s.at(n, 1));
        for (const auto& p : block) {
            if (out.size() == N) break;
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace lodisq
