#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lodisq/pointset.hpp"
#include "lodisq/radix.hpp"
#include "lodisq/rng.hpp"

namespace lodisq {

// ---------------------------------------------------------------------------
// Permutation policies for the H-enumeration
// ---------------------------------------------------------------------------

enum class PermMode { identity, explicit_tables, seeded };

// Per-level bijection on {1,...,b^d-1} applied to the canonical H-enumeration.
// Index 0 (the zero vector) is never permuted.
struct PermutationPolicy {
    PermMode mode = PermMode::identity;
    std::vector<std::vector<std::uint32_t>> tables;  // tables[level][k-1] in [1, B)
    std::uint64_t seed = 0;

    static PermutationPolicy identity_policy() { return {}; }

    static PermutationPolicy seeded_policy(std::uint64_t seed) {
        PermutationPolicy p;
        p.mode = PermMode::seeded;
        p.seed = seed;
        return p;
    }

    static PermutationPolicy explicit_policy(std::vector<std::vector<std::uint32_t>> tables) {
        PermutationPolicy p;
        p.mode = PermMode::explicit_tables;
        p.tables = std::move(tables);
        return p;
    }
};

// Full level map k -> H-index for k in [0, B); entry 0 is always 0.
inline std::vector<std::uint32_t> level_table(const PermutationPolicy& p, int level, std::uint64_t B) {
    std::vector<std::uint32_t> map(B);
    for (std::uint64_t k = 0; k < B; ++k) map[k] = static_cast<std::uint32_t>(k);
    switch (p.mode) {
        case PermMode::identity:
            break;
        case PermMode::explicit_tables: {
            if (level < static_cast<int>(p.tables.size())) {
                const auto& t = p.tables[static_cast<std::size_t>(level)];
                if (t.size() != B - 1) throw std::invalid_argument("PermutationPolicy: table size must be b^d-1");
                std::vector<bool> seen(B, false);
                for (std::uint64_t k = 1; k < B; ++k) {
                    std::uint32_t h = t[k - 1];
                    if (h < 1 || h >= B || seen[h]) throw std::invalid_argument("PermutationPolicy: table is not a bijection on {1..b^d-1}");
                    seen[h] = true;
                    map[k] = h;
                }
            }
            break;  // levels past the provided tables stay identity
        }
        case PermMode::seeded: {
            SplitMix64 rng(keyed_u64(p.seed, 0x68706572u /*"hper"*/, static_cast<std::uint64_t>(level)));
            for (std::uint64_t k = B - 1; k >= 2; --k) {
                std::uint64_t j = 1 + rng.below(k);  // j in [1, k]
                std::swap(map[k], map[j]);
            }
            break;
        }
    }
    return map;
}

// ---------------------------------------------------------------------------
// Canonical H-enumeration
// ---------------------------------------------------------------------------

// d-digit base-b representation of k, most significant digit first.
inline std::vector<int> canonical_H(int b, int d, std::uint64_t k) {
    const std::uint64_t B = radix_of(b, d);
    if (k >= B) throw std::out_of_range("canonical_H: k must be < b^d");
    std::vector<int> v(static_cast<std::size_t>(d), 0);
    for (int i = d - 1; i >= 0; --i) {
        v[static_cast<std::size_t>(i)] = static_cast<int>(k % static_cast<std::uint64_t>(b));
        k /= static_cast<std::uint64_t>(b);
    }
    return v;
}

// Shift vector used when building points: coordinate i takes digit i of the
// H-index, least significant first (the reverse reading of canonical_H).
inline void shift_vec(int b, int d, std::uint64_t h, int* out) {
    for (int i = 0; i < d; ++i) {
        out[i] = static_cast<int>(h % static_cast<std::uint64_t>(b));
        h /= static_cast<std::uint64_t>(b);
    }
}

// ---------------------------------------------------------------------------
// S-box sequence (closed form)
// ---------------------------------------------------------------------------

namespace detail {

// Numerators of s_n at the given depth (>= number of base-b^d digits of n).
inline void sbox_nums(std::uint64_t n, int b, int d, const PermutationPolicy& perm,
                      int depth, std::int64_t* out) {
    const std::uint64_t B = radix_of(b, d);
    for (int i = 0; i < d; ++i) out[i] = 0;
    if (n == 0) return;
    if (depth < 1) throw std::invalid_argument("sbox_nums: depth too small for index");
    std::vector<int> sv(static_cast<std::size_t>(d));
    int level = 0;
    std::int64_t scale = static_cast<std::int64_t>(
        pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(depth - 1)));
    while (n > 0) {
        if (level >= depth) throw std::invalid_argument("sbox_nums: depth too small for index");
        const std::uint64_t eps = n % B;
        n /= B;
        if (eps != 0) {
            const auto map = level_table(perm, level, B);
            shift_vec(b, d, map[eps], sv.data());
            for (int i = 0; i < d; ++i) out[i] += sv[static_cast<std::size_t>(i)] * scale;
        }
        scale /= b;
        ++level;
    }
}

}  // namespace detail

// Closed form s_n = sum_r H^{(r)}_{eps_r} b^{-r-1} over the digits of n in base b^d.
inline LatticePoint sbox_point(std::uint64_t n, int b, int d,
                               const PermutationPolicy& perm = {}) {
    const RadixExpansion e = expand(n, b, d);
    const int depth = static_cast<int>(e.digits.size());
    LatticePoint p;
    p.base = b;
    p.coords.resize(static_cast<std::size_t>(d));
    if (depth == 0) return p;  // s_0 = 0
    std::vector<std::int64_t> nums(static_cast<std::size_t>(d));
    detail::sbox_nums(n, b, d, perm, depth, nums.data());
    for (int i = 0; i < d; ++i)
        p.coords[static_cast<std::size_t>(i)] = canonical({nums[static_cast<std::size_t>(i)], depth}, b);
    return p;
}

// First N points of S-box, exact, at a common resolution.
inline PointSet sbox_prefix(std::uint64_t N, int b, int d, const PermutationPolicy& perm = {}) {
    const std::uint64_t B = radix_of(b, d);
    PointSet ps;
    ps.dim = d;
    ps.base = b;
    ps.exact = true;
    int level = 0;
    if (N >= 2) level = static_cast<int>(expand(N - 1, b, d).digits.size());
    ps.level = level;
    ps.cell.resize(static_cast<std::size_t>(N) * static_cast<std::size_t>(d));
    ps.pts.resize(ps.cell.size());

    // materialized level maps avoid rebuilding per point
    std::vector<std::vector<std::uint32_t>> maps;
    maps.reserve(static_cast<std::size_t>(level));
    for (int m = 0; m < level; ++m) maps.push_back(level_table(perm, m, B));

    std::vector<int> sv(static_cast<std::size_t>(d));
    for (std::uint64_t n = 0; n < N; ++n) {
        std::int64_t* cell = ps.cell.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(d);
        for (int i = 0; i < d; ++i) cell[i] = 0;
        std::uint64_t rest = n;
        std::int64_t scale = level > 0
                                 ? static_cast<std::int64_t>(pow_u64(static_cast<std::uint64_t>(b),
                                                                     static_cast<unsigned>(level - 1)))
                                 : 0;
        int lev = 0;
        while (rest > 0) {
            const std::uint64_t eps = rest % B;
            rest /= B;
            if (eps != 0) {
                shift_vec(b, d, maps[static_cast<std::size_t>(lev)][eps], sv.data());
                for (int i = 0; i < d; ++i) cell[i] += sv[static_cast<std::size_t>(i)] * scale;
            }
            scale /= b;
            ++lev;
        }
        for (int i = 0; i < d; ++i)
            ps.pts[static_cast<std::size_t>(n) * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)] =
                badic_to_double({cell[i], level}, b);
    }
    // N = b^{dm} prefixes are exactly the lattice of resolution b^m
    if (N > 0) {
        std::uint64_t p = 1;
        int m = 0;
        while (p < N) { p *= B; ++m; }
        if (p == N) ps.resolution_hint = pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(m));
    }
    return ps;
}

// ---------------------------------------------------------------------------
// Guided sequences
// ---------------------------------------------------------------------------

enum class CellChoice { mimic_sbox, seeded };
enum class InCellPosition { origin, center, seeded_uniform };

struct GuidedPolicy {
    CellChoice cell_choice = CellChoice::mimic_sbox;
    InCellPosition position = InCellPosition::origin;
    std::vector<double> q0;  // empty = zero vector
    std::uint64_t seed = 0;

    static GuidedPolicy mimic() { return {}; }

    static GuidedPolicy seeded(std::uint64_t seed) {
        GuidedPolicy g;
        g.cell_choice = CellChoice::seeded;
        g.position = InCellPosition::seeded_uniform;
        g.seed = seed;
        return g;
    }
};

// Builds (q_0, ..., q_{N-1}). Levels are constructed whole: inside each box
// s_r + b^{-m}[0,1)^d the b^d points with index = r (mod b^{dm}) occupy
// distinct sub-cells; the inherited point keeps its sub-cell, the rest are
// assigned by cell_choice and positioned by in_cell_position.
inline PointSet sboxplus_prefix(std::uint64_t N, int b, int d,
                                const PermutationPolicy& perm = {},
                                const GuidedPolicy& gp = {}) {
    const std::uint64_t B = radix_of(b, d);
    PointSet out;
    out.dim = d;
    out.base = b;
    if (N == 0) {
        out.level = 0;
        return out;
    }

    int target_level = 0;
    std::uint64_t full = 1;
    while (full < N) {
        full *= B;
        ++target_level;
    }

    const std::uint64_t cell_seed = derive_seed(gp.seed, "sboxplus.cell");
    const std::uint64_t off_seed = derive_seed(gp.seed, "sboxplus.offset");

    const std::size_t dd = static_cast<std::size_t>(d);
    std::vector<std::int64_t> cells(static_cast<std::size_t>(full) * dd, 0);  // at current level
    std::vector<double> resid(static_cast<std::size_t>(full) * dd, 0.0);      // residual offsets
    bool all_zero_offsets = true;

    // q_0: level 0 is the single unit cell; the residual offset is q_0 itself
    if (!gp.q0.empty()) {
        if (gp.q0.size() != dd) throw std::invalid_argument("GuidedPolicy: q0 dimension mismatch");
        for (std::size_t j = 0; j < dd; ++j) {
            if (gp.q0[j] < 0.0 || gp.q0[j] >= 1.0) throw std::invalid_argument("GuidedPolicy: q0 outside [0,1)^d");
            resid[j] = gp.q0[j];
            if (gp.q0[j] != 0.0) all_zero_offsets = false;
        }
    }

    std::vector<std::vector<std::uint32_t>> maps;
    for (int m = 0; m < target_level; ++m) maps.push_back(level_table(perm, m, B));

    std::vector<std::int64_t> guide(dd);
    std::vector<int> sub_old(dd), sv(dd);
    std::vector<std::uint32_t> freelist;
    std::vector<std::uint64_t> chosen(B);
    std::uint64_t count = 1;  // = B^m
    for (int m = 0; m < target_level; ++m) {
        const std::uint64_t side = pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(m));
        // box (= level-m cell) of the old point in guide order: guide cells
        // are exactly the level-m cells of s_r, and by lattice filling each
        // box holds exactly one of the first B^m points
        std::vector<std::uint64_t> old_in_box(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            std::uint64_t flat = 0;
            for (std::size_t j = dd; j-- > 0;)
                flat = flat * side + static_cast<std::uint64_t>(cells[i * dd + j]);
            old_in_box[flat] = i;
        }

        for (std::uint64_t r = 0; r < count; ++r) {
            detail::sbox_nums(r, b, d, perm, m, guide.data());
            std::uint64_t flat = 0;
            for (std::size_t j = dd; j-- > 0;)
                flat = flat * side + static_cast<std::uint64_t>(guide[j]);
            const std::uint64_t old_idx = old_in_box[flat];

            // sub-cell of the inherited point = next digit of its residual
            std::uint64_t osc_flat = 0;
            for (std::size_t j = dd; j-- > 0;) {
                sub_old[j] = static_cast<int>(resid[old_idx * dd + j] * b);
                osc_flat = osc_flat * static_cast<std::uint64_t>(b) + static_cast<std::uint64_t>(sub_old[j]);
            }

            // choose target sub-cells for k = 1..B-1
            if (gp.cell_choice == CellChoice::mimic_sbox) {
                for (std::uint64_t k = 1; k < B; ++k) {
                    std::uint64_t h = maps[static_cast<std::size_t>(m)][k];
                    chosen[k] = (h == osc_flat) ? 0 : h;  // displaced target falls back to the k=0 sub-cell
                }
            } else {
                freelist.clear();
                for (std::uint64_t c = 0; c < B; ++c)
                    if (c != osc_flat) freelist.push_back(static_cast<std::uint32_t>(c));
                SplitMix64 rng(keyed_u64(cell_seed, static_cast<std::uint64_t>(m), r));
                for (std::size_t i = freelist.size() - 1; i > 0; --i)
                    std::swap(freelist[i], freelist[rng.below(i + 1)]);
                for (std::uint64_t k = 1; k < B; ++k) chosen[k] = freelist[k - 1];
            }

            for (std::uint64_t k = 1; k < B; ++k) {
                const std::uint64_t idx = r + k * count;
                shift_vec(b, d, chosen[k], sv.data());
                for (std::size_t j = 0; j < dd; ++j) {
                    cells[idx * dd + j] = guide[j] * b + sv[j];
                    double u = 0.0;
                    switch (gp.position) {
                        case InCellPosition::origin: break;
                        case InCellPosition::center: u = 0.5; break;
                        case InCellPosition::seeded_uniform:
                            u = keyed_unit(off_seed, static_cast<std::uint64_t>(m), r, k, j);
                            break;
                    }
                    resid[idx * dd + j] = u;
                    if (u != 0.0) all_zero_offsets = false;
                }
            }
        }

        // refine all existing points to level m+1
        for (std::uint64_t i = 0; i < count; ++i) {
            for (std::size_t j = 0; j < dd; ++j) {
                double y = resid[i * dd + j] * b;
                int digit = static_cast<int>(y);
                cells[i * dd + j] = cells[i * dd + j] * b + digit;
                resid[i * dd + j] = y - digit;
            }
        }
        count *= B;
    }

    out.level = target_level;
    out.exact = all_zero_offsets;
    out.cell.assign(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(N) * dd));
    out.pts.resize(static_cast<std::size_t>(N) * dd);
    const double scale = static_cast<double>(
        pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(target_level)));
    for (std::size_t k = 0; k < out.pts.size(); ++k) {
        if (all_zero_offsets)
            out.pts[k] = badic_to_double({out.cell[k], target_level}, b);
        else
            out.pts[k] = (static_cast<double>(out.cell[k]) + resid[k]) / scale;
    }
    if (N == full) out.resolution_hint = pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(target_level));
    return out;
}

// ---------------------------------------------------------------------------
// Structural checks
// ---------------------------------------------------------------------------

struct CheckReport {
    bool ok = true;
    std::string detail;
    explicit operator bool() const { return ok; }
};

// Definition 6 conditions (1) and (2) at every complete level of the input.
inline CheckReport check_guidance(const PointSet& ps, int b, int d,
                                  const PermutationPolicy& perm = {}) {
    const std::uint64_t B = radix_of(b, d);
    const std::uint64_t n = ps.size();
    int mtop = -1;
    {
        std::uint64_t p = 1;
        int m = 0;
        while (p < n) { p *= B; ++m; }
        if (p != n || m < 1) throw std::invalid_argument("check_guidance: size must be b^{d(m+1)} for some m >= 0");
        mtop = m - 1;
    }
    if (ps.dim != d) throw std::invalid_argument("check_guidance: dimension mismatch");
    PointSet scratch = ps;
    if (scratch.base == 0) scratch.base = b;
    const std::size_t dd = static_cast<std::size_t>(d);
    std::vector<std::int64_t> guide(dd);
    for (int m = 0; m <= mtop; ++m) {
        const std::uint64_t lvl_count = pow_u64(B, static_cast<unsigned>(m + 1));
        const std::uint64_t side = pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(m + 1));
        // (1) lattice filling at resolution b^{m+1}
        std::vector<bool> seen(lvl_count, false);
        for (std::uint64_t i = 0; i < lvl_count; ++i) {
            std::uint64_t flat = 0;
            for (std::size_t j = dd; j-- > 0;)
                flat = flat * side +
                       static_cast<std::uint64_t>(derived_cell(scratch, i, static_cast<int>(j), m + 1));
            if (seen[flat])
                return {false, "lattice filling violated at level " + std::to_string(m + 1) +
                                   ", cell " + std::to_string(flat)};
            seen[flat] = true;
        }
        // (2) S-box guidance at level m
        const std::uint64_t boxes = pow_u64(B, static_cast<unsigned>(m));
        for (std::uint64_t r = 0; r < boxes; ++r) {
            detail::sbox_nums(r, b, d, perm, m, guide.data());
            for (std::uint64_t k = 1; k < B; ++k) {
                const std::uint64_t idx = r + k * boxes;
                for (std::size_t j = 0; j < dd; ++j) {
                    if (derived_cell(scratch, idx, static_cast<int>(j), m) != guide[j])
                        return {false, "guidance violated at level " + std::to_string(m) + ", index " +
                                           std::to_string(idx)};
                }
            }
        }
    }
    return {};
}

struct LemmaReport {
    bool ok = true;
    LatticePoint witness;
    std::uint64_t fail_index = 0;
    std::string detail;
    explicit operator bool() const { return ok; }
};

// K(t) = sum_{r=t}^{m} eps_r b^{dr} for eps = (eps_1, ..., eps_m)
inline std::uint64_t lemma_K(const std::vector<std::uint32_t>& eps, int t, std::uint64_t B) {
    std::uint64_t K = 0;
    for (int r = static_cast<int>(eps.size()); r >= t; --r) {
        if (eps[static_cast<std::size_t>(r - 1)] >= B) throw std::invalid_argument("lemma_K: digit out of range");
        K += eps[static_cast<std::size_t>(r - 1)] * pow_u64(B, static_cast<unsigned>(r));
    }
    return K;
}

// Segment-shift identity (s_{K(t)}, ..., s_{K(t)+k}) = v + (s_0, ..., s_k)
// with v in [0, b^-t)^d on the grid b^{-m-1} Z^d.
inline LemmaReport check_lemma1(int b, int d, const PermutationPolicy& perm, int m,
                                const std::vector<std::uint32_t>& eps, int t, std::uint64_t k) {
    const std::uint64_t B = radix_of(b, d);
    if (m < 1 || static_cast<int>(eps.size()) != m) throw std::invalid_argument("check_lemma1: eps must have length m >= 1");
    if (t < 1 || t > m) throw std::invalid_argument("check_lemma1: need 1 <= t <= m");
    if (k >= pow_u64(B, static_cast<unsigned>(t))) throw std::invalid_argument("check_lemma1: need k < b^{dt}");
    const std::uint64_t K = lemma_K(eps, t, B);
    const int depth = m + 1;
    const std::size_t dd = static_cast<std::size_t>(d);

    LemmaReport rep;
    std::vector<std::int64_t> vnum(dd), base_num(dd), seg_num(dd);
    detail::sbox_nums(K, b, d, perm, depth, vnum.data());
    const std::int64_t box = static_cast<std::int64_t>(
        pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(depth - t)));
    rep.witness.base = b;
    rep.witness.coords.resize(dd);
    for (std::size_t j = 0; j < dd; ++j) {
        if (vnum[j] < 0 || vnum[j] >= box) {
            rep.ok = false;
            rep.detail = "witness not in [0, b^-t)^d";
            return rep;
        }
        rep.witness.coords[j] = canonical({vnum[j], depth}, b);
    }
    for (std::uint64_t u = 0; u <= k; ++u) {
        detail::sbox_nums(K + u, b, d, perm, depth, seg_num.data());
        detail::sbox_nums(u, b, d, perm, depth, base_num.data());
        for (std::size_t j = 0; j < dd; ++j) {
            if (seg_num[j] != vnum[j] + base_num[j]) {
                rep.ok = false;
                rep.fail_index = u;
                rep.detail = "segment shift mismatch at offset " + std::to_string(u) + ", coordinate " +
                             std::to_string(j);
                return rep;
            }
        }
    }
    return rep;
}

// {q_{K(t)}, ..., q_{K(t)+b^{dt}-1}} - v is a perturbed lattice set of
// resolution b^t, with v = s at the index K(t) truncated below its top
// nonzero digit (a grid point of b^-m Z^d inside [0, b^-t)^d).
inline LemmaReport check_lemma2(int b, int d, const PermutationPolicy& perm, const PointSet& guided,
                                int m, const std::vector<std::uint32_t>& eps, int t) {
    const std::uint64_t B = radix_of(b, d);
    if (m < 1 || static_cast<int>(eps.size()) != m) throw std::invalid_argument("check_lemma2: eps must have length m >= 1");
    if (t < 1 || t > m) throw std::invalid_argument("check_lemma2: need 1 <= t <= m");
    if (!guided.has_cells()) throw std::invalid_argument("check_lemma2: guided set must carry cells");
    const std::uint64_t K = lemma_K(eps, t, B);
    const std::uint64_t span = pow_u64(B, static_cast<unsigned>(t));
    if (guided.size() < K + span) throw std::invalid_argument("check_lemma2: guided prefix too short");

    int m_star = 0;
    for (int r = m; r >= t; --r)
        if (eps[static_cast<std::size_t>(r - 1)] > 0) { m_star = r; break; }

    const std::size_t dd = static_cast<std::size_t>(d);
    LemmaReport rep;
    rep.witness.base = b;
    rep.witness.coords.assign(dd, BadicCoord{});
    std::vector<std::int64_t> vnum(dd, 0);
    if (m_star >= 1) {
        std::uint64_t Kprime = 0;
        for (int r = t; r < m_star; ++r)
            Kprime += eps[static_cast<std::size_t>(r - 1)] * pow_u64(B, static_cast<unsigned>(r));
        detail::sbox_nums(Kprime, b, d, perm, m_star, vnum.data());
        const std::int64_t box = static_cast<std::int64_t>(
            pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(m_star - t)));
        for (std::size_t j = 0; j < dd; ++j) {
            if (vnum[j] < 0 || vnum[j] >= box) {
                rep.ok = false;
                rep.detail = "witness not in [0, b^-t)^d";
                return rep;
            }
            rep.witness.coords[j] = canonical({vnum[j], m_star}, b);
        }
    }

    const int L = guided.level;
    const int depth_v = m_star >= 1 ? m_star : 0;
    const std::int64_t lift = static_cast<std::int64_t>(
        pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(L - depth_v)));
    const std::int64_t coarse = static_cast<std::int64_t>(
        pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(L - t)));

    if (m_star == 0) {
        // no digit above t: the claim reduces to the lattice-filling condition
        // on the prefix itself (v = 0), one point per cell of resolution b^t
        const std::uint64_t side = pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(t));
        std::vector<bool> seen(span, false);
        for (std::uint64_t u = 0; u < span; ++u) {
            std::uint64_t flat = 0;
            for (std::size_t j = dd; j-- > 0;)
                flat = flat * side + static_cast<std::uint64_t>(guided.cell[u * dd + j] / coarse);
            if (seen[flat]) {
                rep.ok = false;
                rep.fail_index = u;
                rep.detail = "cell occupied twice at offset " + std::to_string(u);
                return rep;
            }
            seen[flat] = true;
        }
        return rep;
    }

    // some digit in [t, m] is positive: the guidance condition pins each
    // point to the cell of its guide, q_{K(t)+u} in v + s_u + b^-t [0,1)^d
    std::vector<std::int64_t> snum(dd);
    for (std::uint64_t u = 0; u < span; ++u) {
        detail::sbox_nums(u, b, d, perm, t, snum.data());  // lattice coordinates of s_u at depth t
        for (std::size_t j = 0; j < dd; ++j) {
            const std::int64_t shifted =
                guided.cell[(K + u) * dd + j] - vnum[j] * lift;
            if (shifted < 0 || shifted / coarse != snum[j]) {
                rep.ok = false;
                rep.fail_index = u;
                rep.detail = "cell mismatch at offset " + std::to_string(u) + ", coordinate " + std::to_string(j);
                return rep;
            }
        }
    }
    return rep;
}

inline LemmaReport check_lemma2(int b, int d, const PermutationPolicy& perm, const GuidedPolicy& gp,
                                int m, const std::vector<std::uint32_t>& eps, int t) {
    const std::uint64_t B = radix_of(b, d);
    const std::uint64_t need = lemma_K(eps, t, B) + pow_u64(B, static_cast<unsigned>(t));
    return check_lemma2(b, d, perm, sboxplus_prefix(need, b, d, perm, gp), m, eps, t);
}

// ---------------------------------------------------------------------------
// Tail distance
// ---------------------------------------------------------------------------

struct TailReport {
    double max_scaled = 0.0;       // max of ||s_t - q_t||_inf * b^{m(t)}, must be <= 1
    double max_power_ratio = 0.0;  // max of ||s_t - q_t||_inf * t^{1/d} / b, must be <= 1
};

inline TailReport tail_distance(int b, int d, const PermutationPolicy& perm, const GuidedPolicy& gp,
                                std::uint64_t t_max) {
    if (t_max < 1) throw std::invalid_argument("tail_distance: t_max must be >= 1");
    const std::uint64_t B = radix_of(b, d);
    const PointSet q = sboxplus_prefix(t_max + 1, b, d, perm, gp);
    TailReport rep;
    std::uint64_t next_pow = B;
    int m = 0;
    double bpow = 1.0;  // b^{m(t)}
    for (std::uint64_t t = 1; t <= t_max; ++t) {
        while (t >= next_pow) {
            next_pow *= B;
            ++m;
            bpow *= b;
        }
        const LatticePoint s = sbox_point(t, b, d, perm);
        double diff = 0.0;
        for (int j = 0; j < d; ++j)
            diff = std::max(diff, std::abs(s.coord_double(j) - q.at(t, j)));
        rep.max_scaled = std::max(rep.max_scaled, diff * bpow);
        rep.max_power_ratio = std::max(
            rep.max_power_ratio, diff * std::pow(static_cast<double>(t), 1.0 / d) / b);
    }
    return rep;
}

}  // namespace lodisq
