#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lodisq/radix.hpp"

namespace lodisq {

// One exact coordinate num / b^depth with 0 <= num < b^depth.
struct BadicCoord {
    std::int64_t num = 0;
    int depth = 0;
};

// Strip common factors of b so equal values get equal representations.
inline BadicCoord canonical(BadicCoord c, int b) {
    if (c.num == 0) return {0, 0};
    while (c.depth > 0 && c.num % b == 0) {
        c.num /= b;
        --c.depth;
    }
    return c;
}

inline double badic_to_double(BadicCoord c, int b) {
    c = canonical(c, b);
    return static_cast<double>(c.num) /
           static_cast<double>(pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(c.depth)));
}

// Exact point of [0,1)^d with base-b rational coordinates.
struct LatticePoint {
    int base = 2;
    std::vector<BadicCoord> coords;

    int dim() const { return static_cast<int>(coords.size()); }

    LatticePoint canonicalized() const {
        LatticePoint p{base, coords};
        for (auto& c : p.coords) c = canonical(c, base);
        return p;
    }

    double coord_double(int i) const { return badic_to_double(coords[i], base); }

    friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
        if (a.base != b.base || a.coords.size() != b.coords.size()) return false;
        for (std::size_t i = 0; i < a.coords.size(); ++i) {
            BadicCoord x = canonical(a.coords[i], a.base);
            BadicCoord y = canonical(b.coords[i], b.base);
            if (x.num != y.num || x.depth != y.depth) return false;
        }
        return true;
    }
};

// Ordered multiset of points in [0,1)^d. `pts` is the floating view, always
// filled. When level >= 0 the integer cells at resolution base^level are
// authoritative for all structural (occupancy) checks; a point lies in
// [cell/b^L, (cell+1)/b^L) per coordinate. `exact` means pts == cell / b^L
// exactly (b-adic points, zero in-cell offsets).
struct PointSet {
    int dim = 1;
    int base = 0;
    int level = -1;
    bool exact = false;
    std::vector<std::int64_t> cell;  // n*dim, present iff level >= 0
    std::vector<double> pts;         // n*dim
    std::optional<std::uint64_t> resolution_hint;

    std::size_t size() const { return dim > 0 ? pts.size() / static_cast<std::size_t>(dim) : 0; }

    double at(std::size_t i, int j) const { return pts[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)]; }

    bool has_cells() const { return level >= 0 && !cell.empty(); }

    // Cell index at coarser resolution b^t (0 <= t <= level).
    std::int64_t cell_at(std::size_t i, int j, int t) const {
        if (!has_cells() || t > level) throw std::logic_error("PointSet::cell_at: no cells at this resolution");
        std::int64_t c = cell[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)];
        std::int64_t q = static_cast<std::int64_t>(
            pow_u64(static_cast<std::uint64_t>(base), static_cast<unsigned>(level - t)));
        return c / q;
    }

    LatticePoint lattice_point(std::size_t i) const {
        if (!exact) throw std::logic_error("PointSet::lattice_point: set is not exact");
        LatticePoint p;
        p.base = base;
        p.coords.resize(static_cast<std::size_t>(dim));
        for (int j = 0; j < dim; ++j)
            p.coords[static_cast<std::size_t>(j)] = canonical({cell[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)], level}, base);
        return p;
    }
};

// First n points of an ordered set.
inline PointSet prefix(const PointSet& ps, std::size_t n) {
    if (n > ps.size()) throw std::invalid_argument("prefix: not enough points");
    PointSet out = ps;
    out.pts.resize(n * static_cast<std::size_t>(ps.dim));
    if (!out.cell.empty()) out.cell.resize(n * static_cast<std::size_t>(ps.dim));
    out.resolution_hint.reset();
    return out;
}

// Cell index of point i, coordinate j, at resolution b^t. Exact when the set
// carries cells at depth >= t; otherwise floored from the floating coordinate
// with a snap for points sitting within 1e-9 of a cell boundary.
inline std::int64_t derived_cell(const PointSet& ps, std::size_t i, int j, int t, int fallback_base = 2) {
    if (ps.has_cells() && t <= ps.level) return ps.cell_at(i, j, t);
    const int b = ps.base > 0 ? ps.base : fallback_base;
    const double scale = static_cast<double>(
        pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(t)));
    double y = ps.at(i, j) * scale;
    double c = std::floor(y);
    if (y - c > 1.0 - 1e-9) c += 1.0;
    if (c >= scale) c = scale - 1.0;
    if (c < 0.0) c = 0.0;
    return static_cast<std::int64_t>(c);
}

// Exact translate by v (one b-adic shift per coordinate); the caller is
// responsible for the result staying inside [0,1)^d (valid translate).
inline PointSet translate(const PointSet& ps, const std::vector<BadicCoord>& v) {
    if (static_cast<int>(v.size()) != ps.dim) throw std::invalid_argument("translate: dimension mismatch");
    PointSet out = ps;
    if (ps.has_cells() && ps.exact) {
        int depth = ps.level;
        for (const auto& c : v) depth = std::max(depth, c.depth);
        const std::int64_t lift = static_cast<std::int64_t>(
            pow_u64(static_cast<std::uint64_t>(ps.base), static_cast<unsigned>(depth - ps.level)));
        const double scale = static_cast<double>(
            pow_u64(static_cast<std::uint64_t>(ps.base), static_cast<unsigned>(depth)));
        std::vector<std::int64_t> shift(v.size());
        for (std::size_t j = 0; j < v.size(); ++j)
            shift[j] = v[j].num * static_cast<std::int64_t>(pow_u64(
                           static_cast<std::uint64_t>(ps.base), static_cast<unsigned>(depth - v[j].depth)));
        out.level = depth;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            for (int j = 0; j < ps.dim; ++j) {
                std::size_t k = i * static_cast<std::size_t>(ps.dim) + static_cast<std::size_t>(j);
                out.cell[k] = ps.cell[k] * lift + shift[static_cast<std::size_t>(j)];
                if (out.cell[k] < 0 || static_cast<double>(out.cell[k]) >= scale)
                    throw std::invalid_argument("translate: not a valid translate");
                out.pts[k] = badic_to_double({out.cell[k], depth}, ps.base);
            }
        }
    } else {
        out.level = -1;
        out.exact = false;
        out.cell.clear();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            for (int j = 0; j < ps.dim; ++j) {
                std::size_t k = i * static_cast<std::size_t>(ps.dim) + static_cast<std::size_t>(j);
                double shifted = ps.pts[k] + badic_to_double(v[static_cast<std::size_t>(j)], ps.base);
                if (shifted < 0.0 || shifted >= 1.0) throw std::invalid_argument("translate: not a valid translate");
                out.pts[k] = shifted;
            }
        }
    }
    out.resolution_hint = ps.resolution_hint;
    return out;
}

}  // namespace lodisq
