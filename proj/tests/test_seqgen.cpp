#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "lodisq/discrepancy1d.hpp"
#include "lodisq/seqgen.hpp"

using namespace lodisq;

namespace {

// Literal recursion oracle: start from s_0 = 0 and concatenate b^d - 1
// shifted copies of the current prefix, level by level.
std::vector<std::vector<BadicCoord>> recursion_prefix(int levels, int b, int d,
                                                      const PermutationPolicy& perm) {
    const std::uint64_t B = radix_of(b, d);
    std::vector<std::vector<BadicCoord>> seq{std::vector<BadicCoord>(static_cast<std::size_t>(d))};
    for (int m = 0; m < levels; ++m) {
        const auto map = level_table(perm, m, B);
        const std::size_t block = seq.size();
        std::vector<int> sv(static_cast<std::size_t>(d));
        for (std::uint64_t k = 1; k < B; ++k) {
            shift_vec(b, d, map[k], sv.data());
            for (std::size_t r = 0; r < block; ++r) {
                std::vector<BadicCoord> pt(static_cast<std::size_t>(d));
                for (int j = 0; j < d; ++j) {
                    // lift to depth m+1 and add the shift digit
                    const BadicCoord& c = seq[r][static_cast<std::size_t>(j)];
                    std::int64_t num = c.num;
                    for (int t = c.depth; t < m + 1; ++t) num *= b;
                    pt[static_cast<std::size_t>(j)] = {num + sv[static_cast<std::size_t>(j)], m + 1};
                }
                seq.push_back(std::move(pt));
            }
        }
    }
    return seq;
}

LatticePoint to_point(const std::vector<BadicCoord>& coords, int b) {
    LatticePoint p;
    p.base = b;
    p.coords = coords;
    return p.canonicalized();
}

}  // namespace

TEST_CASE("canonical_H is the base-b digit vector, most significant first") {
    CHECK(canonical_H(2, 2, 3) == std::vector<int>{1, 1});
    CHECK(canonical_H(2, 1, 1) == std::vector<int>{1});
    CHECK(canonical_H(3, 2, 5) == std::vector<int>{1, 2});
    CHECK(canonical_H(2, 2, 0) == std::vector<int>{0, 0});
    CHECK_THROWS_AS(canonical_H(2, 2, 4), std::out_of_range);
}

TEST_CASE("sbox_point worked examples") {
    CHECK(sbox_point(0, 5, 3).coord_double(0) == 0.0);
    CHECK(sbox_point(0, 5, 3).coord_double(2) == 0.0);

    CHECK(sbox_point(3, 2, 1).coord_double(0) == 0.75);
    const PointSet s4 = sbox_prefix(4, 2, 1);
    CHECK(s4.at(0, 0) == 0.0);
    CHECK(s4.at(1, 0) == 0.5);
    CHECK(s4.at(2, 0) == 0.25);
    CHECK(s4.at(3, 0) == 0.75);

    const LatticePoint p = sbox_point(2, 2, 2);
    CHECK(p.coord_double(0) == 0.0);
    CHECK(p.coord_double(1) == 0.5);
}

TEST_CASE("prefix of size b^{dm} is exactly the lattice") {
    for (int b : {2, 3}) {
        for (int d : {1, 2}) {
            const int m_cap = d == 1 ? 8 : 4;
            for (int m = 1; m <= m_cap; ++m) {
                const std::uint64_t N = pow_u64(radix_of(b, d), static_cast<unsigned>(m));
                const PointSet ps = sbox_prefix(N, b, d);
                REQUIRE(ps.level == m);
                REQUIRE(ps.exact);
                std::set<std::vector<std::int64_t>> cells;
                for (std::size_t i = 0; i < ps.size(); ++i) {
                    std::vector<std::int64_t> c(ps.cell.begin() + static_cast<std::ptrdiff_t>(i) * d,
                                                ps.cell.begin() + static_cast<std::ptrdiff_t>(i + 1) * d);
                    cells.insert(std::move(c));
                }
                REQUIRE(cells.size() == N);  // distinct lattice nodes, so the set is the full grid
                REQUIRE(ps.resolution_hint.has_value());
                REQUIRE(*ps.resolution_hint == pow_u64(static_cast<std::uint64_t>(b), static_cast<unsigned>(m)));
            }
        }
    }
}

TEST_CASE("closed form agrees with the literal recursion") {
    std::vector<PermutationPolicy> policies{PermutationPolicy::identity_policy(),
                                            PermutationPolicy::seeded_policy(11),
                                            PermutationPolicy::seeded_policy(97)};
    for (int b : {2, 3}) {
        for (int d : {1, 2}) {
            for (const auto& perm : policies) {
                const auto oracle = recursion_prefix(4, b, d, perm);
                for (std::uint64_t n = 0; n < oracle.size(); ++n) {
                    const LatticePoint want = to_point(oracle[n], b);
                    const LatticePoint got = sbox_point(n, b, d, perm).canonicalized();
                    REQUIRE(got == want);
                }
            }
        }
    }
}

TEST_CASE("explicit permutation tables steer the enumeration") {
    // level 0 swaps H_1 and H_2 in base 3
    PermutationPolicy perm = PermutationPolicy::explicit_policy({{2, 1}});
    CHECK(sbox_point(1, 3, 1, perm).coord_double(0) == Catch::Approx(2.0 / 3.0));
    CHECK(sbox_point(2, 3, 1, perm).coord_double(0) == Catch::Approx(1.0 / 3.0));
    // level 1 untouched: identity there
    CHECK(sbox_point(3, 3, 1, perm).coord_double(0) == Catch::Approx(1.0 / 9.0));

    PermutationPolicy bad = PermutationPolicy::explicit_policy({{1, 1}});
    CHECK_THROWS_AS(sbox_point(1, 3, 1, bad), std::invalid_argument);
}

TEST_CASE("check_lemma1 confirms the segment-shift identity") {
    auto rep = check_lemma1(2, 1, {}, 2, {0, 1}, 2, 3);
    REQUIRE(rep.ok);
    CHECK(rep.witness.coords[0].num == 1);
    CHECK(rep.witness.coords[0].depth == 3);  // v = 1/8

    // t = m with eps_m = eps: witness is H_eps / b^{m+1}
    for (std::uint32_t eps = 1; eps < 4; ++eps) {
        auto r2 = check_lemma1(2, 2, {}, 3, {1, 2, eps}, 3, 0);
        REQUIRE(r2.ok);
        std::vector<int> sv(2);
        shift_vec(2, 2, eps, sv.data());
        for (int j = 0; j < 2; ++j) {
            BadicCoord c = canonical({sv[static_cast<std::size_t>(j)], 4}, 2);
            CHECK(r2.witness.coords[static_cast<std::size_t>(j)].num == c.num);
            CHECK(r2.witness.coords[static_cast<std::size_t>(j)].depth == c.depth);
        }
    }

    // all-zero digits: K(t) = 0 and v = 0
    auto r3 = check_lemma1(3, 1, {}, 3, {0, 0, 0}, 2, 8);
    REQUIRE(r3.ok);
    CHECK(r3.witness.coords[0].num == 0);
}

TEST_CASE("check_lemma1 random property sweep") {
    SplitMix64 rng(2024);
    for (auto [b, d, m_cap] : {std::tuple{2, 1, 10}, {2, 2, 5}, {3, 1, 7}}) {
        const std::uint64_t B = radix_of(b, d);
        for (int iter = 0; iter < 200; ++iter) {
            const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m_cap)));
            std::vector<std::uint32_t> eps(static_cast<std::size_t>(m));
            for (auto& e : eps) e = static_cast<std::uint32_t>(rng.below(B));
            const int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
            const std::uint64_t k = rng.below(std::min<std::uint64_t>(pow_u64(B, static_cast<unsigned>(t)), 256));
            const auto perm = PermutationPolicy::seeded_policy(rng.next());
            auto rep = check_lemma1(b, d, perm, m, eps, t, k);
            REQUIRE(rep.ok);
        }
    }
}

TEST_CASE("sboxplus with mimic policy reproduces sbox exactly") {
    for (int b : {2, 3}) {
        for (int d : {1, 2}) {
            const std::uint64_t N = pow_u64(radix_of(b, d), 3) + 5;
            const PointSet guided = sboxplus_prefix(N, b, d, {}, GuidedPolicy::mimic());
            const PointSet plain = sbox_prefix(N, b, d, {});
            REQUIRE(guided.exact);
            REQUIRE(guided.pts == plain.pts);  // bit-identical floating output
        }
    }
}

TEST_CASE("sboxplus seeded instance fills every cell") {
    const PointSet g = sboxplus_prefix(16, 2, 2, {}, GuidedPolicy::seeded(7));
    auto rep = verify_perturbed_lattice(g, 2, 2);
    CHECK(rep.ok);
    CHECK(g.resolution_hint.has_value());

    // a power prefix of any policy is a perturbed lattice set
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        for (int m = 1; m <= 4; ++m) {
            const std::uint64_t N = pow_u64(4, static_cast<unsigned>(m));
            const PointSet ps = sboxplus_prefix(N, 2, 2, PermutationPolicy::seeded_policy(seed),
                                                GuidedPolicy::seeded(seed));
            REQUIRE(verify_perturbed_lattice(ps, 2, m).ok);
        }
    }
}

TEST_CASE("check_guidance accepts construction output and rejects corruption") {
    const auto perm = PermutationPolicy::seeded_policy(5);
    const PointSet g = sboxplus_prefix(64, 2, 2, perm, GuidedPolicy::seeded(9));
    CHECK(check_guidance(g, 2, 2, perm).ok);

    const PointSet plain = sbox_prefix(27, 3, 1);
    CHECK(check_guidance(plain, 3, 1, {}).ok);  // S-box is trivially guided

    PointSet bad = g;
    // move one point into an occupied cell
    bad.cell[0] = bad.cell[2];
    bad.cell[1] = bad.cell[3];
    bad.pts[0] = bad.pts[2];
    bad.pts[1] = bad.pts[3];
    auto rep = check_guidance(bad, 2, 2, perm);
    CHECK_FALSE(rep.ok);
    CHECK(rep.detail.find("lattice filling") != std::string::npos);

    CHECK_THROWS_AS(check_guidance(sbox_prefix(5, 2, 1), 2, 1, {}), std::invalid_argument);
}

TEST_CASE("check_lemma2 worked cases") {
    const GuidedPolicy gp = GuidedPolicy::seeded(3);
    // t = m with a positive top digit: v = 0
    auto r1 = check_lemma2(2, 2, {}, gp, 2, {3, 1}, 2);
    REQUIRE(r1.ok);
    CHECK(r1.witness.coords[0].num == 0);
    CHECK(r1.witness.coords[1].num == 0);

    // all-zero digits: the prefix itself, v = 0
    auto r2 = check_lemma2(2, 1, {}, gp, 3, {0, 0, 0}, 2);
    REQUIRE(r2.ok);
    CHECK(r2.witness.coords[0].num == 0);

    // seeded random occupancy at (m=3, b=2, d=2, t=2)
    auto r3 = check_lemma2(2, 2, PermutationPolicy::seeded_policy(17), gp, 3, {2, 1, 3}, 2);
    REQUIRE(r3.ok);
}

TEST_CASE("check_lemma2 random property sweep") {
    SplitMix64 rng(77);
    for (auto [b, d, m_cap] : {std::tuple{2, 1, 8}, {2, 2, 4}, {3, 1, 5}}) {
        const std::uint64_t B = radix_of(b, d);
        const PermutationPolicy perm = PermutationPolicy::seeded_policy(rng.next());
        const GuidedPolicy gp = GuidedPolicy::seeded(rng.next());
        // one long prefix serves every instance
        const PointSet guided = sboxplus_prefix(pow_u64(B, static_cast<unsigned>(m_cap + 1)), b, d, perm, gp);
        for (int iter = 0; iter < 150; ++iter) {
            const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m_cap)));
            std::vector<std::uint32_t> eps(static_cast<std::size_t>(m));
            for (auto& e : eps) e = static_cast<std::uint32_t>(rng.below(B));
            const int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
            auto rep = check_lemma2(b, d, perm, guided, m, eps, t);
            REQUIRE(rep.ok);
        }
    }
}

TEST_CASE("tail distance stays within the corollary bounds") {
    // mimic + origin: the sequences coincide
    auto same = tail_distance(2, 1, {}, GuidedPolicy::mimic(), 256);
    CHECK(same.max_scaled == 0.0);

    auto r = tail_distance(2, 1, {}, GuidedPolicy::seeded(41), 1024);
    CHECK(r.max_scaled <= 1.0);
    CHECK(r.max_power_ratio <= 1.0);

    auto r2 = tail_distance(2, 2, PermutationPolicy::seeded_policy(8), GuidedPolicy::seeded(8), 500);
    CHECK(r2.max_scaled <= 1.0);
    CHECK(r2.max_power_ratio <= 1.0);
}

TEST_CASE("same seeds reproduce bit-identical output") {
    const auto perm = PermutationPolicy::seeded_policy(123);
    const GuidedPolicy gp = GuidedPolicy::seeded(456);
    const PointSet a = sboxplus_prefix(100, 2, 2, perm, gp);
    const PointSet b = sboxplus_prefix(100, 2, 2, perm, gp);
    CHECK(a.pts == b.pts);
    CHECK(a.cell == b.cell);

    const PointSet c = sboxplus_prefix(100, 2, 2, perm, GuidedPolicy::seeded(457));
    CHECK(a.pts != c.pts);
}

TEST_CASE("guided q0 is configurable") {
    GuidedPolicy gp = GuidedPolicy::seeded(1);
    gp.q0 = {0.3, 0.6};
    const PointSet ps = sboxplus_prefix(16, 2, 2, {}, gp);
    CHECK(ps.at(0, 0) == 0.3);
    CHECK(ps.at(0, 1) == 0.6);
    CHECK(verify_perturbed_lattice(ps, 2, 2).ok);

    GuidedPolicy badq = gp;
    badq.q0 = {1.5, 0.0};
    CHECK_THROWS_AS(sboxplus_prefix(4, 2, 2, {}, badq), std::invalid_argument);
}
