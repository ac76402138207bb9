#include "fuglede/set_literal.hpp"
#include "fuglede/tiling.hpp"
#include "oracles/brute_force.hpp"

#include <gtest/gtest.h>

#include <random>

namespace fuglede {
namespace {

ResidueSet rs(std::uint32_t n, std::initializer_list<Residue> e) { return ResidueSet(n, e); }

ResidueSet random_set(std::mt19937_64& rng, std::uint32_t n, std::size_t size) {
    std::vector<Residue> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    return ResidueSet(n, all);
}

// A + T = Z_N from mixed-radix digits split between A and T
std::pair<ResidueSet, ResidueSet> random_tiling(std::mt19937_64& rng, std::uint32_t n) {
    std::vector<std::uint32_t> primes;
    for (const auto& f : factorize(n))
        for (std::uint32_t e = 0; e < f.exponent; ++e) primes.push_back(f.prime);
    std::shuffle(primes.begin(), primes.end(), rng);
    std::vector<Residue> a{0}, t{0};
    std::uint32_t place = 1;
    for (auto p : primes) {
        auto& side = (rng() & 1) ? a : t;
        std::vector<Residue> next;
        for (auto x : side)
            for (std::uint32_t d = 0; d < p; ++d) next.push_back((x + d * place) % n);
        side = std::move(next);
        place *= p;
    }
    // shifting each element of A by a multiple of the period of T keeps the tiling
    std::uint32_t period = n;
    for (auto d : divisors(n)) {
        if (d == n) continue;
        bool invariant = true;
        for (auto x : t)
            if (std::find(t.begin(), t.end(), (x + d) % n) == t.end()) invariant = false;
        if (invariant) {
            period = d;
            break;
        }
    }
    if (period < n)
        for (auto& x : a) x = (x + period * static_cast<Residue>(rng() % (n / period))) % n;
    return {ResidueSet(n, a), ResidueSet(n, t)};
}

TEST(TilingPair, Examples) {
    EXPECT_TRUE(is_tiling_pair(rs(4, {0, 1}), rs(4, {0, 2})).is_pair);
    EXPECT_TRUE(is_tiling_pair(rs(8, {0, 1, 2, 3}), rs(8, {0, 4})).is_pair);
    const auto m = is_tiling_pair(rs(8, {0, 1}), rs(8, {0, 2}));
    EXPECT_EQ(m.failure, CoverFailure::size_mismatch);
    const auto d = is_tiling_pair(rs(4, {0, 1}), rs(4, {0, 1}));
    EXPECT_FALSE(d.is_pair);
    EXPECT_EQ(d.failure, CoverFailure::doubly_covered);
    EXPECT_EQ(d.element, 1U);
    const auto u = is_tiling_pair(rs(4, {1, 2}), rs(4, {0, 1}));
    EXPECT_EQ(u.failure, CoverFailure::uncovered);
    EXPECT_EQ(u.element, 0U);
    EXPECT_THROW(is_tiling_pair(rs(4, {0}), rs(5, {0})), ModulusMismatch);
}

TEST(TilingPair, NoComplementForFanoLikeSetInZ9) {
    const auto a = rs(9, {0, 1, 3});
    ASSERT_FALSE(oracle::has_complement({0, 1, 3}, 9));
    for (Residue x = 0; x < 9; ++x)
        for (Residue y = x + 1; y < 9; ++y)
            for (Residue z = y + 1; z < 9; ++z) EXPECT_FALSE(is_tiling_pair(a, rs(9, {x, y, z})).is_pair);
    EXPECT_EQ(complement_search(a).status, SearchStatus::none);
}

TEST(TilingPair, CriteriaAgreeOnRandomPairs) {
    std::mt19937_64 rng(61);
    int tilings = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        std::uint32_t n = 2 + rng() % 119;
        ResidueSet a, t;
        if (trial % 3 == 0) {
            std::tie(a, t) = random_tiling(rng, n);
            if (trial % 6 == 0) t = t.translate(static_cast<std::int64_t>(rng() % n));
        } else {
            const auto divs = divisors(n);
            const auto k = divs[rng() % divs.size()];
            a = random_set(rng, n, k);
            t = random_set(rng, n, n / k);
        }
        // the verdict asserts internally that the three criteria agree
        const auto v = is_tiling_pair(a, t);
        tilings += v.is_pair;
        EXPECT_EQ(v.is_pair, is_tiling_pair(t, a).is_pair);
        EXPECT_EQ(v.is_pair, is_tiling_pair(a.translate(3), t.translate(5)).is_pair);
    }
    EXPECT_GT(tilings, 3000);
}

TEST(ComplementSearch, Examples) {
    const auto r = complement_search(rs(4, {0, 1}));
    ASSERT_TRUE(r.found());
    EXPECT_EQ(*r.value, rs(4, {0, 2}));
    const auto r2 = complement_search(rs(9, {0, 1, 2}));
    ASSERT_TRUE(r2.found());
    EXPECT_EQ(*r2.value, rs(9, {0, 3, 6}));
    EXPECT_EQ(complement_search(rs(8, {0, 1, 2})).status, SearchStatus::none);
    EXPECT_EQ(complement_search(rs(9, {0, 1, 3})).status, SearchStatus::none);
    EXPECT_THROW(complement_search(rs(9, {})), DomainError);
}

TEST(ComplementSearch, BudgetExhaustionIsDistinct) {
    std::vector<Residue> e;
    for (Residue g = 0; g < 64; g += 8) e.push_back(g + (g / 8) % 2);
    const auto a = ResidueSet(64, e);
    EXPECT_EQ(complement_search(a, 1).status, SearchStatus::exhausted);
}

TEST(ComplementSearch, CompleteAgainstExhaustiveOracle) {
    for (std::uint32_t n = 2; n <= 16; ++n) {
        int tiles = 0;
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 2) {
            const auto a = ResidueSet::from_mask(n, mask);
            const bool expect = oracle::has_complement({a.begin(), a.end()}, n);
            const auto got = complement_search(a);
            ASSERT_NE(got.status, SearchStatus::exhausted);
            ASSERT_EQ(got.found(), expect) << format_set(a);
            if (got.found()) {
                EXPECT_TRUE(got.value->contains(0));
                EXPECT_TRUE(is_tiling_pair(a, *got.value).is_pair);
            }
            tiles += expect;
        }
        EXPECT_GT(tiles, 0);
    }
}

// Phi_s | A(x) by exact polynomial division, independent of the character path
bool cyclotomic_divides(const ResidueSet& a, std::uint32_t s) {
    oracle::Poly f(a.modulus(), 0);
    for (auto x : a) f[x] = 1;
    return oracle::divide_exact(f, oracle::cyclotomic_by_division(s)).has_value();
}

TEST(T1T2, Examples) {
    const auto d1 = t1_t2_check(rs(8, {0, 1, 2, 3}));
    EXPECT_EQ(d1.s_a, (std::vector<std::uint32_t>{2, 4}));
    EXPECT_TRUE(d1.t1_holds);
    EXPECT_TRUE(d1.t2_holds);

    const auto d2 = t1_t2_check(rs(8, {0, 4}));
    EXPECT_EQ(d2.s_a, (std::vector<std::uint32_t>{8}));
    EXPECT_TRUE(d2.t1_holds);

    const auto a3 = rs(24, {0, 1, 8, 9, 16, 17});
    const auto d3 = t1_t2_check(a3);
    EXPECT_EQ(d3.s_a, (std::vector<std::uint32_t>{2, 3}));
    ASSERT_TRUE(cyclotomic_divides(a3, 6));
    EXPECT_TRUE(d3.t1_holds);
    EXPECT_TRUE(d3.t2_holds);

    const auto d4 = t1_t2_check(rs(9, {0, 1, 3}));
    EXPECT_TRUE(d4.s_a.empty());
    EXPECT_FALSE(d4.t1_holds);
}

TEST(T1T2, T2ViolationIsReported) {
    // some set in Z_12 has 2, 3 in S_A while Phi_6 does not divide A(x)
    bool seen = false;
    for (std::uint64_t mask = 1; mask < (1U << 12) && !seen; mask += 2) {
        const auto a = ResidueSet::from_mask(12, mask);
        const auto d = t1_t2_check(a);
        const bool two = std::count(d.s_a.begin(), d.s_a.end(), 2U), three = std::count(d.s_a.begin(), d.s_a.end(), 3U);
        if (two && three && !cyclotomic_divides(a, 6)) {
            EXPECT_FALSE(d.t2_holds) << format_set(a);
            ASSERT_TRUE(d.t2_violation);
            seen = true;
        }
    }
    EXPECT_TRUE(seen);
}

TEST(T1T2, MatchesPolynomialDivision) {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint32_t n = 2 + rng() % 59;
        const auto a = random_set(rng, n, 1 + rng() % n);
        const auto d = t1_t2_check(a);
        std::vector<std::uint32_t> expect;
        for (auto s : divisors(n))
            if (s > 1 && Modulus(s).factors().size() == 1 && cyclotomic_divides(a, s)) expect.push_back(s);
        EXPECT_EQ(d.s_a, expect) << format_set(a);
    }
}

TEST(CmSpectrum, Examples) {
    const auto c1 = cm_spectrum(rs(8, {0, 1, 2, 3}));
    EXPECT_EQ(c1.status, BuildStatus::built);
    EXPECT_EQ(*c1.value, rs(8, {0, 2, 4, 6}));
    const auto c2 = cm_spectrum(rs(8, {0, 4}));
    EXPECT_EQ(c2.status, BuildStatus::built);
    EXPECT_EQ(*c2.value, rs(8, {0, 1}));
    const auto c3 = cm_spectrum(rs(9, {0, 1, 3}));
    EXPECT_EQ(c3.status, BuildStatus::inapplicable);
    EXPECT_EQ(c3.reasons, (std::vector<std::string>{"T1"}));
}

TEST(CmSpectrum, EveryTileUpTo20PassesT1T2AndBuildsASpectrum) {
    for (std::uint32_t n = 2; n <= 20; ++n) {
        const AffineMaskGroup g(n);
        const CharacterTable table(n);
        int tiles = 0;
        for (std::uint64_t mask = 1; mask <= g.full(); mask += 2) {
            if (g.canonical(mask) != mask) continue;
            const auto a = ResidueSet::from_mask(n, mask);
            if (!complement_search(a).found()) continue;
            ++tiles;
            const auto d = t1_t2_check(a, table);
            EXPECT_TRUE(d.t1_holds) << format_set(a);
            EXPECT_TRUE(d.t2_holds) << format_set(a);
            EXPECT_EQ(cm_spectrum(a, table).status, BuildStatus::built) << format_set(a);
        }
        EXPECT_GT(tiles, 0);
    }
}

TEST(PnqrComplement, SubgroupExample) {
    const auto m = PnqrModulus::from_order(60);
    std::vector<Residue> e;
    for (Residue g = 0; g < 60; g += 4) e.push_back(g);
    const ResidueSet a(60, e);
    const auto c = pnqr_complement(a, a, m);
    EXPECT_EQ(c.status, BuildStatus::built);
    EXPECT_EQ(*c.value, rs(60, {0, 15, 30, 45}));
    EXPECT_TRUE(is_tiling_pair(a, *c.value).is_pair);
}

TEST(PnqrComplement, InapplicableCases) {
    const auto m30 = PnqrModulus::from_order(30);
    // spectral pair of size 2: not of the form p^t q r
    const auto c1 = pnqr_complement(rs(30, {0, 15}), rs(30, {0, 1}), m30);
    EXPECT_EQ(c1.status, BuildStatus::inapplicable);
    EXPECT_EQ(c1.reasons.front(), "size p^|J1| q r");
    const auto c2 = pnqr_complement(rs(30, {0, 6}), rs(30, {0, 15}), m30);
    EXPECT_EQ(c2.status, BuildStatus::inapplicable);
    EXPECT_EQ(c2.reasons.front(), "spectral pair");
}

TEST(PnqrComplement, ConstructedComplementsTile) {
    // transversals of Z_60 / <15> are spectral with spectrum <4>; also their translates and unit images
    std::mt19937_64 rng(71);
    const auto m = PnqrModulus::from_order(60);
    std::vector<Residue> sub;
    for (Residue g = 0; g < 60; g += 4) sub.push_back(g);
    const ResidueSet b(60, sub);
    int built = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Residue> a;
        for (Residue c = 0; c < 15; ++c) a.push_back(c + 15 * static_cast<Residue>(rng() % 4));
        const ResidueSet aset(60, a);
        const auto c = pnqr_complement(aset, b, m);
        if (c.status == BuildStatus::inapplicable) continue;
        EXPECT_EQ(c.status, BuildStatus::built) << format_set(aset);
        built += c.status == BuildStatus::built;
    }
    EXPECT_GT(built, 100);
}

}  // namespace
}  // namespace fuglede
