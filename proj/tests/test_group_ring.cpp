#include "fuglede/group_ring.hpp"
#include "fuglede/set_literal.hpp"
#include "oracles/brute_force.hpp"

#include <gtest/gtest.h>

#include <random>

namespace fuglede {
namespace {

GroupRingElement elem(std::uint32_t n, std::initializer_list<Residue> s) {
    return GroupRingElement::from_set(ResidueSet(n, s));
}

std::vector<Integer> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

TEST(RingCombine, DisjointSumsetIsWholeGroup) {
    auto p = elem(4, {0, 1}) * elem(4, {0, 2});
    EXPECT_EQ(p.coeffs(), ints({1, 1, 1, 1}));
}

TEST(RingCombine, AdditionAccumulates) {
    auto s = elem(2, {0}) + elem(2, {0});
    EXPECT_EQ(s.coeffs(), ints({2, 0}));
    auto d = elem(5, {0, 1}) - elem(5, {1, 2});
    EXPECT_EQ(d.coeffs(), ints({1, 0, -1, 0, 0}));
}

TEST(RingCombine, PerfectDifferenceSetAgainstBruteForce) {
    const std::vector<std::uint32_t> fano{0, 1, 3};
    auto a = GroupRingElement::from_set(ResidueSet(7, {0, 1, 3}));
    auto product = a * twist(a, -1);
    auto diffs = oracle::difference_multiset(fano, 7);
    for (Residue g = 0; g < 7; ++g) EXPECT_EQ(product[g], diffs[g]) << g;
    EXPECT_EQ(product[0], 3);
    for (Residue g = 1; g < 7; ++g) EXPECT_EQ(product[g], 1);
}

TEST(RingCombine, ModulusMismatchThrows) {
    EXPECT_THROW(elem(4, {0}) + elem(6, {0}), ModulusMismatch);
    EXPECT_THROW(ring_combine(elem(4, {0}), elem(8, {0}), RingOp::mul), ModulusMismatch);
}

TEST(RingCombine, ConvolutionMatchesDirectSumset) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint32_t n = 2 + rng() % 30;
        GroupRingElement x{Modulus(n)}, y{Modulus(n)};
        for (Residue g = 0; g < n; ++g) {
            x[g] = static_cast<int>(rng() % 5) - 2;
            y[g] = static_cast<int>(rng() % 5) - 2;
        }
        auto p = x * y;
        std::vector<Integer> expect(n);
        for (Residue h = 0; h < n; ++h)
            for (Residue k = 0; k < n; ++k) expect[(h + k) % n] += x[h] * y[k];
        EXPECT_EQ(p.coeffs(), expect);
        EXPECT_EQ(x * y, y * x);
    }
}

TEST(Twist, ReflectionIdentityAndCollapse) {
    EXPECT_EQ(twist(elem(4, {0, 1}), -1), elem(4, {0, 3}));
    EXPECT_EQ(twist(elem(4, {0, 1}), 1), elem(4, {0, 1}));
    auto collapsed = twist(elem(4, {0, 2}), 2);
    EXPECT_EQ(collapsed.coeffs(), ints({2, 0, 0, 0}));
}

TEST(Twist, PreservesAugmentation) {
    auto x = elem(12, {0, 1, 5, 7, 11});
    for (std::int64_t t = -13; t < 13; ++t) EXPECT_EQ(twist(x, t).augmentation(), 5);
}

TEST(SetLiteral, ParsesSetsAndMultisets) {
    auto s = parse_set("N=12; S=0,3,6,9");
    EXPECT_EQ(s, ResidueSet(12, {0, 3, 6, 9}));
    auto lit = parse_set_literal(" N=8 ;S= 0:2, 3 ");
    EXPECT_TRUE(lit.has_multiplicities);
    auto x = to_group_ring(lit);
    EXPECT_EQ(x.coeffs(), ints({2, 0, 0, 1, 0, 0, 0, 0}));
    EXPECT_EQ(format_element(x), "N=8; S=0:2,3");
    EXPECT_EQ(format_set(s), "N=12; S=0,3,6,9");
    EXPECT_TRUE(parse_set("N=5; S=").empty());
}

TEST(SetLiteral, RejectsMalformedInput) {
    EXPECT_THROW(parse_set("N=8; S=1,1"), ParseError);
    EXPECT_THROW(parse_set("N=8; S=0:2"), ParseError);
    EXPECT_THROW(parse_set("N=8; S=8"), ParseError);
    EXPECT_THROW(parse_set("N=1; S=0"), ParseError);
    EXPECT_THROW(parse_set("S=0; N=8"), ParseError);
    EXPECT_THROW(parse_set("N=8 S=0"), ParseError);
    EXPECT_THROW(parse_set("N=8; S=0,,1"), ParseError);
    EXPECT_THROW(parse_set("N=8; S=x"), ParseError);
}

TEST(SetLiteral, RoundTripsRandomSets) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const std::uint32_t n = 2 + rng() % 100;
        std::vector<Residue> e;
        for (Residue g = 0; g < n; ++g)
            if (rng() & 1) e.push_back(g);
        ResidueSet s(n, e);
        EXPECT_EQ(parse_set(format_set(s)), s);
    }
}

TEST(Modulus, FactorizationInvariant) {
    for (std::uint32_t n = 2; n < 2000; ++n) {
        Modulus m(n);
        std::uint64_t prod = 1;
        std::uint32_t last = 0;
        for (const auto& pp : m.factors()) {
            EXPECT_GT(pp.prime, last);
            EXPECT_TRUE(is_prime(pp.prime));
            last = pp.prime;
            prod *= ipow(pp.prime, pp.exponent);
        }
        EXPECT_EQ(prod, n);
    }
    EXPECT_THROW(Modulus(1), DomainError);
    EXPECT_THROW(Modulus(0x100000000ULL), DomainError);
}

}  // namespace
}  // namespace fuglede
