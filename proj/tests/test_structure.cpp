#include "fuglede/set_literal.hpp"
#include "fuglede/structure.hpp"
#include "oracles/numeric_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

namespace fuglede {
namespace {

using enum ClassShape;

GroupRingElement elem(std::uint32_t n, std::initializer_list<Residue> s) {
    return GroupRingElement::from_set(ResidueSet(n, s));
}

ResidueSet subgroup(std::uint32_t n, std::uint32_t step) {
    std::vector<Residue> e;
    for (Residue g = 0; g < n; g += step) e.push_back(g);
    return ResidueSet(n, e);
}

// unions of random cosets of random subgroups, deduplicated into a set
ResidueSet structured_set(std::mt19937_64& rng, std::uint32_t n) {
    const auto divs = divisors(n);
    std::vector<Residue> e;
    const int parts = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < parts; ++i) {
        const auto h = divs[rng() % divs.size()];
        const auto s = static_cast<Residue>(rng() % n);
        for (Residue g = 0; g < n; g += h) e.push_back((g + s) % n);
    }
    if (rng() % 4 == 0) e.push_back(static_cast<Residue>(rng() % n));
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return ResidueSet(n, e);
}

ResidueSet random_subset(std::mt19937_64& rng, std::uint32_t n) {
    std::vector<Residue> e;
    for (Residue g = 0; g < n; ++g)
        if (rng() & 1) e.push_back(g);
    if (e.empty()) e.push_back(0);
    return ResidueSet(n, e);
}

TEST(PnqrModulus, FromOrder) {
    const auto m60 = PnqrModulus::from_order(60);
    EXPECT_EQ(m60.p(), 2U);
    EXPECT_EQ(m60.n(), 2U);
    EXPECT_EQ(m60.q(), 3U);
    EXPECT_EQ(m60.r(), 5U);
    EXPECT_EQ(m60.a(), 45U);
    EXPECT_EQ(m60.b(), 40U);
    EXPECT_EQ(m60.c(), 36U);

    const auto m90 = PnqrModulus::from_order(90);
    EXPECT_EQ(m90, PnqrModulus(3, 2, 2, 5));
    EXPECT_EQ(PnqrModulus::from_order(30), PnqrModulus(2, 1, 3, 5));
    EXPECT_EQ(PnqrModulus::from_order(30, 5), PnqrModulus(5, 1, 2, 3));
    EXPECT_THROW(PnqrModulus::from_order(12), DomainError);
    EXPECT_THROW(PnqrModulus::from_order(36 * 5), DomainError);
    EXPECT_THROW(PnqrModulus::from_order(210), DomainError);
    EXPECT_THROW(PnqrModulus(2, 1, 2, 3), DomainError);
    EXPECT_THROW(PnqrModulus(4, 1, 3, 5), DomainError);
}

TEST(PnqrModulus, ComposeIsBijective) {
    for (std::uint32_t n : {30U, 60U, 90U, 120U, 150U, 84U}) {
        const auto m = PnqrModulus::from_order(n);
        std::vector<bool> seen(n, false);
        for (std::uint32_t x = 0; x < m.prime_power(); ++x)
            for (std::uint32_t j = 0; j < m.q(); ++j)
                for (std::uint32_t k = 0; k < m.r(); ++k) {
                    const auto g = m.compose(x, j, k);
                    EXPECT_FALSE(seen[g]);
                    seen[g] = true;
                    EXPECT_EQ(g % m.prime_power(), x);
                    EXPECT_EQ(g % m.q(), j);
                    EXPECT_EQ(g % m.r(), k);
                }
    }
}

TEST(Decompose, Examples) {
    const auto m30 = PnqrModulus::from_order(30);
    const auto g = decompose(ResidueSet(30, {0, 15}), m30);
    EXPECT_EQ(g.cell(0, 0), elem(2, {0, 1}));
    for (std::uint32_t j = 0; j < 3; ++j)
        for (std::uint32_t k = 0; k < 5; ++k)
            if (j || k) {
                EXPECT_TRUE(g.cell(j, k).is_zero());
            }
    EXPECT_EQ(g.dump(), "(0,0): 0,1\n");

    const auto empty = decompose(ResidueSet(30, {}), m30);
    EXPECT_EQ(empty.dump(), "");

    const auto m60 = PnqrModulus::from_order(60);
    const auto h = decompose(subgroup(60, 4), m60);
    for (std::uint32_t j = 0; j < 3; ++j)
        for (std::uint32_t k = 0; k < 5; ++k) {
            EXPECT_EQ(h.cell(j, k).augmentation(), 1);
            EXPECT_TRUE(h.cell(j, k).is_set());
        }
    EXPECT_THROW(decompose(ResidueSet(12, {0}), m60), ModulusMismatch);
}

TEST(Decompose, RoundTrip) {
    std::mt19937_64 rng(3);
    for (std::uint32_t n : {30U, 60U, 90U, 120U, 150U, 84U}) {
        const auto m = PnqrModulus::from_order(n);
        for (int trial = 0; trial < 50; ++trial) {
            GroupRingElement x{Modulus(n)};
            for (Residue g = 0; g < n; ++g) x[g] = static_cast<int>(rng() % 5) - 2;
            EXPECT_EQ(decompose(x, m).recompose(), x);
        }
    }
}

TEST(ClassZeroPredicate, Examples) {
    const auto m = PnqrModulus::from_order(30);
    const auto g = decompose(ResidueSet(30, {0, 15}), m);
    EXPECT_TRUE(class_zero_predicate(g, DivisorClass(PQR, 0, m)));
    EXPECT_TRUE(class_zero_predicate(g, DivisorClass(PR, 0, m)));
    EXPECT_EQ(DivisorClass(PR, 0, m).value(), 5U);
    EXPECT_FALSE(class_zero_predicate(g, DivisorClass(PQ, 1, m)));  // 6 is even

    const auto none = decompose(ResidueSet(30, {0, 6}), m);
    for (const auto& c : DivisorClass::all(m)) EXPECT_FALSE(class_zero_predicate(none, c)) << c.value();

    EXPECT_THROW(DivisorClass(PQR, 1, m), DomainError);
    EXPECT_THROW(DivisorClass(P, 2, m), DomainError);
}

TEST(ClassZeroPredicate, MatchesDirectMembership) {
    std::mt19937_64 rng(17);
    for (std::uint32_t n : {60U, 90U, 120U, 150U}) {
        const auto m = PnqrModulus::from_order(n);
        const auto classes = DivisorClass::all(m);
        const oracle::RootTable roots(n);
        int hits = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const auto s = trial % 2 ? structured_set(rng, n) : random_subset(rng, n);
            const auto grid = decompose(s, m);
            const auto z = zero_set(s);
            const std::vector<std::uint32_t> elems(s.begin(), s.end());
            for (const auto& c : classes) {
                const bool pred = class_zero_predicate(grid, c);
                EXPECT_EQ(pred, z.contains(c.value())) << n << " " << c.value();
                if (trial < 100) {
                    EXPECT_EQ(pred, roots.set_vanishes(elems, c.value()));
                }
                hits += pred;
            }
        }
        EXPECT_GT(hits, 1000) << n;
    }
}

TEST(GridImplications, Examples) {
    const auto m = PnqrModulus::from_order(30);
    const auto g = decompose(ResidueSet(30, {0, 15}), m);
    auto r1 = check_grid_implications(g, 0, shapes({P, PQ}));
    ASSERT_EQ(r1.conclusions.size(), 1U);
    EXPECT_EQ(r1.conclusions[0].number, 1);
    EXPECT_TRUE(r1.all_hold());

    auto all = check_grid_implications(g, 0, shapes({P, PQ, PR, PQR}));
    EXPECT_EQ(all.conclusions.size(), 7U);
    EXPECT_EQ(all.conclusions.back().number, 7);
    EXPECT_TRUE(all.all_hold());

    auto vacuous = check_grid_implications(g, 0, 0);
    EXPECT_TRUE(vacuous.conclusions.empty());
    EXPECT_TRUE(vacuous.all_hold());

    const auto none = decompose(ResidueSet(30, {0, 6}), m);
    EXPECT_THROW(check_grid_implications(none, 0, shapes({P})), HypothesisNotSatisfied);
    EXPECT_THROW(check_grid_implications(g, 1, 0), DomainError);
}

TEST(GridImplications, ConclusionsHoldWheneverHypothesesDo) {
    std::mt19937_64 rng(23);
    std::array<int, 8> exercised{};
    for (std::uint32_t n : {60U, 90U, 120U}) {
        const auto m = PnqrModulus::from_order(n);
        for (int trial = 0; trial < 400; ++trial) {
            const auto s = structured_set(rng, n);
            const auto grid = decompose(s, m);
            for (std::uint32_t i = 0; i < m.n(); ++i) {
                ShapeSet h = 0;
                for (auto c : {P, PQ, PR, PQR})
                    if (class_zero_predicate(grid, DivisorClass(c, i, m))) h |= static_cast<ShapeSet>(c);
                const auto report = check_grid_implications(grid, i, h);
                for (const auto& c : report.conclusions) {
                    EXPECT_TRUE(c.holds) << n << " " << format_set(s) << " i=" << i << " (" << c.number << ")";
                    ++exercised[c.number];
                }
            }
        }
    }
    for (int k = 1; k <= 7; ++k) EXPECT_GT(exercised[k], 20) << k;
}

TEST(DivisorProfile, Examples) {
    const auto m60 = PnqrModulus::from_order(60);
    const auto prof = divisor_profile(subgroup(60, 4), m60);
    EXPECT_TRUE(prof.cross_exponents.empty());
    EXPECT_EQ(prof.boundary_classes, (std::vector<std::uint32_t>{12, 20}));

    const auto m30 = PnqrModulus::from_order(30);
    const auto p2 = divisor_profile(ResidueSet(30, {0, 15}), m30);
    EXPECT_EQ(p2.cross_exponents, (std::vector<std::uint32_t>{0}));
    EXPECT_TRUE(p2.boundary_classes.empty());

    const auto p3 = divisor_profile(ResidueSet(30, {0}), m30);
    EXPECT_TRUE(p3.cross_exponents.empty());
    EXPECT_TRUE(p3.boundary_classes.empty());
}

TEST(DigitSet, Examples) {
    auto v1 = reconstruct_digit_set(ResidueSet(8, {0, 2, 4, 6}), 2, 3, {1, 2});
    EXPECT_TRUE(v1.hypotheses_hold);
    EXPECT_TRUE(v1.equals_standard);
    auto v2 = reconstruct_digit_set(ResidueSet(8, {0, 4}), 2, 3, {2});
    EXPECT_TRUE(v2.hypotheses_hold);
    EXPECT_TRUE(v2.equals_standard);
    auto v3 = reconstruct_digit_set(ResidueSet(8, {0, 2, 4, 5}), 2, 3, {1, 2});
    EXPECT_FALSE(v3.hypotheses_hold);
    EXPECT_EQ(v3.failed, (std::vector<std::string>{"differences"}));
    auto v4 = reconstruct_digit_set(ResidueSet(8, {1, 5}), 2, 3, {1});
    EXPECT_EQ(v4.failed, (std::vector<std::string>{"top digit", "contains zero", "differences"}));
}

// every V in Z_{p^n} containing 0 of size p^t, against every admissible I with |I| = t
void check_digit_sets(std::uint32_t p, std::uint32_t n, std::uint32_t t) {
    const auto pn = static_cast<std::uint32_t>(ipow(p, n));
    const auto size = static_cast<std::uint32_t>(ipow(p, t));
    int satisfying = 0;
    for (std::uint32_t imask = 0; imask < (1U << n); ++imask) {
        if (static_cast<std::uint32_t>(std::popcount(imask)) != t || !(imask >> (n - 1) & 1)) continue;
        std::vector<std::uint32_t> idx;
        for (std::uint32_t i = 0; i < n; ++i)
            if (imask >> i & 1) idx.push_back(i);
        std::vector<Residue> v{0};
        auto rec = [&](auto&& self, Residue next) -> void {
            if (v.size() == size) {
                const auto verdict = reconstruct_digit_set(ResidueSet(pn, v), p, n, idx);
                if (verdict.hypotheses_hold) {
                    ++satisfying;
                    EXPECT_TRUE(verdict.equals_standard) << format_set(ResidueSet(pn, v));
                }
                return;
            }
            for (Residue x = next; x < pn; ++x) {
                v.push_back(x);
                self(self, x + 1);
                v.pop_back();
            }
        };
        rec(rec, 1);
    }
    EXPECT_GT(satisfying, 0);
}

TEST(DigitSet, ExhaustiveSmallCases) {
    check_digit_sets(2, 3, 2);
    check_digit_sets(2, 4, 2);
    check_digit_sets(3, 3, 2);
    check_digit_sets(2, 4, 3);
    check_digit_sets(3, 2, 1);
}

TEST(Generating, Examples) {
    EXPECT_TRUE(is_generating(ResidueSet(30, {0, 1})));
    EXPECT_FALSE(is_generating(ResidueSet(30, {0, 2, 4})));
    EXPECT_TRUE(is_generating(ResidueSet(30, {0, 6, 10, 15})));
    EXPECT_THROW(is_generating(ResidueSet(30, {})), DomainError);

    auto a = generating_pair(ResidueSet(30, {0, 1}), 2, 3);
    ASSERT_TRUE(a.pair);
    EXPECT_EQ(*a.pair, (std::pair<Residue, Residue>{0, 1}));
    auto b = generating_pair(ResidueSet(30, {0, 6, 10, 15}), 2, 3);
    ASSERT_TRUE(b.pair);
    EXPECT_EQ(*b.pair, (std::pair<Residue, Residue>{10, 15}));
    auto c = generating_pair(ResidueSet(30, {0, 2, 4}), 2, 3);
    EXPECT_FALSE(c.generating);
    EXPECT_FALSE(c.pair);
    EXPECT_THROW(generating_pair(ResidueSet(30, {0, 1}), 2, 7), DomainError);
    EXPECT_THROW(generating_pair(ResidueSet(30, {0, 1}), 3, 3), DomainError);
    EXPECT_THROW(generating_pair(ResidueSet(30, {1, 2}), 2, 3), DomainError);
}

TEST(Generating, WitnessExistsForEverySmallGeneratingSet) {
    for (std::uint32_t n : {30U, 60U}) {
        const auto primes = Modulus(n).factors();
        int generating = 0;
        std::vector<Residue> t{0};
        auto check = [&] {
            const ResidueSet s(n, t);
            if (!is_generating(s)) return;
            ++generating;
            for (const auto& p : primes)
                for (const auto& q : primes) {
                    if (p.prime == q.prime) continue;
                    const auto w = generating_pair(s, p.prime, q.prime);
                    ASSERT_TRUE(w.pair) << format_set(s) << " " << p.prime << "," << q.prime;
                    const auto d = w.pair->second - w.pair->first;
                    EXPECT_NE(d % p.prime, 0U);
                    EXPECT_NE(d % q.prime, 0U);
                }
        };
        auto rec = [&](auto&& self, Residue next) -> void {
            check();
            if (t.size() == 4) return;
            for (Residue x = next; x < n; ++x) {
                t.push_back(x);
                self(self, x + 1);
                t.pop_back();
            }
        };
        rec(rec, 1);
        EXPECT_GT(generating, 1000);
    }
}

}  // namespace
}  // namespace fuglede
