#pragma once

// Property suites for the structural lemmas, run as randomized or exhaustive checks.

#include "fuglede/harness/records.hpp"

#include <random>
#include <set>

namespace fuglede::harness {

struct SuiteParams {
    std::uint32_t modulus = 0;  // N for the Z_{p^n q r} suites
    std::uint32_t p = 0, n = 0, t = 0;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::uint64_t budget = default_budget;
    std::uint32_t max_size = 0;
    bool exhaustive = false;
};

struct SuiteReport {
    explicit SuiteReport(std::string name = {}) : suite(std::move(name)) {}

    std::string suite;
    std::uint64_t instances = 0;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::uint64_t vacuous = 0;
    std::uint64_t non_vacuous = 0;
    std::uint64_t inconclusive = 0;
    std::map<std::string, std::uint64_t> counts;  // suite-specific tallies
    std::vector<std::string> failures;            // first few failing instances

    bool ok() const { return failed == 0 && inconclusive == 0 && instances > 0; }

    void record(bool pass, const std::string& what) {
        ++instances;
        if (pass) {
            ++passed;
        } else {
            ++failed;
            if (failures.size() < 10) failures.push_back(what);
        }
    }

    Json to_json() const {
        Json j;
        j["suite"] = suite;
        j["instances"] = instances;
        j["passed"] = passed;
        j["failed"] = failed;
        j["vacuous"] = vacuous;
        j["non_vacuous"] = non_vacuous;
        j["inconclusive"] = inconclusive;
        Json c = Json::object();
        for (const auto& [k, v] : counts) c[k] = v;
        j["counts"] = c;
        j["failures"] = failures;
        j["ok"] = ok();
        return j;
    }
};

namespace detail {

/// Uniform integer in [0, bound) from raw 64-bit draws by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
        const auto x = rng();
        if (x < limit) return x % bound;
    }
}

inline ResidueSet uniform_subset(std::mt19937_64& rng, std::uint32_t n) {
    std::vector<Residue> e;
    for (Residue g = 0; g < n; ++g)
        if (rng() >> 63) e.push_back(g);
    if (e.empty()) e.push_back(static_cast<Residue>(uniform_below(rng, n)));
    return ResidueSet(n, e);
}

// unions of cosets of random subgroups, sometimes with a stray element; zero sets are rich
inline ResidueSet coset_union(std::mt19937_64& rng, std::uint32_t n) {
    const auto divs = divisors(n);
    std::vector<Residue> e;
    const auto parts = 1 + uniform_below(rng, 3);
    for (std::uint64_t i = 0; i < parts; ++i) {
        const auto h = divs[uniform_below(rng, divs.size())];
        const auto s = static_cast<Residue>(uniform_below(rng, n));
        for (Residue g = 0; g < n; g += h) e.push_back((g + s) % n);
    }
    if (uniform_below(rng, 4) == 0) e.push_back(static_cast<Residue>(uniform_below(rng, n)));
    return ResidueSet(n, e);
}

inline std::string describe(const ResidueSet& s) {
    std::string out = "N=" + std::to_string(s.modulus()) + "; S=";
    bool first = true;
    for (auto x : s) {
        out += (first ? "" : ",") + std::to_string(x);
        first = false;
    }
    return out;
}

}  // namespace detail

/// Constancy on residue classes mod p^{n-1} against generic Phi_{p^n} divisibility.
inline SuiteReport suite_prime_power_vanishing(const SuiteParams& prm) {
    SuiteReport rep("lemma27");
    if (!is_prime(prm.p) || prm.n == 0) throw DomainError("lemma27 needs a prime p and n >= 1");
    const auto len = static_cast<std::uint32_t>(ipow(prm.p, prm.n));
    const auto period = len / prm.p;
    const CharacterTable table(len);
    std::mt19937_64 rng(prm.seed);
    for (std::uint64_t trial = 0; trial < prm.trials; ++trial) {
        std::vector<Integer> c(len);
        if (trial % 2 == 0) {
            for (auto& x : c) x = static_cast<int>(detail::uniform_below(rng, 9)) - 4;
        } else {
            // periodic mod p^{n-1}, sometimes perturbed in one place
            std::vector<int> base(period);
            for (auto& b : base) b = static_cast<int>(detail::uniform_below(rng, 9)) - 4;
            for (std::uint32_t i = 0; i < len; ++i) c[i] = base[i % period];
            if (trial % 4 == 1) c[detail::uniform_below(rng, len)] += 1;
        }
        const bool fast = prime_power_vanishing(c, prm.p, prm.n);
        const bool generic = is_char_zero(GroupRingElement(Modulus(len), c), 1, table);
        (fast ? rep.non_vacuous : rep.vacuous) += 1;
        rep.record(fast == generic, "trial " + std::to_string(trial));
    }
    rep.counts["vanishing"] = rep.non_vacuous;
    return rep;
}

/// Divisor-class predicates on the grid against direct zero-set membership.
inline SuiteReport suite_class_predicates(const SuiteParams& prm) {
    SuiteReport rep("coro32");
    const auto m = PnqrModulus::from_order(prm.modulus);
    const auto classes = DivisorClass::all(m);
    const CharacterTable table(m.order());
    std::mt19937_64 rng(prm.seed);
    for (std::uint64_t trial = 0; trial < prm.trials; ++trial) {
        const auto a = trial % 2 ? detail::coset_union(rng, m.order()) : detail::uniform_subset(rng, m.order());
        const auto grid = decompose(a, m);
        const auto z = zero_set(a, table);
        bool agree = true;
        for (const auto& c : classes) {
            const bool pred = class_zero_predicate(grid, c);
            agree = agree && pred == z.contains(c.value());
            rep.counts[pred ? "class_in_zero_set" : "class_not_in_zero_set"] += 1;
        }
        rep.record(agree, detail::describe(a));
    }
    return rep;
}

/// Grid implications: each case is rejection-sampled until `trials` grids satisfy its hypotheses.
inline SuiteReport suite_grid_implications(const SuiteParams& prm) {
    SuiteReport rep("lemma33");
    const auto m = PnqrModulus::from_order(prm.modulus);
    using enum ClassShape;
    const std::array<ShapeSet, 7> cases{shapes({P, PQ}),     shapes({P, PR}),     shapes({PQ, PR}),
                                        shapes({PQ, PQR}),   shapes({PR, PQR}),   shapes({P, PQ, PR}),
                                        shapes({P, PQ, PR, PQR})};
    std::array<std::uint64_t, 7> accepted{};
    std::mt19937_64 rng(prm.seed);
    const std::uint64_t max_draws = prm.trials * 20000;
    for (std::uint64_t draw = 0; draw < max_draws; ++draw) {
        if (std::all_of(accepted.begin(), accepted.end(), [&](auto a) { return a >= prm.trials; })) break;
        const auto a = detail::coset_union(rng, m.order());
        const auto grid = decompose(a, m);
        const auto i = static_cast<std::uint32_t>(detail::uniform_below(rng, m.n()));
        ShapeSet holds = 0;
        for (auto s : {P, PQ, PR, PQR})
            if (class_zero_predicate(grid, DivisorClass(s, i, m))) holds |= static_cast<ShapeSet>(s);
        for (std::size_t c = 0; c < cases.size(); ++c) {
            if ((holds & cases[c]) != cases[c] || accepted[c] >= prm.trials) continue;
            ++accepted[c];
            const auto report = check_grid_implications(grid, i, cases[c]);
            rep.record(report.all_hold(), "case " + std::to_string(c + 1) + " i=" + std::to_string(i) + " " +
                                              detail::describe(a));
        }
    }
    rep.non_vacuous = rep.instances;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        rep.counts["accepted_case_" + std::to_string(c + 1)] = accepted[c];
        if (accepted[c] < prm.trials) ++rep.inconclusive;
    }
    return rep;
}

/// Every V in Z_{p^n} with 0 in V and |V| = p^t, against every I with |I| = t and n-1 in I.
inline SuiteReport suite_digit_sets(const SuiteParams& prm) {
    SuiteReport rep("lemma28");
    const auto p = prm.p, n = prm.n, t = prm.t;
    if (!is_prime(p) || n == 0 || t == 0 || t > n) throw DomainError("lemma28 needs prime p and 1 <= t <= n");
    const auto pn = static_cast<std::uint32_t>(ipow(p, n));
    if (pn > 64) throw DomainError("lemma28 enumeration needs p^n <= 64");
    const auto size = static_cast<std::uint32_t>(ipow(p, t));
    for (std::uint32_t imask = 0; imask < (1U << n); ++imask) {
        if (static_cast<std::uint32_t>(std::popcount(imask)) != t || !(imask >> (n - 1) & 1)) continue;
        std::vector<std::uint32_t> idx;
        for (std::uint32_t i = 0; i < n; ++i)
            if (imask >> i & 1) idx.push_back(i);
        std::vector<Residue> v{0};
        auto rec = [&](auto&& self, Residue next) -> void {
            if (v.size() == size) {
                const ResidueSet vs(pn, v);
                const auto verdict = reconstruct_digit_set(vs, p, n, idx);
                if (verdict.hypotheses_hold) {
                    ++rep.non_vacuous;
                    rep.record(verdict.equals_standard, detail::describe(vs));
                } else {
                    ++rep.vacuous;
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
    return rep;
}

/// Every generating T with 0 in T and |T| <= max_size has a pair whose difference avoids p and q.
inline SuiteReport suite_generating_pairs(const SuiteParams& prm) {
    SuiteReport rep("lemma26");
    const auto n = prm.modulus;
    const auto max_size = prm.max_size ? prm.max_size : 4;
    const auto primes = factorize(n);
    if (primes.size() < 2) throw DomainError("lemma26 needs N with two distinct prime factors");
    std::vector<Residue> t{0};
    auto rec = [&](auto&& self, Residue next) -> void {
        const ResidueSet s(n, t);
        if (is_generating(s)) {
            for (const auto& p : primes)
                for (const auto& q : primes) {
                    if (p.prime >= q.prime) continue;
                    const auto w = generating_pair(s, p.prime, q.prime);
                    bool pass = w.pair.has_value();
                    if (pass) {
                        const auto d = w.pair->second - w.pair->first;
                        pass = d % p.prime != 0 && d % q.prime != 0;
                    }
                    rep.record(pass, detail::describe(s) + " p=" + std::to_string(p.prime) + " q=" + std::to_string(q.prime));
                }
        } else {
            ++rep.vacuous;
        }
        if (t.size() == max_size) return;
        for (Residue x = next; x < n; ++x) {
            t.push_back(x);
            self(self, x + 1);
            t.pop_back();
        }
    };
    rec(rec, 1);
    rep.non_vacuous = rep.instances;
    return rep;
}

namespace detail {

// Both statements for one spectral pair and one choice of the distinguished prime:
//   q, r in Z_A and qr not in Z_A  =>  p^n q, p^n r in Z_B, and the same with A, B swapped.
inline void check_boundary_implication(SuiteReport& rep, const ZeroSet& za, const ZeroSet& zb, const PnqrModulus& m,
                                       const std::string& what) {
    const auto q = m.q(), r = m.r(), pnq = m.prime_power() * m.q(), pnr = m.prime_power() * m.r();
    auto one = [&](const ZeroSet& x, const ZeroSet& y, const char* label) {
        const bool hyp = x.contains(q) && x.contains(r) && !x.contains(q * r);
        if (!hyp) {
            ++rep.vacuous;
            rep.counts[std::string(label) + "_vacuous"] += 1;
            rep.record(true, what);
            return;
        }
        ++rep.non_vacuous;
        rep.counts[std::string(label) + "_non_vacuous"] += 1;
        rep.record(y.contains(pnq) && y.contains(pnr), what + " (" + label + ")");
    };
    one(za, zb, "statement1");
    one(zb, za, "statement2");
}

inline std::vector<PnqrModulus> pnqr_readings(std::uint32_t n) {
    std::vector<PnqrModulus> out;
    for (const auto& f : factorize(n)) {
        try {
            out.push_back(PnqrModulus::from_order(n, f.prime));
        } catch (const DomainError&) {
        }
    }
    if (out.empty()) throw DomainError(std::to_string(n) + " is not of the form p^n q r");
    return out;
}

// spectral candidates in Z_{p^n q r}: transversals of subgroups, digit-type tiles, coset unions, small random sets
inline ResidueSet spectral_candidate(std::mt19937_64& rng, std::uint32_t n) {
    const auto divs = divisors(n);
    switch (uniform_below(rng, 4)) {
    case 0: {
        // one element from each coset of a subgroup of order h
        const auto h = divs[uniform_below(rng, divs.size())];
        const auto k = n / h;
        std::vector<Residue> e;
        for (Residue c = 0; c < k; ++c) e.push_back(c + k * static_cast<Residue>(uniform_below(rng, h)));
        return ResidueSet(n, e);
    }
    case 1: {
        // mixed-radix digit set: product of cyclic pieces at random places
        std::vector<Residue> e{0};
        std::uint32_t place = 1;
        for (const auto& f : factorize(n))
            for (std::uint32_t k = 0; k < f.exponent; ++k) {
                if (uniform_below(rng, 2)) {
                    std::vector<Residue> next;
                    for (auto x : e)
                        for (std::uint32_t d = 0; d < f.prime; ++d) next.push_back((x + d * place) % n);
                    e = std::move(next);
                }
                place *= f.prime;
            }
        return ResidueSet(n, e);
    }
    case 2: return coset_union(rng, n);
    default: {
        std::vector<Residue> e{0};
        const auto size = 1 + uniform_below(rng, 5);
        for (std::uint64_t i = 0; i < size; ++i) e.push_back(static_cast<Residue>(uniform_below(rng, n)));
        return ResidueSet(n, e);
    }
    }
}

}  // namespace detail

/// Boundary-class implication for spectral pairs. Exhaustive mode: every A with 0 in A and
/// 2 <= |A| <= max_size, paired with every spectrum B containing 0. Sample mode: `trials` pairs.
inline SuiteReport suite_boundary_classes(const SuiteParams& prm) {
    SuiteReport rep("lemma41");
    const auto n = prm.modulus;
    const auto readings = detail::pnqr_readings(n);
    const CharacterTable table(n);
    auto check_pair = [&](const ResidueSet& a, const ResidueSet& b, const ZeroSet& za) {
        const auto zb = zero_set(b, table);
        for (const auto& m : readings)
            detail::check_boundary_implication(rep, za, zb, m, detail::describe(a) + " | " + detail::describe(b));
        rep.counts["pairs"] += 1;
    };

    if (prm.exhaustive) {
        const auto max_size = prm.max_size ? prm.max_size : 6;
        std::vector<Residue> a{0};
        auto rec = [&](auto&& self, Residue next) -> void {
            if (a.size() >= 2) {
                const ResidueSet as(n, a);
                const auto za = zero_set(as, table);
                const bool complete = for_each_spectrum(as, [&](const ResidueSet& b) {
                    check_pair(as, b, za);
                    return false;
                }, prm.budget);
                if (!complete) ++rep.inconclusive;
            }
            if (a.size() == max_size) return;
            for (Residue x = next; x < n; ++x) {
                a.push_back(x);
                self(self, x + 1);
                a.pop_back();
            }
        };
        rec(rec, 1);
        return rep;
    }

    std::mt19937_64 rng(prm.seed);
    const std::uint64_t max_draws = prm.trials * 1000;
    for (std::uint64_t draw = 0; draw < max_draws && rep.counts["pairs"] < prm.trials; ++draw) {
        const auto a = detail::spectral_candidate(rng, n);
        if (a.size() < 2) continue;
        const auto za = zero_set(a, table);
        // collect a handful of spectra and take one at random
        std::vector<ResidueSet> spectra;
        for_each_spectrum(a, [&](const ResidueSet& b) {
            spectra.push_back(b);
            return spectra.size() >= 16;
        }, prm.budget);
        if (spectra.empty()) continue;
        const auto& b = spectra[detail::uniform_below(rng, spectra.size())];
        check_pair(a, b, za);
    }
    if (rep.counts["pairs"] < prm.trials) ++rep.inconclusive;
    return rep;
}

/// The constructive complement on sampled spectral pairs of Z_{p^n q r}.
inline SuiteReport suite_constructive_complement(const SuiteParams& prm) {
    SuiteReport rep("sec41");
    const auto m = PnqrModulus::from_order(prm.modulus);
    const auto n = m.order();
    const CharacterTable table(n);
    std::mt19937_64 rng(prm.seed);
    std::set<std::pair<std::uint64_t, std::uint64_t>> distinct;

    auto attempt = [&](const ResidueSet& a, const ResidueSet& b) {
        const auto c = pnqr_complement(a, b, m);
        if (c.status == BuildStatus::inapplicable) {
            ++rep.vacuous;
            for (const auto& why : c.reasons) rep.counts["inapplicable: " + why] += 1;
            return;
        }
        ++rep.non_vacuous;
        distinct.emplace(a.mask(), b.mask());
        rep.counts["distinct_applicable_pairs"] = distinct.size();
        rep.record(c.status == BuildStatus::built, detail::describe(a) + " | " + detail::describe(b));
    };

    // the subgroup of index p^n is its own spectrum
    std::vector<Residue> sub;
    for (Residue g = 0; g < n; g += m.prime_power()) sub.push_back(g);
    attempt(ResidueSet(n, sub), ResidueSet(n, sub));

    const auto divs = divisors(n);
    const std::uint64_t max_draws = prm.trials * 1000;
    for (std::uint64_t draw = 0; draw < max_draws && rep.non_vacuous < prm.trials; ++draw) {
        // A meets each coset of a subgroup H = <n/h> the same number of times, or is a random candidate
        ResidueSet a;
        if (detail::uniform_below(rng, 2) == 0) {
            const auto h = divs[detail::uniform_below(rng, divs.size())];
            const auto k = n / h;
            const auto per = 1 + detail::uniform_below(rng, std::max<std::uint32_t>(1, h / 2));
            std::vector<Residue> e;
            for (Residue c = 0; c < k; ++c) {
                std::vector<Residue> lifts(h);
                for (Residue x = 0; x < h; ++x) lifts[x] = c + k * x;
                std::shuffle(lifts.begin(), lifts.end(), rng);
                e.insert(e.end(), lifts.begin(), lifts.begin() + static_cast<std::ptrdiff_t>(std::min<std::uint64_t>(per, h)));
            }
            a = ResidueSet(n, e);
        } else {
            a = detail::spectral_candidate(rng, n);
        }
        std::vector<ResidueSet> spectra;
        for_each_spectrum(a, [&](const ResidueSet& b) {
            spectra.push_back(b);
            return spectra.size() >= 16;
        }, prm.budget);
        if (spectra.empty()) continue;
        attempt(a, spectra[detail::uniform_below(rng, spectra.size())]);
    }
    if (rep.non_vacuous < prm.trials) ++rep.inconclusive;
    return rep;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"coro32", "lemma33", "lemma27", "lemma28", "lemma26", "lemma41", "sec41"};
    return names;
}

inline SuiteReport run_suite(const std::string& name, const SuiteParams& prm) {
    if (name == "coro32") return suite_class_predicates(prm);
    if (name == "lemma33") return suite_grid_implications(prm);
    if (name == "lemma27") return suite_prime_power_vanishing(prm);
    if (name == "lemma28") return suite_digit_sets(prm);
    if (name == "lemma26") return suite_generating_pairs(prm);
    if (name == "lemma41") return suite_boundary_classes(prm);
    if (name == "sec41") return suite_constructive_complement(prm);
    throw DomainError("unknown suite '" + name + "'");
}

}  // namespace fuglede::harness
