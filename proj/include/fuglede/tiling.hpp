#pragma once

// Tiling pairs A + T = Z_N, complement search, the Coven-Meyerowitz conditions
// T1/T2 with the spectrum they produce, and the constructive complement for
// spectral pairs in Z_{p^n q r}.

#include "fuglede/spectral.hpp"
#include "fuglede/structure.hpp"

namespace fuglede {

enum class CoverFailure { none, size_mismatch, uncovered, doubly_covered };

inline const char* to_string(CoverFailure f) {
    switch (f) {
    case CoverFailure::none: return "none";
    case CoverFailure::size_mismatch: return "size_mismatch";
    case CoverFailure::uncovered: return "uncovered";
    case CoverFailure::doubly_covered: return "doubly_covered";
    }
    return "?";
}

struct TilingVerdict {
    bool is_pair = false;
    CoverFailure failure = CoverFailure::none;
    std::optional<Residue> element;  // least residue not covered exactly once
};

/// Decides A + T = Z_N three ways: cover counts, (A - A) and (T - T) meeting only
/// in 0, and Z_A together with Z_T covering Z_N \ {0}. Disagreement is a logic error.
inline TilingVerdict is_tiling_pair(const ResidueSet& a, const ResidueSet& t, const CharacterTable& table) {
    require_same_modulus(a.modulus(), t.modulus());
    const auto n = a.modulus();
    TilingVerdict v;
    if (std::uint64_t{a.size()} * t.size() != n) {
        v.failure = CoverFailure::size_mismatch;
        return v;
    }

    std::vector<std::uint32_t> cover(n, 0);
    for (auto x : a)
        for (auto y : t) ++cover[mod_add(x, y, n)];
    for (Residue g = 0; g < n && !v.element; ++g)
        if (cover[g] != 1) {
            v.element = g;
            v.failure = cover[g] == 0 ? CoverFailure::uncovered : CoverFailure::doubly_covered;
        }
    v.is_pair = !v.element;

    std::vector<bool> diff_a(n, false);
    for (auto x : a)
        for (auto y : a) diff_a[mod_sub(x, y, n)] = true;
    bool disjoint = true;
    for (auto x : t)
        for (auto y : t)
            if (x != y && diff_a[mod_sub(x, y, n)]) disjoint = false;

    const auto za = zero_set(a, table), zt = zero_set(t, table);
    bool covers = true;
    for (Residue g = 1; g < n; ++g)
        if (!za.contains(g) && !zt.contains(g)) covers = false;

    if (disjoint != v.is_pair || covers != v.is_pair)
        throw std::logic_error("tiling criteria disagree in Z_" + std::to_string(n));
    return v;
}

inline TilingVerdict is_tiling_pair(const ResidueSet& a, const ResidueSet& t) {
    require_same_modulus(a.modulus(), t.modulus());
    return is_tiling_pair(a, t, CharacterTable(a.modulus()));
}

/// Exact cover of Z_N by translates of A: t = 0 first, then repeatedly cover the
/// least uncovered residue, trying translates in ascending order.
inline SearchResult complement_search(const ResidueSet& a, std::uint64_t budget = default_budget) {
    if (a.empty()) throw DomainError("complement search needs a nonempty set");
    const auto n = a.modulus();
    SearchResult res;
    if (n % a.size() != 0) return res;
    const auto k = n / static_cast<std::uint32_t>(a.size());

    std::vector<detail::Bits> translate(n, detail::Bits(n));
    for (Residue t = 0; t < n; ++t)
        for (auto x : a) translate[t].set(mod_add(x, t, n));

    detail::Bits covered = translate[0];
    std::vector<Residue> chosen{0};
    auto rec = [&](auto&& self) -> bool {
        if (++res.nodes > budget) return true;
        if (chosen.size() == k) return true;
        Residue g = 0;
        while (covered.test(g)) ++g;
        std::vector<Residue> options;
        for (auto x : a) options.push_back(mod_sub(g, x, n));
        std::sort(options.begin(), options.end());
        for (auto t : options) {
            if ((translate[t] & covered).any()) continue;
            for (auto x : a) covered.set(mod_add(x, t, n));
            chosen.push_back(t);
            if (self(self)) return true;
            chosen.pop_back();
            for (auto x : a) covered.reset(mod_add(x, t, n));
        }
        return false;
    };
    rec(rec);
    if (res.nodes > budget) {
        res.status = SearchStatus::exhausted;
    } else if (chosen.size() == k) {
        res.status = SearchStatus::found;
        res.value = ResidueSet(n, chosen);
    }
    return res;
}

struct PrimePowerSpectrumData {
    std::vector<std::uint32_t> s_a;  // prime powers s | N with Phi_s | A(x), ascending
    bool t1_holds = false;
    bool t2_holds = false;
    std::optional<std::vector<std::uint32_t>> t2_violation;  // prime powers whose product fails
};

namespace detail {

inline std::uint32_t prime_of(std::uint32_t prime_power) { return factorize(prime_power).front().prime; }

}  // namespace detail

/// T1: |A| = prod_{s in S_A} Phi_s(1). T2: Phi_{s_1...s_k} | A(x) for powers of distinct primes in S_A.
inline PrimePowerSpectrumData t1_t2_check(const ResidueSet& a, const CharacterTable& table) {
    if (a.empty()) throw DomainError("T1/T2 check needs a nonempty set");
    const auto n = a.modulus();
    PrimePowerSpectrumData out;
    // Phi_s | A(x) iff the character of order s vanishes on A, i.e. N/s is in Z_A
    std::vector<std::vector<std::uint32_t>> by_prime;
    for (const auto& f : factorize(n)) {
        std::vector<std::uint32_t> powers;
        for (std::uint32_t e = 1; e <= f.exponent; ++e) {
            const auto s = static_cast<std::uint32_t>(ipow(f.prime, e));
            if (is_char_zero(a, n / s, table)) powers.push_back(s);
        }
        out.s_a.insert(out.s_a.end(), powers.begin(), powers.end());
        if (!powers.empty()) by_prime.push_back(std::move(powers));
    }
    std::sort(out.s_a.begin(), out.s_a.end());

    Integer product = 1;
    for (auto s : out.s_a) product *= detail::prime_of(s);
    out.t1_holds = product == Integer(a.size());

    out.t2_holds = true;
    std::vector<std::uint32_t> pick;
    auto rec = [&](auto&& self, std::size_t prime_index, std::uint32_t prod) -> void {
        if (!out.t2_holds) return;
        if (prime_index == by_prime.size()) {
            if (pick.size() >= 2 && !is_char_zero(a, n / prod, table)) {
                out.t2_holds = false;
                out.t2_violation = pick;
            }
            return;
        }
        self(self, prime_index + 1, prod);
        for (auto s : by_prime[prime_index]) {
            pick.push_back(s);
            self(self, prime_index + 1, prod * s);
            pick.pop_back();
        }
    };
    rec(rec, 0, 1);
    return out;
}

inline PrimePowerSpectrumData t1_t2_check(const ResidueSet& a) {
    if (a.empty()) throw DomainError("T1/T2 check needs a nonempty set");
    return t1_t2_check(a, CharacterTable(a.modulus()));
}

enum class BuildStatus { built, inapplicable, construction_failure };

inline const char* to_string(BuildStatus s) {
    switch (s) {
    case BuildStatus::built: return "built";
    case BuildStatus::inapplicable: return "inapplicable";
    case BuildStatus::construction_failure: return "construction_failure";
    }
    return "?";
}

struct Construction {
    BuildStatus status = BuildStatus::inapplicable;
    std::optional<ResidueSet> value;    // present when built, and the rejected candidate on construction failure
    std::vector<std::string> reasons;   // failed preconditions
};

/// B = { sum_{s in S_A} k_s N/s : 0 <= k_s < p(s) }, checked against A before it is returned.
inline Construction cm_spectrum(const ResidueSet& a, const CharacterTable& table) {
    const auto data = t1_t2_check(a, table);
    Construction out;
    if (!data.t1_holds) out.reasons.emplace_back("T1");
    if (!data.t2_holds) out.reasons.emplace_back("T2");
    if (!out.reasons.empty()) return out;

    const auto n = a.modulus();
    std::vector<Residue> b{0};
    for (auto s : data.s_a) {
        std::vector<Residue> next;
        for (auto x : b)
            for (std::uint32_t k = 0; k < detail::prime_of(s); ++k) next.push_back(mod_add(x, mod_mul(k, n / s, n), n));
        b = std::move(next);
    }
    const auto size = b.size();
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    out.value = ResidueSet(n, std::move(b));
    const bool ok = out.value->size() == size && is_spectral_pair(a, *out.value, table).is_pair;
    out.status = ok ? BuildStatus::built : BuildStatus::construction_failure;
    return out;
}

inline Construction cm_spectrum(const ResidueSet& a) {
    if (a.empty()) throw DomainError("T1/T2 check needs a nonempty set");
    return cm_spectrum(a, CharacterTable(a.modulus()));
}

/// For a spectral pair (A, B) in Z_{p^n q r} with |A| = p^{|J1|} q r and
/// |I2| = 2 or |J2| = 2, the set T = { q r sum_{i not in J1} x_i p^i } tiles with A.
/// J1, J2 come from the profile of B and I2 from that of A.
inline Construction pnqr_complement(const ResidueSet& a, const ResidueSet& b, const PnqrModulus& m) {
    require_same_modulus(a.modulus(), m.order());
    require_same_modulus(b.modulus(), m.order());
    Construction out;
    if (a.empty() || b.empty()) {
        out.reasons.emplace_back("nonempty");
        return out;
    }
    const CharacterTable table(m.order());
    if (!is_spectral_pair(a, b, table).is_pair) out.reasons.emplace_back("spectral pair");
    const auto pa = divisor_profile(zero_set(a, table), m);
    const auto pb = divisor_profile(zero_set(b, table), m);
    const auto& j1 = pb.cross_exponents;
    const auto expected = ipow(m.p(), static_cast<std::uint32_t>(j1.size())) * m.q() * m.r();
    if (a.size() != expected) out.reasons.emplace_back("size p^|J1| q r");
    if (pa.boundary_classes.size() != 2 && pb.boundary_classes.size() != 2) out.reasons.emplace_back("|I2| = 2 or |J2| = 2");
    if (!out.reasons.empty()) return out;

    std::vector<std::uint32_t> free;
    for (std::uint32_t i = 0; i < m.n(); ++i)
        if (!std::binary_search(j1.begin(), j1.end(), i)) free.push_back(i);
    const auto digits = digit_span(m.p(), m.n(), free);
    const auto qr = m.q() * m.r();
    std::vector<Residue> t;
    for (auto x : digits) t.push_back(mod_mul(qr, x, m.order()));
    out.value = ResidueSet(m.order(), std::move(t));
    out.status = is_tiling_pair(a, *out.value, table).is_pair ? BuildStatus::built : BuildStatus::construction_failure;
    return out;
}

}  // namespace fuglede
