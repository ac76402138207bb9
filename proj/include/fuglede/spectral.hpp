#pragma once

// Spectral pairs in Z_N: (A, B) is spectral iff |A| = |B| and (B - B) \ {0} lies in Z_A.

#include "fuglede/character.hpp"
#include "fuglede/search.hpp"

#include <array>
#include <functional>
#include <stdexcept>

namespace fuglede {

struct SpectralVerdict {
    bool is_pair = false;
    bool size_mismatch = false;
    std::optional<std::pair<Residue, Residue>> violation;  // (b, b') with b - b' outside Z_A
};

namespace detail {

inline SpectralVerdict differences_in(const ZeroSet& z, const ResidueSet& b) {
    SpectralVerdict v;
    const auto e = b.elements();
    const auto n = b.modulus();
    for (std::size_t j = 1; j < e.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (!z.contains(e[j] - e[i] + n)) {
                v.violation = std::pair{e[j], e[i]};
                return v;
            }
    v.is_pair = true;
    return v;
}

}  // namespace detail

/// Checks B against Z_A given the zero set of A.
inline SpectralVerdict is_spectral_pair(const ZeroSet& za, std::size_t size_a, const ResidueSet& b) {
    require_same_modulus(za.modulus(), b.modulus());
    if (size_a != b.size()) return SpectralVerdict{false, true, std::nullopt};
    return detail::differences_in(za, b);
}

/// Decides the pair both ways, (B - B) against Z_A and (A - A) against Z_B, which must agree.
inline SpectralVerdict is_spectral_pair(const ResidueSet& a, const ResidueSet& b, const CharacterTable& table) {
    require_same_modulus(a.modulus(), b.modulus());
    if (a.empty() || b.empty()) throw DomainError("spectral pair needs nonempty sets");
    if (a.size() != b.size()) return SpectralVerdict{false, true, std::nullopt};
    auto forward = detail::differences_in(zero_set(a, table), b);
    const auto backward = detail::differences_in(zero_set(b, table), a);
    if (forward.is_pair != backward.is_pair)
        throw std::logic_error("spectral verdict differs between (A,B) and (B,A) for " + std::to_string(a.modulus()));
    return forward;
}

inline SpectralVerdict is_spectral_pair(const ResidueSet& a, const ResidueSet& b) {
    require_same_modulus(a.modulus(), b.modulus());
    return is_spectral_pair(a, b, CharacterTable(a.modulus()));
}

/// Searches for B containing 0 with |B| = |A| and (B - B) \ {0} inside Z_A.
/// Every unit fixes Z_A, so the second element may be taken to be the least
/// gcd(b, N) over B; branches run over the divisors in Z_A in ascending order.
inline SearchResult spectrum_search(const ZeroSet& za, std::size_t size, std::uint64_t budget = default_budget) {
    const auto n = za.modulus();
    SearchResult res;
    if (size == 0) throw DomainError("spectrum search needs a nonempty set");
    if (size == 1) {
        res.status = SearchStatus::found;
        res.value = ResidueSet(n, {0});
        return res;
    }
    if (size > n) return res;
    const detail::Circulant graph(n, za.members());
    std::vector<Residue> found;
    auto accept = [&](const std::vector<Residue>& c) {
        found = c;
        return true;
    };
    for (auto d : za.divisor_classes()) {
        detail::Bits cand = graph.adj[0] & graph.adj[d];
        for (Residue x = 1; x < n; ++x)
            if (cand.test(x) && std::gcd(x, n) < d) cand.reset(x);
        detail::CliqueWalker walker(graph, budget - res.nodes, accept);
        std::vector<Residue> clique{0, d};
        const bool stopped = walker.run(clique, std::move(cand), static_cast<std::uint32_t>(size - 2));
        res.nodes += walker.nodes();
        if (walker.exhausted()) {
            res.status = SearchStatus::exhausted;
            return res;
        }
        if (stopped) {
            res.status = SearchStatus::found;
            res.value = ResidueSet(n, found);
            return res;
        }
    }
    return res;
}

inline SearchResult spectrum_search(const ResidueSet& a, std::uint64_t budget = default_budget) {
    if (a.empty()) throw DomainError("spectrum search needs a nonempty set");
    return spectrum_search(zero_set(a), a.size(), budget);
}

/// Calls f(B) for every spectrum B of A with 0 in B, ascending. f returns true to stop.
/// Returns false when the budget ran out.
inline bool for_each_spectrum(const ResidueSet& a, const std::function<bool(const ResidueSet&)>& f,
                              std::uint64_t budget = default_budget) {
    if (a.empty()) throw DomainError("spectrum enumeration needs a nonempty set");
    const auto n = a.modulus();
    if (a.size() == 1) {
        f(ResidueSet(n, {0}));
        return true;
    }
    const auto za = zero_set(a);
    const detail::Circulant graph(n, za.members());
    auto emit = [&](const std::vector<Residue>& c) { return f(ResidueSet(n, c)); };
    detail::CliqueWalker walker(graph, budget, emit);
    std::vector<Residue> clique{0};
    walker.run(clique, graph.adj[0], static_cast<std::uint32_t>(a.size() - 1));
    return !walker.exhausted();
}

class AffineMap {
public:
    AffineMap(std::uint32_t n, std::uint32_t scale, std::uint32_t shift) : n_(n), u_(scale % n), v_(shift % n) {
        if (std::gcd(u_, n) != 1) throw DomainError("affine scale " + std::to_string(scale) + " is not a unit");
    }

    std::uint32_t modulus() const noexcept { return n_; }
    std::uint32_t scale() const noexcept { return u_; }
    std::uint32_t shift() const noexcept { return v_; }
    Residue operator()(Residue x) const { return mod_add(mod_mul(u_, x, n_), v_, n_); }

private:
    std::uint32_t n_, u_, v_;
};

inline ResidueSet affine_image(const ResidueSet& x, const AffineMap& f) {
    require_same_modulus(x.modulus(), f.modulus());
    std::vector<Residue> e;
    e.reserve(x.size());
    for (auto g : x) e.push_back(f(g));
    return ResidueSet(x.modulus(), std::move(e));
}

namespace detail {

// Order on equal-size sets matching the integer value of their bit masks:
// the set whose largest differing element is smaller comes first.
inline bool mask_less(std::span<const Residue> a, std::span<const Residue> b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace detail

/// Least orbit member of X under x -> u x + v, ordered as the bit mask read as an integer.
inline ResidueSet canonical_form(const ResidueSet& x) {
    if (x.empty()) throw DomainError("canonical form of the empty set");
    const auto n = x.modulus();
    std::vector<Residue> best, cur(x.size()), img(x.size());
    for (auto u : units(n)) {
        for (std::size_t i = 0; i < x.size(); ++i) img[i] = mod_mul(u, x.elements()[i], n);
        std::sort(img.begin(), img.end());
        for (std::size_t s = 0; s < img.size(); ++s) {
            // translate img[s] to 0: the sorted image is a rotation of img
            const auto y = img[s];
            for (std::size_t i = 0; i < img.size(); ++i) cur[i] = mod_sub(img[(s + i) % img.size()], y, n);
            if (best.empty() || detail::mask_less(cur, best)) best = cur;
        }
    }
    return ResidueSet(n, std::move(best));
}

/// Affine group of Z_N acting on bit masks (N <= 64): unit scaling by byte tables, translation by rotation.
class AffineMaskGroup {
public:
    explicit AffineMaskGroup(std::uint32_t n) : n_(n), units_(units(n)) {
        if (n < 2 || n > 64) throw DomainError("mask canonicalizer requires 2 <= N <= 64");
        full_ = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        bytes_ = (n + 7) / 8;
        tables_.resize(units_.size());
        for (std::size_t k = 0; k < units_.size(); ++k)
            for (std::uint32_t b = 0; b < bytes_; ++b)
                for (std::uint32_t v = 0; v < 256; ++v) {
                    std::uint64_t m = 0;
                    for (std::uint32_t bit = 0; bit < 8; ++bit) {
                        const auto g = b * 8 + bit;
                        if ((v >> bit & 1) && g < n) m |= std::uint64_t{1} << mod_mul(units_[k], g, n);
                    }
                    tables_[k][b][v] = m;
                }
    }

    std::uint32_t modulus() const noexcept { return n_; }
    std::uint64_t full() const noexcept { return full_; }
    std::size_t unit_count() const noexcept { return units_.size(); }
    std::uint32_t unit(std::size_t k) const { return units_[k]; }
    std::uint64_t order() const noexcept { return std::uint64_t{n_} * units_.size(); }

    std::uint64_t scale(std::uint64_t mask, std::size_t k) const {
        std::uint64_t out = 0;
        for (std::uint32_t b = 0; b < bytes_; ++b) out |= tables_[k][b][(mask >> (8 * b)) & 0xff];
        return out;
    }

    /// Translate by +v.
    std::uint64_t rotate(std::uint64_t mask, std::uint32_t v) const {
        v %= n_;
        if (v == 0) return mask;
        return ((mask << v) | (mask >> (n_ - v))) & full_;
    }

    /// Calls f(image) for each image u X + v that contains 0 (with repetitions).
    template <class F>
    void for_each_image_with_zero(std::uint64_t mask, F&& f) const {
        for (std::size_t k = 0; k < units_.size(); ++k) {
            const auto y = scale(mask, k);
            for (auto w = y; w; w &= w - 1) f(rotate(y, n_ - static_cast<std::uint32_t>(std::countr_zero(w))));
        }
    }

    std::uint64_t canonical(std::uint64_t mask) const {
        if (mask == 0) throw DomainError("canonical form of the empty set");
        std::uint64_t best = ~std::uint64_t{0};
        for_each_image_with_zero(mask, [&](std::uint64_t m) { best = std::min(best, m); });
        return best;
    }

    /// Size of the orbit of X under the affine group.
    std::uint64_t orbit_size(std::uint64_t mask) const {
        std::vector<std::uint64_t> seen;
        for (std::size_t k = 0; k < units_.size(); ++k) {
            const auto y = scale(mask, k);
            for (std::uint32_t v = 0; v < n_; ++v) seen.push_back(rotate(y, v));
        }
        std::sort(seen.begin(), seen.end());
        return static_cast<std::uint64_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
    }

private:
    std::uint32_t n_;
    std::vector<std::uint32_t> units_;
    std::uint64_t full_ = 0;
    std::uint32_t bytes_ = 0;
    std::vector<std::array<std::array<std::uint64_t, 256>, 8>> tables_;
};

}  // namespace fuglede
