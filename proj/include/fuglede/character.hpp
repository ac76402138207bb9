#pragma once

// Character sums chi_g(X) = sum_a x_a e^{2 pi i g a / N}, decided exactly through
// divisibility of the folded mask polynomial by Phi_d with d = N / gcd(g, N).

#include "fuglede/cyclotomic.hpp"
#include "fuglede/group_ring.hpp"

#include <memory>

namespace fuglede {

/// Cyclotomic data for every divisor of one modulus. Immutable once built.
class CharacterTable {
public:
    explicit CharacterTable(const Modulus& m) : modulus_(m), divisors_(divisors(m.value())) {
        entries_.reserve(divisors_.size());
        for (auto d : divisors_) {
            Entry e;
            e.poly = cyclotomic(d);
            e.exact = sparse_integer(e.poly);
            e.word = sparse_int64(e.poly);
            entries_.push_back(std::move(e));
        }
    }

    explicit CharacterTable(std::uint32_t n) : CharacterTable(Modulus(n)) {}

    const Modulus& modulus() const noexcept { return modulus_; }
    std::uint32_t order() const noexcept { return modulus_.value(); }
    const std::vector<std::uint32_t>& divisors_of_n() const noexcept { return divisors_; }

    const CyclotomicPoly& poly(std::uint32_t d) const { return entry(d).poly; }
    const SparseCyclotomic<Integer>& exact(std::uint32_t d) const { return entry(d).exact; }
    const std::optional<SparseCyclotomic<std::int64_t>>& word(std::uint32_t d) const { return entry(d).word; }

private:
    struct Entry {
        CyclotomicPoly poly;
        SparseCyclotomic<Integer> exact;
        std::optional<SparseCyclotomic<std::int64_t>> word;
    };

    const Entry& entry(std::uint32_t d) const {
        auto it = std::lower_bound(divisors_.begin(), divisors_.end(), d);
        if (it == divisors_.end() || *it != d)
            throw DomainError(std::to_string(d) + " does not divide " + std::to_string(order()));
        return entries_[static_cast<std::size_t>(it - divisors_.begin())];
    }

    Modulus modulus_;
    std::vector<std::uint32_t> divisors_;
    std::vector<Entry> entries_;
};

/// Order d of the root of unity chi_g evaluates through.
inline std::uint32_t character_order(std::uint64_t g, std::uint32_t n) { return element_order(g, n); }

namespace detail {

// Folded exponent of a under chi_g: (g a mod N) / (N / d), always below d.
inline std::uint32_t folded_index(std::uint64_t g, std::uint64_t a, std::uint32_t n, std::uint32_t d) {
    return mod_mul(g, a, n) / (n / d);
}

inline bool word_is_zero(std::vector<std::int64_t>& poly, const SparseCyclotomic<std::int64_t>& phi,
                         bool& overflow) {
    if (poly.size() < phi.degree) poly.resize(phi.degree);
    if (!reduce_mod_cyclotomic(poly, phi)) {
        overflow = true;
        return false;
    }
    overflow = false;
    for (auto c : poly)
        if (c != 0) return false;
    return true;
}

}  // namespace detail

/// chi_g(X) as an exact residue modulo Phi_d.
inline CyclotomicInteger char_value(const GroupRingElement& x, std::uint64_t g, const CharacterTable& table) {
    require_same_modulus(x.order(), table.order());
    const auto n = x.order();
    const auto d = character_order(g, n);
    std::vector<Integer> poly(d);
    for (Residue a = 0; a < n; ++a)
        if (x[a] != 0) poly[detail::folded_index(g, a, n, d)] += x[a];
    const auto& phi = table.exact(d);
    if (poly.size() < phi.degree) poly.resize(phi.degree);
    reduce_mod_cyclotomic(poly, phi);
    return CyclotomicInteger(d, std::move(poly));
}

inline CyclotomicInteger char_value(const GroupRingElement& x, std::uint64_t g) {
    return char_value(x, g, CharacterTable(x.modulus()));
}

inline bool is_char_zero(const GroupRingElement& x, std::uint64_t g, const CharacterTable& table) {
    require_same_modulus(x.order(), table.order());
    const auto n = x.order();
    const auto d = character_order(g, n);
    if (const auto& word = table.word(d)) {
        std::vector<std::int64_t> poly(d);
        bool fits = true;
        const Integer limit = Integer(1) << 62;
        for (Residue a = 0; a < n && fits; ++a) {
            if (x[a] == 0) continue;
            if (abs(x[a]) >= limit) {
                fits = false;
                break;
            }
            auto& slot = poly[detail::folded_index(g, a, n, d)];
            fits = !__builtin_add_overflow(slot, static_cast<std::int64_t>(x[a]), &slot);
        }
        if (fits) {
            bool overflow = false;
            const bool zero = detail::word_is_zero(poly, *word, overflow);
            if (!overflow) return zero;
        }
    }
    return char_value(x, g, table).is_zero();
}

inline bool is_char_zero(const GroupRingElement& x, std::uint64_t g) {
    return is_char_zero(x, g, CharacterTable(x.modulus()));
}

/// Set fast path: counts per folded index never overflow.
inline bool is_char_zero(const ResidueSet& a, std::uint64_t g, const CharacterTable& table) {
    require_same_modulus(a.modulus(), table.order());
    const auto n = a.modulus();
    const auto d = character_order(g, n);
    if (const auto& word = table.word(d)) {
        std::vector<std::int64_t> poly(d);
        for (auto e : a) ++poly[detail::folded_index(g, e, n, d)];
        bool overflow = false;
        const bool zero = detail::word_is_zero(poly, *word, overflow);
        if (!overflow) return zero;
    }
    return is_char_zero(GroupRingElement::from_set(a), g, table);
}

/// Z_X: characters at which X vanishes. Membership depends only on gcd(g, N).
class ZeroSet {
public:
    /// Builds the member vector from the list of divisor classes (divisors of N below N).
    ZeroSet(std::uint32_t n, std::vector<std::uint32_t> classes) : n_(n), classes_(std::move(classes)) {
        std::sort(classes_.begin(), classes_.end());
        members_.assign(n_, false);
        if (classes_.empty()) return;
        for (Residue g = 1; g < n_; ++g)
            members_[g] = std::binary_search(classes_.begin(), classes_.end(), std::gcd(g, n_));
    }

    std::uint32_t modulus() const noexcept { return n_; }
    bool contains(std::uint64_t g) const { return members_[g % n_]; }
    bool contains_class(std::uint32_t divisor) const {
        return std::binary_search(classes_.begin(), classes_.end(), divisor);
    }
    const std::vector<bool>& members() const noexcept { return members_; }
    const std::vector<std::uint32_t>& divisor_classes() const noexcept { return classes_; }

    std::vector<Residue> elements() const {
        std::vector<Residue> out;
        for (Residue g = 1; g < n_; ++g)
            if (members_[g]) out.push_back(g);
        return out;
    }

    std::size_t size() const {
        return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
    }

    /// Bit mask form (N <= 64).
    std::uint64_t mask() const {
        if (n_ > 64) throw DomainError("bit mask requires N <= 64");
        std::uint64_t m = 0;
        for (Residue g = 1; g < n_; ++g)
            if (members_[g]) m |= std::uint64_t{1} << g;
        return m;
    }

    friend bool operator==(const ZeroSet& a, const ZeroSet& b) {
        return a.n_ == b.n_ && a.classes_ == b.classes_;
    }

private:
    std::uint32_t n_;
    std::vector<std::uint32_t> classes_;
    std::vector<bool> members_;
};

inline ZeroSet zero_set(const GroupRingElement& x, const CharacterTable& table) {
    if (x.is_zero()) throw DomainError("zero set of the zero element is undefined");
    std::vector<std::uint32_t> classes;
    for (auto g0 : table.divisors_of_n())
        if (g0 < x.order() && is_char_zero(x, g0, table)) classes.push_back(g0);
    return ZeroSet(x.order(), std::move(classes));
}

inline ZeroSet zero_set(const GroupRingElement& x) { return zero_set(x, CharacterTable(x.modulus())); }

inline ZeroSet zero_set(const ResidueSet& a, const CharacterTable& table) {
    if (a.empty()) throw DomainError("zero set of the empty set is undefined");
    std::vector<std::uint32_t> classes;
    for (auto g0 : table.divisors_of_n())
        if (g0 < a.modulus() && is_char_zero(a, g0, table)) classes.push_back(g0);
    return ZeroSet(a.modulus(), std::move(classes));
}

inline ZeroSet zero_set(const ResidueSet& a) { return zero_set(a, CharacterTable(a.modulus())); }

/// Vanishing of sum_i c_i zeta_{p^n}^i: the vector must be constant on every
/// residue class modulo p^{n-1}.
template <class T>
bool prime_power_vanishing(std::span<const T> c, std::uint32_t p, std::uint32_t n) {
    if (n == 0 || !is_prime(p)) throw DomainError("prime_power_vanishing needs a prime p and n >= 1");
    const auto len = ipow(p, n);
    if (c.size() != len)
        throw DomainError("vector length " + std::to_string(c.size()) + " != p^n = " + std::to_string(len));
    const auto period = len / p;
    for (std::size_t i = period; i < len; ++i)
        if (c[i] != c[i % period]) return false;
    return true;
}

inline bool prime_power_vanishing(const std::vector<Integer>& c, std::uint32_t p, std::uint32_t n) {
    return prime_power_vanishing(std::span<const Integer>(c), p, n);
}

}  // namespace fuglede
