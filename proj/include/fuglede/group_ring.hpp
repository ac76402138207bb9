#pragma once

// The group ring Z[Z_N]: moduli, integer multiplicity vectors and plain subsets.

#include "fuglede/number_theory.hpp"

#include <algorithm>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fuglede {

/// A cyclic group order N >= 2 together with its factorization.
class Modulus {
public:
    explicit Modulus(std::uint64_t n) {
        if (n < 2 || n > 0xffffffffULL)
            throw DomainError("modulus must lie in [2, 2^32): " + std::to_string(n));
        n_ = static_cast<std::uint32_t>(n);
        factors_ = factorize(n_);
    }

    std::uint32_t value() const noexcept { return n_; }
    const std::vector<PrimePower>& factors() const noexcept { return factors_; }

    std::uint32_t exponent_of(std::uint32_t prime) const noexcept {
        for (const auto& pp : factors_)
            if (pp.prime == prime) return pp.exponent;
        return 0;
    }

    bool divides(std::uint32_t d) const noexcept { return d != 0 && n_ % d == 0; }

    friend bool operator==(const Modulus& a, const Modulus& b) noexcept { return a.n_ == b.n_; }

private:
    std::uint32_t n_ = 0;
    std::vector<PrimePower> factors_;
};

/// A subset of Z_N, kept as sorted distinct residues.
class ResidueSet {
public:
    ResidueSet() = default;

    ResidueSet(std::uint32_t n, std::vector<Residue> elems) : n_(n), elems_(std::move(elems)) {
        if (n_ < 2) throw DomainError("modulus must be at least 2");
        for (auto& e : elems_) e %= n_;
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    ResidueSet(std::uint32_t n, std::initializer_list<Residue> elems)
        : ResidueSet(n, std::vector<Residue>(elems)) {}

    /// Residues given by a bit mask over Z_N, bit g for element g (N <= 64).
    static ResidueSet from_mask(std::uint32_t n, std::uint64_t mask) {
        std::vector<Residue> e;
        for (std::uint32_t g = 0; g < n && g < 64; ++g)
            if ((mask >> g) & 1U) e.push_back(g);
        return ResidueSet(n, std::move(e));
    }

    std::uint32_t modulus() const noexcept { return n_; }
    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    std::span<const Residue> elements() const noexcept { return elems_; }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }

    bool contains(Residue g) const noexcept {
        return std::binary_search(elems_.begin(), elems_.end(), g % n_);
    }

    std::uint64_t mask() const {
        if (n_ > 64) throw DomainError("bit mask requires N <= 64");
        std::uint64_t m = 0;
        for (auto e : elems_) m |= std::uint64_t{1} << e;
        return m;
    }

    ResidueSet translate(std::int64_t h) const {
        std::vector<Residue> e;
        e.reserve(elems_.size());
        const auto s = mod_reduce(h, n_);
        for (auto x : elems_) e.push_back(mod_add(x, s, n_));
        return ResidueSet(n_, std::move(e));
    }

    friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

    /// Lexicographic order on the sorted residue lists (size first).
    friend bool operator<(const ResidueSet& a, const ResidueSet& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        if (a.elems_.size() != b.elems_.size()) return a.elems_.size() < b.elems_.size();
        return a.elems_ < b.elems_;
    }

private:
    std::uint32_t n_ = 0;
    std::vector<Residue> elems_;
};

inline void require_same_modulus(std::uint32_t a, std::uint32_t b) {
    if (a != b) throw ModulusMismatch(a, b);
}

/// Element sum_g x_g g of Z[Z_N] with arbitrary-precision coefficients.
class GroupRingElement {
public:
    explicit GroupRingElement(const Modulus& m) : modulus_(m), coeffs_(m.value()) {}

    GroupRingElement(const Modulus& m, std::vector<Integer> coeffs)
        : modulus_(m), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != modulus_.value())
            throw DomainError("coefficient vector length must equal N");
    }

    static GroupRingElement from_set(const ResidueSet& s) {
        GroupRingElement x{Modulus(s.modulus())};
        for (auto g : s) x.coeffs_[g] = 1;
        return x;
    }

    /// Multiset from (element, multiplicity) pairs; repeated elements accumulate.
    static GroupRingElement from_multiset(const Modulus& m,
                                          std::span<const std::pair<Residue, Integer>> entries) {
        GroupRingElement x{m};
        for (const auto& [g, c] : entries) x.coeffs_[g % m.value()] += c;
        return x;
    }

    /// The group element h itself.
    static GroupRingElement unit_element(const Modulus& m, std::int64_t h) {
        GroupRingElement x{m};
        x.coeffs_[mod_reduce(h, m.value())] = 1;
        return x;
    }

    const Modulus& modulus() const noexcept { return modulus_; }
    std::uint32_t order() const noexcept { return modulus_.value(); }
    const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
    const Integer& operator[](Residue g) const { return coeffs_.at(g); }
    Integer& operator[](Residue g) { return coeffs_.at(g); }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& c) { return c == 0; });
    }

    /// True when every coefficient is 0 or 1.
    bool is_set() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(),
                           [](const Integer& c) { return c == 0 || c == 1; });
    }

    /// Image under the augmentation (counting) map.
    Integer augmentation() const {
        Integer s = 0;
        for (const auto& c : coeffs_) s += c;
        return s;
    }

    ResidueSet support() const {
        std::vector<Residue> e;
        for (Residue g = 0; g < coeffs_.size(); ++g)
            if (coeffs_[g] != 0) e.push_back(g);
        return ResidueSet(order(), std::move(e));
    }

    ResidueSet to_set() const {
        if (!is_set()) throw DomainError("element is not a set (coefficients outside {0,1})");
        return support();
    }

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
    }

private:
    Modulus modulus_;
    std::vector<Integer> coeffs_;
};

enum class RingOp { add, sub, mul };

inline GroupRingElement ring_combine(const GroupRingElement& x, const GroupRingElement& y, RingOp op) {
    require_same_modulus(x.order(), y.order());
    const auto n = x.order();
    GroupRingElement out{x.modulus()};
    switch (op) {
    case RingOp::add:
        for (Residue g = 0; g < n; ++g) out[g] = x[g] + y[g];
        break;
    case RingOp::sub:
        for (Residue g = 0; g < n; ++g) out[g] = x[g] - y[g];
        break;
    case RingOp::mul:
        // coefficient of g is sum_h x_h y_{g-h}
        for (Residue h = 0; h < n; ++h) {
            if (x[h] == 0) continue;
            for (Residue k = 0; k < n; ++k) {
                if (y[k] == 0) continue;
                out[mod_add(h, k, n)] += x[h] * y[k];
            }
        }
        break;
    }
    return out;
}

inline GroupRingElement operator+(const GroupRingElement& x, const GroupRingElement& y) {
    return ring_combine(x, y, RingOp::add);
}
inline GroupRingElement operator-(const GroupRingElement& x, const GroupRingElement& y) {
    return ring_combine(x, y, RingOp::sub);
}
inline GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y) {
    return ring_combine(x, y, RingOp::mul);
}

/// X^{(t)}: every g is sent to t*g; coefficients merge when t is not a unit.
inline GroupRingElement twist(const GroupRingElement& x, std::int64_t t) {
    const auto n = x.order();
    const auto s = mod_reduce(t, n);
    GroupRingElement out{x.modulus()};
    for (Residue g = 0; g < n; ++g)
        if (x[g] != 0) out[mod_mul(g, s, n)] += x[g];
    return out;
}

/// Multiplication by the group element h (translation by h in additive notation).
inline GroupRingElement shift(const GroupRingElement& x, std::int64_t h) {
    const auto n = x.order();
    const auto s = mod_reduce(h, n);
    GroupRingElement out{x.modulus()};
    for (Residue g = 0; g < n; ++g) out[mod_add(g, s, n)] = x[g];
    return out;
}

}  // namespace fuglede
