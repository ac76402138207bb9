#pragma once

// Cyclotomic polynomials Phi_d and exact arithmetic in Z[x]/Phi_d(x).

#include "fuglede/number_theory.hpp"

#include <optional>
#include <span>
#include <vector>

namespace fuglede {

/// Phi_d with integer coefficients, coeffs[k] is the coefficient of x^k.
struct CyclotomicPoly {
    std::uint32_t order = 0;
    std::vector<Integer> coeffs;

    std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    Integer value_at_one() const {
        Integer s = 0;
        for (const auto& c : coeffs) s += c;
        return s;
    }

    Integer value_at_zero() const { return coeffs.empty() ? Integer(0) : coeffs.front(); }
};

namespace detail {

// p *= (x^k - 1)
inline void multiply_by_binomial(std::vector<Integer>& p, std::size_t k) {
    p.resize(p.size() + k);
    for (std::size_t j = p.size(); j-- > 0;) {
        Integer shifted = j >= k ? p[j - k] : Integer(0);
        p[j] = shifted - p[j];
    }
}

// p /= (x^k - 1), exact. From p_j = q_{j-k} - q_j we get q_j = q_{j-k} - p_j.
inline void divide_by_binomial(std::vector<Integer>& p, std::size_t k) {
    if (p.size() <= k) throw Error("inexact cyclotomic division");
    const auto qdeg = p.size() - 1 - k;
    std::vector<Integer> q(qdeg + 1);
    for (std::size_t j = 0; j <= qdeg; ++j) q[j] = (j >= k ? q[j - k] : Integer(0)) - p[j];
    p = std::move(q);
}

}  // namespace detail

/// The d-th cyclotomic polynomial, as prod_{k | d} (x^k - 1)^{mu(d/k)}.
inline CyclotomicPoly cyclotomic(std::uint32_t d) {
    if (d == 0) throw DomainError("cyclotomic order must be positive");
    std::vector<Integer> p{1};
    const auto divs = divisors(d);
    for (auto k : divs)
        if (mobius(d / k) == 1) detail::multiply_by_binomial(p, k);
    for (auto k : divs)
        if (mobius(d / k) == -1) detail::divide_by_binomial(p, k);
    return {d, std::move(p)};
}

/// Sparse copy of Phi_d used by the reduction kernels.
template <class T>
struct SparseCyclotomic {
    std::uint32_t order = 0;
    std::size_t degree = 0;
    std::vector<std::pair<std::size_t, T>> lower;  // nonzero (k, c_k) with k < degree
};

inline SparseCyclotomic<Integer> sparse_integer(const CyclotomicPoly& phi) {
    SparseCyclotomic<Integer> s{phi.order, phi.degree(), {}};
    for (std::size_t k = 0; k < s.degree; ++k)
        if (phi.coeffs[k] != 0) s.lower.emplace_back(k, phi.coeffs[k]);
    return s;
}

/// Word-sized copy, absent when a coefficient does not fit.
inline std::optional<SparseCyclotomic<std::int64_t>> sparse_int64(const CyclotomicPoly& phi) {
    SparseCyclotomic<std::int64_t> s{phi.order, phi.degree(), {}};
    const Integer limit = Integer(1) << 62;
    for (std::size_t k = 0; k < s.degree; ++k) {
        const auto& c = phi.coeffs[k];
        if (c == 0) continue;
        if (abs(c) >= limit) return std::nullopt;
        s.lower.emplace_back(k, static_cast<std::int64_t>(c));
    }
    return s;
}

/// Remainder of poly modulo the monic Phi_d, in place; result has length deg Phi_d.
inline void reduce_mod_cyclotomic(std::vector<Integer>& poly, const SparseCyclotomic<Integer>& phi) {
    const auto m = phi.degree;
    for (std::size_t i = poly.size(); i-- > m;) {
        if (poly[i] == 0) continue;
        const Integer c = poly[i];
        poly[i] = 0;
        // x^i = x^{i-m} x^m and x^m = -sum_k c_k x^k
        for (const auto& [k, ck] : phi.lower) poly[i - m + k] -= c * ck;
    }
    poly.resize(m);
}

/// Checked word-sized reduction; returns false on overflow, leaving poly unspecified.
inline bool reduce_mod_cyclotomic(std::vector<std::int64_t>& poly,
                                  const SparseCyclotomic<std::int64_t>& phi) {
    const auto m = phi.degree;
    for (std::size_t i = poly.size(); i-- > m;) {
        const auto c = poly[i];
        if (c == 0) continue;
        poly[i] = 0;
        for (const auto& [k, ck] : phi.lower) {
            std::int64_t prod = 0;
            if (__builtin_mul_overflow(c, ck, &prod)) return false;
            if (__builtin_sub_overflow(poly[i - m + k], prod, &poly[i - m + k])) return false;
        }
    }
    poly.resize(m);
    return true;
}

/// An element of Z[zeta_d], stored as its residue modulo Phi_d.
class CyclotomicInteger {
public:
    CyclotomicInteger() = default;
    CyclotomicInteger(std::uint32_t order, std::vector<Integer> residue)
        : order_(order), residue_(std::move(residue)) {}

    std::uint32_t order() const noexcept { return order_; }
    const std::vector<Integer>& residue() const noexcept { return residue_; }

    bool is_zero() const {
        for (const auto& c : residue_)
            if (c != 0) return false;
        return true;
    }

    CyclotomicInteger& operator+=(const CyclotomicInteger& o) {
        check(o);
        for (std::size_t k = 0; k < residue_.size(); ++k) residue_[k] += o.residue_[k];
        return *this;
    }
    CyclotomicInteger& operator-=(const CyclotomicInteger& o) {
        check(o);
        for (std::size_t k = 0; k < residue_.size(); ++k) residue_[k] -= o.residue_[k];
        return *this;
    }
    CyclotomicInteger& operator*=(const Integer& s) {
        for (auto& c : residue_) c *= s;
        return *this;
    }

    friend CyclotomicInteger operator+(CyclotomicInteger a, const CyclotomicInteger& b) { return a += b; }
    friend CyclotomicInteger operator-(CyclotomicInteger a, const CyclotomicInteger& b) { return a -= b; }
    friend CyclotomicInteger operator*(const Integer& s, CyclotomicInteger a) { return a *= s; }
    friend CyclotomicInteger operator*(CyclotomicInteger a, const Integer& s) { return a *= s; }

    friend bool operator==(const CyclotomicInteger& a, const CyclotomicInteger& b) {
        return a.order_ == b.order_ && a.residue_ == b.residue_;
    }

private:
    void check(const CyclotomicInteger& o) const {
        if (o.order_ != order_) throw DomainError("cyclotomic integers of different orders");
    }

    std::uint32_t order_ = 1;
    std::vector<Integer> residue_;
};

/// Reduces an integer polynomial (coefficients of x^0, x^1, ...) into Z[x]/Phi_d.
inline CyclotomicInteger to_cyclotomic_integer(std::vector<Integer> poly, const CyclotomicPoly& phi) {
    const auto sparse = sparse_integer(phi);
    if (poly.size() < sparse.degree) poly.resize(sparse.degree);
    reduce_mod_cyclotomic(poly, sparse);
    return CyclotomicInteger(phi.order, std::move(poly));
}

}  // namespace fuglede
