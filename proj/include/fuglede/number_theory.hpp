#pragma once

// Integer types, error types and elementary number theory on moduli up to 2^32.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fuglede {

using Integer = boost::multiprecision::cpp_int;
using Residue = std::uint32_t;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ModulusMismatch : public Error {
public:
    ModulusMismatch(std::uint64_t lhs, std::uint64_t rhs)
        : Error("modulus mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

struct PrimePower {
    std::uint32_t prime = 0;
    std::uint32_t exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<PrimePower> factorize(std::uint64_t n) {
    std::vector<PrimePower> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        PrimePower pp{static_cast<std::uint32_t>(p), 0};
        while (n % p == 0) {
            n /= p;
            ++pp.exponent;
        }
        out.push_back(pp);
    }
    if (n > 1) out.push_back({static_cast<std::uint32_t>(n), 1});
    return out;
}

inline std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
    std::uint64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

/// Sorted list of all positive divisors of n.
inline std::vector<std::uint32_t> divisors(std::uint32_t n) {
    std::vector<std::uint32_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(static_cast<std::uint32_t>(d));
        if (d * d != n) large.push_back(static_cast<std::uint32_t>(n / d));
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (const auto& pp : factorize(n)) r = r / pp.prime * (pp.prime - 1);
    return r;
}

inline int mobius(std::uint64_t n) {
    int sign = 1;
    for (const auto& pp : factorize(n)) {
        if (pp.exponent > 1) return 0;
        sign = -sign;
    }
    return sign;
}

inline std::uint32_t mod_reduce(std::int64_t x, std::uint32_t n) {
    auto r = x % static_cast<std::int64_t>(n);
    if (r < 0) r += n;
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint32_t n) {
    return static_cast<std::uint32_t>((a % n) * (b % n) % n);
}

inline std::uint32_t mod_add(std::uint64_t a, std::uint64_t b, std::uint32_t n) {
    return static_cast<std::uint32_t>((a % n + b % n) % n);
}

inline std::uint32_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint32_t n) {
    return static_cast<std::uint32_t>((a % n + n - b % n) % n);
}

/// Inverse of a modulo n; throws when gcd(a, n) != 1.
inline std::uint32_t mod_inverse(std::uint64_t a, std::uint32_t n) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = n, new_r = static_cast<std::int64_t>(a % n);
    while (new_r != 0) {
        const auto q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw DomainError("not a unit modulo " + std::to_string(n));
    return mod_reduce(t, n);
}

/// Residues coprime to n, ascending.
inline std::vector<std::uint32_t> units(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t u = 1; u < n; ++u)
        if (std::gcd(u, n) == 1) out.push_back(u);
    if (n == 1) out.push_back(0);
    return out;
}

/// Additive order of g in Z_n.
inline std::uint32_t element_order(std::uint64_t g, std::uint32_t n) {
    return n / std::gcd(static_cast<std::uint32_t>(g % n), n);
}

}  // namespace fuglede
