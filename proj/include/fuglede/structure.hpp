#pragma once

// Coordinates on Z_{p^n q r} = <a> x <b> x <c> with o(a) = p^n, o(b) = q, o(c) = r.
// A subset A is written as sum_{j,k} A_{jk} b^j c^k with A_{jk} in Z[<a>], and the
// zero-set membership of p^i, p^i q, p^i r, p^i q r is decided on Z_{p^n}.

#include "fuglede/character.hpp"

#include <array>
#include <optional>
#include <sstream>

namespace fuglede {

class PnqrModulus {
public:
    PnqrModulus(std::uint32_t p, std::uint32_t n, std::uint32_t q, std::uint32_t r) : p_(p), n_(n), q_(q), r_(r) {
        if (!is_prime(p) || !is_prime(q) || !is_prime(r)) throw DomainError("p, q, r must be primes");
        if (p == q || p == r || q == r) throw DomainError("p, q, r must be distinct");
        if (n == 0) throw DomainError("exponent n must be positive");
        const auto pn = ipow(p, n);
        const auto order = pn * q * r;
        if (order > 0xffffffffULL) throw DomainError("p^n q r exceeds 32 bits");
        pn_ = static_cast<std::uint32_t>(pn);
        order_ = static_cast<std::uint32_t>(order);
        a_ = idempotent(pn_);
        b_ = idempotent(q_);
        c_ = idempotent(r_);
        if (element_order(a_, order_) != pn_ || element_order(b_, order_) != q_ || element_order(c_, order_) != r_)
            throw Error("generator orders do not match p^n, q, r");
    }

    /// Reads p, n, q, r off N. When N is squarefree the smallest prime plays p,
    /// unless `preferred_p` names one of the three.
    static PnqrModulus from_order(std::uint32_t order, std::uint32_t preferred_p = 0) {
        const auto f = factorize(order);
        if (f.size() != 3) throw DomainError(std::to_string(order) + " is not of the form p^n q r");
        std::size_t pi = 3;
        for (std::size_t k = 0; k < 3; ++k) {
            if (f[k].exponent > 1) {
                if (pi != 3) throw DomainError(std::to_string(order) + " has two repeated primes");
                pi = k;
            }
        }
        if (pi == 3) {
            pi = 0;
            for (std::size_t k = 0; k < 3; ++k)
                if (f[k].prime == preferred_p) pi = k;
        } else if (preferred_p != 0 && f[pi].prime != preferred_p) {
            throw DomainError("preferred p does not carry the repeated exponent");
        }
        std::array<std::uint32_t, 2> others{};
        std::size_t o = 0;
        for (std::size_t k = 0; k < 3; ++k)
            if (k != pi) others[o++] = f[k].prime;
        return PnqrModulus(f[pi].prime, f[pi].exponent, others[0], others[1]);
    }

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t n() const noexcept { return n_; }
    std::uint32_t q() const noexcept { return q_; }
    std::uint32_t r() const noexcept { return r_; }
    std::uint32_t order() const noexcept { return order_; }
    std::uint32_t prime_power() const noexcept { return pn_; }
    std::uint32_t a() const noexcept { return a_; }
    std::uint32_t b() const noexcept { return b_; }
    std::uint32_t c() const noexcept { return c_; }

    /// Residue a^x b^j c^k (additively x a + j b + k c).
    Residue compose(std::uint32_t x, std::uint32_t j, std::uint32_t k) const {
        const std::uint64_t s = std::uint64_t{mod_mul(x, a_, order_)} + mod_mul(j, b_, order_) + mod_mul(k, c_, order_);
        return static_cast<Residue>(s % order_);
    }

    friend bool operator==(const PnqrModulus& x, const PnqrModulus& y) {
        return x.p_ == y.p_ && x.n_ == y.n_ && x.q_ == y.q_ && x.r_ == y.r_;
    }

private:
    // e = 1 mod m, e = 0 mod N/m
    std::uint32_t idempotent(std::uint32_t m) const {
        const std::uint32_t cofactor = order_ / m;
        return mod_mul(cofactor, mod_inverse(cofactor % m, m), order_);
    }

    std::uint32_t p_, n_, q_, r_;
    std::uint32_t pn_ = 0, order_ = 0;
    std::uint32_t a_ = 0, b_ = 0, c_ = 0;
};

/// The q x r array of cells A_{jk} in Z[Z_{p^n}].
class GridDecomposition {
public:
    explicit GridDecomposition(const PnqrModulus& m)
        : modulus_(m), cells_(std::size_t{m.q()} * m.r(), GroupRingElement(Modulus(m.prime_power()))) {}

    const PnqrModulus& modulus() const noexcept { return modulus_; }
    const GroupRingElement& cell(std::uint32_t j, std::uint32_t k) const { return cells_.at(index(j, k)); }
    GroupRingElement& cell(std::uint32_t j, std::uint32_t k) { return cells_.at(index(j, k)); }

    GroupRingElement recompose() const {
        GroupRingElement out{Modulus(modulus_.order())};
        for (std::uint32_t j = 0; j < modulus_.q(); ++j)
            for (std::uint32_t k = 0; k < modulus_.r(); ++k) {
                const auto& c = cell(j, k);
                for (Residue x = 0; x < modulus_.prime_power(); ++x)
                    if (c[x] != 0) out[modulus_.compose(x, j, k)] += c[x];
            }
        return out;
    }

    /// One line per nonempty cell: "(j,k): x,y,..." with x:m for multiplicity m != 1.
    std::string dump() const {
        std::ostringstream os;
        for (std::uint32_t j = 0; j < modulus_.q(); ++j)
            for (std::uint32_t k = 0; k < modulus_.r(); ++k) {
                const auto& c = cell(j, k);
                if (c.is_zero()) continue;
                os << '(' << j << ',' << k << "): ";
                bool first = true;
                for (Residue x = 0; x < modulus_.prime_power(); ++x) {
                    if (c[x] == 0) continue;
                    os << (first ? "" : ",") << x;
                    if (c[x] != 1) os << ':' << c[x];
                    first = false;
                }
                os << '\n';
            }
        return os.str();
    }

private:
    std::size_t index(std::uint32_t j, std::uint32_t k) const {
        if (j >= modulus_.q() || k >= modulus_.r()) throw DomainError("grid index out of range");
        return std::size_t{j} * modulus_.r() + k;
    }

    PnqrModulus modulus_;
    std::vector<GroupRingElement> cells_;
};

inline GridDecomposition decompose(const GroupRingElement& x, const PnqrModulus& m) {
    require_same_modulus(x.order(), m.order());
    GridDecomposition grid(m);
    // with idempotent generators the coordinates of g are (g mod p^n, g mod q, g mod r)
    for (Residue g = 0; g < m.order(); ++g)
        if (x[g] != 0) grid.cell(g % m.q(), g % m.r())[g % m.prime_power()] += x[g];
    return grid;
}

inline GridDecomposition decompose(const ResidueSet& s, const PnqrModulus& m) {
    return decompose(GroupRingElement::from_set(s), m);
}

enum class ClassShape : std::uint8_t { P = 1, PQ = 2, PR = 4, PQR = 8 };

inline const char* to_string(ClassShape s) {
    switch (s) {
    case ClassShape::P: return "p^i";
    case ClassShape::PQ: return "p^i q";
    case ClassShape::PR: return "p^i r";
    case ClassShape::PQR: return "p^i q r";
    }
    return "?";
}

/// The divisor p^i, p^i q, p^i r or p^i q r of N, naming a gcd class of Z_N.
class DivisorClass {
public:
    DivisorClass(ClassShape shape, std::uint32_t exponent, const PnqrModulus& m) : shape_(shape), exponent_(exponent) {
        if (exponent > m.n()) throw DomainError("class exponent " + std::to_string(exponent) + " exceeds n");
        if (shape == ClassShape::PQR && exponent == m.n()) throw DomainError("p^n q r is the zero class");
        value_ = static_cast<std::uint32_t>(ipow(m.p(), exponent));
        if (shape == ClassShape::PQ || shape == ClassShape::PQR) value_ *= m.q();
        if (shape == ClassShape::PR || shape == ClassShape::PQR) value_ *= m.r();
    }

    ClassShape shape() const noexcept { return shape_; }
    std::uint32_t exponent() const noexcept { return exponent_; }
    std::uint32_t value() const noexcept { return value_; }

    /// Every admissible class of the modulus.
    static std::vector<DivisorClass> all(const PnqrModulus& m) {
        std::vector<DivisorClass> out;
        for (std::uint32_t i = 0; i <= m.n(); ++i)
            for (auto s : {ClassShape::P, ClassShape::PQ, ClassShape::PR, ClassShape::PQR})
                if (!(s == ClassShape::PQR && i == m.n())) out.emplace_back(s, i, m);
        return out;
    }

private:
    ClassShape shape_;
    std::uint32_t exponent_;
    std::uint32_t value_ = 1;
};

namespace detail {

// chi_{p^i, p^n}(X) = 0 for X in Z[Z_{p^n}]: fold to Z_{p^{n-i}} and test constancy mod p^{n-i-1}.
inline bool chi_vanishes(const GroupRingElement& x, std::uint32_t i, const PnqrModulus& m) {
    const auto len = static_cast<std::uint32_t>(ipow(m.p(), m.n() - i));
    std::vector<Integer> folded(len);
    for (Residue g = 0; g < m.prime_power(); ++g)
        if (x[g] != 0) folded[g % len] += x[g];
    return prime_power_vanishing(folded, m.p(), m.n() - i);
}

inline GroupRingElement sum_over_j(const GridDecomposition& grid, std::uint32_t k) {
    GroupRingElement s{Modulus(grid.modulus().prime_power())};
    for (std::uint32_t j = 0; j < grid.modulus().q(); ++j) s = s + grid.cell(j, k);
    return s;
}

inline GroupRingElement sum_over_k(const GridDecomposition& grid, std::uint32_t j) {
    GroupRingElement s{Modulus(grid.modulus().prime_power())};
    for (std::uint32_t k = 0; k < grid.modulus().r(); ++k) s = s + grid.cell(j, k);
    return s;
}

}  // namespace detail

/// Whether the class representative lies in Z_A, decided on the grid cells.
/// Exponent n is decided by direct membership in the zero set of the recomposed element.
inline bool class_zero_predicate(const GridDecomposition& grid, const DivisorClass& cls) {
    const auto& m = grid.modulus();
    const auto i = cls.exponent();
    if (i > m.n()) throw DomainError("class exponent out of range");
    if (i == m.n()) return is_char_zero(grid.recompose(), cls.value());

    const auto q = m.q(), r = m.r();
    switch (cls.shape()) {
    case ClassShape::P:
        for (std::uint32_t j = 0; j < q; ++j)
            for (std::uint32_t k = 0; k < r; ++k) {
                auto x = grid.cell(j, k) - grid.cell(j, 0) - grid.cell(0, k) + grid.cell(0, 0);
                if (!detail::chi_vanishes(x, i, m)) return false;
            }
        return true;
    case ClassShape::PQ: {
        const auto base = detail::sum_over_j(grid, 0);
        for (std::uint32_t k = 0; k < r; ++k)
            if (!detail::chi_vanishes(detail::sum_over_j(grid, k) - base, i, m)) return false;
        return true;
    }
    case ClassShape::PR: {
        const auto base = detail::sum_over_k(grid, 0);
        for (std::uint32_t j = 0; j < q; ++j)
            if (!detail::chi_vanishes(detail::sum_over_k(grid, j) - base, i, m)) return false;
        return true;
    }
    case ClassShape::PQR: {
        GroupRingElement total{Modulus(m.prime_power())};
        for (std::uint32_t j = 0; j < q; ++j) total = total + detail::sum_over_k(grid, j);
        return detail::chi_vanishes(total, i, m);
    }
    }
    return false;
}

class HypothesisNotSatisfied : public Error {
public:
    using Error::Error;
};

struct ConclusionResult {
    int number = 0;  // 1..7
    bool holds = true;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> violating_cell;
};

struct ImplicationReport {
    std::uint32_t exponent = 0;
    std::vector<ConclusionResult> conclusions;  // applicable ones only

    bool all_hold() const {
        return std::all_of(conclusions.begin(), conclusions.end(), [](const auto& c) { return c.holds; });
    }
};

using ShapeSet = std::uint8_t;  // bitwise OR of ClassShape values

constexpr ShapeSet shapes(std::initializer_list<ClassShape> list) {
    ShapeSet s = 0;
    for (auto c : list) s |= static_cast<ShapeSet>(c);
    return s;
}

/// Consequences of simultaneous zeros at exponent i for the cells:
///   (1) p^i, p^i q         => chi(A_jk - A_j0) = 0
///   (2) p^i, p^i r         => chi(A_jk - A_0k) = 0
///   (3) p^i q, p^i r       => r chi(sum_j A_jk) and q chi(sum_k A_jk) are constant and equal
///   (4) p^i q, p^i q r     => chi(sum_j A_jk) = 0
///   (5) p^i r, p^i q r     => chi(sum_k A_jk) = 0
///   (6) p^i, p^i q, p^i r  => chi(A_jk - A_00) = 0
///   (7) all four           => chi(A_jk) = 0
/// with chi = chi_{p^i, p^n}. Each hypothesis class is verified first.
inline ImplicationReport check_grid_implications(const GridDecomposition& grid, std::uint32_t i, ShapeSet hypotheses) {
    const auto& m = grid.modulus();
    if (i >= m.n()) throw DomainError("implication exponent must lie in [0, n-1]");
    for (auto s : {ClassShape::P, ClassShape::PQ, ClassShape::PR, ClassShape::PQR}) {
        if (!(hypotheses & static_cast<ShapeSet>(s))) continue;
        if (!class_zero_predicate(grid, DivisorClass(s, i, m)))
            throw HypothesisNotSatisfied(std::string("hypothesis class ") + to_string(s) + " (i=" +
                                         std::to_string(i) + ") is not in the zero set");
    }

    const CharacterTable table(m.prime_power());
    const auto pi = ipow(m.p(), i);
    auto chi = [&](const GroupRingElement& x) { return char_value(x, pi, table); };
    const auto q = m.q(), r = m.r();
    auto has = [&](ShapeSet need) { return (hypotheses & need) == need; };

    ImplicationReport report{i, {}};
    auto cellwise = [&](int number, auto&& element_of) {
        ConclusionResult res{number, true, std::nullopt};
        for (std::uint32_t j = 0; j < q && res.holds; ++j)
            for (std::uint32_t k = 0; k < r && res.holds; ++k)
                if (!chi(element_of(j, k)).is_zero()) res = {number, false, std::pair{j, k}};
        report.conclusions.push_back(res);
    };

    using enum ClassShape;
    if (has(shapes({P, PQ})))
        cellwise(1, [&](auto j, auto k) { return grid.cell(j, k) - grid.cell(j, 0); });
    if (has(shapes({P, PR})))
        cellwise(2, [&](auto j, auto k) { return grid.cell(j, k) - grid.cell(0, k); });
    if (has(shapes({PQ, PR}))) {
        ConclusionResult res{3, true, std::nullopt};
        const auto left0 = Integer(r) * chi(detail::sum_over_j(grid, 0));
        const auto right0 = Integer(q) * chi(detail::sum_over_k(grid, 0));
        for (std::uint32_t k = 1; k < r && res.holds; ++k)
            if (Integer(r) * chi(detail::sum_over_j(grid, k)) != left0) res = {3, false, std::pair{0U, k}};
        for (std::uint32_t j = 1; j < q && res.holds; ++j)
            if (Integer(q) * chi(detail::sum_over_k(grid, j)) != right0) res = {3, false, std::pair{j, 0U}};
        if (res.holds && left0 != right0) res = {3, false, std::pair{0U, 0U}};
        report.conclusions.push_back(res);
    }
    if (has(shapes({PQ, PQR})))
        cellwise(4, [&](auto, auto k) { return detail::sum_over_j(grid, k); });
    if (has(shapes({PR, PQR})))
        cellwise(5, [&](auto j, auto) { return detail::sum_over_k(grid, j); });
    if (has(shapes({P, PQ, PR})))
        cellwise(6, [&](auto j, auto k) { return grid.cell(j, k) - grid.cell(0, 0); });
    if (has(shapes({P, PQ, PR, PQR})))
        cellwise(7, [&](auto j, auto k) { return grid.cell(j, k); });
    return report;
}

/// Which of the classes p^i q r (i < n) and p^n q, p^n r lie in Z_X.
struct DivisorProfile {
    std::vector<std::uint32_t> cross_exponents;   // i in [0, n-1] with p^i q r in Z_X
    std::vector<std::uint32_t> boundary_classes;  // subset of {p^n q, p^n r} in Z_X

    friend bool operator==(const DivisorProfile&, const DivisorProfile&) = default;
};

inline DivisorProfile divisor_profile(const ZeroSet& z, const PnqrModulus& m) {
    require_same_modulus(z.modulus(), m.order());
    DivisorProfile prof;
    for (std::uint32_t i = 0; i < m.n(); ++i)
        if (z.contains_class(DivisorClass(ClassShape::PQR, i, m).value())) prof.cross_exponents.push_back(i);
    for (auto v : {m.prime_power() * m.q(), m.prime_power() * m.r()})
        if (z.contains_class(v)) prof.boundary_classes.push_back(v);
    std::sort(prof.boundary_classes.begin(), prof.boundary_classes.end());
    return prof;
}

inline DivisorProfile divisor_profile(const GroupRingElement& x, const PnqrModulus& m) {
    return divisor_profile(zero_set(x), m);
}

inline DivisorProfile divisor_profile(const ResidueSet& s, const PnqrModulus& m) {
    return divisor_profile(zero_set(s), m);
}

/// {sum_{i in I} a_i p^i : a_i in [0, p-1]} as residues mod p^n.
inline ResidueSet digit_span(std::uint32_t p, std::uint32_t n, const std::vector<std::uint32_t>& exponents) {
    const auto pn = static_cast<std::uint32_t>(ipow(p, n));
    std::vector<Residue> vals{0};
    for (auto i : exponents) {
        const auto step = static_cast<std::uint32_t>(ipow(p, i) % pn);
        std::vector<Residue> next;
        for (auto v : vals)
            for (std::uint32_t a = 0; a < p; ++a) next.push_back(static_cast<Residue>((v + std::uint64_t{a} * step) % pn));
        vals = std::move(next);
    }
    return ResidueSet(pn, std::move(vals));
}

struct DigitSetVerdict {
    bool hypotheses_hold = false;
    std::vector<std::string> failed;  // names of the hypotheses that do not hold
    bool equals_standard = false;
    ResidueSet standard;
};

/// A set V in Z_{p^n} with 0 in V, |V| = p^{|I|}, n-1 in I and V - V inside the
/// digit span of I must be that digit span. Reports which hypotheses fail otherwise.
inline DigitSetVerdict reconstruct_digit_set(const ResidueSet& v, std::uint32_t p, std::uint32_t n,
                                             std::vector<std::uint32_t> exponents) {
    DigitSetVerdict out;
    std::sort(exponents.begin(), exponents.end());
    exponents.erase(std::unique(exponents.begin(), exponents.end()), exponents.end());
    const auto pn = ipow(p, n);
    if (!is_prime(p) || n == 0) {
        out.failed.push_back("prime power");
        return out;
    }
    if (v.modulus() != pn) out.failed.push_back("modulus");
    if (!exponents.empty() && exponents.back() >= n) {
        out.failed.push_back("exponent range");
        return out;
    }
    out.standard = digit_span(p, n, exponents);
    if (v.size() != ipow(p, static_cast<std::uint32_t>(exponents.size()))) out.failed.push_back("size");
    if (exponents.empty() || exponents.back() != n - 1) out.failed.push_back("top digit");
    if (!v.contains(0)) out.failed.push_back("contains zero");
    if (v.modulus() == pn) {
        bool inside = true;
        for (auto x : v)
            for (auto y : v)
                if (!out.standard.contains(mod_sub(x, y, v.modulus()))) inside = false;
        if (!inside) out.failed.push_back("differences");
    }
    out.hypotheses_hold = out.failed.empty();
    out.equals_standard = v == out.standard;
    return out;
}

inline bool is_generating(const ResidueSet& x) {
    if (x.empty()) throw DomainError("is_generating needs a nonempty set");
    std::uint32_t g = x.modulus();
    const auto x0 = *x.begin();
    for (auto e : x) g = std::gcd(g, e - x0);
    return g == 1;
}

struct GeneratingPair {
    bool generating = false;
    std::optional<std::pair<Residue, Residue>> pair;  // t1 < t2, present when generating
};

/// Two elements whose difference is divisible by neither p nor q, for a generating T with 0 in T.
inline GeneratingPair generating_pair(const ResidueSet& t, std::uint32_t p, std::uint32_t q) {
    const auto n = t.modulus();
    if (p == q || !is_prime(p) || !is_prime(q) || n % p != 0 || n % q != 0)
        throw DomainError("p and q must be distinct prime divisors of N");
    if (!t.contains(0)) throw DomainError("generating_pair expects 0 in T");
    GeneratingPair out;
    out.generating = is_generating(t);
    if (!out.generating) return out;
    const auto e = t.elements();
    for (std::size_t i = 0; i < e.size() && !out.pair; ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            const auto d = e[j] - e[i];
            if (d % p != 0 && d % q != 0) {
                out.pair = std::pair{e[i], e[j]};
                break;
            }
        }
    return out;
}

}  // namespace fuglede
