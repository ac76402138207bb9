#pragma once

#include "fuglede/group_ring.hpp"

#include <bit>
#include <optional>

namespace fuglede {

enum class SearchStatus { found, none, exhausted };

inline const char* to_string(SearchStatus s) {
    switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::exhausted: return "exhausted";
    }
    return "?";
}

inline constexpr std::uint64_t default_budget = 100'000'000;

struct SearchResult {
    SearchStatus status = SearchStatus::none;
    std::optional<ResidueSet> value;
    std::uint64_t nodes = 0;

    bool found() const noexcept { return status == SearchStatus::found; }
};

namespace detail {

// Bit set over Z_N stored in 64-bit words.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::uint32_t universe() const noexcept { return n_; }
    void set(std::uint32_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::uint32_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::uint32_t i) const { return w_[i >> 6] >> (i & 63) & 1; }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    std::uint32_t count() const {
        std::uint32_t c = 0;
        for (auto w : w_) c += static_cast<std::uint32_t>(std::popcount(w));
        return c;
    }
    // index of the lowest set bit; undefined on an empty set
    std::uint32_t lowest() const {
        for (std::size_t k = 0;; ++k)
            if (w_[k]) return static_cast<std::uint32_t>(k * 64 + std::countr_zero(w_[k]));
    }
    Bits& operator&=(const Bits& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    Bits& and_not(const Bits& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
        return *this;
    }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            for (auto w = w_[k]; w; w &= w - 1) f(static_cast<std::uint32_t>(k * 64 + std::countr_zero(w)));
    }

private:
    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Circulant graph on Z_N: x ~ y iff x - y lies in the connection set.
struct Circulant {
    std::vector<Bits> adj;

    Circulant(std::uint32_t n, const std::vector<bool>& connection) : adj(n, Bits(n)) {
        for (std::uint32_t v = 0; v < n; ++v)
            for (std::uint32_t d = 1; d < n; ++d)
                if (connection[d]) adj[v].set((v + d) % n);
    }
};

// Greedy colouring of the candidate set; the colour count bounds the clique size.
inline std::uint32_t colour_bound(const Bits& cand, const Circulant& g, std::uint32_t need) {
    Bits uncoloured = cand;
    std::uint32_t colours = 0;
    while (uncoloured.any()) {
        if (++colours >= need) return colours;
        Bits q = uncoloured;
        while (q.any()) {
            const auto v = q.lowest();
            q.reset(v);
            uncoloured.reset(v);
            q.and_not(g.adj[v]);
        }
    }
    return colours;
}

// Depth-first clique extension in ascending vertex order. f(clique) returns true to stop.
template <class F>
class CliqueWalker {
public:
    CliqueWalker(const Circulant& g, std::uint64_t budget, F& f) : g_(g), budget_(budget), f_(f) {}

    // returns true when stopped by f
    bool run(std::vector<Residue>& clique, Bits cand, std::uint32_t need) {
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return true;
        }
        if (need == 0) return f_(clique);
        if (cand.count() < need) return false;
        if (need > 1 && colour_bound(cand, g_, need) < need) return false;
        while (cand.any()) {
            if (cand.count() < need) return false;
            const auto v = cand.lowest();
            cand.reset(v);
            clique.push_back(v);
            Bits next = cand & g_.adj[v];
            const bool stop = run(clique, std::move(next), need - 1);
            clique.pop_back();
            if (stop) return true;
        }
        return false;
    }

    std::uint64_t nodes() const noexcept { return nodes_; }
    bool exhausted() const noexcept { return exhausted_; }

private:
    const Circulant& g_;
    std::uint64_t budget_;
    F& f_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

}  // namespace detail
}  // namespace fuglede
