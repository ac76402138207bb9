#pragma once

// Text form of sets and multisets: "N=12; S=0,3,6,9" or "N=8; S=0:2,3:1".

#include "fuglede/group_ring.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <string_view>

namespace fuglede {

struct SetLiteral {
    std::uint32_t modulus = 0;
    std::vector<std::pair<Residue, Integer>> entries;  // in input order
    bool has_multiplicities = false;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::uint64_t parse_unsigned(std::string_view s, std::string_view what) {
    s = trim(s);
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc{} || ptr != end)
        throw ParseError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
    return v;
}

}  // namespace detail

/// Parses the residue list part only ("0,1,3" or "0:2,5:1").
inline std::vector<std::pair<Residue, Integer>> parse_residue_list(std::string_view body,
                                                                   std::uint32_t n,
                                                                   bool* saw_multiplicity = nullptr) {
    std::vector<std::pair<Residue, Integer>> out;
    body = detail::trim(body);
    if (body.empty()) return out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        auto comma = body.find(',', pos);
        if (comma == std::string_view::npos) comma = body.size();
        auto item = detail::trim(body.substr(pos, comma - pos));
        if (item.empty()) throw ParseError("empty entry in residue list");
        Integer mult = 1;
        if (auto colon = item.find(':'); colon != std::string_view::npos) {
            mult = Integer(detail::parse_unsigned(item.substr(colon + 1), "multiplicity"));
            item = item.substr(0, colon);
            if (saw_multiplicity) *saw_multiplicity = true;
        }
        const auto g = detail::parse_unsigned(item, "residue");
        if (g >= n) throw ParseError("residue " + std::to_string(g) + " out of range for N=" + std::to_string(n));
        out.emplace_back(static_cast<Residue>(g), mult);
        pos = comma + 1;
    }
    return out;
}

inline SetLiteral parse_set_literal(std::string_view text) {
    const auto semi = text.find(';');
    if (semi == std::string_view::npos) throw ParseError("expected 'N=<int>; S=<residues>'");
    auto head = detail::trim(text.substr(0, semi));
    auto tail = detail::trim(text.substr(semi + 1));
    if (head.size() < 2 || head.substr(0, 2) != "N=") throw ParseError("expected 'N=' prefix");
    if (tail.size() < 2 || tail.substr(0, 2) != "S=") throw ParseError("expected 'S=' after ';'");
    SetLiteral lit;
    const auto n = detail::parse_unsigned(head.substr(2), "modulus");
    if (n < 2 || n > 0xffffffffULL) throw ParseError("modulus out of range");
    lit.modulus = static_cast<std::uint32_t>(n);
    lit.entries = parse_residue_list(tail.substr(2), lit.modulus, &lit.has_multiplicities);
    return lit;
}

/// Subset view of a literal; duplicates and multiplicities other than 1 are rejected.
inline ResidueSet to_residue_set(const SetLiteral& lit) {
    std::vector<Residue> elems;
    for (const auto& [g, m] : lit.entries) {
        if (m != 1) throw ParseError("multiplicity not allowed in a set: " + std::to_string(g));
        elems.push_back(g);
    }
    auto sorted = elems;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParseError("duplicate residue in set literal");
    return ResidueSet(lit.modulus, std::move(elems));
}

inline GroupRingElement to_group_ring(const SetLiteral& lit) {
    return GroupRingElement::from_multiset(Modulus(lit.modulus), lit.entries);
}

inline ResidueSet parse_set(std::string_view text) { return to_residue_set(parse_set_literal(text)); }

inline std::string format_residues(std::span<const Residue> elems) {
    std::ostringstream os;
    for (std::size_t i = 0; i < elems.size(); ++i) os << (i ? "," : "") << elems[i];
    return os.str();
}

inline std::string format_set(const ResidueSet& s) {
    return "N=" + std::to_string(s.modulus()) + "; S=" + format_residues(s.elements());
}

/// Multiset form: entries with multiplicity 1 print bare, others as g:mult.
inline std::string format_element(const GroupRingElement& x) {
    std::ostringstream os;
    os << "N=" << x.order() << "; S=";
    bool first = true;
    for (Residue g = 0; g < x.order(); ++g) {
        if (x[g] == 0) continue;
        os << (first ? "" : ",") << g;
        if (x[g] != 1) os << ':' << x[g];
        first = false;
    }
    return os.str();
}

}  // namespace fuglede
