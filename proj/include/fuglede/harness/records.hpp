#pragma once

// Line-delimited JSON records: certificates (replayable verdicts) and scan records.

#include "fuglede/tiling.hpp"

#include <json.hpp>

#include <map>

namespace fuglede::harness {

using Json = nlohmann::ordered_json;

inline constexpr const char* tool_version = "fuglede 1.0.0";

enum class CertificateKind { spectral_pair, tiling_pair, non_spectral_tile_candidate, non_tile_spectral_candidate };

inline const char* to_string(CertificateKind k) {
    switch (k) {
    case CertificateKind::spectral_pair: return "spectral_pair";
    case CertificateKind::tiling_pair: return "tiling_pair";
    case CertificateKind::non_spectral_tile_candidate: return "non_spectral_tile_candidate";
    case CertificateKind::non_tile_spectral_candidate: return "non_tile_spectral_candidate";
    }
    return "?";
}

inline CertificateKind parse_kind(const std::string& s) {
    for (auto k : {CertificateKind::spectral_pair, CertificateKind::tiling_pair,
                   CertificateKind::non_spectral_tile_candidate, CertificateKind::non_tile_spectral_candidate})
        if (s == to_string(k)) return k;
    throw ParseError("unknown certificate kind '" + s + "'");
}

struct Certificate {
    std::uint32_t modulus = 0;
    CertificateKind kind = CertificateKind::spectral_pair;
    ResidueSet primary;
    ResidueSet partner;
    std::map<std::string, bool> checks;
    std::string version = tool_version;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Verifier-only checks for a certificate kind. No searches run here.
inline std::map<std::string, bool> certificate_checks(CertificateKind kind, const ResidueSet& a, const ResidueSet& b) {
    const CharacterTable table(a.modulus());
    std::map<std::string, bool> c;
    auto t1t2 = [&] {
        const auto d = t1_t2_check(a, table);
        c["t1"] = d.t1_holds;
        c["t2"] = d.t2_holds;
    };
    switch (kind) {
    case CertificateKind::spectral_pair:
        c["spectral"] = is_spectral_pair(a, b, table).is_pair;
        break;
    case CertificateKind::tiling_pair:
        c["tiling"] = is_tiling_pair(a, b, table).is_pair;
        break;
    case CertificateKind::non_spectral_tile_candidate:
        c["tiling"] = is_tiling_pair(a, b, table).is_pair;
        t1t2();
        c["cm_spectrum"] = cm_spectrum(a, table).status == BuildStatus::built;
        break;
    case CertificateKind::non_tile_spectral_candidate:
        c["spectral"] = is_spectral_pair(a, b, table).is_pair;
        t1t2();
        break;
    }
    return c;
}

inline Certificate make_certificate(CertificateKind kind, const ResidueSet& a, const ResidueSet& b,
                                    std::optional<std::uint64_t> seed = std::nullopt) {
    require_same_modulus(a.modulus(), b.modulus());
    Certificate cert;
    cert.modulus = a.modulus();
    cert.kind = kind;
    cert.primary = a;
    cert.partner = b;
    cert.checks = certificate_checks(kind, a, b);
    cert.seed = seed;
    return cert;
}

inline Json residues_json(const ResidueSet& s) { return Json(std::vector<Residue>(s.begin(), s.end())); }

inline Json to_json(const Certificate& c) {
    Json j;
    j["N"] = c.modulus;
    j["kind"] = to_string(c.kind);
    j["primary_set"] = residues_json(c.primary);
    j["partner_set"] = residues_json(c.partner);
    Json checks = Json::object();
    for (const auto& [k, v] : c.checks) checks[k] = v ? "pass" : "fail";
    j["checks"] = checks;
    j["tool_version"] = c.version;
    if (c.seed) j["seed"] = *c.seed;
    return j;
}

namespace detail {

inline ResidueSet residues_from_json(const Json& j, std::uint32_t n, const char* field) {
    if (!j.contains(field) || !j[field].is_array()) throw ParseError(std::string("missing residue list '") + field + "'");
    std::vector<Residue> e;
    for (const auto& x : j[field]) {
        if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= n)
            throw ParseError(std::string("bad residue in '") + field + "'");
        e.push_back(x.get<Residue>());
    }
    const ResidueSet s(n, e);
    if (s.size() != e.size()) throw ParseError(std::string("repeated residue in '") + field + "'");
    return s;
}

}  // namespace detail

inline Certificate certificate_from_json(const Json& j) {
    try {
        if (!j.is_object()) throw ParseError("certificate must be an object");
        Certificate c;
        if (!j.contains("tool_version") || j["tool_version"] != tool_version)
            throw ParseError("certificate version mismatch");
        if (!j.contains("N") || !j["N"].is_number_unsigned()) throw ParseError("missing modulus N");
        const auto n = j["N"].get<std::uint64_t>();
        if (n < 2 || n > 0xffffffffULL) throw ParseError("modulus out of range");
        c.modulus = static_cast<std::uint32_t>(n);
        if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError("missing kind");
        c.kind = parse_kind(j["kind"].get<std::string>());
        c.primary = detail::residues_from_json(j, c.modulus, "primary_set");
        c.partner = detail::residues_from_json(j, c.modulus, "partner_set");
        if (!j.contains("checks") || !j["checks"].is_object()) throw ParseError("missing checks");
        for (const auto& [k, v] : j["checks"].items()) {
            if (v != "pass" && v != "fail") throw ParseError("check '" + k + "' must be pass or fail");
            c.checks[k] = v == "pass";
        }
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        return c;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed certificate: ") + e.what());
    }
}

inline Certificate parse_certificate(const std::string& line) {
    Json j;
    try {
        j = Json::parse(line);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed certificate: ") + e.what());
    }
    return certificate_from_json(j);
}

struct Replay {
    bool reproduced = false;  // every recorded check recomputes to the same value
    bool verdict = false;     // reproduced and the kind's defining check passes
    std::map<std::string, bool> checks;
};

inline Replay replay_certificate(const Certificate& c) {
    if (c.primary.empty() || c.partner.empty()) throw ParseError("certificate sets must be nonempty");
    Replay r;
    r.checks = certificate_checks(c.kind, c.primary, c.partner);
    r.reproduced = r.checks == c.checks;
    const char* defining = (c.kind == CertificateKind::spectral_pair || c.kind == CertificateKind::non_tile_spectral_candidate)
                               ? "spectral"
                               : "tiling";
    r.verdict = r.reproduced && r.checks.at(defining);
    return r;
}

enum class Tristate { yes, no, inconclusive };

inline const char* to_string(Tristate t) {
    switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    case Tristate::inconclusive: return "inconclusive";
    }
    return "?";
}

inline Tristate from_search(SearchStatus s) {
    return s == SearchStatus::found ? Tristate::yes : s == SearchStatus::none ? Tristate::no : Tristate::inconclusive;
}

inline Tristate parse_tristate(const std::string& s) {
    for (auto t : {Tristate::yes, Tristate::no, Tristate::inconclusive})
        if (s == to_string(t)) return t;
    throw ParseError("bad yes/no/inconclusive value '" + s + "'");
}

/// FNV-1a over N and the canonical residues, as 16 hex digits.
inline std::string record_key(const ResidueSet& canonical) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint32_t v) {
        for (int b = 0; b < 4; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(canonical.modulus());
    for (auto x : canonical) mix(x);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct ScanRecord {
    ResidueSet set;  // canonical representative
    Tristate has_spectrum = Tristate::inconclusive;
    Tristate tiles = Tristate::inconclusive;
    std::uint64_t spectrum_nodes = 0;
    std::uint64_t complement_nodes = 0;
    std::optional<ResidueSet> spectrum;
    std::optional<ResidueSet> complement;
    bool t1 = false;
    bool t2 = false;
    std::optional<BuildStatus> cm;  // evaluated for tiles only

    std::uint32_t modulus() const { return set.modulus(); }
    std::string key() const { return record_key(set); }
    bool conclusive() const { return has_spectrum != Tristate::inconclusive && tiles != Tristate::inconclusive; }
    bool counterexample() const { return conclusive() && (has_spectrum == Tristate::yes) != (tiles == Tristate::yes); }
    // a tile must satisfy T1, T2 and yield a validated spectrum
    bool tile_anomaly() const {
        return tiles == Tristate::yes && (!t1 || !t2 || cm != BuildStatus::built);
    }

    friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

inline Json to_json(const ScanRecord& r) {
    Json j;
    j["key"] = r.key();
    j["N"] = r.modulus();
    j["set"] = residues_json(r.set);
    j["size"] = r.set.size();
    j["has_spectrum"] = to_string(r.has_spectrum);
    j["tiles"] = to_string(r.tiles);
    j["spectrum_nodes"] = r.spectrum_nodes;
    j["complement_nodes"] = r.complement_nodes;
    j["spectrum"] = r.spectrum ? residues_json(*r.spectrum) : Json();
    j["complement"] = r.complement ? residues_json(*r.complement) : Json();
    j["t1"] = r.t1;
    j["t2"] = r.t2;
    j["cm_spectrum"] = r.cm ? Json(to_string(*r.cm)) : Json();
    return j;
}

inline ScanRecord scan_record_from_json(const Json& j) {
    try {
        ScanRecord r;
        const auto n = j.at("N").get<std::uint32_t>();
        if (n < 2) throw ParseError("modulus out of range");
        r.set = detail::residues_from_json(j, n, "set");
        r.has_spectrum = parse_tristate(j.at("has_spectrum").get<std::string>());
        r.tiles = parse_tristate(j.at("tiles").get<std::string>());
        r.spectrum_nodes = j.at("spectrum_nodes").get<std::uint64_t>();
        r.complement_nodes = j.at("complement_nodes").get<std::uint64_t>();
        if (!j.at("spectrum").is_null()) r.spectrum = detail::residues_from_json(j, n, "spectrum");
        if (!j.at("complement").is_null()) r.complement = detail::residues_from_json(j, n, "complement");
        r.t1 = j.at("t1").get<bool>();
        r.t2 = j.at("t2").get<bool>();
        if (!j.at("cm_spectrum").is_null()) {
            const auto s = j.at("cm_spectrum").get<std::string>();
            bool known = false;
            for (auto b : {BuildStatus::built, BuildStatus::inapplicable, BuildStatus::construction_failure})
                if (s == to_string(b)) {
                    r.cm = b;
                    known = true;
                }
            if (!known) throw ParseError("bad cm_spectrum value '" + s + "'");
        }
        if (j.at("key") != r.key()) throw ParseError("record key does not match its set");
        return r;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed scan record: ") + e.what());
    }
}

}  // namespace fuglede::harness
