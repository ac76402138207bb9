#pragma once

// Fuglede scans over affine classes of subsets of Z_N (N <= 64).
//
// Classes are listed in ascending canonical-mask order, cut into fixed-size chunks
// and evaluated chunk by chunk. With an output directory every chunk appends its
// records to chunks/chunk-NNNNNN.jsonl and leaves a .done marker when finished, so
// a rerun skips finished chunks and the records already present in a partial one.
// The merged records.jsonl and summary.json depend only on the scan parameters.

#include "fuglede/harness/records.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>
#include <unordered_set>

namespace fuglede::harness {

enum class ScanMode { exhaustive, sample };

inline const char* to_string(ScanMode m) { return m == ScanMode::exhaustive ? "exhaustive" : "sample"; }

inline ScanMode parse_scan_mode(const std::string& s) {
    if (s == "exhaustive") return ScanMode::exhaustive;
    if (s == "sample") return ScanMode::sample;
    throw ParseError("scan mode must be exhaustive or sample, got '" + s + "'");
}

struct ScanConfig {
    std::uint32_t modulus = 0;
    ScanMode mode = ScanMode::exhaustive;
    std::uint64_t sample_count = 10'000;
    std::uint64_t seed = 1;
    std::uint64_t budget = default_budget;
    double ceiling = 1e7;  // largest estimated class count allowed in exhaustive mode
    std::uint64_t chunk_size = 1 << 16;
    unsigned threads = 1;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::uint64_t> stop_after_chunks;  // leave the scan unfinished after this many chunks
    bool keep_records = false;
};

class ScanError : public Error {
public:
    using Error::Error;
};

/// 2^N / (N phi(N)), the class count when almost every orbit is free.
inline double estimated_class_count(std::uint32_t n) {
    return std::ldexp(1.0, static_cast<int>(n)) / (double(n) * euler_phi(n));
}

/// Canonical masks of every class, except sizes 1 and N, ascending.
/// Walks odd masks upward; the first unseen mask of an orbit is its least member.
inline std::vector<std::uint64_t> exhaustive_classes(const AffineMaskGroup& g) {
    const auto n = g.modulus();
    if (n > 40) throw ScanError("exhaustive enumeration needs N <= 40");
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    std::vector<std::uint64_t> seen((half + 63) / 64, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t idx = 0; idx < half; ++idx) {
        const auto word = seen[idx >> 6];
        if (word == ~std::uint64_t{0}) {
            idx |= 63;
            continue;
        }
        if (word >> (idx & 63) & 1) continue;
        const std::uint64_t mask = idx << 1 | 1;
        g.for_each_image_with_zero(mask, [&](std::uint64_t m) { seen[m >> 7] |= std::uint64_t{1} << (m >> 1 & 63); });
        const auto size = std::popcount(mask);
        if (size > 1 && static_cast<std::uint32_t>(size) < n) out.push_back(mask);
    }
    return out;
}

/// Uniform random subsets from mt19937_64 (raw 64-bit draws), canonicalized and
/// deduplicated until `count` classes are collected or draws run out.
inline std::vector<std::uint64_t> sample_classes(const AffineMaskGroup& g, std::uint64_t count, std::uint64_t seed) {
    const auto n = g.modulus();
    std::mt19937_64 rng(seed);
    std::unordered_set<std::uint64_t> found;
    found.reserve(count * 2);
    const std::uint64_t max_draws = count * 64 + 1024;
    for (std::uint64_t draw = 0; draw < max_draws && found.size() < count; ++draw) {
        const auto m = rng() & g.full();
        const auto size = std::popcount(m);
        if (size < 2 || static_cast<std::uint32_t>(size) == n) continue;
        found.insert(g.canonical(m));
    }
    std::vector<std::uint64_t> out(found.begin(), found.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// Spectrum and complement searches plus T1/T2 for one canonical class.
inline ScanRecord evaluate_class(const ResidueSet& a, const CharacterTable& table, std::uint64_t budget) {
    ScanRecord r;
    r.set = a;
    const auto sr = spectrum_search(zero_set(a, table), a.size(), budget);
    r.has_spectrum = from_search(sr.status);
    r.spectrum_nodes = sr.nodes;
    r.spectrum = sr.value;
    const auto cr = complement_search(a, budget);
    r.tiles = from_search(cr.status);
    r.complement_nodes = cr.nodes;
    r.complement = cr.value;
    const auto d = t1_t2_check(a, table);
    r.t1 = d.t1_holds;
    r.t2 = d.t2_holds;
    if (r.tiles == Tristate::yes) r.cm = cm_spectrum(a, table).status;
    return r;
}

struct ScanReport {
    ScanConfig config;
    bool complete = false;
    std::uint64_t chunks_total = 0;
    std::uint64_t chunks_done = 0;
    std::uint64_t classes = 0;
    std::uint64_t spectral = 0;
    std::uint64_t tiles = 0;
    std::uint64_t spectral_and_tile = 0;
    std::uint64_t inconclusive = 0;
    std::uint64_t counterexamples = 0;
    std::uint64_t tile_anomalies = 0;
    std::uint64_t max_spectrum_nodes = 0;
    std::uint64_t max_complement_nodes = 0;
    std::vector<Certificate> certificates;  // one per counterexample candidate
    std::vector<ScanRecord> anomalies;      // tiles failing T1, T2 or the spectrum construction
    std::vector<ScanRecord> records;        // all records, when keep_records is set

    void add(const ScanRecord& r) {
        ++classes;
        spectral += r.has_spectrum == Tristate::yes;
        tiles += r.tiles == Tristate::yes;
        spectral_and_tile += r.has_spectrum == Tristate::yes && r.tiles == Tristate::yes;
        inconclusive += !r.conclusive();
        max_spectrum_nodes = std::max(max_spectrum_nodes, r.spectrum_nodes);
        max_complement_nodes = std::max(max_complement_nodes, r.complement_nodes);
        if (r.counterexample()) {
            ++counterexamples;
            const auto seed = config.mode == ScanMode::sample ? std::optional(config.seed) : std::nullopt;
            certificates.push_back(r.tiles == Tristate::yes
                                       ? make_certificate(CertificateKind::non_spectral_tile_candidate, r.set, *r.complement, seed)
                                       : make_certificate(CertificateKind::non_tile_spectral_candidate, r.set, *r.spectrum, seed));
        }
        if (r.tile_anomaly()) {
            ++tile_anomalies;
            anomalies.push_back(r);
        }
        if (config.keep_records) records.push_back(r);
    }

    /// Folds in the tally of a later chunk.
    void absorb(ScanReport&& o) {
        classes += o.classes;
        spectral += o.spectral;
        tiles += o.tiles;
        spectral_and_tile += o.spectral_and_tile;
        inconclusive += o.inconclusive;
        counterexamples += o.counterexamples;
        tile_anomalies += o.tile_anomalies;
        max_spectrum_nodes = std::max(max_spectrum_nodes, o.max_spectrum_nodes);
        max_complement_nodes = std::max(max_complement_nodes, o.max_complement_nodes);
        std::move(o.certificates.begin(), o.certificates.end(), std::back_inserter(certificates));
        std::move(o.anomalies.begin(), o.anomalies.end(), std::back_inserter(anomalies));
        std::move(o.records.begin(), o.records.end(), std::back_inserter(records));
    }

    bool clean() const { return complete && counterexamples == 0 && tile_anomalies == 0 && inconclusive == 0; }

    Json summary() const {
        Json j;
        j["N"] = config.modulus;
        j["mode"] = to_string(config.mode);
        j["seed"] = config.seed;
        j["sample_count"] = config.mode == ScanMode::sample ? Json(config.sample_count) : Json();
        j["budget"] = config.budget;
        j["complete"] = complete;
        j["classes"] = classes;
        j["spectral"] = spectral;
        j["tiles"] = tiles;
        j["spectral_and_tile"] = spectral_and_tile;
        j["inconclusive"] = inconclusive;
        j["counterexamples"] = counterexamples;
        j["tile_anomalies"] = tile_anomalies;
        j["max_spectrum_nodes"] = max_spectrum_nodes;
        j["max_complement_nodes"] = max_complement_nodes;
        j["tool_version"] = tool_version;
        return j;
    }
};

namespace detail {

inline Json manifest(const ScanConfig& c) {
    Json j;
    j["N"] = c.modulus;
    j["mode"] = to_string(c.mode);
    j["seed"] = c.seed;
    j["sample_count"] = c.sample_count;
    j["budget"] = c.budget;
    j["chunk_size"] = c.chunk_size;
    j["tool_version"] = tool_version;
    return j;
}

inline std::string chunk_name(std::uint64_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "chunk-%06llu", static_cast<unsigned long long>(k));
    return buf;
}

/// Records in a chunk file; a final line without newline or that fails to parse is dropped.
/// The file is rewritten to hold exactly the kept lines.
inline std::vector<ScanRecord> load_chunk(const std::filesystem::path& file) {
    std::vector<ScanRecord> out;
    if (!std::filesystem::exists(file)) return out;
    std::ifstream in(file, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::string kept;
    std::size_t pos = 0;
    while (pos < content.size()) {
        const auto nl = content.find('\n', pos);
        if (nl == std::string::npos) break;
        const auto line = content.substr(pos, nl - pos);
        try {
            out.push_back(scan_record_from_json(Json::parse(line)));
        } catch (const std::exception&) {
            break;
        }
        kept += line;
        kept += '\n';
        pos = nl + 1;
    }
    if (kept.size() != content.size()) {
        std::ofstream rewrite(file, std::ios::binary | std::ios::trunc);
        rewrite << kept;
    }
    return out;
}

}  // namespace detail

inline std::vector<std::uint64_t> scan_classes(const ScanConfig& cfg, const AffineMaskGroup& g) {
    if (cfg.mode == ScanMode::exhaustive) {
        if (estimated_class_count(cfg.modulus) > cfg.ceiling)
            throw ScanError("exhaustive scan of Z_" + std::to_string(cfg.modulus) + " exceeds the class ceiling");
        return exhaustive_classes(g);
    }
    return sample_classes(g, cfg.sample_count, cfg.seed);
}

inline ScanReport fuglede_scan(const ScanConfig& cfg) {
    namespace fs = std::filesystem;
    if (cfg.modulus < 2 || cfg.modulus > 64) throw ScanError("scan modulus must lie in [2, 64]");
    if (cfg.chunk_size == 0) throw ScanError("chunk size must be positive");
    if (cfg.mode == ScanMode::exhaustive && estimated_class_count(cfg.modulus) > cfg.ceiling)
        throw ScanError("exhaustive scan of Z_" + std::to_string(cfg.modulus) + " exceeds the class ceiling");

    const AffineMaskGroup group(cfg.modulus);
    const CharacterTable table(cfg.modulus);
    const auto classes = scan_classes(cfg, group);
    const std::uint64_t chunks = (classes.size() + cfg.chunk_size - 1) / cfg.chunk_size;

    fs::path chunk_dir;
    if (cfg.out_dir) {
        fs::create_directories(*cfg.out_dir / "chunks");
        chunk_dir = *cfg.out_dir / "chunks";
        const auto manifest_path = *cfg.out_dir / "scan.json";
        const auto expected = detail::manifest(cfg).dump();
        if (fs::exists(manifest_path)) {
            std::ifstream in(manifest_path);
            std::string existing;
            std::getline(in, existing);
            if (existing != expected) throw ScanError("output directory holds a different scan");
        } else {
            std::ofstream(manifest_path) << expected << '\n';
        }
    }

    std::vector<ScanReport> tallies(chunks);
    std::vector<char> finished(chunks, 0);
    std::atomic<std::uint64_t> next{0}, claimed{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto chunk_file = [&](std::uint64_t k, const char* ext) { return chunk_dir / (detail::chunk_name(k) + ext); };
    auto by_mask = [](const ScanRecord& x, const ScanRecord& y) { return x.set.mask() < y.set.mask(); };

    auto tally = [&](std::uint64_t k, std::vector<ScanRecord>&& recs) {
        std::sort(recs.begin(), recs.end(), by_mask);
        tallies[k].config = cfg;
        for (const auto& r : recs) tallies[k].add(r);
        finished[k] = 1;
    };

    auto run_chunk = [&](std::uint64_t k) {
        const auto begin = k * cfg.chunk_size;
        const auto end = std::min<std::uint64_t>(classes.size(), begin + cfg.chunk_size);
        std::vector<ScanRecord> recs;
        if (!cfg.out_dir) {
            for (auto i = begin; i < end; ++i)
                recs.push_back(evaluate_class(ResidueSet::from_mask(cfg.modulus, classes[i]), table, cfg.budget));
            tally(k, std::move(recs));
            return;
        }
        recs = detail::load_chunk(chunk_file(k, ".jsonl"));
        std::unordered_set<std::string> present;
        for (const auto& r : recs) present.insert(r.key());
        std::ofstream append(chunk_file(k, ".jsonl"), std::ios::binary | std::ios::app);
        for (auto i = begin; i < end; ++i) {
            const auto set = ResidueSet::from_mask(cfg.modulus, classes[i]);
            if (present.count(record_key(set))) continue;
            auto r = evaluate_class(set, table, cfg.budget);
            append << to_json(r).dump() << '\n' << std::flush;
            recs.push_back(std::move(r));
        }
        append.close();
        std::ofstream(chunk_file(k, ".done")) << "complete\n";
        tally(k, std::move(recs));
    };

    auto worker = [&] {
        try {
            for (;;) {
                const auto k = next.fetch_add(1);
                if (k >= chunks) return;
                if (cfg.out_dir && fs::exists(chunk_file(k, ".done"))) {
                    tally(k, detail::load_chunk(chunk_file(k, ".jsonl")));
                    continue;
                }
                if (cfg.stop_after_chunks && claimed.fetch_add(1) >= *cfg.stop_after_chunks) return;
                run_chunk(k);
            }
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };

    const unsigned threads = std::max(1U, cfg.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    ScanReport report;
    report.config = cfg;
    report.chunks_total = chunks;
    for (std::uint64_t k = 0; k < chunks; ++k) {
        if (!finished[k]) continue;
        ++report.chunks_done;
        report.absorb(std::move(tallies[k]));
    }
    report.complete = report.chunks_done == chunks;

    if (cfg.out_dir && report.complete) {
        std::ofstream records(*cfg.out_dir / "records.jsonl", std::ios::binary | std::ios::trunc);
        for (std::uint64_t k = 0; k < chunks; ++k) {
            auto recs = detail::load_chunk(chunk_file(k, ".jsonl"));
            std::sort(recs.begin(), recs.end(), by_mask);
            for (const auto& r : recs) records << to_json(r).dump() << '\n';
        }
        std::ofstream certs(*cfg.out_dir / "certificates.jsonl", std::ios::binary | std::ios::trunc);
        for (const auto& c : report.certificates) certs << to_json(c).dump() << '\n';
        std::ofstream(*cfg.out_dir / "summary.json", std::ios::binary | std::ios::trunc) << report.summary().dump(2) << '\n';
    }
    return report;
}

}  // namespace fuglede::harness
