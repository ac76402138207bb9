#include "fuglede/harness/scan.hpp"
#include "fuglede/harness/suites.hpp"
#include "fuglede/set_literal.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace fuglede;
using namespace fuglede::harness;

namespace {

enum Exit { ok = 0, failure = 1, inconclusive = 2, usage = 3 };

// "N=12; S=0,3,6,9" stands alone; a bare list "0,3,6,9" takes N from --n
SetLiteral read_literal(const std::string& text, std::uint32_t n) {
    if (text.find('=') != std::string::npos) {
        auto lit = parse_set_literal(text);
        if (n && lit.modulus != n) throw ParseError("--n " + std::to_string(n) + " disagrees with " + text);
        return lit;
    }
    if (!n) throw ParseError("a bare residue list needs --n");
    SetLiteral lit;
    lit.modulus = n;
    lit.entries = parse_residue_list(text, n, &lit.has_multiplicities);
    return lit;
}

ResidueSet read_set(const std::string& text, std::uint32_t n) { return to_residue_set(read_literal(text, n)); }

Json residues(const ResidueSet& s) { return residues_json(s); }

int search_exit(SearchStatus s) {
    return s == SearchStatus::found ? ok : s == SearchStatus::none ? failure : inconclusive;
}

void print(const Json& j) { std::cout << j.dump() << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral sets and tiles in cyclic groups"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    std::uint32_t n = 0;
    std::vector<std::string> sets;
    std::uint64_t budget = default_budget;
    std::uint64_t seed = 1;
    std::uint64_t trials = 0;
    std::string out;

    auto add_common = [&](CLI::App* c, bool with_sets) {
        c->add_option("--n", n, "Modulus N");
        if (with_sets) c->add_option("--set", sets, "Set as 'N=12; S=0,3,6,9' or a residue list with --n")->required();
        c->add_option("--budget", budget, "Search node budget");
    };

    auto* zeros = app.add_subcommand("zeros", "Zero set Z_A of a set or multiset");
    add_common(zeros, true);

    auto* spectrum = app.add_subcommand("spectrum", "Search for a spectrum of A");
    add_common(spectrum, true);

    auto* tile = app.add_subcommand("tile", "Search for a tiling complement of A");
    add_common(tile, true);

    std::string kind_name = "spectral_pair";
    auto* verify = app.add_subcommand("verify-pair", "Check (A, B) and emit a certificate");
    add_common(verify, true);
    verify->add_option("--kind", kind_name, "spectral_pair or tiling_pair")
        ->check(CLI::IsMember({"spectral_pair", "tiling_pair"}));
    verify->add_option("--out", out, "Append the certificate to this file");

    auto* t1t2 = app.add_subcommand("t1t2", "Coven-Meyerowitz conditions and the spectrum they give");
    add_common(t1t2, true);

    ScanConfig scan_cfg;
    std::string mode = "exhaustive";
    std::uint64_t stop_after = 0;
    auto* scan = app.add_subcommand("scan", "Scan affine classes of subsets of Z_N");
    add_common(scan, false);
    scan->add_option("--mode", mode, "exhaustive or sample")->check(CLI::IsMember({"exhaustive", "sample"}));
    scan->add_option("--trials", trials, "Classes to sample in sample mode");
    scan->add_option("--seed", seed, "Sampling seed");
    scan->add_option("--out", out, "Directory for chunk files, records, certificates and summary");
    scan->add_option("--threads", scan_cfg.threads, "Worker threads");
    scan->add_option("--chunk-size", scan_cfg.chunk_size, "Classes per chunk");
    scan->add_option("--ceiling", scan_cfg.ceiling, "Largest class count allowed in exhaustive mode");
    scan->add_option("--stop-after-chunks", stop_after, "Stop after this many new chunks (0 = run to completion)");

    std::string suite;
    SuiteParams prm;
    auto* lemmas = app.add_subcommand("lemmas", "Run a property suite");
    add_common(lemmas, false);
    lemmas->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    lemmas->add_option("--trials", trials, "Trials or accepted instances");
    lemmas->add_option("--seed", seed, "Seed");
    lemmas->add_option("--p", prm.p, "Prime p (lemma27, lemma28)");
    lemmas->add_option("--exp", prm.n, "Exponent n (lemma27, lemma28)");
    lemmas->add_option("--t", prm.t, "Digit count t (lemma28)");
    lemmas->add_option("--max-size", prm.max_size, "Largest set size (lemma26, exhaustive lemma41)");
    lemmas->add_flag("--exhaustive", prm.exhaustive, "Enumerate instead of sampling (lemma41)");

    std::string certificate_file;
    auto* replay = app.add_subcommand("replay", "Re-verify certificates, one per line");
    replay->add_option("file", certificate_file, "Certificate file, or - for stdin")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*zeros) {
            const auto lit = read_literal(sets.front(), n);
            const auto x = to_group_ring(lit);
            const auto z = zero_set(x);
            Json j;
            j["N"] = lit.modulus;
            j["set"] = format_element(x);
            j["zero_set"] = z.elements();
            j["divisor_classes"] = z.divisor_classes();
            print(j);
            return ok;
        }
        if (*spectrum || *tile) {
            const auto a = read_set(sets.front(), n);
            const auto r = *spectrum ? spectrum_search(a, budget) : complement_search(a, budget);
            Json j;
            j["N"] = a.modulus();
            j["set"] = residues(a);
            j["status"] = to_string(r.status);
            j[*spectrum ? "spectrum" : "complement"] = r.value ? residues(*r.value) : Json();
            j["nodes"] = r.nodes;
            print(j);
            return search_exit(r.status);
        }
        if (*verify) {
            if (sets.size() != 2) throw ParseError("verify-pair needs exactly two --set options");
            const auto a = read_set(sets[0], n), b = read_set(sets[1], n ? n : a.modulus());
            const auto cert = make_certificate(parse_kind(kind_name), a, b);
            const auto line = to_json(cert).dump();
            if (!out.empty()) std::ofstream(out, std::ios::app) << line << '\n';
            std::cout << line << '\n';
            return replay_certificate(cert).verdict ? ok : failure;
        }
        if (*t1t2) {
            const auto a = read_set(sets.front(), n);
            const CharacterTable table(a.modulus());
            const auto d = t1_t2_check(a, table);
            const auto cm = cm_spectrum(a, table);
            Json j;
            j["N"] = a.modulus();
            j["set"] = residues(a);
            j["S_A"] = d.s_a;
            j["t1"] = d.t1_holds;
            j["t2"] = d.t2_holds;
            j["t2_violation"] = d.t2_violation ? Json(*d.t2_violation) : Json();
            j["cm_spectrum"] = to_string(cm.status);
            j["spectrum"] = cm.status == BuildStatus::built ? residues(*cm.value) : Json();
            print(j);
            return cm.status == BuildStatus::built ? ok : failure;
        }
        if (*scan) {
            if (!n) throw ParseError("scan needs --n");
            scan_cfg.modulus = n;
            scan_cfg.mode = parse_scan_mode(mode);
            scan_cfg.seed = seed;
            scan_cfg.budget = budget;
            if (trials) scan_cfg.sample_count = trials;
            if (!out.empty()) scan_cfg.out_dir = out;
            if (stop_after) scan_cfg.stop_after_chunks = stop_after;
            const auto rep = fuglede_scan(scan_cfg);
            auto j = rep.summary();
            j["chunks_done"] = rep.chunks_done;
            j["chunks_total"] = rep.chunks_total;
            print(j);
            for (const auto& c : rep.certificates) std::cerr << "counterexample candidate: " << to_json(c).dump() << '\n';
            for (const auto& r : rep.anomalies) std::cerr << "tile anomaly: " << to_json(r).dump() << '\n';
            if (rep.counterexamples || rep.tile_anomalies) return failure;
            return rep.clean() ? ok : inconclusive;
        }
        if (*lemmas) {
            prm.modulus = n;
            prm.seed = seed;
            prm.budget = budget;
            if (trials) prm.trials = trials;
            const auto rep = run_suite(suite, prm);
            print(rep.to_json());
            if (rep.failed) return failure;
            return rep.inconclusive || rep.instances == 0 ? inconclusive : ok;
        }
        if (*replay) {
            std::ifstream file;
            if (certificate_file != "-") {
                file.open(certificate_file);
                if (!file) throw ParseError("cannot open " + certificate_file);
            }
            std::istream& in = certificate_file == "-" ? std::cin : file;
            bool all = true;
            std::size_t count = 0;
            for (std::string line; std::getline(in, line);) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                const auto cert = parse_certificate(line);
                const auto r = replay_certificate(cert);
                Json j;
                j["N"] = cert.modulus;
                j["kind"] = to_string(cert.kind);
                j["reproduced"] = r.reproduced;
                j["verdict"] = r.verdict;
                print(j);
                all = all && r.reproduced;
                ++count;
            }
            if (count == 0) throw ParseError("no certificates in " + certificate_file);
            return all ? ok : failure;
        }
    } catch (const fuglede::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}
