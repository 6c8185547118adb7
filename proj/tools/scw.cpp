// scw - short-block channel-coding workbench CLI.
//
// Subcommands: construct, simulate, sweep, snr-search, bounds, rc-study.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "scw/analysis.hpp"
#include "scw/codes.hpp"
#include "scw/grand.hpp"
#include "scw/osd.hpp"
#include "scw/sim.hpp"

using namespace scw;

namespace {

constexpr std::uint64_t kCrc11Default = 0xE21;   // TS 38.212 gCRC11
constexpr std::uint64_t kCrc4Default = 0x13;     // x^4 + x + 1
constexpr std::uint64_t kPacConvDefault = 0x6D;  // taps {0,2,3,5,6}

struct CodeOpts {
    std::string file;
    std::string family;
    std::uint32_t n = 0, k = 0;
    double design_snr = std::numeric_limits<double>::quiet_NaN();
    std::string crc_poly;
    std::string conv_poly;
    std::uint32_t candidates = 100;
    double eval_snr = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t code_seed = 0;
    std::string rel_file;
    std::string keep_file;
};

void add_code_options(CLI::App* cmd, CodeOpts& o, bool allow_file) {
    if (allow_file) cmd->add_option("--code", o.file, "code file produced by `construct`");
    cmd->add_option("--family", o.family,
                    "ebch | polar | crc-polar | pac | random | random-greedy");
    cmd->add_option("--n", o.n, "block length");
    cmd->add_option("--k", o.k, "information length");
    cmd->add_option("--design-snr", o.design_snr,
                    "polar/PAC frozen-set design Es/N0 [dB] (default: z0 = 0.5)");
    cmd->add_option("--crc-poly", o.crc_poly,
                    "CRC polynomial with leading coefficient (default 0xE21)");
    cmd->add_option("--conv-poly", o.conv_poly, "PAC precoder taps (default 0x6D)");
    cmd->add_option("--candidates", o.candidates, "greedy candidates per column");
    cmd->add_option("--eval-snr", o.eval_snr,
                    "greedy union-bound SNR [dB] (default: NA at BLER 1e-4)");
    cmd->add_option("--code-seed", o.code_seed, "construction seed for random families");
    cmd->add_option("--rel-file", o.rel_file,
                    "reliability sequence file (leaf indices, most reliable first)");
    cmd->add_option("--keep-file", o.keep_file,
                    "kept coded positions for shortened polar constructions");
}

std::vector<std::uint32_t> read_u32_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    std::vector<std::uint32_t> v;
    std::uint32_t x;
    while (is >> x) v.push_back(x);
    return v;
}

CodeFamily family_from_cli(const std::string& s) {
    if (s == "ebch") return CodeFamily::Ebch;
    if (s == "polar") return CodeFamily::Polar;
    if (s == "crc-polar") return CodeFamily::CrcPolar;
    if (s == "pac") return CodeFamily::Pac;
    if (s == "random") return CodeFamily::Random;
    if (s == "random-greedy") return CodeFamily::RandomGreedy;
    throw ConfigInvalid("unknown family: " + s);
}

// shortened polar: freeze every u index whose coded position is dropped;
// valid when the dropped set is closed under bit-superset
Code build_shortened_polar(CodeFamily fam, std::uint32_t n_mother, std::uint32_t k,
                           const CodeParams& params, const std::vector<std::uint32_t>& keep) {
    std::vector<char> kept(n_mother, 0);
    for (std::uint32_t c : keep) {
        if (c >= n_mother) throw ConfigInvalid("keep-file: index out of range");
        kept[c] = 1;
    }
    std::vector<std::uint32_t> dropped;
    for (std::uint32_t i = 0; i < n_mother; ++i)
        if (!kept[i]) dropped.push_back(i);
    for (std::uint32_t j : dropped)
        for (std::uint32_t b = 0; (1u << b) < n_mother; ++b) {
            const std::uint32_t sup = j | (1u << b);
            if (sup != j && sup < n_mother && kept[sup])
                throw UnsupportedParams(
                    "keep-file: dropped set must be closed under bit-superset");
        }

    CodeParams p = params;
    // dropped u indices must be frozen: rank them last among the candidates
    std::vector<std::uint32_t> rel = p.reliability;
    if (rel.empty()) {
        const double z0 = p.design_es_n0_db ? bhattacharyya_z0(*p.design_es_n0_db) : 0.5;
        auto z = bhattacharyya(n_mother, z0);
        rel.resize(n_mother);
        std::iota(rel.begin(), rel.end(), 0u);
        std::sort(rel.begin(), rel.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (z[a] != z[b]) return z[a] < z[b];
            return a < b;
        });
    }
    std::vector<std::uint32_t> filtered;
    for (std::uint32_t idx : rel)
        if (kept[idx]) filtered.push_back(idx);
    for (std::uint32_t idx : rel)
        if (!kept[idx]) filtered.push_back(idx);
    p.reliability = filtered;

    Code mother = fam == CodeFamily::CrcPolar ? attach_crc(n_mother, k, p.crc_poly, p)
                                              : build_polar(n_mother, k, p);
    PolarDescriptor desc = *mother.descriptor;
    desc.pinned = dropped;

    std::vector<std::uint32_t> keep_sorted = keep;
    std::sort(keep_sorted.begin(), keep_sorted.end());
    Code code = puncture(mother, keep_sorted);  // dropped columns are all-zero
    code.descriptor = std::move(desc);
    code.spec.params.keep = keep_sorted;
    return code;
}

Code make_code(const CodeOpts& o) {
    if (!o.file.empty()) return load_code_file(o.file);
    if (o.family.empty() || o.n == 0 || o.k == 0)
        throw ConfigInvalid("need --code or --family/--n/--k");
    CodeSpec spec;
    spec.family = family_from_cli(o.family);
    spec.n = o.n;
    spec.k = o.k;
    spec.params.seed = o.code_seed;
    spec.params.candidates_per_step = o.candidates;
    if (!std::isnan(o.design_snr)) spec.params.design_es_n0_db = o.design_snr;
    if (!o.crc_poly.empty())
        spec.params.crc_poly = std::stoull(o.crc_poly, nullptr, 0);
    else if (spec.family == CodeFamily::CrcPolar)
        spec.params.crc_poly = kCrc11Default;
    if (!o.conv_poly.empty())
        spec.params.conv_poly = std::stoull(o.conv_poly, nullptr, 0);
    else if (spec.family == CodeFamily::Pac)
        spec.params.conv_poly = kPacConvDefault;
    if (!o.rel_file.empty()) spec.params.reliability = read_u32_file(o.rel_file);
    if (spec.family == CodeFamily::RandomGreedy) {
        spec.params.eval_es_n0_db =
            std::isnan(o.eval_snr) ? na_snr_for_bler(spec.n, spec.k, 1e-4) : o.eval_snr;
    }
    if (!o.keep_file.empty()) {
        if (spec.family != CodeFamily::Polar && spec.family != CodeFamily::CrcPolar)
            throw ConfigInvalid("--keep-file applies to polar family constructions");
        const auto keep = read_u32_file(o.keep_file);
        // spec.n names the shortened length; the mother is the next power of two
        std::uint32_t mother = 1;
        while (mother < spec.n) mother <<= 1;
        if (keep.size() != spec.n) throw ConfigInvalid("keep-file size must equal n");
        return build_shortened_polar(spec.family, mother, spec.k, spec.params, keep);
    }
    return build_code(spec);
}

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::uint32_t workers = 1;
    std::string out_dir = ".";
    std::string tag;
};

std::string out_prefix(const GlobalOpts& g, const std::string& fallback) {
    std::filesystem::create_directories(g.out_dir);
    return (std::filesystem::path(g.out_dir) / (g.tag.empty() ? fallback : g.tag)).string();
}

void print_records(const std::vector<SimRecord>& recs) {
    for (const auto& r : recs) {
        std::printf(
            "  Es/N0 %7.3f dB  trials %10llu  errors %6llu  BLER %.4g  ML-bound %.4g  "
            "ops/bit %.4g  queries %.4g\n",
            r.es_n0_db, static_cast<unsigned long long>(r.trials),
            static_cast<unsigned long long>(r.errors), r.bler, r.ml_bound,
            r.mean_ops_per_info_bit, r.mean_queries);
    }
}

int run(int argc, char** argv) {
    CLI::App app{"short-block channel-coding workbench"};
    app.set_config("--config", "", "config file with long-option values");
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master seed")->capture_default_str();
    app.add_option("--workers", g.workers, "worker threads per point")->capture_default_str();
    app.add_option("--out-dir", g.out_dir, "output directory")->capture_default_str();
    app.add_option("--tag", g.tag, "output file name stem");

    // construct ------------------------------------------------------------
    auto* c_cmd = app.add_subcommand("construct", "build a code and write its file");
    CodeOpts c_code;
    add_code_options(c_cmd, c_code, false);
    std::string c_out;
    c_cmd->add_option("--out", c_out, "output path (default <out-dir>/<family>_<n>_<k>.code)");

    // shared simulation options ----------------------------------------------
    struct SimOpts {
        CodeOpts code;
        std::vector<std::string> decoders;
        std::uint64_t stop_errors = 100;
        std::uint64_t max_trials = 100'000'000;
        std::uint64_t op_cap = 0;
    };
    auto add_sim_options = [](CLI::App* cmd, SimOpts& s, bool multi_decoder) {
        add_code_options(cmd, s.code, true);
        auto* d = cmd->add_option("--decoder", s.decoders,
                                  "decoder id, e.g. osd:order=4 | pb-osd:order=2 | "
                                  "grand:max-queries=1000000000 | sc | scl:L=32 | "
                                  "scs:L=64 | sq:L=64");
        d->required();
        if (!multi_decoder) d->expected(1);
        cmd->add_option("--stop-errors", s.stop_errors)->capture_default_str();
        cmd->add_option("--max-trials", s.max_trials)->capture_default_str();
        cmd->add_option("--op-cap", s.op_cap, "per-decode operation cap (0 = off)");
    };

    auto* s_cmd = app.add_subcommand("simulate", "Monte-Carlo BLER at one SNR");
    SimOpts s_opts;
    add_sim_options(s_cmd, s_opts, false);
    double s_snr = 0.0;
    s_cmd->add_option("--snr", s_snr, "Es/N0 [dB]")->required();

    auto* w_cmd = app.add_subcommand("sweep", "BLER over an SNR grid");
    SimOpts w_opts;
    add_sim_options(w_cmd, w_opts, false);
    double w_from = 0.0, w_to = 4.0, w_step = 0.5;
    std::string w_list;
    double w_floor = 1e-4;
    w_cmd->add_option("--snr-from", w_from)->capture_default_str();
    w_cmd->add_option("--snr-to", w_to)->capture_default_str();
    w_cmd->add_option("--snr-step", w_step)->capture_default_str();
    w_cmd->add_option("--snr-list", w_list, "comma-separated SNR values (overrides from/to)");
    w_cmd->add_option("--floor", w_floor, "stop once measured BLER is below this")
        ->capture_default_str();

    auto* t_cmd = app.add_subcommand("snr-search",
                                     "SNR required to reach a target BLER; repeated "
                                     "--decoder builds a complexity polyline");
    SimOpts t_opts;
    add_sim_options(t_cmd, t_opts, true);
    double t_target = 1e-4, t_tol = 0.05;
    t_cmd->add_option("--target", t_target)->capture_default_str();
    t_cmd->add_option("--tol-db", t_tol)->capture_default_str();

    auto* b_cmd = app.add_subcommand("bounds", "normal-approximation BLER curve");
    std::uint32_t b_n = 0, b_k = 0;
    double b_from = 0.0, b_to = 6.0, b_step = 0.25;
    b_cmd->add_option("--n", b_n)->required();
    b_cmd->add_option("--k", b_k)->required();
    b_cmd->add_option("--snr-from", b_from)->capture_default_str();
    b_cmd->add_option("--snr-to", b_to)->capture_default_str();
    b_cmd->add_option("--snr-step", b_step)->capture_default_str();

    auto* r_cmd = app.add_subcommand("rc-study",
                                     "rate-compatible family study: SNR at target BLER "
                                     "per family and length");
    std::uint32_t r_k = 16;
    std::string r_lengths = "20,28,36,48,64";
    std::string r_families = "greedy,random,ebch,polar,crc4polar";
    double r_target = 1e-3, r_tol = 0.05;
    std::uint32_t r_candidates = 100;
    std::uint64_t r_stop_errors = 100, r_max_trials = 100'000'000;
    std::uint64_t r_code_seed = 0;
    r_cmd->add_option("--k", r_k)->capture_default_str();
    r_cmd->add_option("--lengths", r_lengths)->capture_default_str();
    r_cmd->add_option("--families", r_families)->capture_default_str();
    r_cmd->add_option("--target", r_target)->capture_default_str();
    r_cmd->add_option("--tol-db", r_tol)->capture_default_str();
    r_cmd->add_option("--candidates", r_candidates)->capture_default_str();
    r_cmd->add_option("--stop-errors", r_stop_errors)->capture_default_str();
    r_cmd->add_option("--max-trials", r_max_trials)->capture_default_str();
    r_cmd->add_option("--code-seed", r_code_seed)->capture_default_str();

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    RunControl ctl;
    ctl.master_seed = g.seed;
    ctl.workers = g.workers;

    if (*c_cmd) {
        Code code = make_code(c_code);
        std::string path = c_out;
        if (path.empty()) path = out_prefix(g, code_id(code) + ".code");
        save_code_file(code, path);
        std::printf("wrote %s (n=%u k=%u", path.c_str(), code.n(), code.k());
        if (code.dh) std::printf(" dh=%u", *code.dh);
        std::printf(")\n");
        return 0;
    }

    if (*s_cmd) {
        Code code = make_code(s_opts.code);
        BoundDecoder dec =
            bind_decoder(code, DecoderSpec::parse(s_opts.decoders[0]), s_opts.op_cap);
        ctl.stop_errors = s_opts.stop_errors;
        ctl.max_trials = s_opts.max_trials;
        SimRecord rec = run_bler_point(code, dec, s_snr, ctl);
        print_records({rec});
        EmitMeta meta{"simulate", code_id(code), dec.id,      g.seed,
                      ctl.stop_errors, ctl.max_trials, s_opts.op_cap};
        emit_files({rec}, meta, out_prefix(g, "point_" + code_id(code)));
        return 0;
    }

    if (*w_cmd) {
        Code code = make_code(w_opts.code);
        BoundDecoder dec =
            bind_decoder(code, DecoderSpec::parse(w_opts.decoders[0]), w_opts.op_cap);
        ctl.stop_errors = w_opts.stop_errors;
        ctl.max_trials = w_opts.max_trials;
        ctl.bler_floor = w_floor;
        std::vector<double> grid;
        if (!w_list.empty()) {
            std::stringstream ss(w_list);
            std::string tok;
            while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
        } else {
            for (double s = w_from; s <= w_to + 1e-9; s += w_step) grid.push_back(s);
        }
        auto recs = sweep(code, dec, grid, ctl);
        print_records(recs);
        EmitMeta meta{"sweep",        code_id(code),  dec.id,       g.seed,
                      ctl.stop_errors, ctl.max_trials, w_opts.op_cap};
        emit_files(recs, meta, out_prefix(g, "sweep_" + code_id(code)));
        return 0;
    }

    if (*t_cmd) {
        Code code = make_code(t_opts.code);
        ctl.stop_errors = t_opts.stop_errors;
        ctl.max_trials = t_opts.max_trials;
        // one polyline row per decoder: (ops/info bit at the solution, SNR)
        const std::string prefix = out_prefix(g, "snr_search_" + code_id(code));
        std::ofstream csv(prefix + ".csv");
        if (!csv) throw IoError("cannot write " + prefix + ".csv");
        csv << "# scw-snrsearch v1 version=\"" << kArtifactVersion
            << "\" code=" << code_id(code) << " target=" << t_target << " seed=" << g.seed
            << "\n";
        csv << "decoder,es_n0_db,mean_ops_per_info_bit,mean_queries,trials\n";
        for (const std::string& ds : t_opts.decoders) {
            BoundDecoder dec = bind_decoder(code, DecoderSpec::parse(ds), t_opts.op_cap);
            std::vector<SimRecord> probes;
            const double snr = snr_for_target_bler(code, dec, t_target, t_tol, ctl, &probes);
            RunControl at = ctl;
            at.point_index = 0xA11;
            SimRecord rec = run_bler_point(code, dec, snr, at);
            std::printf("%s: SNR@%.3g = %.3f dB (ops/bit %.4g)\n", dec.id.c_str(), t_target,
                        snr, rec.mean_ops_per_info_bit);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", snr);
            csv << dec.id << ',' << buf << ',' << rec.mean_ops_per_info_bit << ','
                << rec.mean_queries << ',' << rec.trials << "\n";
        }
        return 0;
    }

    if (*b_cmd) {
        const std::string prefix = out_prefix(g, "na_bounds");
        std::ofstream csv(prefix + ".csv");
        if (!csv) throw IoError("cannot write " + prefix + ".csv");
        csv << "# scw-bounds v1 version=\"" << kArtifactVersion << "\" n=" << b_n
            << " k=" << b_k << "\n";
        csv << "es_n0_db,na_bler\n";
        for (double s = b_from; s <= b_to + 1e-9; s += b_step) {
            const double na = normal_approx_bler(b_n, b_k, s);
            char b1[64], b2[64];
            std::snprintf(b1, sizeof(b1), "%.17g", s);
            std::snprintf(b2, sizeof(b2), "%.17g", na);
            csv << b1 << ',' << b2 << "\n";
            std::printf("  %7.3f dB  NA %.4g\n", s, na);
        }
        return 0;
    }

    if (*r_cmd) {
        std::vector<std::uint32_t> lengths;
        {
            std::stringstream ss(r_lengths);
            std::string tok;
            while (std::getline(ss, tok, ',')) lengths.push_back(std::stoul(tok));
        }
        auto eval_at = [&](std::uint32_t n) { return na_snr_for_bler(n, r_k, r_target); };
        ctl.stop_errors = r_stop_errors;
        ctl.max_trials = r_max_trials;

        const std::string prefix = out_prefix(g, "rc_study");
        std::ofstream csv(prefix + ".csv");
        if (!csv) throw IoError("cannot write " + prefix + ".csv");
        csv << "# scw-rcstudy v1 version=\"" << kArtifactVersion << "\" k=" << r_k
            << " target=" << r_target << " seed=" << g.seed << "\n";
        csv << "family,n,k,es_n0_db\n";

        std::stringstream fs(r_families);
        std::string fam;
        while (std::getline(fs, fam, ',')) {
            std::vector<Code> codes;
            if (fam == "random") {
                // independent pure-random codes at each length (reference curve)
                for (std::uint32_t n : lengths)
                    codes.push_back(build_random(n, r_k, r_code_seed));
            } else {
                CodeSpec spec;
                spec.k = r_k;
                spec.n = lengths.back();
                spec.params.seed = r_code_seed;
                spec.params.candidates_per_step = r_candidates;
                if (fam == "greedy") {
                    spec.family = CodeFamily::RandomGreedy;
                } else if (fam == "ebch") {
                    spec.family = CodeFamily::Ebch;
                } else if (fam == "polar") {
                    spec.family = CodeFamily::Polar;
                } else if (fam == "crc4polar") {
                    spec.family = CodeFamily::CrcPolar;
                    spec.params.crc_poly = kCrc4Default;
                } else {
                    throw ConfigInvalid("unknown rc-study family: " + fam);
                }
                RcFamily rc = build_rc(spec, lengths, eval_at);
                for (std::size_t li = 0; li < lengths.size(); ++li)
                    codes.push_back(rc.code_at(li));
            }
            for (Code& code : codes) {
                int order = code.dh ? order_for_ml(*code.dh) : 3;
                order = std::min<int>(order + 1, code.k());  // one past the ML order
                BoundDecoder dec = bind_decoder(
                    code, DecoderSpec::parse("osd:order=" + std::to_string(order)));
                const double snr = snr_for_target_bler(code, dec, r_target, r_tol, ctl);
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%.17g", snr);
                csv << fam << ',' << code.n() << ',' << r_k << ',' << buf << "\n";
                std::printf("rc %-10s n=%2u  SNR@%.3g = %.3f dB\n", fam.c_str(), code.n(),
                            r_target, snr);
            }
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        nlohmann::ordered_json j;
        j["error"] = e.code;
        j["message"] = e.what();
        std::cerr << j.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        nlohmann::ordered_json j;
        j["error"] = "Unhandled";
        j["message"] = e.what();
        std::cerr << j.dump() << "\n";
        return 1;
    }
}
