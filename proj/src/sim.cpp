#include "scw/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "scw/channel.hpp"
#include "scw/grand.hpp"
#include "scw/osd.hpp"
#include "scw/rng.hpp"
#include "scw/scfamily.hpp"

namespace scw {

const char* const kArtifactVersion = "scw 0.1.0";

namespace {

std::uint64_t parse_u64(const std::string& v) { return std::stoull(v, nullptr, 0); }

std::map<std::string, std::string> parse_kv(const std::string& s) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigInvalid("decoder params: expected key=value");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

}  // namespace

DecoderSpec DecoderSpec::parse(const std::string& s) {
    DecoderSpec d;
    const auto colon = s.find(':');
    const std::string name = s.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) kv = parse_kv(s.substr(colon + 1));

    if (name == "osd")
        d.kind = Kind::Osd;
    else if (name == "pb-osd")
        d.kind = Kind::PbOsd;
    else if (name == "grand")
        d.kind = Kind::Grand;
    else if (name == "grand-exact")
        d.kind = Kind::GrandExact;
    else if (name == "sc")
        d.kind = Kind::Sc;
    else if (name == "scl")
        d.kind = Kind::Scl;
    else if (name == "scs")
        d.kind = Kind::Scs;
    else if (name == "sq")
        d.kind = Kind::Sq;
    else
        throw ConfigInvalid("unknown decoder: " + name);

    for (const auto& [key, value] : kv) {
        if (key == "order")
            d.order = std::stoi(value);
        else if (key == "pb")
            d.pb_threshold = std::stod(value);
        else if (key == "max-queries")
            d.max_queries = parse_u64(value);
        else if (key == "L")
            d.list_size = static_cast<std::uint32_t>(parse_u64(value));
        else if (key == "stack")
            d.stack_cap = static_cast<std::uint32_t>(parse_u64(value));
        else if (key == "bias")
            d.bias = (value == "auto") ? std::numeric_limits<double>::quiet_NaN()
                                       : std::stod(value);
        else
            throw ConfigInvalid("unknown decoder parameter: " + key);
    }
    return d;
}

std::string DecoderSpec::id() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Osd: os << "osd:order=" << order; break;
        case Kind::PbOsd: os << "pb-osd:order=" << order << ",pb=" << pb_threshold; break;
        case Kind::Grand: os << "grand:max-queries=" << max_queries; break;
        case Kind::GrandExact: os << "grand-exact:max-queries=" << max_queries; break;
        case Kind::Sc: os << "sc"; break;
        case Kind::Scl: os << "scl:L=" << list_size; break;
        case Kind::Scs: os << "scs:L=" << list_size << ",stack=" << stack_cap; break;
        case Kind::Sq:
            os << "sq:L=" << list_size << ",stack=" << stack_cap << ",bias=";
            if (std::isnan(bias))
                os << "auto";
            else
                os << bias;
            break;
    }
    return os.str();
}

BoundDecoder bind_decoder(const Code& code, const DecoderSpec& spec, std::uint64_t op_cap) {
    BoundDecoder b;
    b.id = spec.id();
    switch (spec.kind) {
        case DecoderSpec::Kind::Osd:
        case DecoderSpec::Kind::PbOsd: {
            OsdConfig cfg;
            cfg.order = spec.order;
            if (cfg.order < 0) {
                if (!code.dh)
                    throw ConfigInvalid("osd: order unset and code has no known dh");
                cfg.order = order_for_ml(*code.dh);
            }
            cfg.variant =
                spec.kind == DecoderSpec::Kind::PbOsd ? OsdVariant::Pb : OsdVariant::Original;
            cfg.pb_threshold = spec.pb_threshold;
            cfg.op_cap = op_cap;
            b.id = (cfg.variant == OsdVariant::Pb)
                       ? "pb-osd:order=" + std::to_string(cfg.order)
                       : "osd:order=" + std::to_string(cfg.order);
            b.decode = [&code, cfg](const LlrVector& llr) { return osd_decode(code, llr, cfg); };
            break;
        }
        case DecoderSpec::Kind::Grand:
        case DecoderSpec::Kind::GrandExact: {
            GrandConfig cfg;
            cfg.max_queries = spec.max_queries;
            cfg.ordering = spec.kind == DecoderSpec::Kind::GrandExact
                               ? GrandOrdering::ExactLikelihood
                               : GrandOrdering::Logistic;
            cfg.op_cap = op_cap;
            b.decode = [&code, cfg](const LlrVector& llr) {
                return grand_decode(code, llr, cfg);
            };
            break;
        }
        case DecoderSpec::Kind::Sc:
        case DecoderSpec::Kind::Scl:
        case DecoderSpec::Kind::Scs:
        case DecoderSpec::Kind::Sq: {
            auto desc = std::make_shared<PolarDescriptor>(descriptor_for(code));
            SearchConfig cfg;
            cfg.mode = spec.kind == DecoderSpec::Kind::Sc    ? SearchMode::Sc
                       : spec.kind == DecoderSpec::Kind::Scl ? SearchMode::Scl
                       : spec.kind == DecoderSpec::Kind::Scs ? SearchMode::Scs
                                                             : SearchMode::Sq;
            cfg.list_size = spec.list_size;
            cfg.stack_cap = spec.stack_cap;
            cfg.bias = spec.bias;
            cfg.op_cap = op_cap;
            b.decode = [desc, cfg](const LlrVector& llr) {
                return search_decode(*desc, llr, cfg);
            };
            break;
        }
    }
    return b;
}

namespace {

struct TrialOutcome {
    bool error = false;
    bool ml_error = false;
    bool abandoned = false;
    std::uint64_t ops = 0;
    std::uint64_t queries = 0;
};

TrialOutcome run_trial(const Code& code, const BoundDecoder& decoder, double n0,
                       std::uint64_t master_seed, std::uint64_t point_index,
                       std::uint64_t trial_index) {
    Rng rng = Rng::for_trial(master_seed, point_index, trial_index);
    const std::uint32_t k = code.k(), n = code.n();
    BitVec payload(k);
    for (std::uint32_t i = 0; i < k; ++i)
        if (rng.bit()) payload.set(i, true);
    BitVec cw = code.encode(payload);

    // odd block lengths: pad one known-zero bit onto the final symbol
    BitVec tx_bits = cw;
    if (n % 2 != 0) {
        BitVec padded(n + 1);
        for (std::uint32_t i = 0; i < n; ++i) padded.set(i, cw.get(i));
        tx_bits = padded;
    }
    auto symbols = modulate_qpsk(tx_bits);
    auto received = transmit(symbols, n0, rng);
    LlrVector llr = llr_from_received(received, n0);
    llr.resize(n);

    DecodeResult res = decoder.decode(llr);

    TrialOutcome out;
    out.error = !(res.status == DecodeStatus::Ok && res.codeword == cw);
    out.abandoned = res.status != DecodeStatus::Ok;
    out.ml_error = out.error && is_ml_error(llr, cw, res);
    out.ops = res.counters.total();
    out.queries = res.queries;
    return out;
}

}  // namespace

SimRecord run_bler_point(const Code& code, const BoundDecoder& decoder, double es_n0_db,
                         const RunControl& ctl) {
    if (ctl.stop_errors < 1 || ctl.batch < 1) throw ConfigInvalid("run_bler_point: bad control");
    const double n0 = 1.0 / std::pow(10.0, es_n0_db / 10.0);

    std::uint64_t trials = 0, errors = 0, ml_errors = 0, abandoned = 0;
    std::uint64_t sum_ops = 0, max_ops = 0, sum_queries = 0;

    std::vector<TrialOutcome> batch_out;
    while (trials < ctl.max_trials && errors < ctl.stop_errors) {
        const std::uint64_t batch =
            std::min<std::uint64_t>(ctl.batch, ctl.max_trials - trials);
        batch_out.assign(batch, TrialOutcome{});
        const std::uint32_t workers = std::max<std::uint32_t>(ctl.workers, 1);
        if (workers == 1) {
            for (std::uint64_t t = 0; t < batch; ++t)
                batch_out[t] = run_trial(code, decoder, n0, ctl.master_seed, ctl.point_index,
                                         trials + t);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (std::uint32_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w]() {
                    for (std::uint64_t t = w; t < batch; t += workers)
                        batch_out[t] = run_trial(code, decoder, n0, ctl.master_seed,
                                                 ctl.point_index, trials + t);
                });
            }
            for (auto& th : pool) th.join();
        }
        // deterministic fold in trial order
        for (std::uint64_t t = 0; t < batch; ++t) {
            const TrialOutcome& o = batch_out[t];
            errors += o.error;
            ml_errors += o.ml_error;
            abandoned += o.abandoned;
            sum_ops += o.ops;
            max_ops = std::max(max_ops, o.ops);
            sum_queries += o.queries;
        }
        trials += batch;
    }

    SimRecord rec;
    rec.es_n0_db = es_n0_db;
    rec.trials = trials;
    rec.errors = errors;
    rec.bler = static_cast<double>(errors) / static_cast<double>(trials);
    rec.ml_bound = static_cast<double>(ml_errors) / static_cast<double>(trials);
    rec.mean_ops_per_info_bit =
        static_cast<double>(sum_ops) / static_cast<double>(trials) / code.k();
    rec.max_ops_per_info_bit = static_cast<double>(max_ops) / code.k();
    rec.abandoned = abandoned;
    rec.mean_queries = static_cast<double>(sum_queries) / static_cast<double>(trials);
    return rec;
}

std::vector<SimRecord> sweep(const Code& code, const BoundDecoder& decoder,
                             const std::vector<double>& grid, const RunControl& ctl) {
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw ConfigInvalid("sweep: grid must be ascending");
    std::vector<SimRecord> records;
    const double unmeasurable = 0.01 / static_cast<double>(ctl.max_trials);
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        if (normal_approx_bler(code.n(), code.k(), grid[gi]) < unmeasurable) continue;
        RunControl c = ctl;
        c.point_index = gi;
        records.push_back(run_bler_point(code, decoder, grid[gi], c));
        if (ctl.bler_floor > 0.0 && records.back().bler < ctl.bler_floor) break;
    }
    return records;
}

double snr_for_target_bler(const Code& code, const BoundDecoder& decoder, double target,
                           double tol_db, const RunControl& ctl,
                           std::vector<SimRecord>* probes) {
    if (!(target > 0.0 && target <= 1.0))
        throw ConfigInvalid("snr_for_target_bler: target in (0,1]");
    if (!(tol_db > 0.0)) throw ConfigInvalid("snr_for_target_bler: tol_db > 0");
    RunControl c = ctl;
    c.stop_errors = std::max<std::uint64_t>(ctl.stop_errors, 100);

    auto measure = [&](double snr) {
        c.point_index = std::bit_cast<std::uint64_t>(snr);
        SimRecord rec = run_bler_point(code, decoder, snr, c);
        if (probes) probes->push_back(rec);
        return rec.bler;
    };

    double center;
    if (target >= 1.0) {
        center = -20.0;
    } else {
        try {
            center = na_snr_for_bler(code.n(), code.k(), target);
        } catch (const BracketFailure&) {
            center = 0.0;
        }
    }
    double lo = center - 2.0, hi = center + 2.0;
    double bler_lo = measure(lo);
    if (bler_lo <= target) return lo;  // already below target at the left edge
    double bler_hi = measure(hi);
    int expand = 0;
    while (bler_hi > target && expand < 2) {
        hi += 2.0;
        bler_hi = measure(hi);
        ++expand;
    }
    if (bler_hi > target)
        throw BracketFailure("snr_for_target_bler: target unreachable on the search interval");

    while (hi - lo > tol_db) {
        const double mid = 0.5 * (lo + hi);
        if (measure(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void emit_csv(const std::vector<SimRecord>& records, const EmitMeta& meta, std::ostream& os) {
    os << "# scw-simrecords v1 version=\"" << kArtifactVersion << "\" command=" << meta.command
       << " code=" << meta.code_id << " decoder=" << meta.decoder_id
       << " seed=" << meta.master_seed << "\n";
    os << "es_n0_db,trials,errors,bler,ml_bound,mean_ops_per_info_bit,max_ops_per_info_bit,"
          "abandoned,mean_queries\n";
    for (const SimRecord& r : records) {
        os << fmt_double(r.es_n0_db) << ',' << r.trials << ',' << r.errors << ','
           << fmt_double(r.bler) << ',' << fmt_double(r.ml_bound) << ','
           << fmt_double(r.mean_ops_per_info_bit) << ',' << fmt_double(r.max_ops_per_info_bit)
           << ',' << r.abandoned << ',' << fmt_double(r.mean_queries) << "\n";
    }
}

void emit_json(const std::vector<SimRecord>& records, const EmitMeta& meta, std::ostream& os) {
    nlohmann::ordered_json j;
    j["artifact_version"] = kArtifactVersion;
    j["command"] = meta.command;
    j["code"] = meta.code_id;
    j["decoder"] = meta.decoder_id;
    j["master_seed"] = meta.master_seed;
    j["stop_errors"] = meta.stop_errors;
    j["max_trials"] = meta.max_trials;
    j["op_cap"] = meta.op_cap;
    auto& arr = j["records"] = nlohmann::ordered_json::array();
    for (const SimRecord& r : records) {
        nlohmann::ordered_json rec;
        rec["es_n0_db"] = r.es_n0_db;
        rec["trials"] = r.trials;
        rec["errors"] = r.errors;
        rec["bler"] = r.bler;
        rec["ml_bound"] = r.ml_bound;
        rec["mean_ops_per_info_bit"] = r.mean_ops_per_info_bit;
        rec["max_ops_per_info_bit"] = r.max_ops_per_info_bit;
        rec["abandoned"] = r.abandoned;
        rec["mean_queries"] = r.mean_queries;
        arr.push_back(std::move(rec));
    }
    os << j.dump(2) << "\n";
}

void emit_files(const std::vector<SimRecord>& records, const EmitMeta& meta,
                const std::string& path_prefix) {
    {
        std::ofstream os(path_prefix + ".csv");
        if (!os) throw IoError("cannot write " + path_prefix + ".csv");
        emit_csv(records, meta, os);
    }
    {
        std::ofstream os(path_prefix + ".json");
        if (!os) throw IoError("cannot write " + path_prefix + ".json");
        emit_json(records, meta, os);
    }
}

std::string code_id(const Code& code) {
    std::ostringstream os;
    os << family_name(code.spec.family) << "_" << code.n() << "_" << code.k();
    return os.str();
}

}  // namespace scw
