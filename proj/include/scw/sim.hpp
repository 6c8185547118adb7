#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "scw/analysis.hpp"
#include "scw/codes.hpp"
#include "scw/types.hpp"

namespace scw {

// Decoder selection string, e.g. "osd:order=4", "pb-osd:order=2,pb=1e-5",
// "grand:max-queries=1000000", "grand-exact", "sc", "scl:L=32",
// "scs:L=64,stack=1024", "sq:L=64,bias=auto".
struct DecoderSpec {
    enum class Kind : std::uint8_t { Osd, PbOsd, Grand, GrandExact, Sc, Scl, Scs, Sq };
    Kind kind = Kind::Osd;
    int order = -1;
    double pb_threshold = 1e-5;
    std::uint64_t max_queries = 1'000'000'000;
    std::uint32_t list_size = 1;
    std::uint32_t stack_cap = 0;
    double bias = std::numeric_limits<double>::quiet_NaN();

    static DecoderSpec parse(const std::string& s);
    std::string id() const;
};

struct BoundDecoder {
    std::string id;
    std::function<DecodeResult(const LlrVector&)> decode;
};

// Resolves the spec against a code (descriptor construction, order defaults).
BoundDecoder bind_decoder(const Code& code, const DecoderSpec& spec, std::uint64_t op_cap = 0);

struct RunControl {
    std::uint64_t stop_errors = 100;
    std::uint64_t max_trials = 100'000'000;
    std::uint64_t master_seed = 1;
    std::uint64_t point_index = 0;  // RNG stream component; one per SNR point
    std::uint32_t workers = 1;
    std::uint32_t batch = 256;  // stop rule evaluated at batch boundaries
    double bler_floor = 0.0;    // sweep: stop below this measured BLER
};

struct SimRecord {
    double es_n0_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double bler = 0.0;
    double ml_bound = 0.0;
    double mean_ops_per_info_bit = 0.0;
    double max_ops_per_info_bit = 0.0;
    std::uint64_t abandoned = 0;
    double mean_queries = 0.0;
};

SimRecord run_bler_point(const Code& code, const BoundDecoder& decoder, double es_n0_db,
                         const RunControl& ctl);

// Ascending grid; skips points the NA bound predicts to be unmeasurable
// (predicted BLER < 0.01/max_trials) and stops once measured BLER falls below
// ctl.bler_floor. point_index is the grid position.
std::vector<SimRecord> sweep(const Code& code, const BoundDecoder& decoder,
                             const std::vector<double>& grid, const RunControl& ctl);

// Bisection for the SNR achieving `target` BLER; probed points appended to
// `probes` when given. stop_errors is raised to at least 100.
double snr_for_target_bler(const Code& code, const BoundDecoder& decoder, double target,
                           double tol_db, const RunControl& ctl,
                           std::vector<SimRecord>* probes = nullptr);

struct EmitMeta {
    std::string command;
    std::string code_id;
    std::string decoder_id;
    std::uint64_t master_seed = 0;
    std::uint64_t stop_errors = 0;
    std::uint64_t max_trials = 0;
    std::uint64_t op_cap = 0;
};

extern const char* const kArtifactVersion;

void emit_csv(const std::vector<SimRecord>& records, const EmitMeta& meta, std::ostream& os);
void emit_json(const std::vector<SimRecord>& records, const EmitMeta& meta, std::ostream& os);
void emit_files(const std::vector<SimRecord>& records, const EmitMeta& meta,
                const std::string& path_prefix);

std::string code_id(const Code& code);

}  // namespace scw
