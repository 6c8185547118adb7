#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scw/bits.hpp"
#include "scw/polar_desc.hpp"

namespace scw {

enum class CodeFamily : std::uint8_t { Ebch, Polar, CrcPolar, Pac, Random, RandomGreedy };

std::string family_name(CodeFamily f);
CodeFamily family_from_name(const std::string& s);

struct CodeParams {
    std::optional<double> design_es_n0_db;  // polar/PAC frozen-set design; unset -> z0 = 0.5
    std::uint64_t crc_poly = 0;             // with leading coefficient, e.g. 0xE21
    std::uint64_t conv_poly = 0;            // PAC taps, bit 0 = c0
    std::uint32_t candidates_per_step = 100;
    std::optional<double> eval_es_n0_db;    // greedy union-bound evaluation SNR
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> reliability;  // externally supplied leaf order (best first)
    std::vector<std::uint32_t> keep;         // columns kept after puncturing/shortening
};

struct CodeSpec {
    CodeFamily family = CodeFamily::Random;
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    CodeParams params;
};

using Spectrum = std::vector<std::uint64_t>;  // A_0..A_n

struct Code {
    CodeSpec spec;
    BitMatrix g;  // k x n
    BitMatrix h;  // (n-k) x n
    std::optional<std::uint32_t> dh;
    std::optional<Spectrum> spectrum;
    std::optional<PolarDescriptor> descriptor;

    std::uint32_t n() const { return spec.n; }
    std::uint32_t k() const { return spec.k; }

    BitVec encode(const BitVec& u, OpCounters* ops = nullptr) const;
    bool contains(const BitVec& v) const;
    // u with u*G = codeword (codeword must be in the code)
    BitVec info_from_codeword(const BitVec& codeword) const;

    // called by the builders once G/H are final
    void finalize();

  private:
    std::vector<std::uint32_t> sys_cols_;
    BitMatrix sys_inv_;  // inverse of G restricted to sys_cols_
};

struct RcFamily {
    std::uint32_t k = 0;
    std::vector<std::uint32_t> lengths;            // ascending
    Code mother;                                   // at max length
    std::vector<std::vector<std::uint32_t>> keep;  // per length, ascending column sets, nested
    Code code_at(std::size_t idx) const;
};

// --- constructions -------------------------------------------------------

// Extended BCH: narrow-sense binary BCH of length n-1 with the largest
// designed distance of dimension >= k, plus an overall even-parity bit.
Code build_ebch(std::uint32_t n, std::uint32_t k);

// Polar code with Bhattacharyya-designed frozen set (z0 = 0.5 unless a design
// SNR is given); params.reliability, when set, overrides the design rule and
// lists leaf indices from most to least reliable.
Code build_polar(std::uint32_t n, std::uint32_t k, const CodeParams& params = {});

// CRC-aided polar: information vector = payload | CRC(payload); the polar
// information set has size k_payload + deg(crc).
Code attach_crc(std::uint32_t n, std::uint32_t k_payload, std::uint64_t crc_poly,
                const CodeParams& params = {});

// Polarization-adjusted convolutional code. Rate profile: indices ranked by
// (row weight desc, Bhattacharyya asc, index asc).
Code build_pac(std::uint32_t n, std::uint32_t k, const CodeParams& params = {});

Code build_random(std::uint32_t n, std::uint32_t k, std::uint64_t seed);

// Greedy union-bound column selection: start from I_k, then repeatedly draw
// candidates_per_step random columns and append the one whose exhaustive
// union bound at eval_es_n0_db is smallest. Requires k <= 20.
Code greedy_select_random(std::uint32_t n, std::uint32_t k, std::uint64_t seed,
                          std::uint32_t candidates_per_step, double eval_es_n0_db);

enum class SpectrumMode { Exhaustive };

// Weight enumerator A_0..A_n; Exhaustive requires k <= 20.
Spectrum weight_spectrum(const Code& code, SpectrumMode mode = SpectrumMode::Exhaustive);

// sum_{d>=1} A_d * Q(sqrt(d * Es/N0)), clamped to <= 1.
double union_bound(const Spectrum& spectrum, double es_n0_db);

Code puncture(const Code& mother, const std::vector<std::uint32_t>& keep);

// Rate-compatible family with nested column sets. eval_snr_at(n) supplies the
// union-bound evaluation SNR used while selecting/removing columns.
// RandomGreedy grows columns greedily; the other families are punctured from
// their mother code at max length by greedy union-bound column removal.
RcFamily build_rc(const CodeSpec& spec, const std::vector<std::uint32_t>& lengths,
                  const std::function<double(std::uint32_t)>& eval_snr_at);

// Fraction of standard-normal mass above x.
double q_func(double x);

// --- serialization -------------------------------------------------------

void save_code(const Code& code, std::ostream& os);
void save_code_file(const Code& code, const std::string& path);
Code load_code(std::istream& is);
Code load_code_file(const std::string& path);

Code build_code(const CodeSpec& spec);

}  // namespace scw
