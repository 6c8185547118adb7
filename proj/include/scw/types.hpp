#pragma once

#include <cstdint>

#include "scw/bits.hpp"
#include "scw/channel.hpp"
#include "scw/opcount.hpp"

namespace scw {

enum class DecodeStatus : std::uint8_t { Ok, Abandoned };

// Shared decoder output. `queries` is decoder-specific: TEPs evaluated for
// OSD, noise queries for GRAND, f/g kernel evaluations for the SC family.
struct DecodeResult {
    DecodeStatus status = DecodeStatus::Abandoned;
    bool has_candidate = false;
    BitVec codeword;  // valid codeword when Ok; best candidate found otherwise
    BitVec info;
    double score = 0.0;  // soft distance of `codeword` vs the hard decision
    OpCounters counters;
    std::uint64_t queries = 0;
};

// Correlation discrepancy: sum of |LLR| over positions where the candidate
// disagrees with the hard decision. Minimising it is maximum likelihood for
// the QPSK/AWGN model.
inline double soft_distance(const BitVec& candidate, const BitVec& hard, const LlrVector& llr) {
    if (candidate.size() != hard.size() || candidate.size() != llr.size())
        throw DimensionMismatch("soft_distance: length mismatch");
    double acc = 0.0;
    auto cw = candidate.words();
    auto hw = hard.words();
    for (std::size_t w = 0; w < cw.size(); ++w) {
        std::uint64_t diff = cw[w] ^ hw[w];
        while (diff) {
            const unsigned b = std::countr_zero(diff);
            acc += std::abs(llr[w * 64 + b]);
            diff &= diff - 1;
        }
    }
    return acc;
}

}  // namespace scw
