#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "scw/bits.hpp"
#include "scw/rng.hpp"

namespace scw {

// Per-coded-bit log-likelihood ratios; positive means bit 0 more likely.
using LlrVector = std::vector<double>;

struct ChannelParams {
    double es_n0_db = 0.0;
    double n0 = 1.0;  // Es / 10^(EsN0_dB/10) with Es = 1
    std::uint64_t seed = 0;

    static ChannelParams from_db(double es_n0_db, std::uint64_t seed = 0) {
        ChannelParams p;
        p.es_n0_db = es_n0_db;
        p.n0 = 1.0 / std::pow(10.0, es_n0_db / 10.0);
        p.seed = seed;
        return p;
    }
};

// Gray-mapped QPSK, Es = 1. Bits 2j, 2j+1 go to the real and imaginary parts
// of symbol j; bit 0 maps to +sqrt(1/2), bit 1 to -sqrt(1/2).
std::vector<std::complex<double>> modulate_qpsk(const BitVec& bits);

// y = x + w with w circularly-symmetric complex Gaussian of total variance N0.
std::vector<std::complex<double>> transmit(const std::vector<std::complex<double>>& symbols,
                                           double n0, Rng& rng);
std::vector<std::complex<double>> transmit(const std::vector<std::complex<double>>& symbols,
                                           const ChannelParams& params);

// Exact per-bit LLR for this channel: LLR_i = (2*sqrt(2)/N0) * y_i where y_i is
// the real dimension carrying bit i.
LlrVector llr_from_received(const std::vector<std::complex<double>>& received, double n0);

// bit = 0 iff LLR >= 0
BitVec hard_decision(const LlrVector& llr);

}  // namespace scw
