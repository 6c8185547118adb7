#pragma once

#include <cstdint>
#include <vector>

#include "scw/codes.hpp"
#include "scw/types.hpp"

namespace scw {

struct GaussHermite {
    std::vector<double> nodes;    // roots of H_n, ascending
    std::vector<double> weights;  // sum = sqrt(pi)
};

// Physicists' Gauss-Hermite rule (weight e^{-x^2}).
GaussHermite gauss_hermite(int n);

struct ChannelCV {
    double capacity_bits;      // C of the binary-input AWGN channel
    double dispersion_bits2;   // V
};

// C and V at per-coded-bit SNR Es/N0 (QPSK convention), 63-node quadrature.
ChannelCV biawgn_cv(double es_n0_db);

// Q((nC - k + log2(n)/2) / sqrt(nV))
double normal_approx_bler(std::uint32_t n, std::uint32_t k, double es_n0_db);

// SNR where the NA bound equals target_bler (bisection).
double na_snr_for_bler(std::uint32_t n, std::uint32_t k, double target_bler,
                       double lo_db = -20.0, double hi_db = 30.0);

struct MlAudit {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    std::uint64_t ml_errors = 0;
};

// Would an exact ML decoder also have failed on this trial? For completed
// erroneous decodes: soft_distance(candidate) <= soft_distance(transmitted).
// For abandoned decodes, only a strictly closer found candidate counts.
bool is_ml_error(const LlrVector& llr, const BitVec& transmitted, const DecodeResult& result);

double ml_bound(const MlAudit& audit);

double ops_per_info_bit(const OpCounters& counters, std::uint32_t k);

}  // namespace scw
