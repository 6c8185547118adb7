#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scw/bits.hpp"
#include "scw/crc.hpp"

namespace scw {

enum class LeafKind : std::uint8_t { Frozen = 0, Info = 1, Dynamic = 2 };

// Code-tree view of a binary code of power-of-two length n: every codeword is
// x = u * F^{(x)m} with F = [[1,0],[1,1]], where u is constrained leaf by leaf.
// Info leaves are free, Frozen leaves are 0, Dynamic leaves are an affine
// (XOR) function of earlier u bits. A convolutional precoder turns the free
// bits into a PAC code; an optional CRC splits the info bits into
// payload | CRC(payload).
struct PolarDescriptor {
    std::uint32_t n = 0;
    std::uint32_t m = 0;  // log2(n)
    std::vector<std::uint32_t> info_set;  // ascending leaf indices
    std::vector<LeafKind> leaf;           // size n
    std::vector<BitVec> dyn_mask;         // per Dynamic leaf i: mask over u_0..u_{i-1}
    std::uint64_t conv_poly = 0;          // PAC precoder taps, bit 0 = c0 (must be 1); 0 = none
    std::uint64_t crc_poly = 0;           // 0 = none
    std::uint32_t payload_len = 0;        // info bits excluding CRC bits
    std::vector<std::uint32_t> pinned;    // coded positions known to be 0 (shortening)

    std::uint32_t info_len() const { return static_cast<std::uint32_t>(info_set.size()); }
    bool has_crc() const { return crc_poly != 0; }
    bool is_pac() const { return conv_poly != 0; }
    // dimension of the code the descriptor describes
    std::uint32_t dimension() const { return has_crc() ? payload_len : info_len(); }
};

// In-place u -> u * F^{(x)m} (and its own inverse over GF(2)).
void polar_transform(BitVec& x);

// v -> v * (F^{(x)m})^T, the subset-sum transform.
void polar_transform_t(BitVec& x);

// Encode `info` (payload_len bits when a CRC is attached, |info_set| bits
// otherwise) through the descriptor: place bits, apply CRC / precoder /
// dynamic-frozen constraints, then the polar transform.
BitVec descriptor_encode(const PolarDescriptor& desc, const BitVec& info);

// The u-domain vector right before the polar transform (for tests).
BitVec descriptor_u_vector(const PolarDescriptor& desc, const BitVec& info);

// Recover the descriptor's info bits (payload only, when a CRC is attached)
// from a codeword.
BitVec descriptor_extract_info(const PolarDescriptor& desc, const BitVec& codeword);

// Bhattacharyya parameters of the n synthetic channels, natural order,
// starting from z0 (z -> {2z - z^2, z^2}).
std::vector<double> bhattacharyya(std::uint32_t n, double z0);

// z0 for the QPSK/AWGN channel model at the given design SNR: exp(-(Es/N0)/2).
double bhattacharyya_z0(double design_es_n0_db);

}  // namespace scw
