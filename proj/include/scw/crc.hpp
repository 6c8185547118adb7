#pragma once

#include <bit>
#include <cstdint>

#include "scw/bits.hpp"

namespace scw {

// Systematic CRC with zero-initialised register. The polynomial is given with
// its leading coefficient, e.g. 0xE21 = x^11+x^10+x^9+x^5+1 (degree 11).
class Crc {
  public:
    explicit Crc(std::uint64_t poly) : poly_(poly) {
        if (poly < 2) throw UnsupportedParams("Crc: polynomial must have degree >= 1");
        degree_ = std::bit_width(poly) - 1;
        low_ = poly ^ (std::uint64_t(1) << degree_);
    }

    int degree() const { return degree_; }
    std::uint64_t poly() const { return poly_; }

    // Remainder of payload(x) * x^degree mod poly; bit j of the result is the
    // coefficient of x^(degree-1-j), i.e. transmission order.
    BitVec compute(const BitVec& payload) const {
        std::uint64_t reg = 0;
        const std::uint64_t msb = std::uint64_t(1) << (degree_ - 1);
        for (std::size_t i = 0; i < payload.size(); ++i) {
            const bool fb = payload.get(i) ^ ((reg & msb) != 0);
            reg = (reg << 1) & ((std::uint64_t(1) << degree_) - 1);
            if (fb) reg ^= low_;
        }
        BitVec out(static_cast<std::size_t>(degree_));
        for (int j = 0; j < degree_; ++j)
            if ((reg >> (degree_ - 1 - j)) & 1) out.set(static_cast<std::size_t>(j), true);
        return out;
    }

    bool check(const BitVec& payload, const BitVec& crc_bits) const {
        return compute(payload) == crc_bits;
    }

  private:
    std::uint64_t poly_;
    std::uint64_t low_;
    int degree_;
};

}  // namespace scw
