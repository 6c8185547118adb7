#pragma once

#include <cmath>
#include <limits>

#include "scw/codes.hpp"
#include "scw/polar_desc.hpp"
#include "scw/types.hpp"

namespace scw {

enum class SearchMode : std::uint8_t { Sc, Scl, Scs, Sq };

struct SearchConfig {
    SearchMode mode = SearchMode::Sc;
    std::uint32_t list_size = 1;  // L: list width (SCL) / per-depth visit cap (SCS, SQ)
    std::uint32_t stack_cap = 0;  // stored-path cap for SCS/SQ; 0 -> 16*L
    double bias = std::numeric_limits<double>::quiet_NaN();  // SQ; NaN -> from LLRs
    std::uint64_t op_cap = 0;
};

// metric += ln(1 + e^{-(1-2*bit)*llr}), the exact log-likelihood penalty
double path_metric_update(double metric, double llr_value, bool bit);

DecodeResult sc_decode(const PolarDescriptor& desc, const LlrVector& llr,
                       std::uint64_t op_cap = 0);
DecodeResult scl_decode(const PolarDescriptor& desc, const LlrVector& llr, std::uint32_t L,
                        std::uint64_t op_cap = 0);
DecodeResult scs_decode(const PolarDescriptor& desc, const LlrVector& llr, std::uint32_t L,
                        std::uint32_t stack_cap = 0, std::uint64_t op_cap = 0);
DecodeResult sq_decode(const PolarDescriptor& desc, const LlrVector& llr, std::uint32_t L,
                       double bias = std::numeric_limits<double>::quiet_NaN(),
                       std::uint32_t stack_cap = 0, std::uint64_t op_cap = 0);

DecodeResult search_decode(const PolarDescriptor& desc, const LlrVector& llr,
                           const SearchConfig& config);

// Expresses any linear code of power-of-two length as polar-transform input
// constraints (dynamic frozen bits), enabling the SC family to decode it.
PolarDescriptor dynamic_frozen_descriptor(const Code& code);

// The code's own descriptor when it has one, otherwise the dynamic-frozen
// extraction.
PolarDescriptor descriptor_for(const Code& code);

// Default SQ bias: mean softplus(-|llr|) over the received vector, an estimate
// of the per-bit penalty a correct path accrues.
double sq_default_bias(const LlrVector& llr);

}  // namespace scw
