#pragma once

#include <span>

#include "scw/codes.hpp"
#include "scw/types.hpp"

namespace scw {

enum class OsdVariant : std::uint8_t { Original, Pb };

struct OsdConfig {
    int order = -1;  // -1: resolve from code.dh via order_for_ml; required otherwise
    OsdVariant variant = OsdVariant::Original;
    double pb_threshold = 1e-5;
    std::uint64_t op_cap = 0;  // 0 = unlimited
};

// Order for near-ML decoding: ceil(dh/4 - 1), clamped at 0.
int order_for_ml(std::uint32_t dh);

// PB stopping rule, checked at weight-class boundaries: keep searching while
// the probability that the true error pattern in the most-reliable basis has
// weight >= next_tep_weight (positions flipping independently with
// p_i = 1/(1+e^{|LLR_i|})) is at least pb_threshold. A best score of exactly
// 0 always stops.
bool pb_keep_searching(double best_score, int next_tep_weight,
                       std::span<const double> mrb_abs_llr, double pb_threshold,
                       OpCounters* ops = nullptr);

DecodeResult osd_decode(const Code& code, const LlrVector& llr, const OsdConfig& config);

// Emits all supports over {0..k-1} of weight <= order, weight ascending; within
// a weight class, colexicographic over indices counted from the least reliable
// end. Used by the decoder and directly testable.
class TepEnumerator {
  public:
    TepEnumerator(std::uint32_t k, int order) : k_(k), order_(order) {}

    // Fills `support` (ascending positions from the least-reliable end) and
    // returns false when exhausted. First call yields the empty support.
    bool next(std::vector<std::uint32_t>& support);
    int weight() const { return w_; }

  private:
    bool advance_within_class(std::vector<std::uint32_t>& support);

    std::uint32_t k_;
    int order_;
    int w_ = -1;
    std::vector<std::uint32_t> cur_;
};

}  // namespace scw
