#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scw/codes.hpp"
#include "scw/types.hpp"

namespace scw {

enum class GrandOrdering : std::uint8_t {
    Logistic,         // offline schedule by ascending logistic weight
    ExactLikelihood,  // lazy subset-sum enumeration by ascending flip cost (n <= 64)
};

struct GrandConfig {
    std::uint64_t max_queries = 1'000'000'000;
    GrandOrdering ordering = GrandOrdering::Logistic;
    std::uint64_t op_cap = 0;
};

struct BscParams {
    double p = 0.0;  // crossover probability in (0, 1/2]
};

// Sum of the 1-based reliability-rank indices in the support.
std::uint64_t logistic_weight(std::span<const std::uint32_t> support_ranks);

// Lazy enumerator over supports of rank indices {1..n}: weight ascending from
// 0; within a weight, partitions into distinct parts are emitted with their
// descending-sorted part tuples in lexicographically decreasing order, i.e.
// largest first ({} , {1}, {2}, {3}, {1,2}, {4}, {1,3}, ...).
class LogisticScheduleIter {
  public:
    explicit LogisticScheduleIter(std::uint32_t n) : n_(n) {}

    // Fills `parts` with the next support (rank indices, descending); returns
    // false once all 2^n supports have been emitted.
    bool next(std::vector<std::uint32_t>& parts);
    std::uint64_t weight() const { return w_; }

  private:
    bool descend(std::uint64_t remaining, std::uint32_t cap);
    bool backtrack();

    struct Frame {
        std::uint64_t remaining;
        std::uint32_t cap;
        std::uint32_t p;
    };

    std::uint32_t n_;
    std::uint64_t w_ = 0;
    bool started_ = false;
    bool class_open_ = false;
    std::vector<Frame> stack_;
};

// Materialised schedule prefix (first max_entries supports) for inspection
// and tests.
std::vector<std::vector<std::uint32_t>> build_schedule(std::uint32_t n,
                                                       std::uint64_t max_entries);

DecodeResult grand_decode(const Code& code, const LlrVector& llr, const GrandConfig& config);

// 2^{n * min(H_1/2, 1-k/n)} with H_1/2 = 2*log2(sqrt(p) + sqrt(1-p)).
double query_bound(std::uint32_t n, std::uint32_t k, double p);

// Hard-decision crossover probability of the QPSK/AWGN channel: Q(sqrt(Es/N0)).
double bsc_crossover(double es_n0_db);

}  // namespace scw
