#pragma once

#include <cstdint>

namespace scw {

// Operation-count convention used by every decoder:
//   additions       - real additions/subtractions, and GF(2) word XORs (one per
//                     machine word touched)
//   multiplications - real multiplies/divides and transcendental evaluations
//                     (exp, log, ...), one count each; GF(2) word ANDs
//   comparisons     - data-dependent compares and branch decisions
// Counts are a pure function of the execution path, so identical inputs give
// identical counters regardless of thread scheduling.
struct OpCounters {
    std::uint64_t additions = 0;
    std::uint64_t multiplications = 0;
    std::uint64_t comparisons = 0;

    void add(std::uint64_t c = 1) { additions += c; }
    void mul(std::uint64_t c = 1) { multiplications += c; }
    void cmp(std::uint64_t c = 1) { comparisons += c; }

    std::uint64_t total() const { return additions + multiplications + comparisons; }

    OpCounters& operator+=(const OpCounters& o) {
        additions += o.additions;
        multiplications += o.multiplications;
        comparisons += o.comparisons;
        return *this;
    }

    friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

}  // namespace scw
