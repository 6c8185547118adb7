#include "scw/grand.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace scw {

std::uint64_t logistic_weight(std::span<const std::uint32_t> support_ranks) {
    std::uint64_t w = 0;
    for (std::uint32_t r : support_ranks) w += r;
    return w;
}

namespace {
// can `remaining` be written as distinct parts, each in [1, cap]?
inline bool representable(std::uint64_t remaining, std::uint32_t cap) {
    return remaining <= (static_cast<std::uint64_t>(cap) * (cap + 1)) / 2;
}
}  // namespace

bool LogisticScheduleIter::descend(std::uint64_t remaining, std::uint32_t cap) {
    while (remaining > 0) {
        auto p = static_cast<std::uint32_t>(
            std::min<std::uint64_t>(cap, remaining));
        // need the rest to fit in distinct parts below p
        while (p >= 1 && !representable(remaining - p, p - 1)) --p;
        if (p == 0) return false;
        stack_.push_back(Frame{remaining, cap, p});
        remaining -= p;
        cap = p - 1;
    }
    return true;
}

bool LogisticScheduleIter::backtrack() {
    while (!stack_.empty()) {
        Frame f = stack_.back();
        stack_.pop_back();
        for (std::uint32_t p = f.p - 1; p >= 1; --p) {
            if (!representable(f.remaining - p, p - 1)) continue;
            stack_.push_back(Frame{f.remaining, f.cap, p});
            if (descend(f.remaining - p, p - 1)) return true;
            stack_.pop_back();
        }
    }
    return false;
}

bool LogisticScheduleIter::next(std::vector<std::uint32_t>& parts) {
    if (!started_) {
        started_ = true;
        parts.clear();  // weight 0: the empty support
        w_ = 0;
        return true;
    }
    while (true) {
        if (class_open_ && backtrack()) break;
        // advance to the next weight that has at least one partition
        ++w_;
        const std::uint64_t max_w = (static_cast<std::uint64_t>(n_) * (n_ + 1)) / 2;
        if (w_ > max_w) return false;
        stack_.clear();
        class_open_ = true;
        const auto cap = static_cast<std::uint32_t>(std::min<std::uint64_t>(n_, w_));
        if (descend(w_, cap)) break;
    }
    parts.resize(stack_.size());
    for (std::size_t i = 0; i < stack_.size(); ++i) parts[i] = stack_[i].p;
    return true;
}

std::vector<std::vector<std::uint32_t>> build_schedule(std::uint32_t n,
                                                       std::uint64_t max_entries) {
    std::vector<std::vector<std::uint32_t>> out;
    LogisticScheduleIter it(n);
    std::vector<std::uint32_t> parts;
    while (out.size() < max_entries && it.next(parts)) out.push_back(parts);
    return out;
}

namespace {

// lazy enumeration of supports by ascending sum of |LLR| (descending pattern
// likelihood); standard shift/extend successor scheme over positions sorted
// by reliability
class ExactLikelihoodIter {
  public:
    ExactLikelihoodIter(std::span<const double> sorted_abs) : a_(sorted_abs) {
        heap_.push(Node{0.0, 0, 0});  // empty support
    }

    bool next(std::uint64_t& mask) {
        if (heap_.empty()) return false;
        Node top = heap_.top();
        heap_.pop();
        mask = top.mask;
        if (top.mask == 0) {
            if (!a_.empty()) heap_.push(Node{a_[0], std::uint64_t(1), 0});
        } else {
            const std::uint32_t t = top.last;
            if (t + 1 < a_.size()) {
                heap_.push(Node{top.cost + a_[t + 1], top.mask | (std::uint64_t(1) << (t + 1)),
                                t + 1});
                heap_.push(Node{top.cost - a_[t] + a_[t + 1],
                                (top.mask ^ (std::uint64_t(1) << t)) |
                                    (std::uint64_t(1) << (t + 1)),
                                t + 1});
            }
        }
        return true;
    }

  private:
    struct Node {
        double cost;
        std::uint64_t mask;
        std::uint32_t last;
        bool operator>(const Node& o) const {
            if (cost != o.cost) return cost > o.cost;
            return mask > o.mask;
        }
    };
    std::span<const double> a_;
    std::priority_queue<Node, std::vector<Node>, std::greater<>> heap_;
};

}  // namespace

DecodeResult grand_decode(const Code& code, const LlrVector& llr, const GrandConfig& config) {
    const std::uint32_t n = code.n(), k = code.k();
    if (llr.size() != n) throw DimensionMismatch("grand_decode: llr length != n");
    if (config.max_queries < 1) throw ConfigInvalid("grand_decode: max_queries >= 1");

    DecodeResult res;
    OpCounters& ops = res.counters;

    // rank positions by |LLR| ascending: rank 1 = least reliable
    std::vector<std::uint32_t> pos_of_rank(n);
    std::iota(pos_of_rank.begin(), pos_of_rank.end(), 0u);
    std::sort(pos_of_rank.begin(), pos_of_rank.end(), [&](std::uint32_t a, std::uint32_t b) {
        const double ma = std::abs(llr[a]), mb = std::abs(llr[b]);
        if (ma != mb) return ma < mb;
        return a < b;
    });
    ops.cmp(static_cast<std::uint64_t>(n) * std::bit_width(static_cast<std::uint64_t>(n)));

    BitVec hard = hard_decision(llr);

    const std::uint32_t np = n - k;
    const std::size_t sw = (np + 63) / 64;
    // column syndromes in rank order
    std::vector<std::uint64_t> col(static_cast<std::size_t>(n) * sw, 0);
    for (std::uint32_t r = 0; r < n; ++r) {
        const std::uint32_t c = pos_of_rank[r];
        for (std::uint32_t row = 0; row < np; ++row)
            if (code.h.get(row, c)) col[r * sw + (row >> 6)] |= std::uint64_t(1) << (row & 63);
    }
    BitVec s0v = syndrome(code.h, hard, &ops);
    std::vector<std::uint64_t> s0(s0v.words().begin(), s0v.words().end());

    auto apply_and_check = [&](auto&& for_each_rank) {
        thread_local std::vector<std::uint64_t> s;
        s = s0;
        for_each_rank([&](std::uint32_t rank0) {  // zero-based rank
            for (std::size_t w = 0; w < sw; ++w) s[w] ^= col[rank0 * sw + w];
            ops.add(sw);
        });
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < sw; ++w) acc |= s[w];
        ops.cmp(1);
        return acc == 0;
    };

    std::uint64_t found_mask = 0;  // over zero-based ranks (exact mode)
    std::vector<std::uint32_t> found_parts;
    bool found = false;

    if (config.ordering == GrandOrdering::ExactLikelihood) {
        if (n > 64) throw UnsupportedParams("exact-likelihood GRAND requires n <= 64");
        std::vector<double> sorted_abs(n);
        for (std::uint32_t r = 0; r < n; ++r) sorted_abs[r] = std::abs(llr[pos_of_rank[r]]);
        ExactLikelihoodIter it(sorted_abs);
        std::uint64_t mask;
        while (res.queries < config.max_queries && it.next(mask)) {
            ++res.queries;
            const bool ok = apply_and_check([&](auto&& visit) {
                std::uint64_t m = mask;
                while (m) {
                    visit(static_cast<std::uint32_t>(std::countr_zero(m)));
                    m &= m - 1;
                }
            });
            if (ok) {
                found = true;
                found_mask = mask;
                break;
            }
            if (config.op_cap && ops.total() >= config.op_cap) break;
        }
    } else {
        LogisticScheduleIter it(n);
        std::vector<std::uint32_t> parts;
        while (res.queries < config.max_queries && it.next(parts)) {
            ++res.queries;
            const bool ok = apply_and_check([&](auto&& visit) {
                for (std::uint32_t p : parts) visit(p - 1);
            });
            if (ok) {
                found = true;
                found_parts = parts;
                break;
            }
            if (config.op_cap && ops.total() >= config.op_cap) break;
        }
    }

    if (!found) {
        res.status = DecodeStatus::Abandoned;
        res.has_candidate = false;
        return res;
    }

    BitVec cw = hard;
    if (config.ordering == GrandOrdering::ExactLikelihood) {
        std::uint64_t m = found_mask;
        while (m) {
            cw.flip(pos_of_rank[std::countr_zero(m)]);
            m &= m - 1;
        }
    } else {
        for (std::uint32_t p : found_parts) cw.flip(pos_of_rank[p - 1]);
    }
    res.status = DecodeStatus::Ok;
    res.has_candidate = true;
    res.score = soft_distance(cw, hard, llr);
    res.info = code.info_from_codeword(cw);
    res.codeword = std::move(cw);
    return res;
}

double query_bound(std::uint32_t n, std::uint32_t k, double p) {
    if (!(p > 0.0) || p > 0.5) throw UnsupportedParams("query_bound: need 0 < p <= 1/2");
    const double h_half = 2.0 * std::log2(std::sqrt(p) + std::sqrt(1.0 - p));
    const double rate_term = 1.0 - static_cast<double>(k) / static_cast<double>(n);
    return std::exp2(static_cast<double>(n) * std::min(h_half, rate_term));
}

double bsc_crossover(double es_n0_db) {
    return q_func(std::sqrt(std::pow(10.0, es_n0_db / 10.0)));
}

}  // namespace scw
