#include "scw/osd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scw {

int order_for_ml(std::uint32_t dh) {
    if (dh < 1) throw ConfigInvalid("order_for_ml: dh >= 1 required");
    return static_cast<int>((dh - 1) / 4);
}

bool pb_keep_searching(double best_score, int next_tep_weight,
                       std::span<const double> mrb_abs_llr, double pb_threshold,
                       OpCounters* ops) {
    if (best_score == 0.0) return false;
    if (pb_threshold <= 0.0) return true;
    const std::size_t k = mrb_abs_llr.size();
    const int w = next_tep_weight;
    // P(sum of Bernoulli(p_i) >= w) via the truncated Poisson-binomial DP
    std::vector<double> dist(static_cast<std::size_t>(w) + 1, 0.0);
    dist[0] = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double p = 1.0 / (1.0 + std::exp(mrb_abs_llr[i]));
        for (int j = w; j >= 1; --j) dist[j] = dist[j] * (1.0 - p) + dist[j - 1] * p;
        dist[0] *= 1.0 - p;
    }
    if (ops) {
        ops->mul(k * (static_cast<std::uint64_t>(w) * 2 + 3));
        ops->add(k * (static_cast<std::uint64_t>(w) + 1));
        ops->cmp(1);
    }
    double head = 0.0;
    for (int j = 0; j < w; ++j) head += dist[j];
    return 1.0 - head >= pb_threshold;
}

bool TepEnumerator::next(std::vector<std::uint32_t>& support) {
    if (w_ < 0) {  // first call: empty support
        w_ = 0;
        support.clear();
        return true;
    }
    if (w_ == 0 || !advance_within_class(support)) {
        ++w_;
        if (w_ > order_ || static_cast<std::uint32_t>(w_) > k_) return false;
        cur_.resize(static_cast<std::size_t>(w_));
        std::iota(cur_.begin(), cur_.end(), 0u);
        support = cur_;
        return true;
    }
    return true;
}

bool TepEnumerator::advance_within_class(std::vector<std::uint32_t>& support) {
    const std::size_t w = cur_.size();
    std::size_t j = 0;
    while (j < w) {
        const std::uint32_t limit = (j + 1 < w) ? cur_[j + 1] : k_;
        if (cur_[j] + 1 < limit) break;
        ++j;
    }
    if (j == w) return false;
    ++cur_[j];
    for (std::size_t i = 0; i < j; ++i) cur_[i] = static_cast<std::uint32_t>(i);
    support = cur_;
    return true;
}

namespace {

struct PermutedView {
    Permutation effective;
    std::vector<double> abs_llr;  // permuted |LLR|, descending
    BitVec hard;                  // permuted hard decisions
};

PermutedView reliability_view(const LlrVector& llr, const BitMatrix& g, OpCounters& ops,
                              GaussResult& gauss_out) {
    const std::size_t n = llr.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const double ma = std::abs(llr[a]), mb = std::abs(llr[b]);
        if (ma != mb) return ma > mb;
        return a < b;
    });
    ops.cmp(static_cast<std::uint64_t>(n) * (std::bit_width(n) ? std::bit_width(n) : 1));

    gauss_out = gauss_systematic(g, Permutation(std::move(order)), &ops);
    PermutedView v;
    v.effective = gauss_out.effective;
    v.abs_llr.resize(n);
    v.hard = BitVec(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = llr[v.effective.map[j]];
        v.abs_llr[j] = std::abs(x);
        if (x < 0.0) v.hard.set(j, true);
    }
    return v;
}

}  // namespace

DecodeResult osd_decode(const Code& code, const LlrVector& llr, const OsdConfig& config) {
    const std::uint32_t n = code.n(), k = code.k();
    if (llr.size() != n) throw DimensionMismatch("osd_decode: llr length != n");
    int order = config.order;
    if (order < 0) {
        if (!code.dh) throw ConfigInvalid("osd_decode: order unset and code has no dh");
        order = order_for_ml(*code.dh);
    }
    if (order > static_cast<int>(k)) throw ConfigInvalid("osd_decode: order > k");

    DecodeResult res;
    OpCounters& ops = res.counters;

    GaussResult gauss;
    PermutedView view = reliability_view(llr, code.g, ops, gauss);
    const BitMatrix& gsys = gauss.systematic;

    // parity part of each generator row, and of the MRB hard decisions
    const std::uint32_t np = n - k;
    const std::size_t pw = (np + 63) / 64;
    std::vector<std::uint64_t> prow(static_cast<std::size_t>(k) * pw, 0);
    for (std::uint32_t r = 0; r < k; ++r)
        for (std::uint32_t j = 0; j < np; ++j)
            if (gsys.get(r, k + j)) prow[r * pw + (j >> 6)] |= std::uint64_t(1) << (j & 63);

    std::vector<std::uint64_t> hard_par(pw, 0), base_par(pw, 0);
    for (std::uint32_t j = 0; j < np; ++j)
        if (view.hard.get(k + j)) hard_par[j >> 6] |= std::uint64_t(1) << (j & 63);
    for (std::uint32_t i = 0; i < k; ++i) {
        if (!view.hard.get(i)) continue;
        for (std::size_t w = 0; w < pw; ++w) base_par[w] ^= prow[i * pw + w];
        ops.add(pw);
    }

    const double* par_abs = view.abs_llr.data() + k;
    auto parity_mismatch_cost = [&](const std::vector<std::uint64_t>& par) {
        double acc = 0.0;
        std::uint64_t cnt = 0;
        for (std::size_t w = 0; w < pw; ++w) {
            std::uint64_t diff = par[w] ^ hard_par[w];
            while (diff) {
                const unsigned b = std::countr_zero(diff);
                acc += par_abs[w * 64 + b];
                diff &= diff - 1;
                ++cnt;
            }
        }
        ops.add(pw + cnt);
        return acc;
    };

    // abs values indexed from the least reliable MRB position
    std::vector<double> abs_t(k);
    for (std::uint32_t t = 0; t < k; ++t) abs_t[t] = view.abs_llr[k - 1 - t];
    std::vector<double> prefix_sum(static_cast<std::size_t>(order) + 2, 0.0);
    for (int w = 1; w <= order + 1 && w <= static_cast<int>(k); ++w)
        prefix_sum[w] = prefix_sum[w - 1] + abs_t[w - 1];

    // current TEP state
    std::vector<std::uint64_t> cur_par = base_par;
    std::vector<std::uint32_t> cur_support;  // t-space, ascending
    double cur_flipsum = 0.0;

    double best_score = parity_mismatch_cost(base_par);
    std::vector<std::uint32_t> best_support;
    res.queries = 1;

    auto flip_row = [&](std::uint32_t t) {
        const std::uint32_t i = k - 1 - t;
        for (std::size_t w = 0; w < pw; ++w) cur_par[w] ^= prow[i * pw + w];
        ops.add(pw);
    };

    // original-domain codeword of a TEP support (for output and the shared
    // equal-score tie rule: lexicographically smaller codeword wins)
    auto assemble = [&](const std::vector<std::uint32_t>& support) {
        BitVec cand_info(k);
        for (std::uint32_t i = 0; i < k; ++i) cand_info.set(i, view.hard.get(i));
        std::vector<std::uint64_t> par = base_par;
        for (std::uint32_t t : support) {
            const std::uint32_t i = k - 1 - t;
            cand_info.flip(i);
            for (std::size_t w = 0; w < pw; ++w) par[w] ^= prow[i * pw + w];
        }
        BitVec cw(n);
        for (std::uint32_t i = 0; i < k; ++i)
            if (cand_info.get(i)) cw.set(view.effective.map[i], true);
        for (std::uint32_t j = 0; j < np; ++j)
            if ((par[j >> 6] >> (j & 63)) & 1u) cw.set(view.effective.map[k + j], true);
        return cw;
    };

    std::span<const double> mrb_abs(view.abs_llr.data(), k);
    bool abandoned = false;

    for (int w = 1; w <= order && !abandoned; ++w) {
        if (static_cast<std::uint32_t>(w) > k) break;
        ops.cmp(1);
        if (prefix_sum[w] >= best_score) break;  // no remaining TEP can win
        if (config.variant == OsdVariant::Pb &&
            !pb_keep_searching(best_score, w, mrb_abs, config.pb_threshold, &ops))
            break;

        // enter the class at support {0..w-1}
        for (std::uint32_t t : cur_support) flip_row(t);
        cur_support.resize(static_cast<std::size_t>(w));
        std::iota(cur_support.begin(), cur_support.end(), 0u);
        for (std::uint32_t t : cur_support) flip_row(t);
        cur_flipsum = prefix_sum[w];

        while (true) {
            ++res.queries;
            ops.cmp(1);
            if (cur_flipsum < best_score) {
                const double score = cur_flipsum + parity_mismatch_cost(cur_par);
                ops.cmp(1);
                if (score < best_score) {
                    best_score = score;
                    best_support = cur_support;
                } else if (score == best_score &&
                           BitVec::lex_compare(assemble(cur_support), assemble(best_support)) < 0) {
                    best_support = cur_support;
                }
            }
            if (config.op_cap && ops.total() >= config.op_cap) {
                abandoned = true;
                break;
            }
            // colex successor within the class
            std::size_t j = 0;
            while (j < cur_support.size()) {
                const std::uint32_t limit =
                    (j + 1 < cur_support.size()) ? cur_support[j + 1] : k;
                if (cur_support[j] + 1 < limit) break;
                ++j;
            }
            if (j == cur_support.size()) break;  // class done
            flip_row(cur_support[j]);
            ++cur_support[j];
            flip_row(cur_support[j]);
            cur_flipsum += abs_t[cur_support[j]] - abs_t[cur_support[j] - 1];
            ops.add(2);
            for (std::size_t i = 0; i < j; ++i) {
                const std::uint32_t old = cur_support[i];
                if (old != static_cast<std::uint32_t>(i)) {
                    flip_row(old);
                    cur_support[i] = static_cast<std::uint32_t>(i);
                    flip_row(cur_support[i]);
                    cur_flipsum += abs_t[i] - abs_t[old];
                    ops.add(2);
                }
            }
        }
    }

    res.status = abandoned ? DecodeStatus::Abandoned : DecodeStatus::Ok;
    res.has_candidate = true;
    res.codeword = assemble(best_support);
    res.info = code.info_from_codeword(res.codeword);
    res.score = best_score;
    return res;
}

}  // namespace scw
