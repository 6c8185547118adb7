// Greedy union-bound-driven random code selection and rate-compatible
// family assembly.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "scw/codes.hpp"
#include "scw/rng.hpp"

namespace scw {

namespace {

std::vector<double> q_table(std::uint32_t max_d, double es_n0_db) {
    const double gamma = std::pow(10.0, es_n0_db / 10.0);
    std::vector<double> q(max_d + 1, 0.0);
    for (std::uint32_t d = 0; d <= max_d; ++d)
        q[d] = q_func(std::sqrt(static_cast<double>(d) * gamma));
    return q;
}

// message-indexed codeword-bit parities for one candidate column
// phi[m] = parity(m & mask), built incrementally
void fill_parity(std::vector<std::uint8_t>& phi, std::uint32_t mask, std::uint32_t msgs) {
    phi[0] = 0;
    for (std::uint32_t msg = 1; msg < msgs; ++msg) {
        const unsigned low = std::countr_zero(msg);
        phi[msg] = phi[msg & (msg - 1)] ^ static_cast<std::uint8_t>((mask >> low) & 1u);
    }
}

struct GreedyColumns {
    std::vector<std::uint32_t> masks;     // appended columns (bit i = row i)
    std::vector<std::uint16_t> weights;   // per-message codeword weight at final length
};

GreedyColumns greedy_columns(std::uint32_t n, std::uint32_t k, std::uint64_t seed,
                             std::uint32_t candidates_per_step,
                             const std::function<double(std::uint32_t)>& eval_snr_at) {
    const std::uint32_t msgs = 1u << k;
    GreedyColumns out;
    out.weights.resize(msgs);
    for (std::uint32_t m = 0; m < msgs; ++m)
        out.weights[m] = static_cast<std::uint16_t>(std::popcount(m));

    std::vector<std::uint8_t> phi(msgs);
    for (std::uint32_t col = k; col < n; ++col) {
        const auto qt = q_table(col + 1, eval_snr_at(col + 1));
        Rng rng(Rng::mix(Rng::mix(seed ^ 0x5EEDC01u) + 0x9E3779B97F4A7C15ull * (col + 1)));
        double best_bound = 0.0;
        std::uint32_t best_mask = 0;
        bool have_best = false;
        for (std::uint32_t c = 0; c < candidates_per_step; ++c) {
            const std::uint32_t mask = static_cast<std::uint32_t>(rng.next_u64()) & (msgs - 1);
            fill_parity(phi, mask, msgs);
            double bound = 0.0;
            for (std::uint32_t m = 1; m < msgs; ++m) bound += qt[out.weights[m] + phi[m]];
            if (!have_best || bound < best_bound) {
                best_bound = bound;
                best_mask = mask;
                have_best = true;
            }
        }
        fill_parity(phi, best_mask, msgs);
        for (std::uint32_t m = 1; m < msgs; ++m)
            out.weights[m] = static_cast<std::uint16_t>(out.weights[m] + phi[m]);
        out.masks.push_back(best_mask);
    }
    return out;
}

Code assemble_greedy(std::uint32_t n, std::uint32_t k, std::uint64_t seed,
                     std::uint32_t candidates_per_step, double eval_db,
                     const GreedyColumns& cols) {
    BitMatrix g(k, n);
    for (std::uint32_t r = 0; r < k; ++r) g.set(r, r, true);
    for (std::uint32_t j = k; j < n; ++j) {
        const std::uint32_t mask = cols.masks[j - k];
        for (std::uint32_t r = 0; r < k; ++r)
            if ((mask >> r) & 1u) g.set(r, j, true);
    }
    Code code;
    code.spec = CodeSpec{CodeFamily::RandomGreedy, n, k, {}};
    code.spec.params.seed = seed;
    code.spec.params.candidates_per_step = candidates_per_step;
    code.spec.params.eval_es_n0_db = eval_db;
    code.g = std::move(g);
    code.finalize();
    return code;
}

}  // namespace

Code greedy_select_random(std::uint32_t n, std::uint32_t k, std::uint64_t seed,
                          std::uint32_t candidates_per_step, double eval_es_n0_db) {
    if (k < 1 || k > n) throw UnsupportedParams("greedy_select_random: need 1 <= k <= n");
    if (k > 20)
        throw UnsupportedParams("greedy_select_random: exhaustive spectrum requires k <= 20");
    if (candidates_per_step < 1)
        throw UnsupportedParams("greedy_select_random: need at least one candidate per step");
    auto cols = greedy_columns(n, k, seed, candidates_per_step,
                               [&](std::uint32_t) { return eval_es_n0_db; });
    return assemble_greedy(n, k, seed, candidates_per_step, eval_es_n0_db, cols);
}

RcFamily build_rc(const CodeSpec& spec, const std::vector<std::uint32_t>& lengths,
                  const std::function<double(std::uint32_t)>& eval_snr_at) {
    if (lengths.empty() || !std::is_sorted(lengths.begin(), lengths.end()))
        throw ConfigInvalid("build_rc: lengths must be ascending");
    const std::uint32_t k = spec.k;
    const std::uint32_t n_max = lengths.back();
    if (lengths.front() <= k) throw ConfigInvalid("build_rc: lengths must exceed k");
    if (k > 20) throw UnsupportedParams("build_rc: requires k <= 20");

    RcFamily fam;
    fam.k = k;
    fam.lengths = lengths;
    fam.keep.resize(lengths.size());

    if (spec.family == CodeFamily::RandomGreedy) {
        auto cols = greedy_columns(n_max, k, spec.params.seed, spec.params.candidates_per_step,
                                   eval_snr_at);
        fam.mother = assemble_greedy(n_max, k, spec.params.seed, spec.params.candidates_per_step,
                                     eval_snr_at(n_max), cols);
        for (std::size_t li = 0; li < lengths.size(); ++li) {
            fam.keep[li].resize(lengths[li]);
            std::iota(fam.keep[li].begin(), fam.keep[li].end(), 0u);
        }
        return fam;
    }

    CodeSpec mother_spec = spec;
    mother_spec.n = n_max;
    fam.mother = build_code(mother_spec);

    // greedy column removal; per-message codeword table keeps re-evaluation cheap
    const std::uint32_t msgs = 1u << k;
    const std::size_t wpr = (n_max + 63) / 64;
    std::vector<std::uint64_t> cw(static_cast<std::size_t>(msgs) * wpr, 0);
    std::vector<std::uint16_t> weights(msgs, 0);
    for (std::uint32_t m = 1; m < msgs; ++m) {
        const unsigned bit = std::countr_zero(m);
        std::uint64_t* dst = cw.data() + static_cast<std::size_t>(m) * wpr;
        const std::uint64_t* prev = cw.data() + static_cast<std::size_t>(m & (m - 1)) * wpr;
        auto row = fam.mother.g.row(bit);
        std::uint16_t w = 0;
        for (std::size_t j = 0; j < wpr; ++j) {
            dst[j] = prev[j] ^ row[j];
            w = static_cast<std::uint16_t>(w + std::popcount(dst[j]));
        }
        weights[m] = w;
    }

    std::vector<char> removed(n_max, 0);
    std::uint32_t cur_len = n_max;
    auto record_if_needed = [&]() {
        for (std::size_t li = 0; li < lengths.size(); ++li) {
            if (lengths[li] != cur_len || !fam.keep[li].empty()) continue;
            for (std::uint32_t c = 0; c < n_max; ++c)
                if (!removed[c]) fam.keep[li].push_back(c);
        }
    };
    record_if_needed();

    while (cur_len > lengths.front()) {
        const auto qt = q_table(cur_len, eval_snr_at(cur_len - 1));
        double best_bound = 0.0;
        std::uint32_t best_col = n_max;
        for (std::uint32_t c = 0; c < n_max; ++c) {
            if (removed[c]) continue;
            const std::size_t word = c >> 6;
            const std::uint64_t mask = std::uint64_t(1) << (c & 63);
            double bound = 0.0;
            bool valid = true;
            for (std::uint32_t m = 1; m < msgs; ++m) {
                const std::uint16_t w = static_cast<std::uint16_t>(
                    weights[m] - ((cw[static_cast<std::size_t>(m) * wpr + word] & mask) ? 1 : 0));
                if (w == 0) {
                    valid = false;
                    break;
                }
                bound += qt[w];
            }
            if (!valid) continue;
            if (best_col == n_max || bound < best_bound) {
                best_bound = bound;
                best_col = c;
            }
        }
        if (best_col == n_max)
            throw RankDeficient("build_rc: no column can be removed without losing rank");
        const std::size_t word = best_col >> 6;
        const std::uint64_t mask = std::uint64_t(1) << (best_col & 63);
        for (std::uint32_t m = 1; m < msgs; ++m)
            if (cw[static_cast<std::size_t>(m) * wpr + word] & mask) --weights[m];
        removed[best_col] = 1;
        --cur_len;
        record_if_needed();
    }
    return fam;
}

}  // namespace scw
