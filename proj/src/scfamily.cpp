#include "scw/scfamily.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>

namespace scw {

namespace {

constexpr double kPinnedLlr = 1e30;  // shortened positions: bit known to be 0

inline double softplus_neg(double z) {
    // ln(1 + e^{-z}) evaluated stably
    if (z >= 0.0) return std::log1p(std::exp(-z));
    return -z + std::log1p(std::exp(z));
}

// exact check-node combination ln((1+e^{a+b})/(e^a+e^b))
inline double f_exact(double a, double b) {
    const double s = a + b;
    const double d = a - b;
    const double ms = std::max(s, 0.0);
    const double mab = std::max(a, b);
    return ms + std::log1p(std::exp(-std::abs(s))) - mab - std::log1p(std::exp(-std::abs(d)));
}

struct PathState {
    std::vector<std::vector<double>> alpha;    // [d], size n>>d; alpha[0] = channel
    std::vector<std::vector<std::uint8_t>> beta_left;  // [d], size n>>d
    BitVec u_hat;
    BitVec v_hat;  // pre-precoder bits (PAC); equals u_hat otherwise
    BitVec codeword;
    double metric = 0.0;
    std::uint32_t next_leaf = 0;
    std::uint64_t conv_reg = 0;
    std::uint64_t serial = 0;
};

class TreeEngine {
  public:
    TreeEngine(const PolarDescriptor& desc, const LlrVector& llr_in, std::uint64_t op_cap)
        : desc_(desc), op_cap_(op_cap), n_(desc.n), m_(desc.m) {
        if (desc_.n == 0 || (desc_.n & (desc_.n - 1)) != 0)
            throw UnsupportedParams("search decode: descriptor length not a power of two");
        llr_.reserve(n_);
        if (desc_.pinned.empty()) {
            if (llr_in.size() != n_)
                throw DimensionMismatch("search decode: llr length != n");
            llr_ = llr_in;
        } else {
            if (llr_in.size() + desc_.pinned.size() != n_)
                throw DimensionMismatch("search decode: llr length + pinned != n");
            std::size_t next = 0;
            std::vector<char> is_pinned(n_, 0);
            for (std::uint32_t p : desc_.pinned) is_pinned[p] = 1;
            for (std::uint32_t i = 0; i < n_; ++i)
                llr_.push_back(is_pinned[i] ? kPinnedLlr : llr_in[next++]);
        }
    }

    PathState make_root() {
        PathState p;
        p.alpha.resize(m_ + 1);
        p.beta_left.resize(m_ + 1);
        for (std::uint32_t d = 0; d <= m_; ++d) {
            p.alpha[d].resize(n_ >> d);
            if (d >= 1) p.beta_left[d].resize(n_ >> d);
        }
        p.alpha[0] = llr_;
        p.u_hat = BitVec(n_);
        p.v_hat = BitVec(n_);
        p.serial = next_serial_++;
        return p;
    }

    // compute alpha[m][0] for p.next_leaf
    void leaf_alpha(PathState& p) {
        const std::uint32_t i = p.next_leaf;
        std::uint32_t d0;
        if (i == 0) {
            d0 = 1;
        } else {
            d0 = m_ - static_cast<std::uint32_t>(std::countr_zero(i));
            g_fill(p, d0);
            ++d0;
        }
        for (std::uint32_t d = d0; d <= m_; ++d) f_fill(p, d);
    }

    // whether the current leaf branches (two candidate extensions)
    bool leaf_is_free(const PathState& p) const {
        return desc_.leaf[p.next_leaf] == LeafKind::Info;
    }

    // u bit for a non-branching leaf (or the precoder output for branch bit v)
    bool leaf_u_bit(const PathState& p, bool v_bit) const {
        const std::uint32_t i = p.next_leaf;
        if (desc_.is_pac()) {
            const std::uint64_t reg = (p.conv_reg << 1) | (v_bit ? 1u : 0u);
            return std::popcount(reg & desc_.conv_poly) & 1u;
        }
        if (desc_.leaf[i] == LeafKind::Info) return v_bit;
        if (desc_.leaf[i] == LeafKind::Dynamic) {
            const auto& mask = desc_.dyn_mask[i];
            std::uint64_t acc = 0;
            auto mw = mask.words();
            auto uw = p.u_hat.words();
            for (std::size_t w = 0; w < mw.size(); ++w) acc ^= mw[w] & uw[w];
            return std::popcount(acc) & 1u;
        }
        return false;
    }

    double penalty(const PathState& p, bool u_bit) {
        ops_.add(1);
        ops_.mul(2);
        ops_.cmp(2);
        const double a = p.alpha[m_][0];
        return softplus_neg(u_bit ? -a : a);
    }

    // decide leaf p.next_leaf with branch bit v (ignored unless free/PAC)
    void apply_decision(PathState& p, bool v_bit) {
        const std::uint32_t i = p.next_leaf;
        const bool u = leaf_u_bit(p, v_bit);
        p.metric += penalty(p, u);
        const bool v = desc_.leaf[i] == LeafKind::Info ? v_bit : (desc_.is_pac() ? false : u);
        if (u) p.u_hat.set(i, true);
        if (v) p.v_hat.set(i, true);
        if (desc_.is_pac()) p.conv_reg = (p.conv_reg << 1) | (v ? 1u : 0u);

        // propagate partial sums
        scratch_.assign(1, u ? 1 : 0);
        std::uint32_t d = m_;
        while (d >= 1 && ((i >> (m_ - d)) & 1u)) {
            const std::size_t half = scratch_.size();
            scratch2_.resize(2 * half);
            const auto& left = p.beta_left[d];
            for (std::size_t j = 0; j < half; ++j) {
                scratch2_[j] = left[j] ^ scratch_[j];
                scratch2_[half + j] = scratch_[j];
            }
            ops_.add(half);
            std::swap(scratch_, scratch2_);
            --d;
        }
        if (d >= 1) {
            p.beta_left[d] = scratch_;
        } else {
            p.codeword = BitVec(n_);
            for (std::uint32_t j = 0; j < n_; ++j)
                if (scratch_[j]) p.codeword.set(j, true);
        }
        ++p.next_leaf;
    }

    PathState clone(const PathState& p) {
        PathState q = p;
        q.serial = next_serial_++;
        return q;
    }

    bool over_op_cap() const { return op_cap_ && ops_.total() >= op_cap_; }

    // descriptor-level info bits of a finished path (payload only under CRC)
    BitVec extract_info(const PathState& p) const {
        const BitVec& src = desc_.is_pac() ? p.v_hat : p.u_hat;
        const std::size_t len = desc_.has_crc() ? desc_.payload_len : desc_.info_set.size();
        BitVec info(len);
        for (std::size_t t = 0; t < len; ++t)
            if (src.get(desc_.info_set[t])) info.set(t, true);
        return info;
    }

    bool crc_passes(const PathState& p) {
        if (!desc_.has_crc()) return true;
        const BitVec& src = desc_.is_pac() ? p.v_hat : p.u_hat;
        BitVec payload(desc_.payload_len);
        for (std::uint32_t t = 0; t < desc_.payload_len; ++t)
            if (src.get(desc_.info_set[t])) payload.set(t, true);
        Crc crc(desc_.crc_poly);
        BitVec rem = crc.compute(payload);
        for (std::size_t j = 0; j < rem.size(); ++j)
            if (rem.get(j) != src.get(desc_.info_set[desc_.payload_len + j])) return false;
        return true;
    }

    DecodeResult finish(const PathState& p, DecodeStatus status) {
        DecodeResult res;
        res.status = status;
        res.has_candidate = true;
        res.codeword = strip_pinned(p.codeword);
        res.info = extract_info(p);
        res.counters = ops_;
        res.queries = kernels_;
        // score vs the hard decision of the caller's llr view
        LlrVector visible;
        if (desc_.pinned.empty()) {
            visible = llr_;
        } else {
            std::vector<char> is_pinned(n_, 0);
            for (std::uint32_t q : desc_.pinned) is_pinned[q] = 1;
            for (std::uint32_t i = 0; i < n_; ++i)
                if (!is_pinned[i]) visible.push_back(llr_[i]);
        }
        BitVec hard(visible.size());
        for (std::size_t i = 0; i < visible.size(); ++i)
            if (visible[i] < 0.0) hard.set(i, true);
        res.score = soft_distance(res.codeword, hard, visible);
        return res;
    }

    DecodeResult abandoned() {
        DecodeResult res;
        res.status = DecodeStatus::Abandoned;
        res.has_candidate = false;
        res.counters = ops_;
        res.queries = kernels_;
        return res;
    }

    const OpCounters& ops() const { return ops_; }
    std::uint64_t kernels() const { return kernels_; }
    std::uint32_t n() const { return n_; }

  private:
    BitVec strip_pinned(const BitVec& cw) const {
        if (desc_.pinned.empty()) return cw;
        std::vector<char> is_pinned(n_, 0);
        for (std::uint32_t q : desc_.pinned) is_pinned[q] = 1;
        BitVec out(n_ - desc_.pinned.size());
        std::size_t j = 0;
        for (std::uint32_t i = 0; i < n_; ++i)
            if (!is_pinned[i]) out.set(j++, cw.get(i));
        return out;
    }

    void f_fill(PathState& p, std::uint32_t d) {
        const std::size_t half = n_ >> d;
        const auto& src = p.alpha[d - 1];
        auto& dst = p.alpha[d];
        for (std::size_t j = 0; j < half; ++j) dst[j] = f_exact(src[j], src[j + half]);
        kernels_ += half;
        ops_.add(5 * half);
        ops_.mul(4 * half);
        ops_.cmp(4 * half);
    }

    void g_fill(PathState& p, std::uint32_t d) {
        const std::size_t half = n_ >> d;
        const auto& src = p.alpha[d - 1];
        const auto& left = p.beta_left[d];
        auto& dst = p.alpha[d];
        for (std::size_t j = 0; j < half; ++j)
            dst[j] = src[j + half] + (left[j] ? -src[j] : src[j]);
        kernels_ += half;
        ops_.add(half);
        ops_.cmp(half);
    }

    const PolarDescriptor& desc_;
    LlrVector llr_;
    OpCounters ops_;
    std::uint64_t kernels_ = 0;
    std::uint64_t op_cap_ = 0;
    std::uint64_t next_serial_ = 0;
    std::uint32_t n_, m_;
    std::vector<std::uint8_t> scratch_, scratch2_;
};

DecodeResult finish_best_of(TreeEngine& eng, std::vector<PathState>& paths) {
    // min metric; exact ties resolved toward the lexicographically smaller
    // codeword (the shared tie rule)
    const PathState* best = nullptr;
    for (const auto& p : paths) {
        if (!best || p.metric < best->metric ||
            (p.metric == best->metric &&
             BitVec::lex_compare(p.codeword, best->codeword) < 0))
            best = &p;
    }
    return eng.finish(*best, DecodeStatus::Ok);
}

}  // namespace

double path_metric_update(double metric, double llr_value, bool bit) {
    return metric + softplus_neg(bit ? -llr_value : llr_value);
}

double sq_default_bias(const LlrVector& llr) {
    if (llr.empty()) return 0.0;
    double acc = 0.0;
    for (double v : llr) acc += softplus_neg(std::abs(v));
    return acc / static_cast<double>(llr.size());
}

DecodeResult scl_decode(const PolarDescriptor& desc, const LlrVector& llr, std::uint32_t L,
                        std::uint64_t op_cap) {
    if (L < 1) throw ConfigInvalid("scl_decode: L >= 1");
    TreeEngine eng(desc, llr, op_cap);
    std::vector<PathState> paths;
    paths.push_back(eng.make_root());

    for (std::uint32_t i = 0; i < desc.n; ++i) {
        for (auto& p : paths) eng.leaf_alpha(p);
        if (eng.over_op_cap()) return eng.abandoned();
        if (!eng.leaf_is_free(paths.front())) {
            for (auto& p : paths) eng.apply_decision(p, false);
            continue;
        }
        struct Cand {
            double metric;
            std::uint64_t serial;
            std::uint32_t idx;
            bool v;
        };
        std::vector<Cand> cands;
        cands.reserve(paths.size() * 2);
        for (std::uint32_t pi = 0; pi < paths.size(); ++pi) {
            auto& p = paths[pi];
            for (bool v : {false, true}) {
                const bool u = eng.leaf_u_bit(p, v);
                cands.push_back(Cand{p.metric + eng.penalty(p, u), p.serial, pi, v});
            }
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.metric != b.metric) return a.metric < b.metric;
            if (a.serial != b.serial) return a.serial < b.serial;
            return a.v < b.v;
        });
        if (cands.size() > static_cast<std::size_t>(L)) cands.resize(L);

        // clone all repeat uses of a parent before moving it out
        std::vector<PathState> next(cands.size());
        std::vector<int> first_use(paths.size(), -1);
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (first_use[cands[i].idx] < 0) first_use[cands[i].idx] = static_cast<int>(i);
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (first_use[cands[i].idx] != static_cast<int>(i))
                next[i] = eng.clone(paths[cands[i].idx]);
        for (std::size_t i = 0; i < cands.size(); ++i)
            if (first_use[cands[i].idx] == static_cast<int>(i))
                next[i] = std::move(paths[cands[i].idx]);
        for (std::size_t i = 0; i < cands.size(); ++i) eng.apply_decision(next[i], cands[i].v);
        paths = std::move(next);
        if (eng.over_op_cap()) return eng.abandoned();
    }

    if (desc.has_crc()) {
        std::vector<PathState> passing;
        for (auto& p : paths)
            if (eng.crc_passes(p)) passing.push_back(std::move(p));
        if (passing.empty()) {
            DecodeResult res = finish_best_of(eng, paths);
            res.status = DecodeStatus::Abandoned;  // no CRC-consistent path
            return res;
        }
        return finish_best_of(eng, passing);
    }
    return finish_best_of(eng, paths);
}

namespace {
// moved paths can't live in std::move-only multiset cleanly across
// implementations; keep them in a deque indexed by handle
struct StackEntry {
    double priority;
    std::uint64_t serial;
    std::uint32_t handle;
};
struct StackCmp {
    bool operator()(const StackEntry& a, const StackEntry& b) const {
        if (a.priority != b.priority) return a.priority < b.priority;
        return a.serial < b.serial;
    }
};
}  // namespace

// Cumulative expected penalty of the correct path up to each leaf, from the
// Bhattacharyya recursion at the SNR implied by the received LLRs. Used by the
// SQ auto bias: ln(1+z) is 0 for a perfect leaf and ln 2 for a useless one.
static std::vector<double> expected_penalty_schedule(const PolarDescriptor& desc,
                                                     const LlrVector& llr) {
    double mean_abs = 0.0;
    for (double v : llr) mean_abs += std::abs(v);
    mean_abs /= llr.empty() ? 1.0 : static_cast<double>(llr.size());
    const double gamma_hat = std::max(mean_abs / 2.0, 1e-6);  // channel LLR mean is 2*Es/N0
    const std::vector<double> z = bhattacharyya(desc.n, std::exp(-gamma_hat / 2.0));
    std::vector<double> cum(desc.n + 1, 0.0);
    for (std::uint32_t i = 0; i < desc.n; ++i) cum[i + 1] = cum[i] + std::log1p(z[i]);
    return cum;
}

static DecodeResult stack_search(const PolarDescriptor& desc, const LlrVector& llr,
                                 std::uint32_t L, double bias, std::uint32_t stack_cap,
                                 std::uint64_t op_cap, bool leaf_bias_schedule = false) {
    if (L < 1) throw ConfigInvalid("stack search: L >= 1");
    if (stack_cap == 0) stack_cap = 16 * L;
    if (stack_cap < L) throw ConfigInvalid("stack search: stack_cap >= L");

    TreeEngine eng(desc, llr, op_cap);
    std::vector<double> bias_cum;
    if (leaf_bias_schedule) bias_cum = expected_penalty_schedule(desc, llr);
    std::vector<PathState> pool;
    std::vector<std::uint32_t> free_handles;
    auto alloc = [&](PathState&& p) -> std::uint32_t {
        if (!free_handles.empty()) {
            const std::uint32_t h = free_handles.back();
            free_handles.pop_back();
            pool[h] = std::move(p);
            return h;
        }
        pool.push_back(std::move(p));
        return static_cast<std::uint32_t>(pool.size() - 1);
    };

    std::set<StackEntry, StackCmp> store;
    std::vector<std::uint32_t> visits(desc.n, 0);

    auto priority_of = [&](const PathState& p) {
        if (leaf_bias_schedule) return p.metric - bias_cum[p.next_leaf];
        return p.metric - bias * static_cast<double>(p.next_leaf);
    };

    PathState root = eng.make_root();
    const double root_pri = priority_of(root);
    const std::uint64_t root_serial = root.serial;
    store.insert(StackEntry{root_pri, root_serial, alloc(std::move(root))});

    while (!store.empty()) {
        if (eng.over_op_cap()) return eng.abandoned();
        auto it = store.begin();
        const std::uint32_t h = it->handle;
        store.erase(it);
        PathState p = std::move(pool[h]);
        free_handles.push_back(h);

        if (p.next_leaf == desc.n) {
            if (eng.crc_passes(p)) return eng.finish(p, DecodeStatus::Ok);
            continue;  // CRC-filtered
        }

        if (eng.leaf_is_free(p)) {
            if (visits[p.next_leaf] >= L) continue;  // per-depth visit cap
            ++visits[p.next_leaf];
            eng.leaf_alpha(p);
            PathState q = eng.clone(p);
            eng.apply_decision(p, false);
            eng.apply_decision(q, true);
            store.insert(StackEntry{priority_of(p), p.serial, alloc(std::move(p))});
            store.insert(StackEntry{priority_of(q), q.serial, alloc(std::move(q))});
        } else {
            eng.leaf_alpha(p);
            eng.apply_decision(p, false);
            store.insert(StackEntry{priority_of(p), p.serial, alloc(std::move(p))});
        }
        while (store.size() > stack_cap) {
            auto worst = std::prev(store.end());
            free_handles.push_back(worst->handle);
            store.erase(worst);
        }
    }
    return eng.abandoned();
}

DecodeResult scs_decode(const PolarDescriptor& desc, const LlrVector& llr, std::uint32_t L,
                        std::uint32_t stack_cap, std::uint64_t op_cap) {
    return stack_search(desc, llr, L, 0.0, stack_cap, op_cap);
}

DecodeResult sq_decode(const PolarDescriptor& desc, const LlrVector& llr, std::uint32_t L,
                       double bias, std::uint32_t stack_cap, std::uint64_t op_cap) {
    // auto bias uses the per-leaf expected-penalty schedule; an explicit value
    // applies linearly per depth (bias 0 reproduces SCS)
    if (std::isnan(bias)) return stack_search(desc, llr, L, 0.0, stack_cap, op_cap, true);
    return stack_search(desc, llr, L, bias, stack_cap, op_cap);
}

DecodeResult sc_decode(const PolarDescriptor& desc, const LlrVector& llr,
                       std::uint64_t op_cap) {
    return scl_decode(desc, llr, 1, op_cap);
}

DecodeResult search_decode(const PolarDescriptor& desc, const LlrVector& llr,
                           const SearchConfig& config) {
    switch (config.mode) {
        case SearchMode::Sc: return sc_decode(desc, llr, config.op_cap);
        case SearchMode::Scl:
            return scl_decode(desc, llr, config.list_size, config.op_cap);
        case SearchMode::Scs:
            return scs_decode(desc, llr, config.list_size, config.stack_cap, config.op_cap);
        case SearchMode::Sq:
            return sq_decode(desc, llr, config.list_size, config.bias, config.stack_cap,
                             config.op_cap);
    }
    throw ConfigInvalid("search_decode: unknown mode");
}

PolarDescriptor dynamic_frozen_descriptor(const Code& code) {
    const std::uint32_t n = code.n(), k = code.k();
    if (n < 2 || (n & (n - 1)) != 0)
        throw UnsupportedParams("dynamic_frozen_descriptor: n must be a power of two");

    // constraints: B u^T = 0 with B = H * (F^{(x)m})^T
    std::vector<BitVec> pivots(n);
    std::vector<char> has_pivot(n, 0);
    auto highest_bit = [](const BitVec& v) -> int {
        auto w = v.words();
        for (std::size_t i = w.size(); i-- > 0;)
            if (w[i]) return static_cast<int>(i * 64 + 63 - std::countl_zero(w[i]));
        return -1;
    };
    for (std::uint32_t r = 0; r < n - k; ++r) {
        BitVec row = code.h.row_vec(r);
        polar_transform_t(row);
        while (true) {
            const int t = highest_bit(row);
            if (t < 0) throw RankDeficient("dynamic_frozen_descriptor: dependent H rows");
            if (!has_pivot[t]) {
                pivots[t] = std::move(row);
                has_pivot[t] = 1;
                break;
            }
            row.xor_with(pivots[t]);
        }
    }

    PolarDescriptor desc;
    desc.n = n;
    desc.m = static_cast<std::uint32_t>(std::countr_zero(n));
    desc.leaf.assign(n, LeafKind::Frozen);
    desc.dyn_mask.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!has_pivot[i]) {
            desc.leaf[i] = LeafKind::Info;
            desc.info_set.push_back(i);
        } else {
            BitVec mask = pivots[i];
            mask.flip(i);
            if (mask.is_zero()) {
                desc.leaf[i] = LeafKind::Frozen;
            } else {
                desc.leaf[i] = LeafKind::Dynamic;
                desc.dyn_mask[i] = std::move(mask);
            }
        }
    }
    return desc;
}

PolarDescriptor descriptor_for(const Code& code) {
    if (code.descriptor) return *code.descriptor;
    return dynamic_frozen_descriptor(code);
}

}  // namespace scw
