#include "scw/codes.hpp"

#include <algorithm>
#include <cmath>

#include "scw/rng.hpp"

namespace scw {

std::string family_name(CodeFamily f) {
    switch (f) {
        case CodeFamily::Ebch: return "EBCH";
        case CodeFamily::Polar: return "POLAR";
        case CodeFamily::CrcPolar: return "CRC_POLAR";
        case CodeFamily::Pac: return "PAC";
        case CodeFamily::Random: return "RANDOM";
        case CodeFamily::RandomGreedy: return "RANDOM_GREEDY";
    }
    return "?";
}

CodeFamily family_from_name(const std::string& s) {
    if (s == "EBCH") return CodeFamily::Ebch;
    if (s == "POLAR") return CodeFamily::Polar;
    if (s == "CRC_POLAR") return CodeFamily::CrcPolar;
    if (s == "PAC") return CodeFamily::Pac;
    if (s == "RANDOM") return CodeFamily::Random;
    if (s == "RANDOM_GREEDY") return CodeFamily::RandomGreedy;
    throw UnsupportedParams("unknown code family: " + s);
}

double q_func(double x) { return 0.5 * std::erfc(x / 1.4142135623730950488); }

BitVec Code::encode(const BitVec& u, OpCounters* ops) const { return scw::encode(g, u, ops); }

bool Code::contains(const BitVec& v) const { return syndrome(h, v).is_zero(); }

BitVec Code::info_from_codeword(const BitVec& codeword) const {
    const std::uint32_t kk = k();
    BitVec u(kk);
    for (std::uint32_t i = 0; i < kk; ++i) {
        if (!codeword.get(sys_cols_[i])) continue;
        auto uw = u.words();
        auto rw = sys_inv_.row(i);
        for (std::size_t w = 0; w < rw.size(); ++w) uw[w] ^= rw[w];
    }
    return u;
}

void Code::finalize() {
    if (g.rows() != k() || g.cols() != n())
        throw DimensionMismatch("Code::finalize: G shape does not match spec");
    auto res = gauss_systematic(g, Permutation::identity(n()));
    if (h.rows() == 0) {
        BitMatrix hp = parity_from_systematic(res.systematic);
        h = BitMatrix(hp.rows(), hp.cols());
        for (std::size_t r = 0; r < hp.rows(); ++r)
            for (std::size_t j = 0; j < hp.cols(); ++j)
                if (hp.get(r, j)) h.set(r, res.effective.map[j], true);
    }
    sys_cols_.assign(res.effective.map.begin(), res.effective.map.begin() + k());

    // invert G restricted to the systematic columns
    const std::uint32_t kk = k();
    BitMatrix aug(kk, 2 * kk);
    for (std::uint32_t r = 0; r < kk; ++r) {
        for (std::uint32_t c = 0; c < kk; ++c)
            if (g.get(r, sys_cols_[c])) aug.set(r, c, true);
        aug.set(r, kk + r, true);
    }
    for (std::uint32_t c = 0; c < kk; ++c) {
        std::uint32_t pivot = c;
        while (pivot < kk && !aug.get(pivot, c)) ++pivot;
        if (pivot == kk) throw RankDeficient("Code::finalize: singular systematic block");
        aug.swap_rows(c, pivot);
        for (std::uint32_t i = 0; i < kk; ++i)
            if (i != c && aug.get(i, c)) aug.row_xor(i, c);
    }
    sys_inv_ = BitMatrix(kk, kk);
    for (std::uint32_t r = 0; r < kk; ++r)
        for (std::uint32_t c = 0; c < kk; ++c)
            if (aug.get(r, kk + c)) sys_inv_.set(r, c, true);

    if (!spectrum && kk <= 20) {
        Spectrum sp(n() + 1, 0);
        const std::uint64_t total = std::uint64_t(1) << kk;
        BitVec cw(n());
        sp[0] += 1;
        for (std::uint64_t m = 1; m < total; ++m) {
            const unsigned bit = std::countr_zero(m);
            auto cww = cw.words();
            auto rw = g.row(bit);
            for (std::size_t w = 0; w < rw.size(); ++w) cww[w] ^= rw[w];
            sp[cw.weight()] += 1;
        }
        spectrum = std::move(sp);
    }
    if (!dh && spectrum) {
        for (std::uint32_t d = 1; d <= n(); ++d)
            if ((*spectrum)[d] > 0) {
                dh = d;
                break;
            }
    }
}

Spectrum weight_spectrum(const Code& code, SpectrumMode mode) {
    if (mode != SpectrumMode::Exhaustive)
        throw UnsupportedParams("weight_spectrum: unknown mode");
    if (code.k() > 20)
        throw UnsupportedParams("weight_spectrum: exhaustive enumeration requires k <= 20");
    if (code.spectrum) return *code.spectrum;
    Spectrum sp(code.n() + 1, 0);
    const std::uint64_t total = std::uint64_t(1) << code.k();
    BitVec cw(code.n());
    sp[0] += 1;
    for (std::uint64_t m = 1; m < total; ++m) {
        const unsigned bit = std::countr_zero(m);
        auto cww = cw.words();
        auto rw = code.g.row(bit);
        for (std::size_t w = 0; w < rw.size(); ++w) cww[w] ^= rw[w];
        sp[cw.weight()] += 1;
    }
    return sp;
}

double union_bound(const Spectrum& spectrum, double es_n0_db) {
    const double gamma = std::pow(10.0, es_n0_db / 10.0);
    double acc = 0.0;
    for (std::size_t d = 1; d < spectrum.size(); ++d) {
        if (spectrum[d] == 0) continue;
        acc += static_cast<double>(spectrum[d]) * q_func(std::sqrt(static_cast<double>(d) * gamma));
    }
    return std::min(acc, 1.0);
}

Code build_random(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
    if (k < 1 || k >= n) throw UnsupportedParams("build_random: need 1 <= k < n");
    Rng rng(Rng::mix(seed ^ 0xC0DEC0DEC0DEC0DEull));
    constexpr int kRetryCap = 64;
    for (int attempt = 0; attempt < kRetryCap; ++attempt) {
        BitMatrix g(k, n);
        for (std::uint32_t r = 0; r < k; ++r) {
            auto rw = g.row(r);
            for (std::size_t w = 0; w < rw.size(); ++w) rw[w] = rng.next_u64();
            // clear padding beyond n
            const std::uint32_t pad = static_cast<std::uint32_t>(rw.size() * 64 - n);
            if (pad) rw[rw.size() - 1] &= ~std::uint64_t(0) >> pad;
        }
        if (rank(g) != k) continue;
        Code code;
        code.spec = CodeSpec{CodeFamily::Random, n, k, {}};
        code.spec.params.seed = seed;
        code.g = std::move(g);
        code.finalize();
        return code;
    }
    throw RankDeficient("build_random: retry cap reached without a full-rank draw");
}

Code puncture(const Code& mother, const std::vector<std::uint32_t>& keep_in) {
    std::vector<std::uint32_t> keep = keep_in;
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    if (keep.size() < mother.k()) throw UnsupportedParams("puncture: |keep| < k");
    if (!keep.empty() && keep.back() >= mother.n())
        throw UnsupportedParams("puncture: column index out of range");
    const auto n2 = static_cast<std::uint32_t>(keep.size());
    BitMatrix g(mother.k(), n2);
    for (std::uint32_t r = 0; r < mother.k(); ++r)
        for (std::uint32_t j = 0; j < n2; ++j)
            if (mother.g.get(r, keep[j])) g.set(r, j, true);
    if (rank(g) != mother.k()) throw RankDeficient("puncture: punctured G loses rank");
    Code code;
    code.spec = mother.spec;
    code.spec.n = n2;
    code.spec.params.keep = keep;
    code.g = std::move(g);
    code.h = BitMatrix();
    code.finalize();
    return code;
}

Code RcFamily::code_at(std::size_t idx) const { return puncture(mother, keep.at(idx)); }

Code build_code(const CodeSpec& spec) {
    switch (spec.family) {
        case CodeFamily::Ebch: return build_ebch(spec.n, spec.k);
        case CodeFamily::Polar: return build_polar(spec.n, spec.k, spec.params);
        case CodeFamily::CrcPolar: {
            if (spec.params.crc_poly == 0)
                throw ConfigInvalid("CRC_POLAR requires a CRC polynomial");
            return attach_crc(spec.n, spec.k, spec.params.crc_poly, spec.params);
        }
        case CodeFamily::Pac: return build_pac(spec.n, spec.k, spec.params);
        case CodeFamily::Random: return build_random(spec.n, spec.k, spec.params.seed);
        case CodeFamily::RandomGreedy: {
            if (!spec.params.eval_es_n0_db)
                throw ConfigInvalid("RANDOM_GREEDY requires eval_es_n0_db");
            return greedy_select_random(spec.n, spec.k, spec.params.seed,
                                        spec.params.candidates_per_step,
                                        *spec.params.eval_es_n0_db);
        }
    }
    throw ConfigInvalid("build_code: unknown family");
}

}  // namespace scw
