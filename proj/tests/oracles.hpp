// Test-only reference implementations, deliberately naive and independent of
// the bit-packed production kernels.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "scw/bits.hpp"
#include "scw/channel.hpp"
#include "scw/rng.hpp"
#include "scw/types.hpp"

namespace oracle {

using Mat = std::vector<std::vector<int>>;  // 0/1 entries

inline Mat to_mat(const scw::BitMatrix& m) {
    Mat a(m.rows(), std::vector<int>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m.get(r, c) ? 1 : 0;
    return a;
}

inline std::vector<int> to_bits(const scw::BitVec& v) {
    std::vector<int> b(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) b[i] = v.get(i) ? 1 : 0;
    return b;
}

inline scw::BitVec from_bits(const std::vector<int>& b) {
    scw::BitVec v(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i]) v.set(i, true);
    return v;
}

inline std::vector<int> encode(const Mat& g, const std::vector<int>& u) {
    std::vector<int> out(g[0].size(), 0);
    for (std::size_t r = 0; r < g.size(); ++r)
        if (u[r])
            for (std::size_t c = 0; c < out.size(); ++c) out[c] ^= g[r][c];
    return out;
}

inline std::vector<int> syndrome(const Mat& h, const std::vector<int>& v) {
    std::vector<int> s(h.size(), 0);
    for (std::size_t r = 0; r < h.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) s[r] ^= h[r][c] & v[c];
    return s;
}

inline std::size_t rank(Mat a) {
    const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && !a[p][c]) ++p;
        if (p == rows) continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && a[i][c])
                for (std::size_t j = 0; j < cols; ++j) a[i][j] ^= a[r][j];
        ++r;
    }
    return r;
}

// reduced systematic form with pivots chosen in priority order; mirrors the
// most-reliable-independent-positions rule
struct SysForm {
    Mat gsys;
    std::vector<std::uint32_t> effective;
};

inline SysForm gauss_systematic(Mat g, const std::vector<std::uint32_t>& priority) {
    const std::size_t k = g.size(), n = g[0].size();
    std::vector<std::uint32_t> chosen;
    std::vector<char> is_chosen(n, 0);
    for (std::uint32_t c : priority) {
        if (chosen.size() == k) break;
        const std::size_t r = chosen.size();
        std::size_t p = r;
        while (p < k && !g[p][c]) ++p;
        if (p == k) continue;
        std::swap(g[r], g[p]);
        for (std::size_t i = 0; i < k; ++i)
            if (i != r && g[i][c])
                for (std::size_t j = 0; j < n; ++j) g[i][j] ^= g[r][j];
        chosen.push_back(c);
        is_chosen[c] = 1;
    }
    SysForm out;
    out.effective = chosen;
    for (std::uint32_t c : priority)
        if (!is_chosen[c]) out.effective.push_back(c);
    out.gsys = Mat(k, std::vector<int>(n, 0));
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t j = 0; j < n; ++j) out.gsys[r][j] = g[r][out.effective[j]];
    return out;
}

// all 2^k codewords, message-index order
inline std::vector<scw::BitVec> all_codewords(const scw::BitMatrix& g) {
    const std::size_t k = g.rows();
    std::vector<scw::BitVec> cws;
    cws.reserve(std::size_t(1) << k);
    for (std::uint64_t m = 0; m < (std::uint64_t(1) << k); ++m) {
        scw::BitVec u(k);
        for (std::size_t i = 0; i < k; ++i)
            if ((m >> i) & 1) u.set(i, true);
        cws.push_back(scw::encode(g, u));
    }
    return cws;
}

// exact ML: minimum correlation discrepancy, ties to the lexicographically
// smallest codeword (the shared tie rule)
inline scw::BitVec ml_decode(const std::vector<scw::BitVec>& codewords,
                             const scw::LlrVector& llr) {
    const scw::BitVec hard = scw::hard_decision(llr);
    const scw::BitVec* best = nullptr;
    double best_score = 0.0;
    for (const auto& cw : codewords) {
        const double s = scw::soft_distance(cw, hard, llr);
        if (!best || s < best_score ||
            (s == best_score && scw::BitVec::lex_compare(cw, *best) < 0)) {
            best = &cw;
            best_score = s;
        }
    }
    return *best;
}

inline double ml_score(const std::vector<scw::BitVec>& codewords, const scw::LlrVector& llr) {
    const scw::BitVec hard = scw::hard_decision(llr);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cw : codewords) best = std::min(best, scw::soft_distance(cw, hard, llr));
    return best;
}

// CRC by polynomial long division over GF(2)
inline std::vector<int> crc_long_division(const std::vector<int>& payload,
                                          std::uint64_t poly) {
    const int deg = 63 - std::countl_zero(poly);
    std::vector<int> buf = payload;
    buf.resize(payload.size() + deg, 0);
    for (std::size_t i = 0; i < payload.size(); ++i) {
        if (!buf[i]) continue;
        for (int j = 0; j <= deg; ++j) buf[i + j] ^= (poly >> (deg - j)) & 1;
    }
    return std::vector<int>(buf.end() - deg, buf.end());
}

// number of partitions of w into distinct parts, each <= n
inline std::uint64_t distinct_partitions(std::uint32_t w, std::uint32_t n) {
    std::vector<std::uint64_t> dp(w + 1, 0);
    dp[0] = 1;
    for (std::uint32_t part = 1; part <= n; ++part)
        for (std::uint32_t s = w; s >= part; --s) dp[s] += dp[s - part];
    return dp[w];
}

// fine-grid trapezoidal C and V of the binary-input AWGN channel
struct CvPair {
    double c, v;
};
inline CvPair biawgn_cv_trapezoid(double es_n0_db) {
    const double gamma = std::pow(10.0, es_n0_db / 10.0);
    const double a = std::sqrt(gamma);
    const int steps = 400000;
    const double z0 = -12.0, z1 = 12.0, dz = (z1 - z0) / steps;
    double e1 = 0.0, e2 = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double z = z0 + i * dz;
        const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
        const double llr = 2.0 * gamma + 2.0 * a * z;
        double g;
        if (-llr > 36.0)
            g = -llr / std::log(2.0);
        else
            g = std::log1p(std::exp(-llr)) / std::log(2.0);
        e1 += w * pdf * g * dz;
        e2 += w * pdf * g * g * dz;
    }
    return CvPair{1.0 - e1, e2 - e1 * e1};
}

inline scw::LlrVector random_llr(scw::Rng& rng, std::size_t n, double scale = 2.0) {
    scw::LlrVector llr(n);
    for (auto& v : llr) v = scale * rng.gaussian();
    return llr;
}

}  // namespace oracle
