#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scw/errors.hpp"
#include "scw/opcount.hpp"

namespace scw {

// Packed binary vector, bit i lives in word i/64 at position i%64.
// Padding bits beyond size() are kept zero so word-wise equality and XOR work.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec from_string(std::string_view s);
    std::string to_string() const;

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        const std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    std::size_t weight() const {
        std::size_t c = 0;
        for (std::uint64_t w : w_) c += std::popcount(w);
        return c;
    }
    bool is_zero() const {
        for (std::uint64_t w : w_)
            if (w) return false;
        return true;
    }

    void xor_with(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    }

    std::span<const std::uint64_t> words() const { return w_; }
    std::span<std::uint64_t> words() { return w_; }

    friend bool operator==(const BitVec&, const BitVec&) = default;

    // Orders by bit index: the vector with a 0 at the first differing index is
    // smaller. Returns <0, 0, >0.
    static int lex_compare(const BitVec& a, const BitVec& b);

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Row-major packed binary matrix over GF(2).
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}

    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t m = std::uint64_t(1) << (c & 63);
        if (v)
            w_[r * wpr_ + (c >> 6)] |= m;
        else
            w_[r * wpr_ + (c >> 6)] &= ~m;
    }

    std::span<const std::uint64_t> row(std::size_t r) const {
        return {w_.data() + r * wpr_, wpr_};
    }
    std::span<std::uint64_t> row(std::size_t r) { return {w_.data() + r * wpr_, wpr_}; }

    void row_xor(std::size_t dst, std::size_t src) {
        std::uint64_t* d = w_.data() + dst * wpr_;
        const std::uint64_t* s = w_.data() + src * wpr_;
        for (std::size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        std::uint64_t* pa = w_.data() + a * wpr_;
        std::uint64_t* pb = w_.data() + b * wpr_;
        for (std::size_t i = 0; i < wpr_; ++i) std::swap(pa[i], pb[i]);
    }

    BitVec row_vec(std::size_t r) const;
    void set_row(std::size_t r, const BitVec& v);

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> w_;
};

// Bijection on {0..n-1}. Gathering convention: out[j] = in[map[j]].
struct Permutation {
    std::vector<std::uint32_t> map;

    Permutation() = default;
    explicit Permutation(std::vector<std::uint32_t> m) : map(std::move(m)) {}

    static Permutation identity(std::size_t n);
    std::size_t size() const { return map.size(); }
    Permutation inverse() const;

    BitVec apply_bits(const BitVec& v) const;
    std::vector<double> apply(const std::vector<double>& v) const;
};

struct GaussResult {
    BitMatrix systematic;   // [I_k | P] in permuted column order
    Permutation effective;  // systematic column j = original column effective[j]
};

// Reduces g (k x n, rank k) to systematic form, choosing pivot columns in
// `priority` order; dependent columns are displaced to immediately after the
// k chosen positions. Throws RankDeficient when rank(g) < k.
GaussResult gauss_systematic(const BitMatrix& g, const Permutation& priority,
                             OpCounters* ops = nullptr);

// u * gsys over GF(2).
BitVec encode(const BitMatrix& gsys, const BitVec& u, OpCounters* ops = nullptr);

// h * v^T over GF(2); zero iff v is a codeword.
BitVec syndrome(const BitMatrix& h, const BitVec& v, OpCounters* ops = nullptr);

std::size_t rank(const BitMatrix& m);

// H = [P^T | I_{n-k}] for Gsys = [I_k | P].
BitMatrix parity_from_systematic(const BitMatrix& gsys);

// Parity-check matrix of an arbitrary-order generator matrix (rank k required).
BitMatrix derive_parity(const BitMatrix& g);

BitMatrix permute_columns(const BitMatrix& m, const Permutation& p);
BitMatrix transpose(const BitMatrix& m);
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);

}  // namespace scw
