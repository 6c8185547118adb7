#include "scw/bits.hpp"

#include <algorithm>

namespace scw {

BitVec BitVec::from_string(std::string_view s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            v.set(i, true);
        else if (s[i] != '0')
            throw DimensionMismatch("BitVec::from_string: character not 0/1");
    }
    return v;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

int BitVec::lex_compare(const BitVec& a, const BitVec& b) {
    for (std::size_t i = 0; i < a.w_.size() && i < b.w_.size(); ++i) {
        const std::uint64_t d = a.w_[i] ^ b.w_[i];
        if (d) {
            const unsigned bit = std::countr_zero(d);
            return ((a.w_[i] >> bit) & 1u) ? 1 : -1;
        }
    }
    if (a.n_ == b.n_) return 0;
    return a.n_ < b.n_ ? -1 : 1;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitVec BitMatrix::row_vec(std::size_t r) const {
    BitVec v(cols_);
    std::copy(w_.begin() + r * wpr_, w_.begin() + (r + 1) * wpr_, v.words().begin());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVec& v) {
    if (v.size() != cols_) throw DimensionMismatch("set_row: length mismatch");
    std::copy(v.words().begin(), v.words().end(), w_.begin() + r * wpr_);
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::uint32_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint32_t>(i);
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<std::uint32_t> inv(map.size());
    for (std::size_t j = 0; j < map.size(); ++j) inv[map[j]] = static_cast<std::uint32_t>(j);
    return Permutation(std::move(inv));
}

BitVec Permutation::apply_bits(const BitVec& v) const {
    BitVec out(map.size());
    for (std::size_t j = 0; j < map.size(); ++j)
        if (v.get(map[j])) out.set(j, true);
    return out;
}

std::vector<double> Permutation::apply(const std::vector<double>& v) const {
    std::vector<double> out(map.size());
    for (std::size_t j = 0; j < map.size(); ++j) out[j] = v[map[j]];
    return out;
}

GaussResult gauss_systematic(const BitMatrix& g, const Permutation& priority, OpCounters* ops) {
    const std::size_t k = g.rows(), n = g.cols();
    if (priority.size() != n)
        throw DimensionMismatch("gauss_systematic: priority size != cols");
    BitMatrix w = g;
    std::vector<std::uint32_t> chosen;
    chosen.reserve(k);
    std::vector<char> is_chosen(n, 0);

    for (std::size_t pi = 0; pi < n && chosen.size() < k; ++pi) {
        const std::uint32_t c = priority.map[pi];
        const std::size_t r = chosen.size();
        std::size_t pivot = r;
        while (pivot < k && !w.get(pivot, c)) ++pivot;
        if (ops) ops->cmp(pivot - r + 1);
        if (pivot == k) continue;  // dependent on already-chosen columns
        w.swap_rows(r, pivot);
        for (std::size_t i = 0; i < k; ++i) {
            if (i != r && w.get(i, c)) {
                w.row_xor(i, r);
                if (ops) ops->add(w.words_per_row());
            }
        }
        chosen.push_back(c);
        is_chosen[c] = 1;
    }
    if (chosen.size() < k) throw RankDeficient("gauss_systematic: rank(G) < k");

    std::vector<std::uint32_t> eff = chosen;
    eff.reserve(n);
    for (std::size_t pi = 0; pi < n; ++pi)
        if (!is_chosen[priority.map[pi]]) eff.push_back(priority.map[pi]);

    Permutation effective(std::move(eff));
    return GaussResult{permute_columns(w, effective), std::move(effective)};
}

BitVec encode(const BitMatrix& gsys, const BitVec& u, OpCounters* ops) {
    const std::size_t k = gsys.rows(), n = gsys.cols();
    if (u.size() != k) throw DimensionMismatch("encode: len(u) != k");
    BitVec out(n);
    auto ow = out.words();
    for (std::size_t i = 0; i < k; ++i) {
        if (!u.get(i)) continue;
        auto rw = gsys.row(i);
        for (std::size_t j = 0; j < rw.size(); ++j) ow[j] ^= rw[j];
        if (ops) ops->add(rw.size());
    }
    return out;
}

BitVec syndrome(const BitMatrix& h, const BitVec& v, OpCounters* ops) {
    const std::size_t m = h.rows();
    if (v.size() != h.cols()) throw DimensionMismatch("syndrome: len(v) != cols(H)");
    BitVec s(m);
    auto vw = v.words();
    for (std::size_t r = 0; r < m; ++r) {
        auto rw = h.row(r);
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < rw.size(); ++j) acc ^= rw[j] & vw[j];
        if (std::popcount(acc) & 1) s.set(r, true);
        if (ops) {
            ops->mul(rw.size());
            ops->add(rw.size());
        }
    }
    return s;
}

std::size_t rank(const BitMatrix& m) {
    BitMatrix w = m;
    const std::size_t rows = w.rows(), cols = w.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && !w.get(pivot, c)) ++pivot;
        if (pivot == rows) continue;
        w.swap_rows(r, pivot);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && w.get(i, c)) w.row_xor(i, r);
        ++r;
    }
    return r;
}

BitMatrix parity_from_systematic(const BitMatrix& gsys) {
    const std::size_t k = gsys.rows(), n = gsys.cols(), m = n - k;
    BitMatrix h(m, n);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t i = 0; i < k; ++i)
            if (gsys.get(i, k + r)) h.set(r, i, true);
        h.set(r, k + r, true);
    }
    return h;
}

BitMatrix derive_parity(const BitMatrix& g) {
    auto res = gauss_systematic(g, Permutation::identity(g.cols()));
    BitMatrix hp = parity_from_systematic(res.systematic);
    // undo the column permutation: hp column j belongs at effective[j]
    BitMatrix h(hp.rows(), hp.cols());
    for (std::size_t r = 0; r < hp.rows(); ++r)
        for (std::size_t j = 0; j < hp.cols(); ++j)
            if (hp.get(r, j)) h.set(r, res.effective.map[j], true);
    return h;
}

BitMatrix permute_columns(const BitMatrix& m, const Permutation& p) {
    if (p.size() != m.cols()) throw DimensionMismatch("permute_columns: size mismatch");
    BitMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.get(r, p.map[j])) out.set(r, j, true);
    return out;
}

BitMatrix transpose(const BitMatrix& m) {
    BitMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c)) out.set(c, r, true);
    return out;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("multiply: inner dims differ");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t i = 0; i < a.cols(); ++i) {
            if (!a.get(r, i)) continue;
            auto ow = out.row(r);
            auto bw = b.row(i);
            for (std::size_t j = 0; j < bw.size(); ++j) ow[j] ^= bw[j];
        }
    }
    return out;
}

}  // namespace scw
