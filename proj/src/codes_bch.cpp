// Narrow-sense binary BCH generator-polynomial construction over GF(2^m),
// extended by an overall even-parity bit.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "scw/codes.hpp"

namespace scw {

namespace {

// canonical primitive polynomials, index = m
constexpr std::uint32_t kPrimPoly[] = {
    0, 0,
    0b111,          // m=2
    0b1011,         // m=3
    0b10011,        // m=4
    0b100101,       // m=5
    0b1000011,      // m=6
    0b10001001,     // m=7
    0b100011101,    // m=8
    0b1000010001,   // m=9
    0b10000001001,  // m=10
};
constexpr std::uint32_t kMaxM = 10;

struct Gf2m {
    std::uint32_t m, q, nc;  // q = 2^m, nc = q-1
    std::vector<std::uint32_t> exp_tab, log_tab;

    explicit Gf2m(std::uint32_t m_) : m(m_), q(1u << m_), nc(q - 1) {
        exp_tab.resize(2 * nc);
        log_tab.assign(q, 0);
        std::uint32_t x = 1;
        for (std::uint32_t i = 0; i < nc; ++i) {
            exp_tab[i] = x;
            log_tab[x] = i;
            x <<= 1;
            if (x & q) x ^= kPrimPoly[m];
        }
        for (std::uint32_t i = nc; i < 2 * nc; ++i) exp_tab[i] = exp_tab[i - nc];
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_tab[log_tab[a] + log_tab[b]];
    }
    std::uint32_t alpha_pow(std::uint32_t e) const { return exp_tab[e % nc]; }
};

// minimal polynomial of alpha^j over GF(2), as bits (bit i = coeff of x^i)
std::vector<std::uint8_t> minimal_poly(const Gf2m& f, const std::vector<std::uint32_t>& coset) {
    std::vector<std::uint32_t> poly{1};  // GF(2^m) coefficients, poly[i] = coeff of x^i
    for (std::uint32_t e : coset) {
        const std::uint32_t a = f.alpha_pow(e);
        std::vector<std::uint32_t> next(poly.size() + 1, 0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] ^= poly[i];
            next[i] ^= f.mul(poly[i], a);
        }
        poly = std::move(next);
    }
    std::vector<std::uint8_t> bits(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] > 1)
            throw UnsupportedParams("minimal_poly: coefficient not in GF(2)");
        bits[i] = static_cast<std::uint8_t>(poly[i]);
    }
    return bits;
}

std::vector<std::uint8_t> poly_mul(const std::vector<std::uint8_t>& a,
                                   const std::vector<std::uint8_t>& b) {
    std::vector<std::uint8_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] ^= b[j];
    }
    return out;
}

}  // namespace

Code build_ebch(std::uint32_t n, std::uint32_t k) {
    if (n < 4 || (n & (n - 1)) != 0) throw UnsupportedParams("build_ebch: n must be a power of two");
    const std::uint32_t m = static_cast<std::uint32_t>(std::countr_zero(n));
    if (m < 2 || m > kMaxM) throw UnsupportedParams("build_ebch: unsupported field size");
    if (k < 1 || k >= n) throw UnsupportedParams("build_ebch: need 1 <= k < n");
    const std::uint32_t nc = n - 1;
    Gf2m field(m);

    // cyclotomic cosets of {0..nc-1}
    std::vector<std::int32_t> coset_of(nc, -1);
    std::vector<std::vector<std::uint32_t>> cosets;
    for (std::uint32_t j = 0; j < nc; ++j) {
        if (coset_of[j] >= 0) continue;
        std::vector<std::uint32_t> cs;
        std::uint32_t e = j;
        do {
            coset_of[e] = static_cast<std::int32_t>(cosets.size());
            cs.push_back(e);
            e = (2 * e) % nc;
        } while (e != j);
        cosets.push_back(std::move(cs));
    }

    // sweep the designed distance upward while dim >= k
    std::vector<char> used(cosets.size(), 0);
    std::uint32_t deg = 0;
    std::uint32_t best_t = 0, best_deg = 0;
    std::vector<char> best_used;
    for (std::uint32_t t = 1; 2 * t <= nc; ++t) {
        for (std::uint32_t j = 2 * t - 1; j <= 2 * t && j < nc; ++j) {
            const auto ci = static_cast<std::size_t>(coset_of[j]);
            if (!used[ci]) {
                used[ci] = 1;
                deg += static_cast<std::uint32_t>(cosets[ci].size());
            }
        }
        if (nc - deg >= k) {
            best_t = t;
            best_deg = deg;
            best_used = used;
        } else {
            break;
        }
    }
    if (best_t == 0)
        throw UnsupportedParams("build_ebch: no designed distance gives dimension >= k");

    // generator polynomial = product of the selected minimal polynomials
    std::vector<std::uint8_t> gen{1};
    for (std::size_t ci = 0; ci < cosets.size(); ++ci)
        if (best_used[ci]) gen = poly_mul(gen, minimal_poly(field, cosets[ci]));
    if (gen.size() != best_deg + 1)
        throw UnsupportedParams("build_ebch: generator degree mismatch");

    // Bose distance from the root run 1..r
    std::vector<char> is_root(nc, 0);
    for (std::size_t ci = 0; ci < cosets.size(); ++ci)
        if (best_used[ci])
            for (std::uint32_t e : cosets[ci]) is_root[e] = 1;
    std::uint32_t run = 0;
    while (run + 1 < nc && is_root[run + 1]) ++run;
    const std::uint32_t bose = run + 1;

    // Coordinate order: cyclic position j sits at the binary index of alpha^j,
    // the extension (parity) coordinate at index 0. This is the evaluation
    // order of the underlying affine-invariant code; it keeps the code
    // compatible with the polar-transform view used by the tree-search
    // decoders (and is just a fixed coordinate permutation otherwise).
    BitMatrix g(k, n);
    for (std::uint32_t r = 0; r < k; ++r) {
        std::uint32_t w = 0;
        for (std::size_t i = 0; i < gen.size(); ++i) {
            if (gen[i]) {
                g.set(r, field.exp_tab[(r + i) % nc], true);
                ++w;
            }
        }
        if (w & 1u) g.set(r, 0, true);  // overall even parity at the zero element
    }

    Code code;
    code.spec = CodeSpec{CodeFamily::Ebch, n, k, {}};
    code.g = std::move(g);
    code.finalize();
    if (!code.dh) code.dh = (bose % 2 == 1) ? bose + 1 : bose;
    return code;
}

}  // namespace scw
