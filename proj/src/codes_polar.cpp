// Polar, CRC-aided polar, and PAC constructions sharing the Bhattacharyya
// frozen-set design.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

#include "scw/codes.hpp"

namespace scw {

namespace {

void require_pow2(std::uint32_t n, const char* who) {
    if (n < 2 || (n & (n - 1)) != 0)
        throw UnsupportedParams(std::string(who) + ": n must be a power of two");
}

// leaf indices ranked most reliable first
std::vector<std::uint32_t> reliability_order(std::uint32_t n, const CodeParams& params) {
    if (!params.reliability.empty()) {
        if (params.reliability.size() != n)
            throw UnsupportedParams("reliability sequence length != n");
        return params.reliability;
    }
    const double z0 =
        params.design_es_n0_db ? bhattacharyya_z0(*params.design_es_n0_db) : 0.5;
    const std::vector<double> z = bhattacharyya(n, z0);
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (z[a] != z[b]) return z[a] < z[b];
        return a < b;
    });
    return order;
}

std::vector<std::uint32_t> pick_info_set(std::uint32_t n, std::uint32_t count,
                                         const CodeParams& params) {
    auto order = reliability_order(n, params);
    std::vector<std::uint32_t> info(order.begin(), order.begin() + count);
    std::sort(info.begin(), info.end());
    return info;
}

PolarDescriptor make_descriptor(std::uint32_t n, std::vector<std::uint32_t> info_set) {
    PolarDescriptor d;
    d.n = n;
    d.m = static_cast<std::uint32_t>(std::countr_zero(n));
    d.info_set = std::move(info_set);
    d.leaf.assign(n, LeafKind::Frozen);
    for (std::uint32_t i : d.info_set) d.leaf[i] = LeafKind::Info;
    d.dyn_mask.resize(n);
    return d;
}

BitMatrix generator_from_descriptor(const PolarDescriptor& desc, std::uint32_t k) {
    BitMatrix g(k, desc.n);
    for (std::uint32_t r = 0; r < k; ++r) {
        BitVec e(k);
        e.set(r, true);
        g.set_row(r, descriptor_encode(desc, e));
    }
    return g;
}

}  // namespace

Code build_polar(std::uint32_t n, std::uint32_t k, const CodeParams& params) {
    require_pow2(n, "build_polar");
    if (k < 1 || k > n) throw UnsupportedParams("build_polar: need 1 <= k <= n");
    PolarDescriptor desc = make_descriptor(n, pick_info_set(n, k, params));
    Code code;
    code.spec = CodeSpec{CodeFamily::Polar, n, k, params};
    code.g = generator_from_descriptor(desc, k);
    code.descriptor = std::move(desc);
    code.finalize();
    return code;
}

Code attach_crc(std::uint32_t n, std::uint32_t k_payload, std::uint64_t crc_poly,
                const CodeParams& params) {
    require_pow2(n, "attach_crc");
    Crc crc(crc_poly);
    const auto deg = static_cast<std::uint32_t>(crc.degree());
    if (k_payload < 1 || k_payload + deg > n)
        throw UnsupportedParams("attach_crc: k_payload + deg(crc) must be <= n");
    PolarDescriptor desc = make_descriptor(n, pick_info_set(n, k_payload + deg, params));
    desc.crc_poly = crc_poly;
    desc.payload_len = k_payload;
    Code code;
    code.spec = CodeSpec{CodeFamily::CrcPolar, n, k_payload, params};
    code.spec.params.crc_poly = crc_poly;
    code.g = generator_from_descriptor(desc, k_payload);
    code.descriptor = std::move(desc);
    code.finalize();
    return code;
}

Code build_pac(std::uint32_t n, std::uint32_t k, const CodeParams& params) {
    require_pow2(n, "build_pac");
    if (k < 1 || k > n) throw UnsupportedParams("build_pac: need 1 <= k <= n");
    std::uint64_t conv = params.conv_poly ? params.conv_poly : 0x6D;  // taps {0,2,3,5,6}
    if ((conv & 1) == 0) throw UnsupportedParams("build_pac: conv polynomial needs c0 = 1");

    // Reed-Muller-scored rate profile: by row weight, Bhattacharyya as tie-break
    const double z0 =
        params.design_es_n0_db ? bhattacharyya_z0(*params.design_es_n0_db) : 0.5;
    const std::vector<double> z = bhattacharyya(n, z0);
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const int wa = std::popcount(a), wb = std::popcount(b);
        if (wa != wb) return wa > wb;
        if (z[a] != z[b]) return z[a] < z[b];
        return a < b;
    });
    std::vector<std::uint32_t> profile(order.begin(), order.begin() + k);
    std::sort(profile.begin(), profile.end());

    PolarDescriptor desc = make_descriptor(n, std::move(profile));
    desc.conv_poly = conv;
    Code code;
    code.spec = CodeSpec{CodeFamily::Pac, n, k, params};
    code.spec.params.conv_poly = conv;
    code.g = generator_from_descriptor(desc, k);
    code.descriptor = std::move(desc);
    code.finalize();
    return code;
}

}  // namespace scw
