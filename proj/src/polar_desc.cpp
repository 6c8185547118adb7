#include "scw/polar_desc.hpp"

#include <cmath>

namespace scw {

void polar_transform(BitVec& x) {
    const std::size_t n = x.size();
    for (std::size_t h = 1; h < n; h <<= 1)
        for (std::size_t i = 0; i < n; i += 2 * h)
            for (std::size_t j = i; j < i + h; ++j)
                if (x.get(j + h)) x.flip(j);
}

void polar_transform_t(BitVec& x) {
    const std::size_t n = x.size();
    for (std::size_t h = 1; h < n; h <<= 1)
        for (std::size_t i = 0; i < n; i += 2 * h)
            for (std::size_t j = i; j < i + h; ++j)
                if (x.get(j)) x.flip(j + h);
}

BitVec descriptor_u_vector(const PolarDescriptor& desc, const BitVec& info) {
    BitVec bits = info;
    if (desc.has_crc()) {
        if (info.size() != desc.payload_len)
            throw DimensionMismatch("descriptor_encode: payload length mismatch");
        Crc crc(desc.crc_poly);
        BitVec rem = crc.compute(info);
        BitVec full(desc.info_set.size());
        for (std::size_t i = 0; i < info.size(); ++i) full.set(i, info.get(i));
        for (std::size_t j = 0; j < rem.size(); ++j) full.set(info.size() + j, rem.get(j));
        bits = full;
    }
    if (bits.size() != desc.info_set.size())
        throw DimensionMismatch("descriptor_encode: info length mismatch");

    // v holds the pre-precoder values at info positions, 0 elsewhere
    BitVec v(desc.n);
    for (std::size_t i = 0; i < desc.info_set.size(); ++i)
        if (bits.get(i)) v.set(desc.info_set[i], true);

    BitVec u(desc.n);
    if (desc.is_pac()) {
        std::uint64_t reg = 0;  // reg bit j = v_{i-j}
        for (std::uint32_t i = 0; i < desc.n; ++i) {
            reg = (reg << 1) | (v.get(i) ? 1u : 0u);
            u.set(i, std::popcount(reg & desc.conv_poly) & 1u);
        }
    } else {
        for (std::uint32_t i = 0; i < desc.n; ++i) {
            if (desc.leaf[i] == LeafKind::Info) {
                u.set(i, v.get(i));
            } else if (desc.leaf[i] == LeafKind::Dynamic) {
                const auto& mask = desc.dyn_mask[i];
                std::uint64_t acc = 0;
                auto mw = mask.words();
                auto uw = u.words();
                for (std::size_t w = 0; w < mw.size(); ++w) acc ^= mw[w] & uw[w];
                u.set(i, std::popcount(acc) & 1u);
            }
        }
    }
    return u;
}

BitVec descriptor_encode(const PolarDescriptor& desc, const BitVec& info) {
    BitVec u = descriptor_u_vector(desc, info);
    polar_transform(u);
    return u;
}

BitVec descriptor_extract_info(const PolarDescriptor& desc, const BitVec& codeword) {
    BitVec u = codeword;
    polar_transform(u);  // self-inverse
    if (desc.is_pac()) {
        // invert the precoder: v_i = u_i ^ taps(v_{i-1}..)
        BitVec v(desc.n);
        std::uint64_t reg = 0;
        for (std::uint32_t i = 0; i < desc.n; ++i) {
            reg <<= 1;
            const bool tail = std::popcount(reg & desc.conv_poly) & 1u;
            const bool vi = u.get(i) ^ tail;
            if (vi) reg |= 1;
            v.set(i, vi);
        }
        u = v;
    }
    const std::size_t out_len = desc.has_crc() ? desc.payload_len : desc.info_set.size();
    BitVec info(out_len);
    for (std::size_t i = 0; i < out_len; ++i)
        if (u.get(desc.info_set[i])) info.set(i, true);
    return info;
}

std::vector<double> bhattacharyya(std::uint32_t n, double z0) {
    std::vector<double> z{z0};
    while (z.size() < n) {
        std::vector<double> next(z.size() * 2);
        for (std::size_t i = 0; i < z.size(); ++i) {
            next[2 * i] = 2.0 * z[i] - z[i] * z[i];
            next[2 * i + 1] = z[i] * z[i];
        }
        z = std::move(next);
    }
    return z;
}

double bhattacharyya_z0(double design_es_n0_db) {
    const double gamma = std::pow(10.0, design_es_n0_db / 10.0);
    return std::exp(-gamma / 2.0);
}

}  // namespace scw
