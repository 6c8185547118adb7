#include "scw/channel.hpp"

namespace scw {

namespace {
constexpr double kAmp = 0.70710678118654752440;  // sqrt(1/2)
}

std::vector<std::complex<double>> modulate_qpsk(const BitVec& bits) {
    const std::size_t n = bits.size();
    if (n % 2 != 0) throw OddLength("modulate_qpsk: bit count must be even");
    std::vector<std::complex<double>> x(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double re = bits.get(2 * j) ? -kAmp : kAmp;
        const double im = bits.get(2 * j + 1) ? -kAmp : kAmp;
        x[j] = {re, im};
    }
    return x;
}

std::vector<std::complex<double>> transmit(const std::vector<std::complex<double>>& symbols,
                                           double n0, Rng& rng) {
    const double sigma = std::sqrt(n0 / 2.0);
    std::vector<std::complex<double>> y(symbols.size());
    for (std::size_t j = 0; j < symbols.size(); ++j) {
        const double wr = sigma * rng.gaussian();
        const double wi = sigma * rng.gaussian();
        y[j] = symbols[j] + std::complex<double>(wr, wi);
    }
    return y;
}

std::vector<std::complex<double>> transmit(const std::vector<std::complex<double>>& symbols,
                                           const ChannelParams& params) {
    Rng rng(Rng::mix(params.seed));
    return transmit(symbols, params.n0, rng);
}

LlrVector llr_from_received(const std::vector<std::complex<double>>& received, double n0) {
    const double scale = 2.0 * std::sqrt(2.0) / n0;
    LlrVector llr(received.size() * 2);
    for (std::size_t j = 0; j < received.size(); ++j) {
        llr[2 * j] = scale * received[j].real();
        llr[2 * j + 1] = scale * received[j].imag();
    }
    return llr;
}

BitVec hard_decision(const LlrVector& llr) {
    BitVec bits(llr.size());
    for (std::size_t i = 0; i < llr.size(); ++i)
        if (llr[i] < 0.0) bits.set(i, true);
    return bits;
}

}  // namespace scw
