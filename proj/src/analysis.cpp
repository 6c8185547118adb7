#include "scw/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace scw {

namespace {

// orthonormal Hermite polynomials (weight e^{-x^2}): value of p_n at x and
// the sum of squares p_0^2..p_{n-1}^2 (Christoffel denominator)
double eval_pn(int n, double x, double* chistoffel_sum = nullptr) {
    double pm1 = 0.0;
    double p = 0.7511255444649425;  // pi^{-1/4}
    double sum = p * p;
    for (int j = 0; j < n; ++j) {
        const double pj1 =
            x * std::sqrt(2.0 / (j + 1)) * p - std::sqrt(static_cast<double>(j) / (j + 1)) * pm1;
        pm1 = p;
        p = pj1;
        if (j + 1 < n) sum += p * p;
    }
    if (chistoffel_sum) *chistoffel_sum = sum;
    return p;
}

}  // namespace

GaussHermite gauss_hermite(int n) {
    if (n < 1) throw ConfigInvalid("gauss_hermite: n >= 1");
    std::vector<double> roots{0.0};  // roots of p_1 = c*x
    for (int nn = 2; nn <= n; ++nn) {
        // roots of p_nn interlace those of p_{nn-1}
        std::vector<double> brackets;
        const double outer = std::sqrt(2.0 * nn + 1.0);
        brackets.push_back(-outer);
        for (double r : roots) brackets.push_back(r);
        brackets.push_back(outer);
        std::vector<double> next(nn);
        for (int i = 0; i < nn; ++i) {
            double lo = brackets[i], hi = brackets[i + 1];
            double flo = eval_pn(nn, lo);
            // safeguarded Newton within the bracket
            double x = 0.5 * (lo + hi);
            for (int iter = 0; iter < 100; ++iter) {
                const double fx = eval_pn(nn, x);
                const double dfx = std::sqrt(2.0 * nn) * eval_pn(nn - 1, x);
                double step = dfx != 0.0 ? fx / dfx : 0.0;
                double xn = x - step;
                if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
                if ((fx > 0) == (flo > 0)) {
                    lo = x;
                    flo = fx;
                } else {
                    hi = x;
                }
                if (std::abs(xn - x) < 1e-15 * (1.0 + std::abs(xn))) {
                    x = xn;
                    break;
                }
                x = xn;
            }
            next[i] = x;
        }
        roots = std::move(next);
    }
    GaussHermite gh;
    gh.nodes = roots;
    gh.weights.resize(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
        double denom;
        eval_pn(n, roots[i], &denom);
        gh.weights[i] = 1.0 / denom;
    }
    return gh;
}

namespace {

// log2(1 + e^{t}) without overflow
double log2_1p_exp(double t) {
    constexpr double kInvLn2 = 1.4426950408889634;
    if (t > 36.0) return t * kInvLn2;
    if (t < -36.0) return std::exp(t) * kInvLn2;
    return std::log1p(std::exp(t)) * kInvLn2;
}

const GaussHermite& gh63() {
    static const GaussHermite gh = gauss_hermite(63);
    return gh;
}

}  // namespace

ChannelCV biawgn_cv(double es_n0_db) {
    const double gamma = std::pow(10.0, es_n0_db / 10.0);
    const double sqrt_gamma = std::sqrt(gamma);
    const GaussHermite& gh = gh63();
    constexpr double kInvSqrtPi = 0.5641895835477563;
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        const double z = 1.4142135623730951 * gh.nodes[i];  // N(0,1) sample point
        const double llr = 2.0 * gamma + 2.0 * sqrt_gamma * z;
        const double g = log2_1p_exp(-llr);
        e1 += gh.weights[i] * g;
        e2 += gh.weights[i] * g * g;
    }
    e1 *= kInvSqrtPi;
    e2 *= kInvSqrtPi;
    ChannelCV cv;
    cv.capacity_bits = 1.0 - e1;
    cv.dispersion_bits2 = std::max(e2 - e1 * e1, 0.0);
    return cv;
}

double normal_approx_bler(std::uint32_t n, std::uint32_t k, double es_n0_db) {
    if (k < 1 || k >= n) throw ConfigInvalid("normal_approx_bler: need 1 <= k < n");
    const ChannelCV cv = biawgn_cv(es_n0_db);
    const double num = static_cast<double>(n) * cv.capacity_bits - static_cast<double>(k) +
                       0.5 * std::log2(static_cast<double>(n));
    const double den = std::sqrt(static_cast<double>(n) * cv.dispersion_bits2);
    if (den < 1e-150) return num >= 0.0 ? 0.0 : 1.0;
    return q_func(num / den);
}

double na_snr_for_bler(std::uint32_t n, std::uint32_t k, double target_bler, double lo_db,
                       double hi_db) {
    if (!(target_bler > 0.0 && target_bler < 1.0))
        throw ConfigInvalid("na_snr_for_bler: target in (0,1)");
    double lo = lo_db, hi = hi_db;
    if (normal_approx_bler(n, k, lo) < target_bler) return lo;
    if (normal_approx_bler(n, k, hi) > target_bler)
        throw BracketFailure("na_snr_for_bler: target below the NA curve on the interval");
    for (int i = 0; i < 200 && hi - lo > 1e-9; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (normal_approx_bler(n, k, mid) > target_bler)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

bool is_ml_error(const LlrVector& llr, const BitVec& transmitted, const DecodeResult& result) {
    if (!result.has_candidate) return false;
    if (result.codeword == transmitted) return false;
    const BitVec hard = hard_decision(llr);
    const double sd_cand = soft_distance(result.codeword, hard, llr);
    const double sd_tx = soft_distance(transmitted, hard, llr);
    if (result.status == DecodeStatus::Abandoned) return sd_cand < sd_tx;
    return sd_cand <= sd_tx;
}

double ml_bound(const MlAudit& audit) {
    if (audit.trials < 1) throw ConfigInvalid("ml_bound: trials >= 1");
    return static_cast<double>(audit.ml_errors) / static_cast<double>(audit.trials);
}

double ops_per_info_bit(const OpCounters& counters, std::uint32_t k) {
    if (k < 1) throw ConfigInvalid("ops_per_info_bit: k >= 1");
    return static_cast<double>(counters.total()) / static_cast<double>(k);
}

}  // namespace scw
