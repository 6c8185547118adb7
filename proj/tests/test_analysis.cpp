#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "scw/analysis.hpp"
#include "scw/osd.hpp"

using namespace scw;

TEST_SUITE("analysis") {
    TEST_CASE("gauss-hermite moments") {
        const double sqrt_pi = std::sqrt(M_PI);
        for (int n : {5, 20, 63}) {
            GaussHermite gh = gauss_hermite(n);
            REQUIRE(gh.nodes.size() == static_cast<std::size_t>(n));
            double s0 = 0, s2 = 0, s4 = 0, s1 = 0;
            for (int i = 0; i < n; ++i) {
                s0 += gh.weights[i];
                s1 += gh.weights[i] * gh.nodes[i];
                s2 += gh.weights[i] * gh.nodes[i] * gh.nodes[i];
                s4 += gh.weights[i] * std::pow(gh.nodes[i], 4);
            }
            CHECK(s0 == doctest::Approx(sqrt_pi).epsilon(1e-12));
            CHECK(s1 == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(s2 == doctest::Approx(sqrt_pi / 2).epsilon(1e-12));
            CHECK(s4 == doctest::Approx(3 * sqrt_pi / 4).epsilon(1e-12));
        }
    }

    TEST_CASE("capacity/dispersion against the trapezoid oracle") {
        for (double snr : {-2.0, 0.0, 2.0, 5.0}) {
            ChannelCV cv = biawgn_cv(snr);
            auto ref = oracle::biawgn_cv_trapezoid(snr);
            CHECK(std::abs(cv.capacity_bits - ref.c) < 1e-6);
            CHECK(std::abs(cv.dispersion_bits2 - ref.v) < 1e-6);
        }
    }

    TEST_CASE("normal approximation against an independent quadrature oracle") {
        auto na_oracle = [](std::uint32_t n, std::uint32_t k, double snr) {
            auto cv = oracle::biawgn_cv_trapezoid(snr);
            const double num = n * cv.c - k + 0.5 * std::log2(static_cast<double>(n));
            return 0.5 * std::erfc(num / std::sqrt(n * cv.v) / std::sqrt(2.0));
        };
        for (double snr : {0.0, 1.5, 3.0}) {
            CHECK(normal_approx_bler(128, 64, snr) ==
                  doctest::Approx(na_oracle(128, 64, snr)).epsilon(1e-6));
        }
    }

    TEST_CASE("NA tends to zero at high SNR and is monotone in SNR and rate") {
        CHECK(normal_approx_bler(128, 64, 40.0) < 1e-12);
        Rng rng(3);
        for (int t = 0; t < 1000; ++t) {
            const std::uint32_t n = 16 + rng.next_u64() % 240;
            const std::uint32_t k = 1 + rng.next_u64() % (n - 2);
            const double snr = -5.0 + 12.0 * rng.uniform_pos();
            const double e1 = normal_approx_bler(n, k, snr);
            CHECK(normal_approx_bler(n, k, snr + 0.25) <= e1 + 1e-12);
            CHECK(normal_approx_bler(n, k + 1, snr) >= e1 - 1e-12);
        }
    }

    TEST_CASE("na snr solver hits the target") {
        const double snr = na_snr_for_bler(128, 64, 1e-3);
        CHECK(normal_approx_bler(128, 64, snr) == doctest::Approx(1e-3).epsilon(1e-3));
    }

    TEST_CASE("ml audit bookkeeping") {
        MlAudit a{1000, 50, 20};
        CHECK(ml_bound(a) == doctest::Approx(0.02));
        MlAudit b{10, 0, 0};
        CHECK(ml_bound(b) == 0.0);
    }

    TEST_CASE("is_ml_error against brute-force ML frequency on (8,4)") {
        Code code = build_ebch(8, 4);
        auto codewords = oracle::all_codewords(code.g);
        Rng rng(7);
        const double snr_db = 1.0;
        const double n0 = 1.0 / std::pow(10.0, snr_db / 10.0);
        std::uint64_t trials = 100000, ml_flagged = 0, oracle_errors = 0;
        OsdConfig cfg;
        cfg.order = 4;  // exact ML decoder
        for (std::uint64_t t = 0; t < trials; ++t) {
            BitVec u(4);
            for (int i = 0; i < 4; ++i) u.set(i, rng.bit());
            BitVec cw = code.encode(u);
            auto y = transmit(modulate_qpsk(cw), n0, rng);
            LlrVector llr = llr_from_received(y, n0);
            DecodeResult res = osd_decode(code, llr, cfg);
            if (res.codeword != cw && is_ml_error(llr, cw, res)) ++ml_flagged;
            if (oracle::ml_decode(codewords, llr) != cw) ++oracle_errors;
        }
        // order-4 OSD errors are exactly the ML errors, so the audit frequency
        // must match the true ML BLER within 3 standard errors
        const double p = static_cast<double>(oracle_errors) / trials;
        const double se = std::sqrt(p * (1 - p) / trials);
        CHECK(std::abs(static_cast<double>(ml_flagged) / trials - p) <= 3 * se + 1e-12);
    }

    TEST_CASE("ops per info bit") {
        OpCounters c;
        c.additions = 10;
        c.multiplications = 20;
        c.comparisons = 30;
        CHECK(ops_per_info_bit(c, 6) == doctest::Approx(10.0));
        CHECK(ops_per_info_bit(OpCounters{}, 4) == 0.0);
    }
}
