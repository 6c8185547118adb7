#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "scw/osd.hpp"

using namespace scw;

namespace {

LlrVector noisy_llr(const Code& code, const BitVec& payload, double es_n0_db, Rng& rng) {
    const double n0 = 1.0 / std::pow(10.0, es_n0_db / 10.0);
    BitVec cw = code.encode(payload);
    BitVec tx = cw;
    if (code.n() % 2) {
        BitVec padded(code.n() + 1);
        for (std::uint32_t i = 0; i < code.n(); ++i) padded.set(i, cw.get(i));
        tx = padded;
    }
    auto y = transmit(modulate_qpsk(tx), n0, rng);
    LlrVector llr = llr_from_received(y, n0);
    llr.resize(code.n());
    return llr;
}

}  // namespace

TEST_SUITE("osd") {
    TEST_CASE("order_for_ml arithmetic") {
        CHECK(order_for_ml(4) == 0);
        CHECK(order_for_ml(12) == 2);
        CHECK(order_for_ml(22) == 5);
        CHECK(order_for_ml(1) == 0);
        CHECK(order_for_ml(2) == 0);
        CHECK(order_for_ml(9) == 2);
    }

    TEST_CASE("soft_distance basics") {
        LlrVector llr = {2.0, -1.0, 0.5, -4.0};
        BitVec hard = hard_decision(llr);
        CHECK(soft_distance(hard, hard, llr) == 0.0);
        BitVec one = hard;
        one.flip(2);
        CHECK(soft_distance(one, hard, llr) == doctest::Approx(0.5));
    }

    TEST_CASE("TEP enumeration: count and weight order") {
        for (std::uint32_t k : {4u, 6u, 9u}) {
            for (int order : {0, 1, 2, 3}) {
                TepEnumerator en(k, order);
                std::vector<std::uint32_t> sup;
                std::uint64_t count = 0, expect = 0;
                int last_w = 0;
                while (en.next(sup)) {
                    ++count;
                    CHECK(static_cast<int>(sup.size()) >= last_w);
                    last_w = static_cast<int>(sup.size());
                    CHECK(std::is_sorted(sup.begin(), sup.end()));
                }
                for (int w = 0; w <= order && w <= static_cast<int>(k); ++w) {
                    std::uint64_t c = 1;
                    for (int j = 0; j < w; ++j) c = c * (k - j) / (j + 1);
                    expect += c;
                }
                CHECK(count == expect);
            }
        }
    }

    TEST_CASE("TEP colex order starts at the least reliable end") {
        TepEnumerator en(5, 2);
        std::vector<std::vector<std::uint32_t>> seen;
        std::vector<std::uint32_t> sup;
        while (en.next(sup)) seen.push_back(sup);
        REQUIRE(seen.size() == 1 + 5 + 10);
        CHECK(seen[0].empty());
        CHECK(seen[1] == std::vector<std::uint32_t>{0});
        CHECK(seen[5] == std::vector<std::uint32_t>{4});
        CHECK(seen[6] == (std::vector<std::uint32_t>{0, 1}));
        CHECK(seen[7] == (std::vector<std::uint32_t>{0, 2}));
        CHECK(seen[8] == (std::vector<std::uint32_t>{1, 2}));
    }

    TEST_CASE("zero noise returns the transmitted codeword with score 0") {
        Code code = build_ebch(16, 7);
        Rng rng(3);
        for (int t = 0; t < 50; ++t) {
            BitVec u(7);
            for (int i = 0; i < 7; ++i) u.set(i, rng.bit());
            LlrVector llr = noisy_llr(code, u, 100.0, rng);
            OsdConfig cfg;
            cfg.order = 0;
            DecodeResult res = osd_decode(code, llr, cfg);
            CHECK(res.status == DecodeStatus::Ok);
            CHECK(res.codeword == code.encode(u));
            CHECK(res.info == u);
            CHECK(res.score == 0.0);
        }
    }

    TEST_CASE("order-k OSD equals brute-force ML on (8,4) over noisy trials") {
        Code code = build_ebch(8, 4);
        auto codewords = oracle::all_codewords(code.g);
        Rng rng(7);
        OsdConfig cfg;
        cfg.order = 4;
        for (int t = 0; t < 2000; ++t) {
            BitVec u(4);
            for (int i = 0; i < 4; ++i) u.set(i, rng.bit());
            LlrVector llr = noisy_llr(code, u, 1.0, rng);
            DecodeResult res = osd_decode(code, llr, cfg);
            CHECK(res.codeword == oracle::ml_decode(codewords, llr));
        }
    }

    TEST_CASE("outputs are always valid codewords") {
        Code code = build_random(20, 9, 4);
        Rng rng(11);
        OsdConfig cfg;
        cfg.order = 2;
        for (int t = 0; t < 1000; ++t) {
            LlrVector llr = oracle::random_llr(rng, 20);
            DecodeResult res = osd_decode(code, llr, cfg);
            CHECK(code.contains(res.codeword));
        }
    }

    TEST_CASE("score is non-increasing in the order") {
        Code code = build_random(18, 8, 21);
        Rng rng(13);
        for (int t = 0; t < 300; ++t) {
            LlrVector llr = oracle::random_llr(rng, 18);
            double prev = std::numeric_limits<double>::infinity();
            for (int order = 0; order <= 4; ++order) {
                OsdConfig cfg;
                cfg.order = order;
                const double s = osd_decode(code, llr, cfg).score;
                CHECK(s <= prev + 1e-12);
                prev = s;
            }
        }
    }

    TEST_CASE("decoding is invariant under joint column permutation") {
        Code code = build_random(16, 8, 31);
        Rng rng(17);
        OsdConfig cfg;
        cfg.order = 3;
        for (int t = 0; t < 1000; ++t) {
            LlrVector llr = oracle::random_llr(rng, 16);
            std::vector<std::uint32_t> pr(16);
            std::iota(pr.begin(), pr.end(), 0u);
            for (std::size_t i = 16; i > 1; --i)
                std::swap(pr[i - 1], pr[rng.next_u64() % i]);
            Permutation perm(pr);

            Code permuted;
            permuted.spec = code.spec;
            permuted.g = permute_columns(code.g, perm);
            permuted.finalize();
            LlrVector llr_p = perm.apply(llr);

            DecodeResult a = osd_decode(code, llr, cfg);
            DecodeResult b = osd_decode(permuted, llr_p, cfg);
            CHECK(b.codeword == perm.apply_bits(a.codeword));
        }
    }

    TEST_CASE("pb threshold 0 reproduces the original variant bitwise") {
        Code code = build_random(24, 12, 8);
        Rng rng(19);
        for (int t = 0; t < 500; ++t) {
            LlrVector llr = oracle::random_llr(rng, 24);
            OsdConfig orig;
            orig.order = 3;
            OsdConfig pb;
            pb.order = 3;
            pb.variant = OsdVariant::Pb;
            pb.pb_threshold = 0.0;
            CHECK(osd_decode(code, llr, orig).codeword == osd_decode(code, llr, pb).codeword);
        }
    }

    TEST_CASE("pb stopping rule edge cases") {
        std::vector<double> mrb(10, 3.0);
        CHECK_FALSE(pb_keep_searching(0.0, 1, mrb, 1e-5));      // perfect match found
        CHECK(pb_keep_searching(1.0, 1, mrb, 0.0));             // disabled threshold
        CHECK_FALSE(pb_keep_searching(1.0, 8, mrb, 0.5));       // deep class, tiny tail
    }

    TEST_CASE("pb variant never does more TEP work and rarely disagrees") {
        Code code = build_random(32, 16, 77);
        Rng rng(23);
        const double snr = 5.0;  // near the low-BLER operating point
        std::uint64_t teps_orig = 0, teps_pb = 0, diffs = 0;
        const int trials = 1500;
        for (int t = 0; t < trials; ++t) {
            BitVec u(16);
            for (int i = 0; i < 16; ++i) u.set(i, rng.bit());
            LlrVector llr = noisy_llr(code, u, snr, rng);
            OsdConfig a;
            a.order = 4;
            OsdConfig b;
            b.order = 4;
            b.variant = OsdVariant::Pb;
            b.pb_threshold = 1e-3;
            DecodeResult ra = osd_decode(code, llr, a);
            DecodeResult rb = osd_decode(code, llr, b);
            REQUIRE(rb.queries <= ra.queries);
            teps_orig += ra.queries;
            teps_pb += rb.queries;
            diffs += ra.codeword == rb.codeword ? 0 : 1;
        }
        CHECK(teps_pb < teps_orig);
        CHECK(static_cast<double>(diffs) / trials < 0.01);
    }

    TEST_CASE("op cap abandons mid-search but still returns a codeword") {
        Code code = build_random(32, 16, 5);
        Rng rng(29);
        int abandoned = 0;
        for (int t = 0; t < 50; ++t) {
            // flat magnitudes defeat the algebraic prunes, forcing a long sweep
            LlrVector llr(32);
            for (int i = 0; i < 32; ++i)
                llr[i] = (rng.bit() ? -1.0 : 1.0) * (1.0 + 1e-6 * i);
            OsdConfig cfg;
            cfg.order = 4;
            cfg.op_cap = 2000;
            DecodeResult res = osd_decode(code, llr, cfg);
            CHECK(res.has_candidate);
            CHECK(code.contains(res.codeword));
            if (res.status == DecodeStatus::Abandoned) {
                ++abandoned;
                CHECK(res.counters.total() < 2000 + 300);
            }
        }
        CHECK(abandoned > 25);
    }

    TEST_CASE("order must be explicit when dh is unknown") {
        Code code = build_random(64, 32, 2);  // k > 20: no spectrum, no dh
        CHECK_FALSE(code.dh.has_value());
        LlrVector llr(64, 1.0);
        OsdConfig cfg;  // order unset
        CHECK_THROWS_AS(osd_decode(code, llr, cfg), ConfigInvalid);
    }

    TEST_CASE("counters are deterministic") {
        Code code = build_random(24, 12, 3);
        Rng rng(31);
        LlrVector llr = oracle::random_llr(rng, 24);
        OsdConfig cfg;
        cfg.order = 2;
        DecodeResult a = osd_decode(code, llr, cfg);
        DecodeResult b = osd_decode(code, llr, cfg);
        CHECK(a.counters == b.counters);
        CHECK(a.queries == b.queries);
    }
}
