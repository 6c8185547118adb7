#include <doctest.h>

#include <numeric>
#include <set>

#include "oracles.hpp"
#include "scw/scfamily.hpp"

using namespace scw;

namespace {

LlrVector noisy_llr(const Code& code, const BitVec& payload, double es_n0_db, Rng& rng) {
    const double n0 = 1.0 / std::pow(10.0, es_n0_db / 10.0);
    auto y = transmit(modulate_qpsk(code.encode(payload)), n0, rng);
    return llr_from_received(y, n0);
}

// (12,6) random code zero-padded to length 16 so the SC family can search it
Code padded_code(const Code& base, std::uint32_t n2) {
    Code padded;
    padded.spec = base.spec;
    padded.spec.n = n2;
    padded.g = BitMatrix(base.k(), n2);
    for (std::uint32_t r = 0; r < base.k(); ++r)
        for (std::uint32_t c = 0; c < base.n(); ++c)
            if (base.g.get(r, c)) padded.g.set(r, c, true);
    padded.finalize();
    return padded;
}

}  // namespace

TEST_SUITE("scfamily") {
    TEST_CASE("path metric penalties") {
        CHECK(path_metric_update(0.0, 0.0, false) == doctest::Approx(std::log(2.0)));
        CHECK(path_metric_update(0.0, 50.0, false) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(path_metric_update(0.0, -50.0, true) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(path_metric_update(1.0, 3.0, true) > 1.0);
    }

    TEST_CASE("full-path metric equals the direct codeword metric (n=8)") {
        Code code = build_polar(8, 8);  // no frozen bits: every u is reachable
        Rng rng(3);
        for (int t = 0; t < 300; ++t) {
            LlrVector llr = oracle::random_llr(rng, 8);
            DecodeResult res = sc_decode(*code.descriptor, llr);
            // direct metric of the decoded codeword
            double direct = 0.0;
            for (int i = 0; i < 8; ++i)
                direct = path_metric_update(direct, llr[i], res.codeword.get(i));
            // recompute the path metric by rerunning with L=1 and reading score?
            // instead: the SC result for a free tree is the hard decision, metric
            // equals sum of penalties of agreeing bits
            double metric = 0.0;
            BitVec hard = hard_decision(llr);
            for (int i = 0; i < 8; ++i)
                metric = path_metric_update(metric, llr[i], hard.get(i));
            CHECK(res.codeword == hard);
            CHECK(metric == doctest::Approx(direct).epsilon(1e-9));
        }
    }

    TEST_CASE("sc on n=2, k=2 with strong positive llrs decides (0,0)") {
        Code code = build_polar(2, 2);
        LlrVector llr = {5.0, 5.0};
        DecodeResult res = sc_decode(*code.descriptor, llr);
        CHECK(res.info.is_zero());
        CHECK(res.codeword.is_zero());
    }

    TEST_CASE("zero noise decodes to the transmitted codeword") {
        for (Code code : {build_polar(32, 16), build_pac(32, 16), attach_crc(32, 10, 0x13)}) {
            Rng rng(5);
            for (int t = 0; t < 50; ++t) {
                BitVec u(code.k());
                for (std::uint32_t i = 0; i < code.k(); ++i) u.set(i, rng.bit());
                LlrVector llr = noisy_llr(code, u, 60.0, rng);
                for (auto mode : {SearchMode::Sc, SearchMode::Scl, SearchMode::Scs,
                                  SearchMode::Sq}) {
                    SearchConfig cfg;
                    cfg.mode = mode;
                    cfg.list_size = 4;
                    DecodeResult res = search_decode(*code.descriptor, llr, cfg);
                    CHECK(res.status == DecodeStatus::Ok);
                    CHECK(res.codeword == code.encode(u));
                }
            }
        }
    }

    TEST_CASE("SCL(L=1) equals SC bitwise over 1000 trials") {
        Code code = build_polar(64, 30);
        Rng rng(7);
        for (int t = 0; t < 1000; ++t) {
            LlrVector llr = oracle::random_llr(rng, 64);
            DecodeResult a = sc_decode(*code.descriptor, llr);
            DecodeResult b = scl_decode(*code.descriptor, llr, 1);
            CHECK(a.codeword == b.codeword);
        }
    }

    TEST_CASE("saturated SCL / SCS / SQ(bias 0) equal brute-force ML on k <= 12") {
        for (Code code : {build_polar(16, 8), build_pac(16, 7), build_ebch(16, 7)}) {
            PolarDescriptor desc = descriptor_for(code);
            auto codewords = oracle::all_codewords(code.g);
            Rng rng(11);
            const std::uint32_t sat = 1u << code.k();
            for (int t = 0; t < 400; ++t) {
                BitVec u(code.k());
                for (std::uint32_t i = 0; i < code.k(); ++i) u.set(i, rng.bit());
                LlrVector llr = noisy_llr(code, u, 0.0, rng);
                const BitVec ml = oracle::ml_decode(codewords, llr);
                const double ml_s = oracle::ml_score(codewords, llr);

                DecodeResult l = scl_decode(desc, llr, sat);
                CHECK(l.codeword == ml);
                DecodeResult s = scs_decode(desc, llr, sat, 4 * sat);
                CHECK(s.status == DecodeStatus::Ok);
                CHECK(soft_distance(s.codeword, hard_decision(llr), llr) ==
                      doctest::Approx(ml_s).epsilon(1e-9));
                DecodeResult q = sq_decode(desc, llr, sat, 0.0, 4 * sat);
                CHECK(soft_distance(q.codeword, hard_decision(llr), llr) ==
                      doctest::Approx(ml_s).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("SCS visited kernels approach one pass at high SNR; zero noise single path") {
        Code code = build_polar(128, 64);
        Rng rng(13);
        BitVec u(64);
        for (int i = 0; i < 64; ++i) u.set(i, rng.bit());
        LlrVector llr = noisy_llr(code, u, 30.0, rng);
        DecodeResult res = scs_decode(*code.descriptor, llr, 32);
        CHECK(res.codeword == code.encode(u));
        const std::uint64_t one_pass = 128 * 7;
        CHECK(res.queries == one_pass);  // straight-line search
    }

    TEST_CASE("SC kernel count is exactly n log2 n") {
        for (auto [n, k] : {std::pair<int, int>{64, 32}, {128, 64}}) {
            Code code = build_polar(n, k);
            Rng rng(17);
            LlrVector llr = oracle::random_llr(rng, n);
            DecodeResult res = sc_decode(*code.descriptor, llr);
            CHECK(res.queries ==
                  static_cast<std::uint64_t>(n) * std::countr_zero(static_cast<unsigned>(n)));
        }
    }

    TEST_CASE("sq with bias 0 equals scs") {
        Code code = build_polar(64, 30);
        Rng rng(19);
        for (int t = 0; t < 300; ++t) {
            LlrVector llr = oracle::random_llr(rng, 64);
            DecodeResult a = scs_decode(*code.descriptor, llr, 8);
            DecodeResult b = sq_decode(*code.descriptor, llr, 8, 0.0);
            CHECK(a.status == b.status);
            if (a.status == DecodeStatus::Ok) CHECK(a.codeword == b.codeword);
        }
    }

    TEST_CASE("all OK outputs are valid codewords (with CRC check)") {
        Code code = attach_crc(64, 24, 0xE21);
        PolarDescriptor desc = *code.descriptor;
        Rng rng(23);
        for (int t = 0; t < 1000; ++t) {
            LlrVector llr = oracle::random_llr(rng, 64);
            SearchConfig cfg;
            cfg.mode = t % 2 ? SearchMode::Scl : SearchMode::Sq;
            cfg.list_size = 8;
            DecodeResult res = search_decode(desc, llr, cfg);
            if (res.status == DecodeStatus::Ok) CHECK(code.contains(res.codeword));
        }
    }

    TEST_CASE("dynamic-frozen descriptor reproduces the codeword set of eBCH(8,4)") {
        Code code = build_ebch(8, 4);
        PolarDescriptor desc = dynamic_frozen_descriptor(code);
        CHECK(desc.info_set.size() == 4);
        std::uint32_t constraints = 0;
        for (std::uint32_t i = 0; i < 8; ++i)
            if (desc.leaf[i] != LeafKind::Info) ++constraints;
        CHECK(constraints == 4);  // n - k
        std::set<std::string> set_a, set_b;
        for (const auto& cw : oracle::all_codewords(code.g)) set_a.insert(cw.to_string());
        for (std::uint64_t m = 0; m < 16; ++m) {
            BitVec u(4);
            for (int i = 0; i < 4; ++i)
                if ((m >> i) & 1) u.set(i, true);
            set_b.insert(descriptor_encode(desc, u).to_string());
        }
        CHECK(set_a == set_b);
    }

    TEST_CASE("dynamic-frozen encoder consistency on 1000 random payloads, (64,36)") {
        Code code = build_ebch(64, 36);
        PolarDescriptor desc = dynamic_frozen_descriptor(code);
        Rng rng(29);
        for (int t = 0; t < 1000; ++t) {
            BitVec u(36);
            for (int i = 0; i < 36; ++i) u.set(i, rng.bit());
            CHECK(code.contains(descriptor_encode(desc, u)));
        }
    }

    TEST_CASE("padded non-power-of-two code decodes exactly (saturated SCL = ML)") {
        Code base = build_random(12, 6, 77);
        Code padded = padded_code(base, 16);
        PolarDescriptor desc = dynamic_frozen_descriptor(padded);
        auto codewords = oracle::all_codewords(base.g);
        Rng rng(31);
        for (int t = 0; t < 500; ++t) {
            BitVec u(6);
            for (int i = 0; i < 6; ++i) u.set(i, rng.bit());
            LlrVector llr12 = noisy_llr(base, u, 2.0, rng);
            LlrVector llr = llr12;
            llr.resize(16, 1e9);  // padded coordinates carry known zeros
            DecodeResult res = scl_decode(desc, llr, 64);
            BitVec trimmed(12);
            for (int i = 0; i < 12; ++i) trimmed.set(i, res.codeword.get(i));
            CHECK(trimmed == oracle::ml_decode(codewords, llr12));
        }
    }

    TEST_CASE("equal-priority pops break ties by insertion order (determinism)") {
        Code code = build_polar(32, 12);
        Rng rng(37);
        for (int t = 0; t < 200; ++t) {
            LlrVector llr = oracle::random_llr(rng, 32);
            DecodeResult a = scs_decode(*code.descriptor, llr, 16);
            DecodeResult b = scs_decode(*code.descriptor, llr, 16);
            CHECK(a.codeword == b.codeword);
            CHECK(a.counters == b.counters);
        }
    }

    TEST_CASE("abandonment on empty store with tiny caps") {
        Code code = attach_crc(32, 10, 0xE21);
        Rng rng(41);
        int abandoned = 0;
        for (int t = 0; t < 300; ++t) {
            LlrVector llr = oracle::random_llr(rng, 32, 0.6);
            DecodeResult res = scs_decode(*code.descriptor, llr, 1, 1);
            if (res.status == DecodeStatus::Abandoned) ++abandoned;
        }
        CHECK(abandoned > 0);  // CRC filtering with a single stored path must sometimes fail
    }

    TEST_CASE("default sq bias is the mean bit penalty") {
        LlrVector llr = {1.0, -2.0, 0.5};
        const double expect =
            (std::log1p(std::exp(-1.0)) + std::log1p(std::exp(-2.0)) + std::log1p(std::exp(-0.5))) /
            3.0;
        CHECK(sq_default_bias(llr) == doctest::Approx(expect));
    }
}
