#include <doctest.h>

#include <map>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "scw/grand.hpp"

using namespace scw;

TEST_SUITE("grand") {
    TEST_CASE("logistic weight examples") {
        CHECK(logistic_weight({}) == 0);
        std::vector<std::uint32_t> one = {1};
        CHECK(logistic_weight(one) == 1);
        std::vector<std::uint32_t> two = {2, 5};
        CHECK(logistic_weight(two) == 7);
    }

    TEST_CASE("schedule head for n=3") {
        auto sched = build_schedule(3, 5);
        REQUIRE(sched.size() == 5);
        CHECK(sched[0].empty());
        CHECK(sched[1] == std::vector<std::uint32_t>{1});
        CHECK(sched[2] == std::vector<std::uint32_t>{2});
        CHECK(sched[3] == std::vector<std::uint32_t>{3});
        std::set<std::uint32_t> s4(sched[4].begin(), sched[4].end());
        CHECK(s4 == std::set<std::uint32_t>{1, 2});
    }

    TEST_CASE("per-weight counts match the distinct-partition oracle") {
        const std::uint32_t n = 24;
        LogisticScheduleIter it(n);
        std::vector<std::uint32_t> parts;
        std::map<std::uint64_t, std::uint64_t> per_weight;
        for (int q = 0; q < 4000 && it.next(parts); ++q)
            per_weight[logistic_weight(parts)] += 1;
        for (std::uint32_t w = 0; w <= 12; ++w)
            CHECK(per_weight[w] == oracle::distinct_partitions(w, n));
        CHECK(per_weight[6] == 4);
    }

    TEST_CASE("schedule weights are non-decreasing, supports distinct and valid") {
        const std::uint32_t n = 10;
        LogisticScheduleIter it(n);
        std::vector<std::uint32_t> parts;
        std::set<std::vector<std::uint32_t>> seen;
        std::uint64_t last_w = 0, count = 0;
        while (it.next(parts)) {
            std::vector<std::uint32_t> sorted = parts;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
            if (!sorted.empty()) CHECK(sorted.back() <= n);
            const std::uint64_t w = logistic_weight(parts);
            CHECK(w >= last_w);
            last_w = w;
            CHECK(seen.insert(sorted).second);
            ++count;
        }
        CHECK(count == (std::uint64_t(1) << n));  // all supports exactly once
    }

    TEST_CASE("schedule prefix stability") {
        auto a = build_schedule(12, 100);
        auto b = build_schedule(12, 1000);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }

    TEST_CASE("zero noise: first query wins") {
        Code code = build_ebch(16, 7);
        BitVec u(7);
        u.set(2, true);
        const double n0 = 1e-6;
        Rng rng(1);
        auto y = transmit(modulate_qpsk(code.encode(u)), n0, rng);
        LlrVector llr = llr_from_received(y, n0);
        GrandConfig cfg;
        DecodeResult res = grand_decode(code, llr, cfg);
        CHECK(res.status == DecodeStatus::Ok);
        CHECK(res.queries == 1);
        CHECK(res.codeword == code.encode(u));
    }

    TEST_CASE("abandonment with max_queries=1 on a non-codeword hard decision") {
        Code code = build_ebch(16, 7);
        Rng rng(3);
        GrandConfig cfg;
        cfg.max_queries = 1;
        int abandoned = 0;
        for (int t = 0; t < 200; ++t) {
            LlrVector llr = oracle::random_llr(rng, 16);
            if (syndrome(code.h, hard_decision(llr)).is_zero()) continue;
            DecodeResult res = grand_decode(code, llr, cfg);
            CHECK(res.status == DecodeStatus::Abandoned);
            CHECK_FALSE(res.has_candidate);
            ++abandoned;
        }
        CHECK(abandoned > 100);
    }

    TEST_CASE("any OK result has zero syndrome; query count bookkeeping") {
        Code code = build_random(16, 9, 6);
        Rng rng(5);
        GrandConfig cfg;
        for (int t = 0; t < 1000; ++t) {
            LlrVector llr = oracle::random_llr(rng, 16);
            DecodeResult res = grand_decode(code, llr, cfg);
            REQUIRE(res.status == DecodeStatus::Ok);
            CHECK(code.contains(res.codeword));
            CHECK(res.queries >= 1);
        }
    }

    TEST_CASE("exact-likelihood GRAND equals brute-force ML (exhaustive schedule)") {
        for (auto [n, k, seed] : {std::tuple<int, int, int>{12, 6, 1}, {16, 8, 2}, {14, 9, 3}}) {
            Code code = build_random(n, k, seed);
            auto codewords = oracle::all_codewords(code.g);
            Rng rng(100 + seed);
            GrandConfig cfg;
            cfg.ordering = GrandOrdering::ExactLikelihood;
            for (int t = 0; t < 1500; ++t) {
                LlrVector llr = oracle::random_llr(rng, n);
                DecodeResult res = grand_decode(code, llr, cfg);
                REQUIRE(res.status == DecodeStatus::Ok);
                CHECK(res.codeword == oracle::ml_decode(codewords, llr));
            }
        }
    }

    TEST_CASE("query bound values") {
        CHECK(query_bound(128, 106, 0.5) == 4194304.0);  // 2^{n-k}
        CHECK(query_bound(64, 36, 0.5) == doctest::Approx(std::exp2(28.0)));
        CHECK(query_bound(24, 12, 1e-12) == doctest::Approx(1.0).epsilon(1e-3));
        // non-decreasing in p
        double prev = 0.0;
        for (double p : {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
            const double b = query_bound(32, 16, p);
            CHECK(b >= prev);
            prev = b;
        }
        CHECK_THROWS_AS(query_bound(8, 4, 0.7), UnsupportedParams);
    }

    TEST_CASE("bsc crossover sanity") {
        CHECK(bsc_crossover(0.0) == doctest::Approx(q_func(1.0)));
        CHECK(bsc_crossover(10.0) < bsc_crossover(0.0));
    }
}
