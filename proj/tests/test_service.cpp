#include <cmath>
#include <vector>

#include "doctest.h"

#include "aigx/errors.hpp"
#include "aigx/qog.hpp"
#include "aigx/random.hpp"
#include "aigx/service.hpp"

using namespace aigx;

TEST_CASE("ServiceProfile validation") {
    CHECK_NOTHROW(case_study_asp().validate());
    CHECK_NOTHROW(case_study_pesp().validate());
    CHECK_THROWS_AS(ServiceProfile::asp(-1.0, 1.0, 1.0).validate(), DomainError);
    CHECK_THROWS_AS(ServiceProfile::pesp(1.0, NAN, 1.0, ImprovementFactor(1.1)).validate(), DomainError);
    auto bad = case_study_asp();
    bad.improvement = ImprovementFactor(1.2);
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("charge_generation") {
    const auto asp = ServiceProfile::asp(10.0, 2.0, 3.0);

    SUBCASE("first attempt pays the fee") {
        const auto l = charge_generation({}, asp, false);
        CHECK(l.total_fee == 10.0);
        CHECK(l.total_latency == 2.0);
        CHECK(l.total_bandwidth == 3.0);
        CHECK(l.generation_calls == 1);
        CHECK(l.regeneration_calls == 0);
    }
    SUBCASE("re-generation is free but still costs latency and bandwidth") {
        const auto l = charge_generation({}, asp, true);
        CHECK(l.total_fee == 0.0);
        CHECK(l.total_latency == 2.0);
        CHECK(l.total_bandwidth == 3.0);
        CHECK(l.generation_calls == 1);
        CHECK(l.regeneration_calls == 1);
    }
    SUBCASE("role mismatch") {
        CHECK_THROWS_AS(charge_generation({}, case_study_pesp(), false), UsageError);
        CHECK_THROWS_AS(charge_pesp({}, case_study_asp()), UsageError);
    }
}

TEST_CASE("charge_pesp") {
    const auto l = charge_pesp({}, case_study_pesp());
    CHECK(l.total_fee == 80.0);
    CHECK(l.total_latency == kCaseStudyPespLatency);
    CHECK(l.total_bandwidth == kCaseStudyPespBandwidth);
    CHECK(l.pesp_calls == 1);
    CHECK(l.generation_calls == 0);
}

TEST_CASE("ledger identities and replay over random call sequences") {
    RandomStream rng(55);
    const auto asp = case_study_asp();
    const auto pesp = case_study_pesp();
    for (int trial = 0; trial < 200; ++trial) {
        ResourceLedger ledger;
        std::vector<CallRecord> log;
        const auto n = rng.below(300);
        for (std::uint64_t k = 0; k < n; ++k) {
            const auto pick = rng.below(3);
            if (pick == 0) {
                ledger = charge_pesp(ledger, pesp);
                log.push_back(pesp_call(pesp));
            } else {
                const bool regen = pick == 2;
                ledger = charge_generation(ledger, asp, regen);
                log.push_back(generation_call(asp, regen));
            }
        }
        REQUIRE(replay(log) == ledger);
        const auto first = ledger.generation_calls - ledger.regeneration_calls;
        CHECK(ledger.total_fee ==
              doctest::Approx(asp.fee_per_call * first + pesp.fee_per_call * ledger.pesp_calls).epsilon(1e-12));
        CHECK(ledger.total_latency == doctest::Approx(asp.latency_per_call * ledger.generation_calls +
                                                      pesp.latency_per_call * ledger.pesp_calls)
                                          .epsilon(1e-12));
        CHECK(ledger.total_bandwidth == doctest::Approx(asp.bandwidth_per_call * ledger.generation_calls +
                                                        pesp.bandwidth_per_call * ledger.pesp_calls)
                                            .epsilon(1e-12));
    }
}

TEST_CASE("derive_generation_constants") {
    const auto c = derive_generation_constants(kReportedLatencyPer0, kReportedBandwidthPer0, 383.6);
    CHECK(c.latency_per_call == doctest::Approx(40.15).epsilon(1e-3));
    CHECK(c.bandwidth_per_call == doctest::Approx(180.7).epsilon(1e-3));

    const auto zero = derive_generation_constants(0.0, 0.0, 17.0);
    CHECK(zero.latency_per_call == 0.0);
    CHECK(zero.bandwidth_per_call == 0.0);
    CHECK_THROWS_AS(derive_generation_constants(1.0, 1.0, 0.0), DomainError);

    SUBCASE("forward cross-check at full prompt engineering is within 0.5%") {
        const QoGDistribution base(kCaseStudyBaseMean, kCaseStudyBaseStdDev);
        const AcceptanceRule rule{kCaseStudyThreshold};
        const double gens0 = expected_generations(acceptance_probability(base, rule), 100);
        const auto k = derive_generation_constants(kReportedLatencyPer0, kReportedBandwidthPer0, gens0);
        const double p1 = acceptance_probability(apply_improvement(base, ImprovementFactor(kCaseStudyAverageImprovement)), rule);
        const double gens1 = expected_generations(p1, 100);
        CHECK(gens1 == doctest::Approx(141.7).epsilon(1e-3));
        CHECK(std::abs(gens1 * k.latency_per_call / kReportedLatencyPer1 - 1.0) < 0.005);
        CHECK(std::abs(gens1 * k.bandwidth_per_call / kReportedBandwidthPer1 - 1.0) < 0.005);
    }
}
