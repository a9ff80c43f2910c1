#pragma once

#include <cstdint>
#include <vector>

#include "aigx/qog.hpp"
#include "aigx/random.hpp"
#include "aigx/service.hpp"

namespace aigx {

/// QoE = alpha * reward - (beta_latency * s + beta_fee * units + beta_bandwidth * KB)
struct QoEWeights {
    double alpha = 15000.0;
    double beta_latency = 5.0;
    double beta_fee = 0.5;
    double beta_bandwidth = 3.0;

    void validate() const;
    double cost(const ResourceLedger& ledger) const;

    friend bool operator==(const QoEWeights&, const QoEWeights&) = default;
};

/// Whether the PESP decision is drawn once per task (the optimized prompt is
/// reused across that task's re-generations) or before every attempt.
enum class PeGranularity { PerTask, PerAttempt };

/// Sum: alpha times the sum of accepted scores. Mean: alpha times their mean.
enum class RewardAggregation { Sum, Mean };

struct SessionConfig {
    std::uint32_t target_accepted = 100;
    double per = 0.0;
    QoGDistribution base_qog{kCaseStudyBaseMean, kCaseStudyBaseStdDev};
    AcceptanceRule rule{kCaseStudyThreshold};
    ServiceProfile asp = case_study_asp();
    ServiceProfile pesp = case_study_pesp();
    QoEWeights weights{};
    PeGranularity pe_granularity = PeGranularity::PerTask;
    RewardAggregation reward_aggregation = RewardAggregation::Sum;
    std::uint32_t max_attempts_per_task = 10000;

    /// Throws DomainError/UsageError naming the offending field.
    void validate() const;

    /// Score model used when the PESP is called.
    QoGDistribution improved_qog() const { return apply_improvement(base_qog, pesp.improvement); }

    friend bool operator==(const SessionConfig&, const SessionConfig&) = default;
};

/// The case-study configuration: 100 target images, threshold 5, the
/// reported QoE weights and fees, and the derived per-call constants.
SessionConfig case_study_session_config(double per = 0.0);

struct SessionOutcome {
    ResourceLedger ledger;
    std::vector<double> accepted_scores;
    std::vector<double> all_scores;
    double reward = 0.0;
    double cost = 0.0;
    double qoe = 0.0;
    double mean_qog_all = 0.0;
    double mean_qog_accepted = 0.0;

    std::uint64_t regenerations() const noexcept { return ledger.regeneration_calls; }
};

/// One designer session: for each task, decide on prompt engineering,
/// then generate, score and re-generate until a score clears the threshold.
/// When `call_log` is non-null every charged call is appended to it.
/// Throws SessionError if a task exceeds max_attempts_per_task.
SessionOutcome run_session(const SessionConfig& config, RandomStream& rng, std::vector<CallRecord>* call_log = nullptr);

/// Closed-form expectations of the quantities run_session reports.
/// mean_qog_all is the ratio E[sum of all scores] / E[generations].
struct ExpectedOutcome {
    double acceptance_base = 0.0;
    double acceptance_improved = 0.0;
    double generations = 0.0;
    double regenerations = 0.0;
    double pesp_calls = 0.0;
    double latency = 0.0;
    double fee = 0.0;
    double bandwidth = 0.0;
    double score_sum_all = 0.0;
    double mean_qog_all = 0.0;
    double mean_qog_accepted = 0.0;
    double reward = 0.0;
    double cost = 0.0;
    double qoe = 0.0;
};

ExpectedOutcome expected_outcome(const SessionConfig& config);

} // namespace aigx
