#include "aigx/session.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "aigx/errors.hpp"

namespace aigx {

namespace {

bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

double reward_of(const SessionConfig& c, double accepted_sum) {
    const double r = c.reward_aggregation == RewardAggregation::Sum ? accepted_sum : accepted_sum / c.target_accepted;
    return c.weights.alpha * r;
}

} // namespace

void QoEWeights::validate() const {
    if (!non_negative(alpha)) throw DomainError("weights.alpha must be non-negative");
    if (!non_negative(beta_latency)) throw DomainError("weights.beta_latency must be non-negative");
    if (!non_negative(beta_fee)) throw DomainError("weights.beta_fee must be non-negative");
    if (!non_negative(beta_bandwidth)) throw DomainError("weights.beta_bandwidth must be non-negative");
}

double QoEWeights::cost(const ResourceLedger& l) const {
    return beta_latency * l.total_latency + beta_fee * l.total_fee + beta_bandwidth * l.total_bandwidth;
}

void SessionConfig::validate() const {
    if (target_accepted < 1) throw DomainError("target_accepted must be at least 1");
    if (!(per >= 0.0 && per <= 1.0)) throw DomainError("per must lie in [0, 1], got " + std::to_string(per));
    if (max_attempts_per_task < 1) throw DomainError("max_attempts_per_task must be at least 1");
    if (!(base_qog.lower_bound() < rule.threshold && rule.threshold < base_qog.upper_bound()))
        throw DomainError("threshold must lie strictly inside the QoG score range");
    if (asp.role != ServiceRole::Asp) throw UsageError("asp profile must have role ASP");
    if (pesp.role != ServiceRole::Pesp) throw UsageError("pesp profile must have role PESP");
    asp.validate();
    pesp.validate();
    weights.validate();
    (void)improved_qog();
}

SessionConfig case_study_session_config(double per) {
    SessionConfig c;
    c.per = per;
    return c;
}

SessionOutcome run_session(const SessionConfig& config, RandomStream& rng, std::vector<CallRecord>* call_log) {
    config.validate();
    const QoGDistribution base = config.base_qog;
    const QoGDistribution improved = config.improved_qog();

    SessionOutcome out;
    out.accepted_scores.reserve(config.target_accepted);
    auto charge = [&](const CallRecord& call) {
        out.ledger = apply(out.ledger, call);
        if (call_log) call_log->push_back(call);
    };

    for (std::uint32_t task = 0; task < config.target_accepted; ++task) {
        bool engineered = false;
        if (config.pe_granularity == PeGranularity::PerTask) {
            engineered = rng.bernoulli(config.per);
            if (engineered) charge(pesp_call(config.pesp));
        }

        bool accepted = false;
        for (std::uint32_t attempt = 0; attempt < config.max_attempts_per_task; ++attempt) {
            if (config.pe_granularity == PeGranularity::PerAttempt) {
                engineered = rng.bernoulli(config.per);
                if (engineered) charge(pesp_call(config.pesp));
            }
            charge(generation_call(config.asp, attempt > 0));
            const double score = sample_qog(engineered ? improved : base, rng);
            out.all_scores.push_back(score);
            if (config.rule.accepts(score)) {
                out.accepted_scores.push_back(score);
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw SessionError("task " + std::to_string(task) + " exhausted " +
                                   std::to_string(config.max_attempts_per_task) + " attempts without an acceptable score",
                               task);
    }

    const double accepted_sum = std::accumulate(out.accepted_scores.begin(), out.accepted_scores.end(), 0.0);
    const double all_sum = std::accumulate(out.all_scores.begin(), out.all_scores.end(), 0.0);
    out.mean_qog_accepted = accepted_sum / static_cast<double>(out.accepted_scores.size());
    out.mean_qog_all = all_sum / static_cast<double>(out.all_scores.size());
    out.reward = reward_of(config, accepted_sum);
    out.cost = config.weights.cost(out.ledger);
    out.qoe = out.reward - out.cost;
    return out;
}

ExpectedOutcome expected_outcome(const SessionConfig& config) {
    config.validate();
    const double per = config.per;
    const double target = config.target_accepted;

    struct Arm {
        double weight;
        double p = 0.0;
        double accepted_mean = 0.0;
        double mean = 0.0;
    };
    auto make_arm = [&](double weight, const QoGDistribution& d, const char* name) {
        Arm a{weight};
        if (weight == 0.0) return a;
        a.p = acceptance_probability(d, config.rule);
        if (!(a.p > 0.0)) throw DomainError(std::string(name) + " acceptance probability is zero");
        a.accepted_mean = accepted_conditional_mean(d, config.rule);
        a.mean = truncated_mean(d);
        return a;
    };
    const Arm base = make_arm(1.0 - per, config.base_qog, "base");
    const Arm improved = make_arm(per, config.improved_qog(), "improved");

    ExpectedOutcome e;
    e.acceptance_base = base.p;
    e.acceptance_improved = improved.p;

    double accepted_mean = 0.0;
    if (config.pe_granularity == PeGranularity::PerTask) {
        // Each task is a geometric run on one arm.
        auto attempts = [&](const Arm& a) { return a.weight == 0.0 ? 0.0 : a.weight / a.p; };
        auto score_sum = [&](const Arm& a) { return a.weight == 0.0 ? 0.0 : a.weight * a.mean / a.p; };
        e.generations = target * (attempts(improved) + attempts(base));
        e.pesp_calls = target * per;
        e.score_sum_all = target * (score_sum(improved) + score_sum(base));
        accepted_mean = improved.weight * improved.accepted_mean + base.weight * base.accepted_mean;
    } else {
        // Every attempt draws the arm afresh: one geometric run on the mixture.
        const double p_mix = improved.weight * improved.p + base.weight * base.p;
        e.generations = target / p_mix;
        e.pesp_calls = per * e.generations;
        e.score_sum_all = e.generations * (improved.weight * improved.mean + base.weight * base.mean);
        accepted_mean = (improved.weight * improved.p * improved.accepted_mean + base.weight * base.p * base.accepted_mean) / p_mix;
    }
    e.regenerations = e.generations - target;
    e.latency = e.generations * config.asp.latency_per_call + e.pesp_calls * config.pesp.latency_per_call;
    e.bandwidth = e.generations * config.asp.bandwidth_per_call + e.pesp_calls * config.pesp.bandwidth_per_call;
    e.fee = target * config.asp.fee_per_call + e.pesp_calls * config.pesp.fee_per_call;
    e.mean_qog_all = e.score_sum_all / e.generations;
    e.mean_qog_accepted = accepted_mean;
    e.reward = reward_of(config, target * accepted_mean);
    e.cost = config.weights.beta_latency * e.latency + config.weights.beta_fee * e.fee +
             config.weights.beta_bandwidth * e.bandwidth;
    e.qoe = e.reward - e.cost;
    return e;
}

} // namespace aigx
