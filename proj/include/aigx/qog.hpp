#pragma once

#include <cstdint>

#include "aigx/execution.hpp"
#include "aigx/random.hpp"

namespace aigx {

/// Quality-of-generation score model: a normal(mean, std_dev) truncated to
/// [lower_bound, upper_bound], scores in NIMA units.
class QoGDistribution {
public:
    /// Throws DomainError unless std_dev > 0 and lower < mean < upper.
    QoGDistribution(double mean, double std_dev, double lower_bound = 1.0, double upper_bound = 10.0);

    /// Location of the untruncated parent normal. The truncated mean is
    /// truncated_mean(), which differs only when a bound is within a few
    /// std_dev of the location.
    double mean() const noexcept { return mean_; }
    double std_dev() const noexcept { return std_dev_; }
    double lower_bound() const noexcept { return lower_; }
    double upper_bound() const noexcept { return upper_; }

    friend bool operator==(const QoGDistribution&, const QoGDistribution&) = default;

private:
    double mean_;
    double std_dev_;
    double lower_;
    double upper_;
};

/// Accept iff score > threshold (strict).
struct AcceptanceRule {
    double threshold = 5.0;
    bool accepts(double score) const noexcept { return score > threshold; }
    friend bool operator==(const AcceptanceRule&, const AcceptanceRule&) = default;
};

class ImprovementFactor {
public:
    explicit ImprovementFactor(double mean_multiplier = 1.0);

    double mean_multiplier() const noexcept { return multiplier_; }

    friend bool operator==(const ImprovementFactor&, const ImprovementFactor&) = default;

private:
    double multiplier_;
};

inline constexpr double kCaseStudyBaseMean = 4.698;
inline constexpr double kCaseStudyBaseStdDev = 0.471;
inline constexpr double kCaseStudyThreshold = 5.0;
inline constexpr double kCaseStudyAverageImprovement = 1.1185;
inline constexpr double kCaseStudyPeakImprovement = 1.205;

double sample_qog(const QoGDistribution& dist, RandomStream& rng);

/// P(X > threshold). Throws DomainError unless the threshold lies strictly
/// inside the support.
double acceptance_probability(const QoGDistribution& dist, const AcceptanceRule& rule);

/// E[X | X > threshold]. A threshold equal to lower_bound is accepted and
/// yields the truncated mean.
double accepted_conditional_mean(const QoGDistribution& dist, const AcceptanceRule& rule);

/// E[X | X <= threshold], the mean score of a rejected generation.
double rejected_conditional_mean(const QoGDistribution& dist, const AcceptanceRule& rule);

double truncated_mean(const QoGDistribution& dist);

QoGDistribution apply_improvement(const QoGDistribution& base, const ImprovementFactor& factor);

/// Expected attempts until `target` acceptances at per-attempt probability p
/// (negative-binomial mean, target / p).
double expected_generations(double p, double target);

/// Mean multiplier m with acceptance_probability(apply_improvement(base, m))
/// equal to target / (target + observed_regens), found by bisection.
ImprovementFactor calibrate_improvement_from_regens(const QoGDistribution& base, const AcceptanceRule& rule,
                                                    double observed_regens, double target);

struct AcceptanceTally {
    std::uint64_t draws = 0;
    std::uint64_t accepted = 0;
    double sum = 0.0;
    double sum_accepted = 0.0;

    double frequency() const noexcept { return draws ? static_cast<double>(accepted) / static_cast<double>(draws) : 0.0; }
};

/// Monte Carlo tally of `draws` samples. Work is cut into fixed chunks with
/// their own derived streams, so Serial and Parallel agree bit for bit.
AcceptanceTally monte_carlo_acceptance(const QoGDistribution& dist, const AcceptanceRule& rule, std::uint64_t draws,
                                       std::uint64_t master_seed, Execution execution = Execution::Parallel);

} // namespace aigx
