#include "aigx/qog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "aigx/errors.hpp"

namespace aigx {

namespace {

// Standard normal helpers. Upper-tail quantities are computed directly from
// erfc so that neither tail loses precision to cancellation.
double lower_tail(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }
double upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }
double density(double z) {
    if (std::isinf(z)) return 0.0;
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}
double lower_quantile(double p) { return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p); }
double upper_quantile(double q) { return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q); }

struct Standardized {
    double lo;
    double hi;
    double mass; // parent-normal probability of [lo, hi]
};

Standardized standardize(const QoGDistribution& d) {
    const double lo = (d.lower_bound() - d.mean()) / d.std_dev();
    const double hi = (d.upper_bound() - d.mean()) / d.std_dev();
    // lo < 0 < hi because the mean lies strictly inside the bounds.
    return {lo, hi, 1.0 - lower_tail(lo) - upper_tail(hi)};
}

// Parent-normal mass of (z, hi], accurate on both sides of zero.
double mass_above(const Standardized& s, double z) {
    if (z >= 0.0) return upper_tail(z) - upper_tail(s.hi);
    return s.mass - (lower_tail(z) - lower_tail(s.lo));
}

// Parent-normal mass of [lo, z].
double mass_below(const Standardized& s, double z) {
    if (z <= 0.0) return lower_tail(z) - lower_tail(s.lo);
    return s.mass - (upper_tail(z) - upper_tail(s.hi));
}

std::string fmt(double x) { return std::to_string(x); }

constexpr std::uint64_t kTallyChunk = 1ULL << 16;

AcceptanceTally tally_chunk(const QoGDistribution& dist, const AcceptanceRule& rule, std::uint64_t master_seed,
                            std::uint64_t chunk, std::uint64_t count) {
    auto rng = derive_stream(master_seed, {std::string("mc-acceptance"), static_cast<std::int64_t>(chunk)});
    AcceptanceTally t;
    t.draws = count;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double x = sample_qog(dist, rng);
        t.sum += x;
        if (rule.accepts(x)) {
            ++t.accepted;
            t.sum_accepted += x;
        }
    }
    return t;
}

} // namespace

QoGDistribution::QoGDistribution(double mean, double std_dev, double lower_bound, double upper_bound)
    : mean_(mean), std_dev_(std_dev), lower_(lower_bound), upper_(upper_bound) {
    if (!(std_dev > 0.0) || !std::isfinite(std_dev)) throw DomainError("QoG std_dev must be positive, got " + fmt(std_dev));
    if (!(lower_bound < mean && mean < upper_bound))
        throw DomainError("QoG mean " + fmt(mean) + " must lie strictly inside [" + fmt(lower_bound) + ", " +
                          fmt(upper_bound) + "]");
}

ImprovementFactor::ImprovementFactor(double mean_multiplier) : multiplier_(mean_multiplier) {
    if (!(mean_multiplier > 0.0) || !std::isfinite(mean_multiplier))
        throw DomainError("improvement multiplier must be positive, got " + fmt(mean_multiplier));
}

double sample_qog(const QoGDistribution& dist, RandomStream& rng) {
    const Standardized s = standardize(dist);
    const double u = rng.uniform_open();
    const double p = lower_tail(s.lo) + u * s.mass;
    double z;
    if (p <= 0.5) {
        z = lower_quantile(p);
    } else {
        // Same point, located from the upper tail: q = 1 - p.
        const double q = upper_tail(s.hi) + (1.0 - u) * s.mass;
        z = upper_quantile(q);
    }
    z = std::clamp(z, s.lo, s.hi);
    return std::clamp(dist.mean() + dist.std_dev() * z, dist.lower_bound(), dist.upper_bound());
}

double acceptance_probability(const QoGDistribution& dist, const AcceptanceRule& rule) {
    if (!(dist.lower_bound() < rule.threshold && rule.threshold < dist.upper_bound()))
        throw DomainError("threshold " + fmt(rule.threshold) + " outside the open score range (" +
                          fmt(dist.lower_bound()) + ", " + fmt(dist.upper_bound()) + ")");
    const Standardized s = standardize(dist);
    const double z = (rule.threshold - dist.mean()) / dist.std_dev();
    return std::clamp(mass_above(s, z) / s.mass, 0.0, 1.0);
}

double accepted_conditional_mean(const QoGDistribution& dist, const AcceptanceRule& rule) {
    if (!(dist.lower_bound() <= rule.threshold && rule.threshold < dist.upper_bound()))
        throw DomainError("threshold " + fmt(rule.threshold) + " outside [lower_bound, upper_bound)");
    const Standardized s = standardize(dist);
    const double z = (rule.threshold - dist.mean()) / dist.std_dev();
    const double tail = mass_above(s, z);
    if (!(tail > 0.0)) throw DomainError("acceptance probability is numerically zero at threshold " + fmt(rule.threshold));
    const double m = dist.mean() + dist.std_dev() * (density(z) - density(s.hi)) / tail;
    return std::clamp(m, rule.threshold, dist.upper_bound());
}

double rejected_conditional_mean(const QoGDistribution& dist, const AcceptanceRule& rule) {
    if (!(dist.lower_bound() < rule.threshold && rule.threshold <= dist.upper_bound()))
        throw DomainError("threshold " + fmt(rule.threshold) + " outside (lower_bound, upper_bound]");
    const Standardized s = standardize(dist);
    const double z = (rule.threshold - dist.mean()) / dist.std_dev();
    const double body = mass_below(s, z);
    if (!(body > 0.0)) throw DomainError("rejection probability is numerically zero at threshold " + fmt(rule.threshold));
    const double m = dist.mean() + dist.std_dev() * (density(s.lo) - density(z)) / body;
    return std::clamp(m, dist.lower_bound(), rule.threshold);
}

double truncated_mean(const QoGDistribution& dist) {
    const Standardized s = standardize(dist);
    return dist.mean() + dist.std_dev() * (density(s.lo) - density(s.hi)) / s.mass;
}

QoGDistribution apply_improvement(const QoGDistribution& base, const ImprovementFactor& factor) {
    const double shifted = base.mean() * factor.mean_multiplier();
    if (!(base.lower_bound() < shifted && shifted < base.upper_bound()))
        throw DomainError("improved mean " + fmt(shifted) + " leaves the score range");
    return QoGDistribution(shifted, base.std_dev(), base.lower_bound(), base.upper_bound());
}

double expected_generations(double p, double target) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("acceptance probability must be in (0, 1], got " + fmt(p));
    if (!(target >= 1.0)) throw DomainError("target must be at least 1, got " + fmt(target));
    return target / p;
}

ImprovementFactor calibrate_improvement_from_regens(const QoGDistribution& base, const AcceptanceRule& rule,
                                                    double observed_regens, double target) {
    if (!(observed_regens >= 0.0)) throw DomainError("observed re-generations must be non-negative");
    if (!(target >= 1.0)) throw DomainError("target must be at least 1");
    const double wanted = target / (target + observed_regens);

    auto p_at = [&](double mean) {
        return acceptance_probability(QoGDistribution(mean, base.std_dev(), base.lower_bound(), base.upper_bound()),
                                      rule);
    };

    const double span = base.upper_bound() - base.lower_bound();
    double lo = base.lower_bound() + 1e-12 * span;
    double hi = base.upper_bound() - 1e-12 * span;
    const double p_lo = p_at(lo);
    const double p_hi = p_at(hi);
    if (!(p_lo < wanted && wanted < p_hi))
        throw DomainError("acceptance probability " + fmt(wanted) + " is unattainable by a mean shift within bounds");

    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double p = p_at(mid);
        if (std::abs(p - wanted) < 1e-9) break;
        (p < wanted ? lo : hi) = mid;
    }
    return ImprovementFactor(mid / base.mean());
}

AcceptanceTally monte_carlo_acceptance(const QoGDistribution& dist, const AcceptanceRule& rule, std::uint64_t draws,
                                       std::uint64_t master_seed, Execution execution) {
    const std::uint64_t chunks = (draws + kTallyChunk - 1) / kTallyChunk;
    std::vector<AcceptanceTally> parts(chunks);
    auto count_of = [&](std::uint64_t c) { return std::min(kTallyChunk, draws - c * kTallyChunk); };

    if (execution == Execution::Parallel) {
        const auto n = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static)
        for (std::int64_t c = 0; c < n; ++c) {
            const auto uc = static_cast<std::uint64_t>(c);
            parts[uc] = tally_chunk(dist, rule, master_seed, uc, count_of(uc));
        }
    } else {
        for (std::uint64_t c = 0; c < chunks; ++c) parts[c] = tally_chunk(dist, rule, master_seed, c, count_of(c));
    }

    // Fixed-order reduction keeps the floating-point sums schedule independent.
    AcceptanceTally total;
    for (const auto& p : parts) {
        total.draws += p.draws;
        total.accepted += p.accepted;
        total.sum += p.sum;
        total.sum_accepted += p.sum_accepted;
    }
    return total;
}

} // namespace aigx
