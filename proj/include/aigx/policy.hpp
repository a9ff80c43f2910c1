#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aigx/random.hpp"
#include "aigx/service.hpp"
#include "aigx/session.hpp"

namespace aigx {

/// Epsilon-greedy state over candidate PESPs, rewarded with whole-session QoE.
struct PolicyState {
    std::vector<ServiceProfile> arms;
    std::vector<std::uint64_t> pull_counts;
    std::vector<double> mean_rewards;
    double exploration_rate = 0.1;
    std::uint64_t episodes = 0;

    /// Throws DomainError/UsageError if arms is empty, an arm is not a PESP,
    /// or epsilon is outside [0, 1].
    static PolicyState make(std::vector<ServiceProfile> arms, double exploration_rate = 0.1);

    /// Arm with the highest mean reward among pulled arms (lowest index on ties).
    std::size_t best_arm() const;
};

/// With probability epsilon a uniform arm; otherwise the first unpulled arm
/// if any, else the greedy arm.
std::size_t select_arm(const PolicyState& state, RandomStream& rng);

/// Throws UsageError for an out-of-range arm.
PolicyState update(PolicyState state, std::size_t arm, double episode_qoe);

struct PolicyTraceEntry {
    std::uint64_t episode;
    std::size_t arm_index;
    double qoe;
    /// Share of episodes so far that pulled the current empirical best arm.
    double cumulative_best_frequency;
};

struct PolicyTrace {
    std::vector<PolicyTraceEntry> entries;
    PolicyState final_state;

    /// Fraction of the last `window` episodes that pulled `arm`.
    double tail_frequency(std::size_t arm, std::size_t window) const;
};

/// Each episode selects an arm, runs one full session with that arm as the
/// PESP, and feeds the realized QoE back. Selection and per-episode sessions
/// draw from separate streams derived from `master_seed`.
PolicyTrace run_policy_experiment(const std::vector<ServiceProfile>& arms, const SessionConfig& session_template,
                                  std::uint64_t episodes, double exploration_rate, std::uint64_t master_seed);

} // namespace aigx
