#include "aigx/policy.hpp"

#include <algorithm>
#include <string>

#include "aigx/errors.hpp"

namespace aigx {

PolicyState PolicyState::make(std::vector<ServiceProfile> arms, double exploration_rate) {
    if (arms.empty()) throw UsageError("policy needs at least one arm");
    for (const auto& a : arms) {
        if (a.role != ServiceRole::Pesp) throw UsageError("policy arms must be PESP profiles");
        a.validate();
    }
    if (!(exploration_rate >= 0.0 && exploration_rate <= 1.0))
        throw DomainError("exploration_rate must lie in [0, 1]");
    PolicyState s;
    s.pull_counts.assign(arms.size(), 0);
    s.mean_rewards.assign(arms.size(), 0.0);
    s.arms = std::move(arms);
    s.exploration_rate = exploration_rate;
    return s;
}

std::size_t PolicyState::best_arm() const {
    std::size_t best = arms.size();
    for (std::size_t i = 0; i < arms.size(); ++i) {
        if (pull_counts[i] == 0) continue;
        if (best == arms.size() || mean_rewards[i] > mean_rewards[best]) best = i;
    }
    return best == arms.size() ? 0 : best;
}

std::size_t select_arm(const PolicyState& state, RandomStream& rng) {
    if (rng.uniform() < state.exploration_rate) return static_cast<std::size_t>(rng.below(state.arms.size()));
    const auto unpulled = std::find(state.pull_counts.begin(), state.pull_counts.end(), 0ULL);
    if (unpulled != state.pull_counts.end()) return static_cast<std::size_t>(unpulled - state.pull_counts.begin());
    return state.best_arm();
}

PolicyState update(PolicyState state, std::size_t arm, double episode_qoe) {
    if (arm >= state.arms.size())
        throw UsageError("arm index " + std::to_string(arm) + " out of range for " + std::to_string(state.arms.size()) +
                         " arms");
    const auto n = ++state.pull_counts[arm];
    state.mean_rewards[arm] += (episode_qoe - state.mean_rewards[arm]) / static_cast<double>(n);
    ++state.episodes;
    return state;
}

double PolicyTrace::tail_frequency(std::size_t arm, std::size_t window) const {
    const std::size_t n = std::min(window, entries.size());
    if (n == 0) return 0.0;
    const auto hits = std::count_if(entries.end() - static_cast<std::ptrdiff_t>(n), entries.end(),
                                    [arm](const PolicyTraceEntry& e) { return e.arm_index == arm; });
    return static_cast<double>(hits) / static_cast<double>(n);
}

PolicyTrace run_policy_experiment(const std::vector<ServiceProfile>& arms, const SessionConfig& session_template,
                                  std::uint64_t episodes, double exploration_rate, std::uint64_t master_seed) {
    PolicyTrace trace{{}, PolicyState::make(arms, exploration_rate)};
    trace.entries.reserve(episodes);
    auto selector = derive_stream(master_seed, {std::string("policy-select")});

    for (std::uint64_t ep = 0; ep < episodes; ++ep) {
        const std::size_t arm = select_arm(trace.final_state, selector);
        SessionConfig config = session_template;
        config.pesp = trace.final_state.arms[arm];
        auto rng = derive_stream(master_seed, {std::string("policy-session"), static_cast<std::int64_t>(ep)});
        const double qoe = run_session(config, rng).qoe;
        trace.final_state = update(std::move(trace.final_state), arm, qoe);
        const auto& st = trace.final_state;
        trace.entries.push_back({ep, arm, qoe,
                                 static_cast<double>(st.pull_counts[st.best_arm()]) / static_cast<double>(st.episodes)});
    }
    return trace;
}

} // namespace aigx
