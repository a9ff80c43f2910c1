#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "aigx/service.hpp"
#include "aigx/session.hpp"

namespace aigx {

/// Two arms sharing the case-study PESP costs: one delivering the average
/// improvement, one delivering none.
std::vector<std::pair<std::string, ServiceProfile>> default_policy_arms();

struct PolicyConfig {
    double exploration_rate = 0.1;
    std::uint64_t episodes = 2000;
    /// Named arms in file order. Arm sections start from the case-study PESP
    /// profile and override what they set.
    std::vector<std::pair<std::string, ServiceProfile>> arms = default_policy_arms();

    friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

struct ExperimentConfig {
    std::uint64_t master_seed = 0;
    SessionConfig session;
    std::vector<double> per_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::uint64_t seeds = 1000;
    std::optional<std::string> lexicon_path;
    std::string output_path = "results.csv";
    PolicyConfig policy;

    /// Throws ConfigError naming the offending key.
    void validate() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

enum class ConfigFormat { Ini, Json };

/// Parses sectioned key-value text (or JSON with the same sections). Unknown
/// sections or keys are rejected, master_seed is mandatory, and everything
/// else defaults to the case-study values.
ExperimentConfig parse_config(std::string_view text, ConfigFormat format);

/// Format is chosen by extension: .json is JSON, anything else is INI-style.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Config echo in the JSON input schema; parse_config(to_json(c).dump(),
/// Json) == c.
nlohmann::ordered_json to_json(const ExperimentConfig& config);

} // namespace aigx
