#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "aigx/config.hpp"
#include "aigx/policy.hpp"
#include "aigx/sweep.hpp"

namespace aigx {

inline constexpr std::string_view kArtifactVersion = "0.1.0";

/// Shortest decimal that round-trips to the same double; locale independent.
std::string format_number(double value);

enum class OutputFormat { Csv, Json };

/// Column order: per, seed, regenerations, total_generations, pesp_calls,
/// latency_s, fee_units, bandwidth_kb, mean_qog_all, mean_qog_accepted, qoe.
inline constexpr std::string_view kResultHeader =
    "per,seed,regenerations,total_generations,pesp_calls,latency_s,fee_units,bandwidth_kb,mean_qog_all,"
    "mean_qog_accepted,qoe";

inline constexpr std::string_view kTraceHeader = "episode,arm_index,qoe,cumulative_best_frequency";

void write_csv(const SweepTable& table, std::ostream& out);
void write_json(const SweepTable& table, std::ostream& out);
void write_table(const SweepTable& table, OutputFormat format, std::ostream& out);

void write_trace_csv(const PolicyTrace& trace, std::ostream& out);

/// Everything needed to rerun an experiment bit-identically. The timestamp
/// is informational and plays no part in reproduction.
struct RunManifest {
    std::string command;
    ExperimentConfig config;
    OutputFormat format = OutputFormat::Csv;
    std::string timestamp;

    nlohmann::ordered_json to_json() const;
    static RunManifest from_json(const nlohmann::ordered_json& j);
};

RunManifest make_manifest(std::string command, const ExperimentConfig& config, OutputFormat format);

/// Derived constants echoed into the manifest: acceptance probabilities and
/// conditional means of both arms plus per-call constants back-derived from
/// the case-study totals.
nlohmann::ordered_json calibration_summary(const SessionConfig& session);

/// "<output_path>.manifest.json"
std::filesystem::path manifest_path_for(const std::filesystem::path& output_path);

/// Writes the table to output_path and the manifest next to it. Throws
/// std::runtime_error if either file cannot be written.
void emit_results(const SweepTable& table, const RunManifest& manifest, const std::filesystem::path& output_path);

/// Reads a manifest written by emit_results. Throws ConfigError.
RunManifest load_manifest(const std::filesystem::path& path);

} // namespace aigx
