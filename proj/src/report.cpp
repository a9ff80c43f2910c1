#include "aigx/report.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "aigx/errors.hpp"
#include "ini.hpp"

namespace aigx {

namespace {

void write_kpis(const Kpis& k, std::ostream& out) {
    for (double v : {k.regenerations, k.total_generations, k.pesp_calls, k.latency_s, k.fee_units, k.bandwidth_kb,
                     k.mean_qog_all, k.mean_qog_accepted, k.qoe}) {
        out << ',' << format_number(v);
    }
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

} // namespace

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

void write_csv(const SweepTable& table, std::ostream& out) {
    out << kResultHeader << '\n';
    for (const auto& row : table.rows) {
        out << format_number(row.per) << ',' << row.seed_label();
        write_kpis(row.kpis, out);
        out << '\n';
    }
}

void write_json(const SweepTable& table, std::ostream& out) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        const auto& k = row.kpis;
        nlohmann::ordered_json r;
        r["per"] = row.per;
        r["seed"] = row.seed_label();
        r["regenerations"] = k.regenerations;
        r["total_generations"] = k.total_generations;
        r["pesp_calls"] = k.pesp_calls;
        r["latency_s"] = k.latency_s;
        r["fee_units"] = k.fee_units;
        r["bandwidth_kb"] = k.bandwidth_kb;
        r["mean_qog_all"] = k.mean_qog_all;
        r["mean_qog_accepted"] = k.mean_qog_accepted;
        r["qoe"] = k.qoe;
        rows.push_back(std::move(r));
    }
    out << rows.dump(2) << '\n';
}

void write_table(const SweepTable& table, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::Csv) write_csv(table, out);
    else write_json(table, out);
}

void write_trace_csv(const PolicyTrace& trace, std::ostream& out) {
    out << kTraceHeader << '\n';
    for (const auto& e : trace.entries) {
        out << e.episode << ',' << e.arm_index << ',' << format_number(e.qoe) << ','
            << format_number(e.cumulative_best_frequency) << '\n';
    }
}

nlohmann::ordered_json calibration_summary(const SessionConfig& session) {
    nlohmann::ordered_json j;
    const auto base = session.base_qog;
    const auto improved = session.improved_qog();
    j["acceptance_base"] = acceptance_probability(base, session.rule);
    j["acceptance_improved"] = acceptance_probability(improved, session.rule);
    j["accepted_mean_base"] = accepted_conditional_mean(base, session.rule);
    j["accepted_mean_improved"] = accepted_conditional_mean(improved, session.rule);
    j["improved_mean"] = improved.mean();

    // Per-call constants implied by the case-study totals at PER = 0.
    const double gens = expected_generations(acceptance_probability(base, session.rule), session.target_accepted);
    const auto derived = derive_generation_constants(kReportedLatencyPer0, kReportedBandwidthPer0, gens);
    j["expected_generations_per0"] = gens;
    j["derived_latency_per_call"] = derived.latency_per_call;
    j["derived_bandwidth_per_call"] = derived.bandwidth_per_call;
    return j;
}

nlohmann::ordered_json RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["artifact_version"] = std::string(kArtifactVersion);
    j["command"] = command;
    j["format"] = format == OutputFormat::Csv ? "csv" : "json";
    j["config"] = aigx::to_json(config);
    j["calibration"] = calibration_summary(config.session);
    j["timestamp"] = timestamp;
    return j;
}

RunManifest RunManifest::from_json(const nlohmann::ordered_json& j) {
    try {
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        const auto fmt = j.at("format").get<std::string>();
        if (fmt != "csv" && fmt != "json") throw ConfigError("manifest format must be csv or json");
        m.format = fmt == "csv" ? OutputFormat::Csv : OutputFormat::Json;
        m.config = parse_config(j.at("config").dump(), ConfigFormat::Json);
        m.timestamp = j.value("timestamp", std::string());
        return m;
    } catch (const nlohmann::ordered_json::exception& e) {
        throw ConfigError(std::string("malformed manifest: ") + e.what());
    }
}

RunManifest make_manifest(std::string command, const ExperimentConfig& config, OutputFormat format) {
    return RunManifest{std::move(command), config, format, utc_timestamp()};
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output_path) {
    auto p = output_path;
    p += ".manifest.json";
    return p;
}

void emit_results(const SweepTable& table, const RunManifest& manifest, const std::filesystem::path& output_path) {
    {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + output_path.string());
        write_table(table, manifest.format, out);
        if (!out) throw std::runtime_error("write failed for " + output_path.string());
    }
    const auto mpath = manifest_path_for(output_path);
    std::ofstream out(mpath, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + mpath.string());
    out << manifest.to_json().dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + mpath.string());
}

RunManifest load_manifest(const std::filesystem::path& path) {
    std::string text;
    try {
        text = detail::read_text_file(path.string());
    } catch (const std::runtime_error& e) {
        throw ConfigError(e.what());
    }
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::ordered_json::parse_error& e) {
        throw ConfigError(std::string("malformed manifest: ") + e.what());
    }
    return RunManifest::from_json(j);
}

} // namespace aigx
