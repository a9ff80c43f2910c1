#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aigx/execution.hpp"
#include "aigx/session.hpp"

namespace aigx {

struct Kpis {
    double regenerations = 0.0;
    double total_generations = 0.0;
    double pesp_calls = 0.0;
    double latency_s = 0.0;
    double fee_units = 0.0;
    double bandwidth_kb = 0.0;
    double mean_qog_all = 0.0;
    double mean_qog_accepted = 0.0;
    double qoe = 0.0;

    static Kpis of(const SessionOutcome& outcome);
    static Kpis of(const ExpectedOutcome& expected);
};

/// Seed rows carry a session's realized KPIs; Mean and StdDev summarize the
/// seed rows of one PER; Analytic holds expected_outcome.
enum class RowKind { Seed, Mean, StdDev, Analytic };

struct SweepRow {
    double per = 0.0;
    RowKind kind = RowKind::Seed;
    std::uint64_t seed = 0; // seed index, meaningful for Seed rows only
    Kpis kpis;

    std::string seed_label() const;
};

/// Rows are ordered by grid position, then seed index, then mean, std, analytic.
struct SweepTable {
    std::vector<SweepRow> rows;
};

struct SweepOptions {
    Execution execution = Execution::Parallel;
    /// Visit cells last-to-first. Output must not change; used to check
    /// schedule independence.
    bool reverse_order = false;
};

/// Runs `seeds` sessions per PER value. Cell (i, j) draws from
/// derive_stream(master_seed, {"session", i, j}), so results do not depend on
/// which thread runs which cell. Session errors are rethrown annotated with
/// (per, seed); when several cells fail, the lowest cell index wins.
SweepTable sweep_per(const SessionConfig& config_template, std::span<const double> per_grid, std::uint64_t seeds,
                     std::uint64_t master_seed, SweepOptions options = {});

/// Stream for sweep cell (per index, seed index).
RandomStream session_stream(std::uint64_t master_seed, std::uint64_t per_index, std::uint64_t seed_index);

} // namespace aigx
