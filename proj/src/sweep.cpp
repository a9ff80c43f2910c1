#include "aigx/sweep.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "aigx/errors.hpp"

namespace aigx {

namespace {

constexpr std::size_t kKpiCount = 9;

std::array<double*, kKpiCount> fields(Kpis& k) {
    return {&k.regenerations, &k.total_generations, &k.pesp_calls,   &k.latency_s, &k.fee_units,
            &k.bandwidth_kb,  &k.mean_qog_all,      &k.mean_qog_accepted, &k.qoe};
}

// Two-pass mean and sample standard deviation, in seed order.
std::pair<Kpis, Kpis> summarize(std::span<Kpis> samples) {
    Kpis mean, sd;
    const auto n = static_cast<double>(samples.size());
    auto m = fields(mean);
    auto s = fields(sd);
    for (std::size_t f = 0; f < kKpiCount; ++f) {
        double acc = 0.0;
        for (auto& k : samples) acc += *fields(k)[f];
        *m[f] = acc / n;
        double sq = 0.0;
        for (auto& k : samples) {
            const double d = *fields(k)[f] - *m[f];
            sq += d * d;
        }
        *s[f] = samples.size() > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
    }
    return {mean, sd};
}

std::string describe(double per, std::uint64_t seed) {
    return "per=" + std::to_string(per) + ", seed=" + std::to_string(seed);
}

} // namespace

Kpis Kpis::of(const SessionOutcome& o) {
    Kpis k;
    k.regenerations = static_cast<double>(o.ledger.regeneration_calls);
    k.total_generations = static_cast<double>(o.ledger.generation_calls);
    k.pesp_calls = static_cast<double>(o.ledger.pesp_calls);
    k.latency_s = o.ledger.total_latency;
    k.fee_units = o.ledger.total_fee;
    k.bandwidth_kb = o.ledger.total_bandwidth;
    k.mean_qog_all = o.mean_qog_all;
    k.mean_qog_accepted = o.mean_qog_accepted;
    k.qoe = o.qoe;
    return k;
}

Kpis Kpis::of(const ExpectedOutcome& e) {
    Kpis k;
    k.regenerations = e.regenerations;
    k.total_generations = e.generations;
    k.pesp_calls = e.pesp_calls;
    k.latency_s = e.latency;
    k.fee_units = e.fee;
    k.bandwidth_kb = e.bandwidth;
    k.mean_qog_all = e.mean_qog_all;
    k.mean_qog_accepted = e.mean_qog_accepted;
    k.qoe = e.qoe;
    return k;
}

std::string SweepRow::seed_label() const {
    switch (kind) {
    case RowKind::Seed: return std::to_string(seed);
    case RowKind::Mean: return "mean";
    case RowKind::StdDev: return "std";
    case RowKind::Analytic: return "analytic";
    }
    return {};
}

RandomStream session_stream(std::uint64_t master_seed, std::uint64_t per_index, std::uint64_t seed_index) {
    return derive_stream(master_seed, {std::string("session"), static_cast<std::int64_t>(per_index),
                                       static_cast<std::int64_t>(seed_index)});
}

SweepTable sweep_per(const SessionConfig& config_template, std::span<const double> per_grid, std::uint64_t seeds,
                     std::uint64_t master_seed, SweepOptions options) {
    if (seeds < 1) throw DomainError("seeds must be at least 1");
    std::vector<SessionConfig> configs;
    configs.reserve(per_grid.size());
    for (double per : per_grid) {
        SessionConfig c = config_template;
        c.per = per;
        c.validate();
        configs.push_back(c);
    }

    const std::uint64_t cells = per_grid.size() * seeds;
    std::vector<Kpis> results(cells);
    std::vector<std::exception_ptr> errors(cells);

    auto run_cell = [&](std::uint64_t cell) {
        const std::uint64_t i = cell / seeds;
        const std::uint64_t j = cell % seeds;
        try {
            auto rng = session_stream(master_seed, i, j);
            results[cell] = Kpis::of(run_session(configs[i], rng));
        } catch (const SessionError& e) {
            errors[cell] = std::make_exception_ptr(
                SessionError(describe(per_grid[i], j) + ": " + e.what(), e.task_index()));
        } catch (...) {
            errors[cell] = std::current_exception();
        }
    };

    const auto n = static_cast<std::int64_t>(cells);
    const bool reverse = options.reverse_order;
    if (options.execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t k = 0; k < n; ++k) run_cell(static_cast<std::uint64_t>(reverse ? n - 1 - k : k));
    } else {
        for (std::int64_t k = 0; k < n; ++k) run_cell(static_cast<std::uint64_t>(reverse ? n - 1 - k : k));
    }

    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    SweepTable table;
    table.rows.reserve(per_grid.size() * (seeds + 3));
    for (std::size_t i = 0; i < per_grid.size(); ++i) {
        const double per = per_grid[i];
        std::span<Kpis> block(results.data() + i * seeds, seeds);
        for (std::uint64_t j = 0; j < seeds; ++j) table.rows.push_back({per, RowKind::Seed, j, block[j]});
        const auto [mean, sd] = summarize(block);
        table.rows.push_back({per, RowKind::Mean, 0, mean});
        table.rows.push_back({per, RowKind::StdDev, 0, sd});
        table.rows.push_back({per, RowKind::Analytic, 0, Kpis::of(expected_outcome(configs[i]))});
    }
    return table;
}

} // namespace aigx
