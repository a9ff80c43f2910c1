// Acceptance checks: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "aigx/policy.hpp"
#include "aigx/prompt.hpp"
#include "aigx/qog.hpp"
#include "aigx/report.hpp"
#include "aigx/session.hpp"
#include "aigx/sweep.hpp"

using namespace aigx;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kMasterSeed = 20230517;
constexpr std::uint64_t kSeeds = 1000;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Stat {
    double mean = 0.0;
    double se = 0.0;
};

Stat stat(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double m = 0.0;
    for (double x : xs) m += x;
    m /= n;
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    return {m, std::sqrt(v / (n - 1.0) / n)};
}

std::vector<Kpis> seed_rows(const SweepTable& t, double per) {
    std::vector<Kpis> out;
    for (const auto& r : t.rows)
        if (r.kind == RowKind::Seed && r.per == per) out.push_back(r.kpis);
    return out;
}

std::vector<double> column(const std::vector<Kpis>& rows, double Kpis::*field) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& k : rows) out.push_back(k.*field);
    return out;
}

double rel(double x, double ref) { return std::abs(x / ref - 1.0); }

void criteria_1_to_3() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> grid{0.0};
    const auto t = sweep_per(case_study_session_config(0.0), grid, kSeeds, kMasterSeed);
    const double elapsed = seconds_since(t0);
    const auto rows = seed_rows(t, 0.0);
    const double regens = stat(column(rows, &Kpis::regenerations)).mean;
    report(1, regens >= 277.0 && regens <= 291.0 && elapsed < 10.0,
           fmt("PER=0 mean re-generations %.2f over %llu sessions (band [277, 291]), %.2f s (< 10 s)", regens,
               static_cast<unsigned long long>(kSeeds), elapsed));

    const double lat = stat(column(rows, &Kpis::latency_s)).mean;
    const double bw = stat(column(rows, &Kpis::bandwidth_kb)).mean;
    report(2, rel(lat, kReportedLatencyPer0) <= 0.02 && rel(bw, kReportedBandwidthPer0) <= 0.02,
           fmt("PER=0 latency %.1f s (%.2f%% off 15402), bandwidth %.1f KB (%.2f%% off 69310), tolerance 2%%", lat,
               100 * rel(lat, kReportedLatencyPer0), bw, 100 * rel(bw, kReportedBandwidthPer0)));

    const std::vector<double> grid1{1.0};
    const auto t1 = sweep_per(case_study_session_config(0.0), grid1, kSeeds, kMasterSeed);
    const auto rows1 = seed_rows(t1, 1.0);
    const double regens1 = stat(column(rows1, &Kpis::regenerations)).mean;
    const double lat1 = stat(column(rows1, &Kpis::latency_s)).mean;
    const double bw1 = stat(column(rows1, &Kpis::bandwidth_kb)).mean;
    report(3,
           regens1 >= 38.0 && regens1 <= 46.0 && rel(lat1, kReportedLatencyPer1) <= 0.03 &&
               rel(bw1, kReportedBandwidthPer1) <= 0.03,
           fmt("PER=1 re-generations %.2f (band [38, 46]), latency %.1f s (%.2f%% off 5692), bandwidth %.1f KB "
               "(%.2f%% off 25616), tolerance 3%%",
               regens1, lat1, 100 * rel(lat1, kReportedLatencyPer1), bw1, 100 * rel(bw1, kReportedBandwidthPer1)));
}

void criterion_4() {
    std::vector<double> grid;
    for (int k = 0; k <= 10; ++k) grid.push_back(k / 10.0);
    const auto t = sweep_per(case_study_session_config(0.0), grid, kSeeds, kMasterSeed);

    bool analytic_increasing = true;
    bool mc_consistent = true;
    double prev_analytic = -INFINITY;
    Stat prev{};
    double worst_z = INFINITY;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto c = case_study_session_config(grid[i]);
        const double a = expected_outcome(c).qoe;
        analytic_increasing = analytic_increasing && a > prev_analytic;
        prev_analytic = a;

        const auto s = stat(column(seed_rows(t, grid[i]), &Kpis::qoe));
        mc_consistent = mc_consistent && std::abs(s.mean - a) < 3.0 * s.se;
        if (i > 0) {
            // An inversion between neighbours is tolerated only inside the joint 3-SE band.
            const double z = (s.mean - prev.mean) / std::hypot(s.se, prev.se);
            worst_z = std::min(worst_z, z);
            mc_consistent = mc_consistent && z > -3.0;
        }
        prev = s;
    }
    const auto first = stat(column(seed_rows(t, 0.0), &Kpis::qoe));
    const auto last = stat(column(seed_rows(t, 1.0), &Kpis::qoe));
    const bool endpoints = last.mean - first.mean > 3.0 * std::hypot(first.se, last.se);
    report(4, analytic_increasing && mc_consistent && endpoints,
           fmt("analytic E[QoE] strictly increasing over 11 PER values: %s; Monte Carlo means within 3 SE of "
               "analytic and neighbour-ordered (worst step z = %.2f); E[QoE] %.4g -> %.4g",
               analytic_increasing ? "yes" : "no", worst_z, first.mean, last.mean));
}

// Random valid configuration for the oracle-consistency check.
SessionConfig random_config(RandomStream& rng) {
    SessionConfig c = case_study_session_config(0.0);
    const double mean = 4.0 + 2.0 * rng.uniform();
    const double sd = 0.3 + 0.9 * rng.uniform();
    c.base_qog = QoGDistribution(mean, sd);
    c.rule = AcceptanceRule{mean - 0.5 + 1.0 * rng.uniform()};
    c.per = rng.uniform();
    c.target_accepted = static_cast<std::uint32_t>(20 + rng.below(81));
    c.pe_granularity = rng.bernoulli(0.5) ? PeGranularity::PerTask : PeGranularity::PerAttempt;
    c.reward_aggregation = rng.bernoulli(0.5) ? RewardAggregation::Sum : RewardAggregation::Mean;
    c.asp = ServiceProfile::asp(5.0 + 20.0 * rng.uniform(), 10.0 + 60.0 * rng.uniform(), 50.0 + 300.0 * rng.uniform());
    c.pesp = ServiceProfile::pesp(20.0 + 100.0 * rng.uniform(), 0.5 * rng.uniform(), 0.5 * rng.uniform(),
                                  ImprovementFactor(1.0 + 0.25 * rng.uniform()));
    c.weights = QoEWeights{1000.0 + 20000.0 * rng.uniform(), 10.0 * rng.uniform(), rng.uniform(), 5.0 * rng.uniform()};
    return c;
}

void criterion_5() {
    constexpr int kConfigs = 20;
    constexpr std::uint64_t kDraws = 1'000'000;
    auto picker = derive_stream(kMasterSeed, {std::string("acceptance-configs")});
    int kpi_checks = 0, kpi_misses = 0, p_checks = 0, p_misses = 0;
    double worst = 0.0;
    std::string worst_label;

    for (int cfg = 0; cfg < kConfigs; ++cfg) {
        const SessionConfig c = random_config(picker);
        c.validate();
        const auto e = expected_outcome(c);
        const std::vector<double> grid{c.per};
        const auto t = sweep_per(c, grid, kSeeds, derive_seed(kMasterSeed, std::array<StreamLabel, 2>{
                                                                              std::string("acceptance-sessions"),
                                                                              std::int64_t{cfg}}));
        const auto rows = seed_rows(t, c.per);

        const auto check = [&](const char* name, double expected, Stat s) {
            ++kpi_checks;
            double z = 0.0;
            bool ok;
            if (s.se == 0.0) {
                ok = std::abs(s.mean - expected) <= 1e-9 * std::max(1.0, std::abs(expected));
            } else {
                z = std::abs(s.mean - expected) / s.se;
                ok = z < 3.0;
            }
            if (!ok) ++kpi_misses;
            if (z > worst) {
                worst = z;
                worst_label = fmt("config %d %s", cfg, name);
            }
        };
        check("regenerations", e.regenerations, stat(column(rows, &Kpis::regenerations)));
        check("total_generations", e.generations, stat(column(rows, &Kpis::total_generations)));
        check("pesp_calls", e.pesp_calls, stat(column(rows, &Kpis::pesp_calls)));
        check("latency_s", e.latency, stat(column(rows, &Kpis::latency_s)));
        check("fee_units", e.fee, stat(column(rows, &Kpis::fee_units)));
        check("bandwidth_kb", e.bandwidth, stat(column(rows, &Kpis::bandwidth_kb)));
        check("mean_qog_accepted", e.mean_qog_accepted, stat(column(rows, &Kpis::mean_qog_accepted)));
        check("qoe", e.qoe, stat(column(rows, &Kpis::qoe)));

        // mean_qog_all is a ratio of expectations; compare the pooled ratio
        // with a delta-method standard error.
        {
            const double n = static_cast<double>(rows.size());
            double sy = 0.0, sx = 0.0;
            for (const auto& k : rows) {
                sy += k.mean_qog_all * k.total_generations;
                sx += k.total_generations;
            }
            const double r = sy / sx;
            double v = 0.0;
            for (const auto& k : rows) {
                const double d = k.mean_qog_all * k.total_generations - r * k.total_generations;
                v += d * d;
            }
            const double xbar = sx / n;
            check("mean_qog_all", e.mean_qog_all, {r, std::sqrt(v / (n - 1.0) / n) / xbar});
        }

        for (const auto& [dist, label] : {std::pair{c.base_qog, "base"}, std::pair{c.improved_qog(), "improved"}}) {
            ++p_checks;
            const double p = acceptance_probability(dist, c.rule);
            const auto tally = monte_carlo_acceptance(
                dist, c.rule, kDraws,
                derive_seed(kMasterSeed, std::array<StreamLabel, 3>{std::string("acceptance-draws"),
                                                                    std::int64_t{cfg}, std::string(label)}));
            const double z = std::abs(tally.frequency() - p) / std::sqrt(p * (1.0 - p) / static_cast<double>(kDraws));
            if (!(z < 3.0)) ++p_misses;
            if (z > worst) {
                worst = z;
                worst_label = fmt("config %d %s acceptance", cfg, label);
            }
        }
    }
    report(5, kpi_misses == 0 && p_misses == 0,
           fmt("%d configs: %d/%d KPI means and %d/%d acceptance frequencies within 3 SE of the closed forms; "
               "largest deviation %.2f SE (%s)",
               kConfigs, kpi_checks - kpi_misses, kpi_checks, p_checks - p_misses, p_checks, worst,
               worst_label.c_str()));
}

void criterion_6() {
    const QoGDistribution base(kCaseStudyBaseMean, kCaseStudyBaseStdDev);
    const AcceptanceRule rule{kCaseStudyThreshold};
    const double self_regens = expected_generations(acceptance_probability(base, rule), 100) - 100;
    const double m_self = calibrate_improvement_from_regens(base, rule, self_regens, 100).mean_multiplier();
    const double m43 = calibrate_improvement_from_regens(base, rule, 43.0, 100).mean_multiplier();
    const double back =
        expected_generations(acceptance_probability(apply_improvement(base, ImprovementFactor(m43)), rule), 100) - 100;
    const bool ok = std::abs(m_self - 1.0) <= 1e-6 && std::abs(m43 - 1.120) <= 0.005 * 1.120 &&
                    std::abs(back - 43.0) <= 1e-4;
    report(6, ok,
           fmt("self-calibration (%.4f regens) -> m = %.9f; 43 regens -> m = %.6f (target about 1.120, within 0.5%%), "
               "forward model gives %.7f regens",
               self_regens, m_self, m43, back));
}

void criterion_7() {
    using namespace aigx::prompt;
    auto rng = derive_stream(kMasterSeed, {std::string("acceptance-prompts")});
    static constexpr std::string_view letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-'&";
    const auto phrase = [&] {
        std::string s;
        const auto words = 1 + rng.below(4);
        for (std::uint64_t w = 0; w < words; ++w) {
            if (w) s += ' ';
            const auto len = 1 + rng.below(10);
            for (std::uint64_t i = 0; i < len; ++i) s += letters[rng.below(letters.size())];
        }
        return s;
    };

    int identity_failures = 0, ablation_failures = 0;
    const auto& lex = Lexicon::demo();
    constexpr int kPairs = 10000;
    for (int i = 0; i < kPairs; ++i) {
        const RawPrompt raw{phrase(), phrase(), ""};
        try {
            const auto back = parse_raw(canonical_form(raw));
            if (back.scene != raw.scene || back.objects != raw.objects) ++identity_failures;
        } catch (const std::exception&) {
            ++identity_failures;
        }
        const auto seq = ablation_sequence(raw, lex);
        bool ok = seq.size() == 7;
        for (std::size_t k = 1; ok && k < seq.size(); ++k) {
            const auto prev = enrich(raw, lex, std::span(kCanonicalOrder.data(), k - 1)).kinds();
            const auto cur = enrich(raw, lex, std::span(kCanonicalOrder.data(), k)).kinds();
            ok = std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()) && cur.size() == prev.size() + 1 &&
                 seq[k] == render(enrich(raw, lex, std::span(kCanonicalOrder.data(), k)));
        }
        if (!ok) ++ablation_failures;
    }
    const auto kitchen = render(enrich(parse_raw("A kitchen, with cooking machines"), lex, kCanonicalOrder));
    const bool sleek = kitchen.find("sleek cabinets") != std::string::npos;
    report(7, identity_failures == 0 && ablation_failures == 0 && sleek,
           fmt("%d/%d parse/render identities, %d/%d ablation sequences of length 7 with nested aspect sets, "
               "kitchen enrichment mentions sleek cabinets: %s",
               kPairs - identity_failures, kPairs, kPairs - ablation_failures, kPairs, sleek ? "yes" : "no"));
}

void criterion_8() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto session = case_study_session_config(1.0);
    const std::vector<ServiceProfile> arms{
        ServiceProfile::pesp(kCaseStudyPespFee, kCaseStudyPespLatency, kCaseStudyPespBandwidth,
                             ImprovementFactor(kCaseStudyAverageImprovement)),
        ServiceProfile::pesp(kCaseStudyPespFee, kCaseStudyPespLatency, kCaseStudyPespBandwidth, ImprovementFactor(1.0)),
    };
    std::size_t dominant = 0;
    double best = -INFINITY;
    for (std::size_t a = 0; a < arms.size(); ++a) {
        auto c = session;
        c.pesp = arms[a];
        if (const double q = expected_outcome(c).qoe; q > best) {
            best = q;
            dominant = a;
        }
    }
    bool ok = true;
    std::string freqs;
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const auto trace = run_policy_experiment(arms, session, 2000, 0.1, seed);
        const double f = trace.tail_frequency(dominant, 500);
        ok = ok && f >= 0.85;
        freqs += fmt("%s%.3f", freqs.empty() ? "" : ", ", f);
    }
    const double elapsed = seconds_since(t0);
    report(8, ok && elapsed < 60.0,
           fmt("dominant arm %zu frequency over the final 500 of 2000 episodes on seeds 1-5: %s (>= 0.85); %.2f s "
               "(< 60 s)",
               dominant, freqs.c_str(), elapsed));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void criterion_9() {
    const auto dir = fs::temp_directory_path() / "aigx_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    ExperimentConfig c;
    c.master_seed = kMasterSeed;
    c.seeds = 200;
    c.output_path = (dir / "sweep.csv").string();
    c.validate();
    set_thread_count(4);
    emit_results(sweep_per(c.session, c.per_grid, c.seeds, c.master_seed, {Execution::Parallel, false}),
                 make_manifest("sweep", c, OutputFormat::Csv), c.output_path);

    const auto m = load_manifest(manifest_path_for(c.output_path));
    bool same = true;
    int reruns = 0;
    for (const SweepOptions o : {SweepOptions{Execution::Serial, false}, SweepOptions{Execution::Serial, true},
                                 SweepOptions{Execution::Parallel, true}, SweepOptions{Execution::Parallel, false}}) {
        const auto path = dir / ("rerun" + std::to_string(reruns++) + ".csv");
        emit_results(sweep_per(m.config.session, m.config.per_grid, m.config.seeds, m.config.master_seed, o), m, path);
        same = same && slurp(path) == slurp(c.output_path);
    }
    set_thread_count(0);
    const auto bytes = slurp(c.output_path).size();
    fs::remove_all(dir);
    report(9, same && bytes > 0,
           fmt("%d manifest reruns (serial, serial reversed, parallel reversed, parallel) byte-identical to the "
               "original %zu-byte CSV: %s",
               reruns, bytes, same ? "yes" : "no"));
}

} // namespace

int main() {
    const std::vector<std::pair<int, std::function<void()>>> steps{
        {1, criteria_1_to_3}, {4, criterion_4}, {5, criterion_5}, {6, criterion_6},
        {7, criterion_7},     {8, criterion_8}, {9, criterion_9},
    };
    for (const auto& [id, step] : steps) {
        try {
            step();
        } catch (const std::exception& e) {
            report(id, false, std::string("threw: ") + e.what());
        }
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
