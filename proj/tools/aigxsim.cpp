// aigxsim: command-line front end for the mobile-edge AIGX session simulator.
//
//   aigxsim simulate  --config case_study.cfg --per 1 --seeds 1000
//   aigxsim sweep     --config case_study.cfg --grid 0,0.5,1 --out results.csv
//   aigxsim sweep     --manifest results.csv.manifest.json --out rerun.csv
//   aigxsim calibrate [--config case_study.cfg] [--regens 43]
//   aigxsim prompt    parse|enrich|render|ablate "A kitchen, with cooking machines"
//   aigxsim policy    --config case_study.cfg --episodes 2000 --out trace.csv
//
// Exit codes: 0 success, 2 configuration/input error, 3 runtime error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aigx/config.hpp"
#include "aigx/errors.hpp"
#include "aigx/execution.hpp"
#include "aigx/policy.hpp"
#include "aigx/prompt.hpp"
#include "aigx/qog.hpp"
#include "aigx/report.hpp"
#include "aigx/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct ExperimentFlags {
    std::string config_path;
    std::string manifest_path;
    std::optional<double> per;
    std::optional<std::uint64_t> seeds;
    std::optional<std::uint64_t> master_seed;
    std::string grid;
    std::string out;
    std::string lexicon;
    std::string format = "csv";
    int threads = 0;
    bool serial = false;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f) {
    cmd->add_option("--config", f.config_path, "Experiment configuration (INI-style or .json)");
    cmd->add_option("--seeds", f.seeds, "Sessions per PER value");
    cmd->add_option("--master-seed", f.master_seed, "Override experiment.master_seed");
    cmd->add_option("--out", f.out, "Output path");
    cmd->add_option("--lexicon", f.lexicon, "Lexicon file recorded with the run");
    cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", f.threads, "OpenMP threads (0 = runtime default)");
    cmd->add_flag("--serial", f.serial, "Use the serial reference kernel");
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            grid.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw aigx::ConfigError("--grid: '" + item + "' is not a number");
        }
    }
    return grid;
}

aigx::OutputFormat output_format(const std::string& name) {
    return name == "json" ? aigx::OutputFormat::Json : aigx::OutputFormat::Csv;
}

// Resolves config + flag overrides into the configuration the run will use.
aigx::ExperimentConfig resolve(const ExperimentFlags& f, aigx::OutputFormat& format, bool single_per) {
    aigx::ExperimentConfig c;
    if (!f.manifest_path.empty()) {
        const auto m = aigx::load_manifest(f.manifest_path);
        c = m.config;
        format = m.format;
    } else if (!f.config_path.empty()) {
        c = aigx::load_config(f.config_path);
    } else {
        throw aigx::ConfigError("--config (or --manifest) is required");
    }
    if (f.master_seed) c.master_seed = *f.master_seed;
    if (f.seeds) c.seeds = *f.seeds;
    if (!f.grid.empty()) c.per_grid = parse_grid(f.grid);
    if (f.per) c.session.per = *f.per;
    if (single_per) c.per_grid = {c.session.per};
    if (!f.out.empty()) c.output_path = f.out;
    if (!f.lexicon.empty()) c.lexicon_path = f.lexicon;
    c.validate();
    return c;
}

int run_table(const ExperimentFlags& f, const std::string& command, bool single_per, bool to_stdout_by_default) {
    auto format = output_format(f.format);
    const auto config = resolve(f, format, single_per);
    aigx::set_thread_count(f.threads);
    const aigx::SweepOptions options{f.serial ? aigx::Execution::Serial : aigx::Execution::Parallel, false};
    const auto table = aigx::sweep_per(config.session, config.per_grid, config.seeds, config.master_seed, options);

    if (to_stdout_by_default && f.out.empty() && f.manifest_path.empty()) {
        aigx::write_table(table, format, std::cout);
        return 0;
    }
    aigx::emit_results(table, aigx::make_manifest(command, config, format), config.output_path);
    std::cerr << "wrote " << config.output_path << " and " << aigx::manifest_path_for(config.output_path).string()
              << '\n';
    return 0;
}

struct CalibrateFlags {
    std::string config_path;
    double latency_total = aigx::kReportedLatencyPer0;
    double bandwidth_total = aigx::kReportedBandwidthPer0;
    double regens = aigx::kReportedRegensPer1;
    std::string format = "text";
};

int run_calibrate(const CalibrateFlags& f) {
    aigx::SessionConfig session = aigx::case_study_session_config();
    if (!f.config_path.empty()) session = aigx::load_config(f.config_path).session;

    const double target = session.target_accepted;
    const double p0 = aigx::acceptance_probability(session.base_qog, session.rule);
    const double gens0 = aigx::expected_generations(p0, target);
    const auto derived = aigx::derive_generation_constants(f.latency_total, f.bandwidth_total, gens0);
    const double p1 = aigx::acceptance_probability(session.improved_qog(), session.rule);
    const double gens1 = aigx::expected_generations(p1, target);
    const auto fitted = aigx::calibrate_improvement_from_regens(session.base_qog, session.rule, f.regens, target);

    nlohmann::ordered_json j;
    j["acceptance_base"] = p0;
    j["expected_generations_base"] = gens0;
    j["expected_regenerations_base"] = gens0 - target;
    j["latency_per_call"] = derived.latency_per_call;
    j["bandwidth_per_call"] = derived.bandwidth_per_call;
    j["improvement"] = session.pesp.improvement.mean_multiplier();
    j["acceptance_improved"] = p1;
    j["expected_generations_improved"] = gens1;
    j["expected_regenerations_improved"] = gens1 - target;
    j["observed_regenerations"] = f.regens;
    j["fitted_improvement"] = fitted.mean_multiplier();

    if (f.format == "json") {
        std::cout << j.dump(2) << '\n';
    } else {
        for (const auto& [k, v] : j.items()) std::cout << k << " = " << aigx::format_number(v.get<double>()) << '\n';
    }
    return 0;
}

struct PromptFlags {
    std::string text;
    std::string lexicon;
    std::string aspects = "all";
    std::string format = "text";
};

std::vector<aigx::prompt::AspectKind> parse_aspects(const std::string& list) {
    using namespace aigx::prompt;
    if (list == "all") return {kCanonicalOrder.begin(), kCanonicalOrder.end()};
    std::vector<AspectKind> kinds;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto kind = aspect_from_key(item);
        if (!kind) throw aigx::ConfigError("--aspects: unknown aspect '" + item + "'");
        kinds.push_back(*kind);
    }
    return kinds;
}

int run_prompt(const std::string& action, const PromptFlags& f) {
    using namespace aigx::prompt;
    std::optional<Lexicon> owned;
    if (!f.lexicon.empty()) owned = Lexicon::load(f.lexicon);
    const Lexicon& lexicon = owned ? *owned : Lexicon::demo();
    const bool json = f.format == "json";
    const RawPrompt raw = parse_raw(f.text);

    if (action == "parse") {
        if (json) {
            nlohmann::ordered_json j{{"scene", raw.scene}, {"objects", raw.objects}, {"canonical", canonical_form(raw)}};
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "scene: " << raw.scene << "\nobjects: " << raw.objects << '\n';
        }
    } else if (action == "enrich") {
        const auto enriched = enrich(raw, lexicon, parse_aspects(f.aspects));
        if (json) {
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            for (const auto& a : enriched.aspects) j.push_back({{"aspect", aspect_key(a.kind)}, {"text", a.text}});
            std::cout << j.dump(2) << '\n';
        } else {
            for (const auto& a : enriched.aspects) std::cout << aspect_key(a.kind) << ": " << a.text << '\n';
        }
    } else if (action == "render") {
        std::cout << render(enrich(raw, lexicon, parse_aspects(f.aspects))) << '\n';
    } else {
        const auto seq = ablation_sequence(raw, lexicon);
        if (json) {
            std::cout << nlohmann::ordered_json(seq).dump(2) << '\n';
        } else {
            for (std::size_t k = 0; k < seq.size(); ++k) std::cout << k << '\t' << seq[k] << '\n';
        }
    }
    return 0;
}

struct PolicyFlags {
    std::string config_path;
    std::optional<std::uint64_t> episodes;
    std::optional<double> epsilon;
    std::optional<std::uint64_t> master_seed;
    std::string out;
};

int run_policy(const PolicyFlags& f) {
    if (f.config_path.empty()) throw aigx::ConfigError("--config is required");
    auto c = aigx::load_config(f.config_path);
    if (f.episodes) c.policy.episodes = *f.episodes;
    if (f.epsilon) c.policy.exploration_rate = *f.epsilon;
    if (f.master_seed) c.master_seed = *f.master_seed;
    c.validate();

    std::vector<aigx::ServiceProfile> arms;
    for (const auto& [name, arm] : c.policy.arms) arms.push_back(arm);
    const auto trace =
        aigx::run_policy_experiment(arms, c.session, c.policy.episodes, c.policy.exploration_rate, c.master_seed);

    if (f.out.empty()) {
        aigx::write_trace_csv(trace, std::cout);
    } else {
        std::ofstream out(f.out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + f.out);
        aigx::write_trace_csv(trace, out);
    }
    const auto& st = trace.final_state;
    for (std::size_t i = 0; i < st.arms.size(); ++i) {
        std::cerr << "arm " << i << " (" << c.policy.arms[i].first << "): pulls=" << st.pull_counts[i]
                  << " mean_qoe=" << aigx::format_number(st.mean_rewards[i]) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mobile-edge AIGX service simulator"};
    app.require_subcommand(1);

    ExperimentFlags sim;
    auto* simulate = app.add_subcommand("simulate", "Run seeded sessions at one prompt-engineering rate");
    add_experiment_flags(simulate, sim);
    simulate->add_option("--per", sim.per, "Prompt-engineering rate in [0, 1]");

    ExperimentFlags sw;
    auto* sweep = app.add_subcommand("sweep", "Sweep the prompt-engineering rate over a grid");
    add_experiment_flags(sweep, sw);
    sweep->add_option("--grid", sw.grid, "Comma-separated PER values");
    sweep->add_option("--manifest", sw.manifest_path, "Rerun the experiment recorded in a manifest");

    CalibrateFlags cal;
    auto* calibrate = app.add_subcommand("calibrate", "Print constants derived from the reported session totals");
    calibrate->add_option("--config", cal.config_path, "Experiment configuration");
    calibrate->add_option("--latency-total", cal.latency_total, "Session latency at PER = 0 (s)");
    calibrate->add_option("--bandwidth-total", cal.bandwidth_total, "Session bandwidth at PER = 0 (KB)");
    calibrate->add_option("--regens", cal.regens, "Observed re-generations to fit an improvement factor to");
    calibrate->add_option("--format", cal.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    PromptFlags pf;
    auto* prompt = app.add_subcommand("prompt", "Six-aspect prompt template compiler");
    prompt->require_subcommand(1);
    std::string prompt_action;
    for (const char* action : {"parse", "enrich", "render", "ablate"}) {
        auto* sub = prompt->add_subcommand(action);
        sub->add_option("text", pf.text, "Raw prompt, e.g. \"A kitchen, with cooking machines\"")->required();
        sub->add_option("--lexicon", pf.lexicon, "Lexicon file (default: built-in demo)");
        sub->add_option("--format", pf.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        if (std::string(action) == "enrich" || std::string(action) == "render")
            sub->add_option("--aspects", pf.aspects, "Comma-separated aspect keys or 'all'");
        sub->callback([&prompt_action, action] { prompt_action = action; });
    }

    PolicyFlags pol;
    auto* policy = app.add_subcommand("policy", "Epsilon-greedy PESP selection experiment");
    policy->add_option("--config", pol.config_path, "Experiment configuration");
    policy->add_option("--episodes", pol.episodes, "Episodes (sessions)");
    policy->add_option("--epsilon", pol.epsilon, "Exploration rate");
    policy->add_option("--master-seed", pol.master_seed, "Override experiment.master_seed");
    policy->add_option("--out", pol.out, "Trace CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (simulate->parsed()) return run_table(sim, "simulate", true, true);
        if (sweep->parsed()) return run_table(sw, "sweep", false, false);
        if (calibrate->parsed()) return run_calibrate(cal);
        if (prompt->parsed()) return run_prompt(prompt_action, pf);
        if (policy->parsed()) return run_policy(pol);
    } catch (const aigx::SessionError& e) {
        std::cerr << "session error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const aigx::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const aigx::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    } catch (const aigx::LexiconError& e) {
        std::cerr << "lexicon error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::logic_error& e) {
        // DomainError / UsageError from parameter validation
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
