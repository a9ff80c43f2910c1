#include "aigx/config.hpp"

#include <charconv>
#include <limits>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "aigx/errors.hpp"
#include "aigx/report.hpp"
#include "ini.hpp"

namespace aigx {

namespace {

using Section = std::vector<std::pair<std::string, std::string>>;
using Document = std::vector<std::pair<std::string, Section>>;

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view text, const std::string& key) {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ConfigError(key + ": expected a number, got '" + std::string(text) + "'");
    return v;
}

std::uint64_t to_u64(std::string_view text, const std::string& key) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError(key + ": expected a non-negative integer, got '" + std::string(text) + "'");
    return v;
}

// Typed access to one section; anything never read is an unknown key.
class SectionReader {
public:
    SectionReader(std::string name, const Section& entries) : name_(std::move(name)) {
        for (const auto& [k, v] : entries) values_.emplace(k, v);
    }

    const std::string* raw(const std::string& key) {
        used_.insert(key);
        const auto it = values_.find(key);
        return it == values_.end() ? nullptr : &it->second;
    }

    std::string qualified(const std::string& key) const { return name_ + "." + key; }

    void number(const std::string& key, double& out) {
        if (const auto* v = raw(key)) out = to_double(*v, qualified(key));
    }

    template <class Int>
    void integer(const std::string& key, Int& out) {
        if (const auto* v = raw(key)) {
            const auto x = to_u64(*v, qualified(key));
            if (x > std::numeric_limits<Int>::max()) throw ConfigError(qualified(key) + ": value too large");
            out = static_cast<Int>(x);
        }
    }

    void text(const std::string& key, std::string& out) {
        if (const auto* v = raw(key)) out = std::string(trim(*v));
    }

    template <class Enum>
    void choice(const std::string& key, Enum& out, std::initializer_list<std::pair<std::string_view, Enum>> options) {
        const auto* v = raw(key);
        if (!v) return;
        const auto t = trim(*v);
        for (const auto& [name, value] : options) {
            if (t == name) {
                out = value;
                return;
            }
        }
        std::string allowed;
        for (const auto& [name, value] : options) allowed += (allowed.empty() ? "" : "|") + std::string(name);
        throw ConfigError(qualified(key) + ": expected one of " + allowed + ", got '" + std::string(t) + "'");
    }

    void finish() const {
        for (const auto& [k, v] : values_) {
            if (!used_.count(k)) throw ConfigError("unknown key '" + qualified(k) + "'");
        }
    }

private:
    std::string name_;
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

constexpr std::string_view kArmPrefix = "arm.";

void read_profile(SectionReader& r, ServiceProfile& p) {
    r.choice("tier", p.tier, {{"edge", Tier::Edge}, {"cloud", Tier::Cloud}});
    r.number("fee_per_call", p.fee_per_call);
    r.number("latency_per_call", p.latency_per_call);
    r.number("bandwidth_per_call", p.bandwidth_per_call);
    if (p.role == ServiceRole::Pesp) {
        double m = p.improvement.mean_multiplier();
        r.number("improvement", m);
        try {
            p.improvement = ImprovementFactor(m);
        } catch (const DomainError& e) {
            throw ConfigError(r.qualified("improvement") + ": " + e.what());
        }
    }
}

std::vector<double> parse_grid(std::string_view text, const std::string& key) {
    std::vector<double> grid;
    text = trim(text);
    if (text.empty()) return grid;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        grid.push_back(to_double(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start), key));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return grid;
}

ExperimentConfig build(const Document& doc) {
    ExperimentConfig c;
    bool have_seed = false;
    bool have_arms = false;

    // QoG parameters are validated together once all four are known.
    double mean = c.session.base_qog.mean(), sd = c.session.base_qog.std_dev();
    double lo = c.session.base_qog.lower_bound(), hi = c.session.base_qog.upper_bound();

    for (const auto& [name, entries] : doc) {
        SectionReader r(name, entries);
        if (name == "experiment") {
            if (r.raw("master_seed")) {
                r.integer("master_seed", c.master_seed);
                have_seed = true;
            }
            r.integer("seeds", c.seeds);
            if (const auto* g = r.raw("per_grid")) c.per_grid = parse_grid(*g, r.qualified("per_grid"));
            r.text("output_path", c.output_path);
            if (const auto* l = r.raw("lexicon_path")) {
                const auto t = trim(*l);
                if (t.empty()) c.lexicon_path.reset();
                else c.lexicon_path = std::string(t);
            }
        } else if (name == "session") {
            r.integer("target_accepted", c.session.target_accepted);
            r.number("per", c.session.per);
            r.number("threshold", c.session.rule.threshold);
            r.choice("pe_granularity", c.session.pe_granularity,
                     {{"per_task", PeGranularity::PerTask}, {"per_attempt", PeGranularity::PerAttempt}});
            r.choice("reward_aggregation", c.session.reward_aggregation,
                     {{"sum", RewardAggregation::Sum}, {"mean", RewardAggregation::Mean}});
            r.integer("max_attempts_per_task", c.session.max_attempts_per_task);
        } else if (name == "qog") {
            r.number("mean", mean);
            r.number("std_dev", sd);
            r.number("lower_bound", lo);
            r.number("upper_bound", hi);
        } else if (name == "asp") {
            read_profile(r, c.session.asp);
        } else if (name == "pesp") {
            read_profile(r, c.session.pesp);
        } else if (name == "weights") {
            r.number("alpha", c.session.weights.alpha);
            r.number("beta_latency", c.session.weights.beta_latency);
            r.number("beta_fee", c.session.weights.beta_fee);
            r.number("beta_bandwidth", c.session.weights.beta_bandwidth);
        } else if (name == "policy") {
            r.number("exploration_rate", c.policy.exploration_rate);
            r.integer("episodes", c.policy.episodes);
        } else if (name.starts_with(kArmPrefix) && name.size() > kArmPrefix.size()) {
            if (!have_arms) c.policy.arms.clear();
            have_arms = true;
            ServiceProfile arm = case_study_pesp();
            read_profile(r, arm);
            c.policy.arms.emplace_back(name.substr(kArmPrefix.size()), arm);
        } else {
            throw ConfigError("unknown section '" + name + "'");
        }
        r.finish();
    }

    if (!have_seed) throw ConfigError("experiment.master_seed is required (no implicit seeding)");
    try {
        c.session.base_qog = QoGDistribution(mean, sd, lo, hi);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("qog: ") + e.what());
    }
    c.validate();
    return c;
}

Document from_ini(std::string_view text) {
    detail::IniDocument ini;
    try {
        ini = detail::parse_ini(text);
    } catch (const std::runtime_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (!ini.globals.empty()) throw ConfigError("key '" + ini.globals.front().first + "' is outside any section");
    Document doc;
    for (auto& s : ini.sections) doc.emplace_back(std::move(s.name), std::move(s.entries));
    return doc;
}

std::string scalar_text(const nlohmann::ordered_json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    if (v.is_array()) {
        std::string out;
        for (const auto& e : v) {
            if (!e.is_number()) throw ConfigError(key + ": list entries must be numbers");
            out += (out.empty() ? "" : ",") + e.dump();
        }
        return out;
    }
    if (v.is_null()) return {};
    throw ConfigError(key + ": unsupported value type");
}

Document from_json(std::string_view text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::ordered_json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON config: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("JSON config must be an object of sections");
    Document doc;
    for (const auto& [name, body] : j.items()) {
        if (!body.is_object()) throw ConfigError("section '" + name + "' must be an object");
        Section s;
        for (const auto& [k, v] : body.items()) s.emplace_back(k, scalar_text(v, name + "." + k));
        doc.emplace_back(name, std::move(s));
    }
    return doc;
}

nlohmann::ordered_json profile_json(const ServiceProfile& p) {
    nlohmann::ordered_json j;
    j["tier"] = std::string(to_string(p.tier));
    j["fee_per_call"] = p.fee_per_call;
    j["latency_per_call"] = p.latency_per_call;
    j["bandwidth_per_call"] = p.bandwidth_per_call;
    if (p.role == ServiceRole::Pesp) j["improvement"] = p.improvement.mean_multiplier();
    return j;
}

} // namespace

std::vector<std::pair<std::string, ServiceProfile>> default_policy_arms() {
    const ServiceProfile engineered = case_study_pesp();
    ServiceProfile plain = engineered;
    plain.improvement = ImprovementFactor(1.0);
    return {{"engineered", engineered}, {"plain", plain}};
}

void ExperimentConfig::validate() const {
    if (seeds < 1) throw ConfigError("experiment.seeds must be at least 1");
    for (double p : per_grid) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("experiment.per_grid: value " + format_number(p) + " outside [0, 1]");
    }
    if (!(session.per >= 0.0 && session.per <= 1.0))
        throw ConfigError("session.per must lie in [0, 1], got " + format_number(session.per));
    if (session.target_accepted < 1) throw ConfigError("session.target_accepted must be at least 1");
    if (session.max_attempts_per_task < 1) throw ConfigError("session.max_attempts_per_task must be at least 1");
    if (!(policy.exploration_rate >= 0.0 && policy.exploration_rate <= 1.0))
        throw ConfigError("policy.exploration_rate must lie in [0, 1]");
    try {
        session.validate();
        for (const auto& [name, arm] : policy.arms) {
            arm.validate();
            SessionConfig probe = session;
            probe.pesp = arm;
            probe.validate();
        }
    } catch (const std::logic_error& e) {
        throw ConfigError(std::string("invalid session configuration: ") + e.what());
    }
}

ExperimentConfig parse_config(std::string_view text, ConfigFormat format) {
    return build(format == ConfigFormat::Ini ? from_ini(text) : from_json(text));
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = detail::read_text_file(path.string());
    } catch (const std::runtime_error& e) {
        throw ConfigError(e.what());
    }
    const auto fmt = path.extension() == ".json" ? ConfigFormat::Json : ConfigFormat::Ini;
    return parse_config(text, fmt);
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
    nlohmann::ordered_json j;
    j["experiment"]["master_seed"] = c.master_seed;
    j["experiment"]["seeds"] = c.seeds;
    j["experiment"]["per_grid"] = c.per_grid;
    j["experiment"]["output_path"] = c.output_path;
    j["experiment"]["lexicon_path"] = c.lexicon_path ? nlohmann::ordered_json(*c.lexicon_path) : nlohmann::ordered_json(nullptr);

    const auto& s = c.session;
    j["session"]["target_accepted"] = s.target_accepted;
    j["session"]["per"] = s.per;
    j["session"]["threshold"] = s.rule.threshold;
    j["session"]["pe_granularity"] = s.pe_granularity == PeGranularity::PerTask ? "per_task" : "per_attempt";
    j["session"]["reward_aggregation"] = s.reward_aggregation == RewardAggregation::Sum ? "sum" : "mean";
    j["session"]["max_attempts_per_task"] = s.max_attempts_per_task;

    j["qog"]["mean"] = s.base_qog.mean();
    j["qog"]["std_dev"] = s.base_qog.std_dev();
    j["qog"]["lower_bound"] = s.base_qog.lower_bound();
    j["qog"]["upper_bound"] = s.base_qog.upper_bound();

    j["asp"] = profile_json(s.asp);
    j["pesp"] = profile_json(s.pesp);

    j["weights"]["alpha"] = s.weights.alpha;
    j["weights"]["beta_latency"] = s.weights.beta_latency;
    j["weights"]["beta_fee"] = s.weights.beta_fee;
    j["weights"]["beta_bandwidth"] = s.weights.beta_bandwidth;

    j["policy"]["exploration_rate"] = c.policy.exploration_rate;
    j["policy"]["episodes"] = c.policy.episodes;
    for (const auto& [name, arm] : c.policy.arms) j[std::string(kArmPrefix) + name] = profile_json(arm);
    return j;
}

} // namespace aigx
