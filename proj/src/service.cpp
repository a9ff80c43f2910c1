#include "aigx/service.hpp"

#include <cmath>
#include <string>

#include "aigx/errors.hpp"

namespace aigx {

namespace {

bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }

} // namespace

std::string_view to_string(ServiceRole role) { return role == ServiceRole::Asp ? "asp" : "pesp"; }
std::string_view to_string(Tier tier) { return tier == Tier::Edge ? "edge" : "cloud"; }

ServiceProfile ServiceProfile::asp(double fee, double latency_s, double bandwidth_kb, Tier tier) {
    ServiceProfile p{ServiceRole::Asp, tier, fee, latency_s, bandwidth_kb, ImprovementFactor(1.0)};
    p.validate();
    return p;
}

ServiceProfile ServiceProfile::pesp(double fee, double latency_s, double bandwidth_kb, ImprovementFactor improvement,
                                    Tier tier) {
    ServiceProfile p{ServiceRole::Pesp, tier, fee, latency_s, bandwidth_kb, improvement};
    p.validate();
    return p;
}

void ServiceProfile::validate() const {
    if (!non_negative(fee_per_call) || !non_negative(latency_per_call) || !non_negative(bandwidth_per_call))
        throw DomainError(std::string(to_string(role)) + " profile costs must be finite and non-negative");
    if (role == ServiceRole::Asp && improvement.mean_multiplier() != 1.0)
        throw DomainError("an ASP profile cannot carry a QoG improvement");
}

ServiceProfile case_study_asp() { return ServiceProfile::asp(kCaseStudyAspFee, kCaseStudyAspLatency, kCaseStudyAspBandwidth); }

ServiceProfile case_study_pesp() {
    return ServiceProfile::pesp(kCaseStudyPespFee, kCaseStudyPespLatency, kCaseStudyPespBandwidth,
                                ImprovementFactor(kCaseStudyAverageImprovement));
}

CallRecord generation_call(const ServiceProfile& asp, bool is_regeneration) {
    if (asp.role != ServiceRole::Asp) throw UsageError("generation must be charged against an ASP profile");
    return {is_regeneration ? CallKind::Regeneration : CallKind::Generation, asp.latency_per_call,
            is_regeneration ? 0.0 : asp.fee_per_call, asp.bandwidth_per_call};
}

CallRecord pesp_call(const ServiceProfile& pesp) {
    if (pesp.role != ServiceRole::Pesp) throw UsageError("prompt engineering must be charged against a PESP profile");
    return {CallKind::PromptEngineering, pesp.latency_per_call, pesp.fee_per_call, pesp.bandwidth_per_call};
}

ResourceLedger apply(ResourceLedger ledger, const CallRecord& call) {
    ledger.total_latency += call.latency;
    ledger.total_fee += call.fee;
    ledger.total_bandwidth += call.bandwidth;
    switch (call.kind) {
    case CallKind::Regeneration:
        ++ledger.regeneration_calls;
        [[fallthrough]];
    case CallKind::Generation:
        ++ledger.generation_calls;
        break;
    case CallKind::PromptEngineering:
        ++ledger.pesp_calls;
        break;
    }
    return ledger;
}

ResourceLedger charge_generation(ResourceLedger ledger, const ServiceProfile& asp, bool is_regeneration) {
    return apply(ledger, generation_call(asp, is_regeneration));
}

ResourceLedger charge_pesp(ResourceLedger ledger, const ServiceProfile& pesp) { return apply(ledger, pesp_call(pesp)); }

ResourceLedger replay(std::span<const CallRecord> calls) {
    ResourceLedger ledger;
    for (const auto& c : calls) ledger = apply(ledger, c);
    return ledger;
}

GenerationConstants derive_generation_constants(double total_latency, double total_bandwidth, double total_generations) {
    if (!(total_generations > 0.0)) throw DomainError("cannot derive per-call constants from zero generations");
    if (!non_negative(total_latency) || !non_negative(total_bandwidth))
        throw DomainError("session totals must be finite and non-negative");
    return {total_latency / total_generations, total_bandwidth / total_generations};
}

} // namespace aigx
