#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "aigx/qog.hpp"

namespace aigx {

enum class ServiceRole { Asp, Pesp };
enum class Tier { Edge, Cloud };

std::string_view to_string(ServiceRole role);
std::string_view to_string(Tier tier);

/// Per-call costs of one provider. ASPs always carry an identity
/// improvement; for PESPs it is the QoG mean multiplier they deliver.
struct ServiceProfile {
    ServiceRole role = ServiceRole::Asp;
    Tier tier = Tier::Edge;
    double fee_per_call = 0.0;       // monetary units
    double latency_per_call = 0.0;   // seconds
    double bandwidth_per_call = 0.0; // kilobytes
    ImprovementFactor improvement{1.0};

    static ServiceProfile asp(double fee, double latency_s, double bandwidth_kb, Tier tier = Tier::Edge);
    static ServiceProfile pesp(double fee, double latency_s, double bandwidth_kb, ImprovementFactor improvement,
                               Tier tier = Tier::Edge);

    /// Throws DomainError on negative/non-finite costs or an ASP with a
    /// non-identity improvement.
    void validate() const;

    friend bool operator==(const ServiceProfile&, const ServiceProfile&) = default;
};

// Per-call constants back-derived from the reported session totals.
inline constexpr double kCaseStudyAspFee = 10.0;
inline constexpr double kCaseStudyPespFee = 80.0;
inline constexpr double kCaseStudyAspLatency = 40.15;
inline constexpr double kCaseStudyAspBandwidth = 180.7;
inline constexpr double kCaseStudyPespLatency = 0.1;
inline constexpr double kCaseStudyPespBandwidth = 0.1;

// Reported case-study session totals (100 accepted images).
inline constexpr double kReportedLatencyPer0 = 15402.0;   // s, PER = 0
inline constexpr double kReportedBandwidthPer0 = 69310.0; // KB, PER = 0
inline constexpr double kReportedRegensPer0 = 284.0;
inline constexpr double kReportedLatencyPer1 = 5692.0;    // s, PER = 1
inline constexpr double kReportedBandwidthPer1 = 25616.0; // KB, PER = 1
inline constexpr double kReportedRegensPer1 = 43.0;

ServiceProfile case_study_asp();
ServiceProfile case_study_pesp();

struct ResourceLedger {
    double total_latency = 0.0;
    double total_fee = 0.0;
    double total_bandwidth = 0.0;
    std::uint64_t generation_calls = 0;
    std::uint64_t pesp_calls = 0;
    std::uint64_t regeneration_calls = 0;

    friend bool operator==(const ResourceLedger&, const ResourceLedger&) = default;
};

enum class CallKind { Generation, Regeneration, PromptEngineering };

struct CallRecord {
    CallKind kind;
    double latency;
    double fee;
    double bandwidth;
};

CallRecord generation_call(const ServiceProfile& asp, bool is_regeneration);
CallRecord pesp_call(const ServiceProfile& pesp);

/// Adds one call's deltas and bumps the matching counters.
ResourceLedger apply(ResourceLedger ledger, const CallRecord& call);

/// Re-generations are free; latency and bandwidth are charged on every attempt.
ResourceLedger charge_generation(ResourceLedger ledger, const ServiceProfile& asp, bool is_regeneration);
ResourceLedger charge_pesp(ResourceLedger ledger, const ServiceProfile& pesp);

ResourceLedger replay(std::span<const CallRecord> calls);

struct GenerationConstants {
    double latency_per_call;
    double bandwidth_per_call;
};

GenerationConstants derive_generation_constants(double total_latency, double total_bandwidth, double total_generations);

} // namespace aigx
