#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <variant>

namespace aigx {

/// Seeded pseudo-random stream.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the standard.
/// Uniform variates are built from raw 64-bit words here instead of going
/// through std::uniform_real_distribution, whose algorithm is
/// implementation-defined; that keeps draws bit-identical across standard
/// libraries.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1).
    double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Unbiased integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// One uniform is consumed regardless of p.
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

using StreamLabel = std::variant<std::int64_t, std::string>;

/// Hash-based child seed for a label path under a master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::span<const StreamLabel> labels);

RandomStream derive_stream(std::uint64_t master_seed, std::span<const StreamLabel> labels);

inline RandomStream derive_stream(std::uint64_t master_seed, std::initializer_list<StreamLabel> labels) {
    return derive_stream(master_seed, std::span<const StreamLabel>(labels.begin(), labels.size()));
}

} // namespace aigx
