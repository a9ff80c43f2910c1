#include "aigx/random.hpp"

#include <limits>
#include <string_view>

namespace aigx {

namespace {

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Integer and string labels are tagged so that 7 and "7" land on different paths.
constexpr std::uint64_t kIntTag = 0x494e544c4142454cULL;
constexpr std::uint64_t kStrTag = 0x5354524c4142454cULL;

} // namespace

std::uint64_t RandomStream::below(std::uint64_t n) {
    // Rejection on the top of the range keeps every residue equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::span<const StreamLabel> labels) {
    std::uint64_t h = mix64(master_seed);
    for (const auto& label : labels) {
        if (const auto* i = std::get_if<std::int64_t>(&label)) {
            h = mix64(h ^ mix64(kIntTag ^ static_cast<std::uint64_t>(*i)));
        } else {
            h = mix64(h ^ mix64(kStrTag ^ fnv1a(std::get<std::string>(label))));
        }
    }
    return h;
}

RandomStream derive_stream(std::uint64_t master_seed, std::span<const StreamLabel> labels) {
    return RandomStream(derive_seed(master_seed, labels));
}

} // namespace aigx
