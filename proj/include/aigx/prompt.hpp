#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aigx::prompt {

/// Raw user prompt of the form "A <scene>, with <objects>".
struct RawPrompt {
    std::string scene;
    std::string objects;
    std::string original;
};

/// The six enrichment aspects, in their fixed template order.
enum class AspectKind : std::size_t {
    ObjectsAndRelationship = 0,
    BackgroundSettings = 1,
    Mood = 2,
    Lighting = 3,
    QualityBooster = 4,
    NegativePrompt = 5,
};

inline constexpr std::size_t kAspectCount = 6;

inline constexpr std::array<AspectKind, kAspectCount> kCanonicalOrder = {
    AspectKind::ObjectsAndRelationship, AspectKind::BackgroundSettings, AspectKind::Mood,
    AspectKind::Lighting,               AspectKind::QualityBooster,     AspectKind::NegativePrompt,
};

/// Key used in lexicon files ("objects_relationship", "background", ...).
std::string_view aspect_key(AspectKind kind);
std::optional<AspectKind> aspect_from_key(std::string_view key);

struct Aspect {
    AspectKind kind;
    std::string text;
};

struct EnrichedPrompt {
    RawPrompt source;
    std::vector<Aspect> aspects; // unique kinds, canonical order

    std::vector<AspectKind> kinds() const;
};

/// Per-aspect text templates; may reference {scene} and {objects}.
using AspectTemplates = std::array<std::string, kAspectCount>;

/// Scene-keyed enrichment templates with a default entry for unknown scenes.
class Lexicon {
public:
    Lexicon(AspectTemplates default_entry, std::map<std::string, AspectTemplates> entries);

    /// Sectioned key-value text: one [section] per scene plus [default], six
    /// keys per section. Throws LexiconError on missing/unknown keys or
    /// malformed text.
    static Lexicon parse(std::string_view text);
    static Lexicon load(const std::filesystem::path& path);

    /// Built-in demo lexicon (kitchen, living room, operating room).
    static const Lexicon& demo();

    /// Lowercase and collapse internal whitespace runs to one space.
    static std::string normalize_key(std::string_view scene);

    const AspectTemplates& lookup(std::string_view scene) const;
    const AspectTemplates& default_entry() const noexcept { return default_; }
    const std::map<std::string, AspectTemplates>& entries() const noexcept { return entries_; }

private:
    AspectTemplates default_;
    std::map<std::string, AspectTemplates> entries_;
};

extern const std::string_view kDemoLexiconText;

/// Throws ParseError naming the first failing element ("article", "scene",
/// "comma", "with", "objects") and its byte offset in `input`.
RawPrompt parse_raw(std::string_view input);

/// "A {scene}, with {objects}"
std::string canonical_form(const RawPrompt& raw);

EnrichedPrompt enrich(const RawPrompt& raw, const Lexicon& lexicon, std::span<const AspectKind> kinds);
inline EnrichedPrompt enrich(const RawPrompt& raw, const Lexicon& lexicon, std::initializer_list<AspectKind> kinds) {
    return enrich(raw, lexicon, std::span<const AspectKind>(kinds.begin(), kinds.size()));
}

std::string render(const EnrichedPrompt& enriched);

/// Element 0 is the raw prompt; element k adds the first k canonical aspects.
std::vector<std::string> ablation_sequence(const RawPrompt& raw, const Lexicon& lexicon);

/// Text-in/text-out prompt optimizer. The lexicon compiler is the shipped
/// implementation; a network-backed optimizer can implement the same surface.
class PromptOptimizer {
public:
    virtual ~PromptOptimizer() = default;
    virtual std::string optimize(std::string_view raw_prompt) const = 0;
};

class LexiconOptimizer final : public PromptOptimizer {
public:
    explicit LexiconOptimizer(const Lexicon& lexicon) : lexicon_(lexicon) {}
    std::string optimize(std::string_view raw_prompt) const override;

private:
    const Lexicon& lexicon_;
};

} // namespace aigx::prompt
