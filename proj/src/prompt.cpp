#include "aigx/prompt.hpp"

#include <algorithm>
#include <bitset>
#include <cctype>
#include <stdexcept>

#include "aigx/errors.hpp"
#include "ini.hpp"

namespace aigx::prompt {

namespace {

constexpr std::array<std::string_view, kAspectCount> kAspectKeys = {
    "objects_relationship", "background", "mood", "lighting", "quality_booster", "negative",
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return lower(x) == lower(y); });
}

std::size_t skip_space(std::string_view s, std::size_t pos) {
    while (pos < s.size() && is_space(s[pos])) ++pos;
    return pos;
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return s.substr(b, e - b);
}

std::string substitute(std::string_view tmpl, const RawPrompt& raw) {
    std::string out;
    out.reserve(tmpl.size() + raw.scene.size() + raw.objects.size());
    for (std::size_t i = 0; i < tmpl.size();) {
        if (tmpl.compare(i, 7, "{scene}") == 0) {
            out += raw.scene;
            i += 7;
        } else if (tmpl.compare(i, 9, "{objects}") == 0) {
            out += raw.objects;
            i += 9;
        } else {
            out += tmpl[i++];
        }
    }
    return out;
}

AspectTemplates read_section(const detail::IniSection& section) {
    AspectTemplates t;
    std::bitset<kAspectCount> seen;
    for (const auto& [key, value] : section.entries) {
        const auto kind = aspect_from_key(key);
        if (!kind) throw LexiconError("lexicon section [" + section.name + "]: unknown key '" + key + "'");
        const auto i = static_cast<std::size_t>(*kind);
        t[i] = value;
        seen.set(i);
    }
    for (std::size_t i = 0; i < kAspectCount; ++i) {
        if (!seen.test(i))
            throw LexiconError("lexicon section [" + section.name + "]: missing key '" + std::string(kAspectKeys[i]) + "'");
    }
    return t;
}

} // namespace

std::string_view aspect_key(AspectKind kind) { return kAspectKeys.at(static_cast<std::size_t>(kind)); }

std::optional<AspectKind> aspect_from_key(std::string_view key) {
    for (std::size_t i = 0; i < kAspectCount; ++i) {
        if (kAspectKeys[i] == key) return kCanonicalOrder[i];
    }
    return std::nullopt;
}

std::vector<AspectKind> EnrichedPrompt::kinds() const {
    std::vector<AspectKind> out;
    out.reserve(aspects.size());
    for (const auto& a : aspects) out.push_back(a.kind);
    return out;
}

Lexicon::Lexicon(AspectTemplates default_entry, std::map<std::string, AspectTemplates> entries)
    : default_(std::move(default_entry)) {
    for (auto& [key, templates] : entries) {
        auto normalized = normalize_key(key);
        if (!entries_.emplace(normalized, std::move(templates)).second)
            throw LexiconError("duplicate lexicon scene key '" + normalized + "'");
    }
}

std::string Lexicon::normalize_key(std::string_view scene) {
    std::string out;
    bool pending_space = false;
    for (char c : trim(scene)) {
        if (is_space(c)) {
            pending_space = true;
            continue;
        }
        if (pending_space) out += ' ';
        pending_space = false;
        out += lower(c);
    }
    return out;
}

Lexicon Lexicon::parse(std::string_view text) {
    detail::IniDocument doc;
    try {
        doc = detail::parse_ini(text);
    } catch (const std::runtime_error& e) {
        throw LexiconError(std::string("malformed lexicon: ") + e.what());
    }
    if (!doc.globals.empty()) throw LexiconError("lexicon key '" + doc.globals.front().first + "' is outside any section");

    std::optional<AspectTemplates> fallback;
    std::map<std::string, AspectTemplates> entries;
    for (const auto& section : doc.sections) {
        const auto key = normalize_key(section.name);
        if (key == "default") {
            fallback = read_section(section);
        } else if (!entries.emplace(key, read_section(section)).second) {
            throw LexiconError("duplicate lexicon scene key '" + key + "'");
        }
    }
    if (!fallback) throw LexiconError("lexicon has no [default] section");
    return Lexicon(std::move(*fallback), std::move(entries));
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
    std::string text;
    try {
        text = detail::read_text_file(path.string());
    } catch (const std::runtime_error& e) {
        throw LexiconError(e.what());
    }
    return parse(text);
}

const Lexicon& Lexicon::demo() {
    static const Lexicon lexicon = parse(kDemoLexiconText);
    return lexicon;
}

const AspectTemplates& Lexicon::lookup(std::string_view scene) const {
    const auto it = entries_.find(normalize_key(scene));
    return it == entries_.end() ? default_ : it->second;
}

RawPrompt parse_raw(std::string_view input) {
    std::size_t pos = skip_space(input, 0);
    std::size_t word_end = pos;
    while (word_end < input.size() && !is_space(input[word_end]) && input[word_end] != ',') ++word_end;
    const auto article = input.substr(pos, word_end - pos);
    if (!iequals(article, "a") && !iequals(article, "an")) throw ParseError("article", pos);

    const std::size_t comma = input.find(',', word_end);
    if (comma == std::string_view::npos) {
        std::size_t end = input.size();
        while (end > word_end && is_space(input[end - 1])) --end;
        throw ParseError("comma", end);
    }

    const auto scene = trim(input.substr(word_end, comma - word_end));
    if (scene.empty()) throw ParseError("scene", word_end);

    pos = skip_space(input, comma + 1);
    const auto keyword = input.substr(pos, 4);
    const std::size_t after = pos + keyword.size();
    if (!iequals(keyword, "with") || (after < input.size() && !is_space(input[after]))) throw ParseError("with", pos);

    const auto objects = trim(input.substr(after));
    if (objects.empty()) throw ParseError("objects", after);

    return RawPrompt{std::string(scene), std::string(objects), std::string(input)};
}

std::string canonical_form(const RawPrompt& raw) { return "A " + raw.scene + ", with " + raw.objects; }

EnrichedPrompt enrich(const RawPrompt& raw, const Lexicon& lexicon, std::span<const AspectKind> kinds) {
    std::bitset<kAspectCount> wanted;
    for (auto k : kinds) wanted.set(static_cast<std::size_t>(k));

    const auto& templates = lexicon.lookup(raw.scene);
    EnrichedPrompt out{raw, {}};
    for (auto kind : kCanonicalOrder) {
        const auto i = static_cast<std::size_t>(kind);
        if (!wanted.test(i)) continue;
        if (trim(templates[i]).empty())
            throw LexiconError("lexicon entry for '" + Lexicon::normalize_key(raw.scene) + "' has an empty '" +
                               std::string(aspect_key(kind)) + "' template");
        out.aspects.push_back({kind, substitute(templates[i], raw)});
    }
    return out;
}

std::string render(const EnrichedPrompt& enriched) {
    if (enriched.aspects.empty()) return canonical_form(enriched.source);
    std::string out;
    for (const auto& a : enriched.aspects) {
        if (!out.empty()) out += ", ";
        out += a.text;
    }
    return out;
}

std::vector<std::string> ablation_sequence(const RawPrompt& raw, const Lexicon& lexicon) {
    std::vector<std::string> seq;
    seq.reserve(kAspectCount + 1);
    for (std::size_t k = 0; k <= kAspectCount; ++k) {
        seq.push_back(render(enrich(raw, lexicon, std::span<const AspectKind>(kCanonicalOrder.data(), k))));
    }
    return seq;
}

std::string LexiconOptimizer::optimize(std::string_view raw_prompt) const {
    return render(enrich(parse_raw(raw_prompt), lexicon_, kCanonicalOrder));
}

} // namespace aigx::prompt
