#pragma once

#include "pathmine/xml_tree.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pathmine {

enum class TextMode : std::uint8_t { None, TextOnly, TextAndNode };

std::string_view to_string(TextMode mode);
/// Accepts `none`, `text`, `text-and-node`.
TextMode parse_text_mode(std::string_view s);

/// The six-parameter extraction family. `max_len` empty means unbounded
/// (each path is limited only by the length of its supporting path).
struct ExtractionParams {
    std::size_t min_len = 1;
    std::optional<std::size_t> max_len = 1;
    bool root_only = false;
    bool leaf_only = false;
    TextMode text_mode = TextMode::None;
    bool include_attributes = false;

    /// Throws InvalidParams.
    void validate() const;

    bool operator==(const ExtractionParams&) const = default;
};

/// `3-*`, `1-1` and so on.
std::string length_range(const ExtractionParams& p);

/// A node sub-path, optionally extended by one word. Attribute labels carry a
/// trailing `@`. Ordered by serialized form.
class PathKey {
public:
    PathKey(std::vector<std::string> labels, std::optional<std::string> word = std::nullopt);

    /// Inverse of str(); throws InvalidParams on malformed input.
    static PathKey parse(std::string_view serialized);

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::optional<std::string>& word() const noexcept { return word_; }
    bool is_text() const noexcept { return word_.has_value(); }

    /// Number of labels plus one for the word of a text path.
    std::size_t length() const noexcept { return labels_.size() + (word_ ? 1 : 0); }

    /// `bdy.sec.p."historian"`; a `.` or `\` inside a label is backslash-escaped.
    const std::string& str() const noexcept { return text_; }

    friend bool operator==(const PathKey& a, const PathKey& b) { return a.text_ == b.text_; }
    friend std::strong_ordering operator<=>(const PathKey& a, const PathKey& b) { return a.text_ <=> b.text_; }

private:
    std::vector<std::string> labels_;
    std::optional<std::string> word_;
    std::string text_;
};

/// A document's multiset of sub-paths with raw occurrence counts.
struct PathBag {
    std::string doc_id;
    std::map<PathKey, std::uint64_t> counts;

    std::uint64_t total() const;
};

/// Generates every sub-path admitted by `params`. Text paths draw their words
/// from the token lists of Text nodes, so run the token pipeline first.
PathBag enumerate_paths(const DocumentTree& tree, const ExtractionParams& params);

/// Named parameter tuples reproducing earlier document models:
/// bag-of-words, tag-set, tag-and-text, terminal-paths, structure-vector,
/// bounded-subpaths(L), leaf-context(n). Throws UnknownPreset.
ExtractionParams preset(std::string_view name);

std::vector<std::string> preset_names();

}  // namespace pathmine
