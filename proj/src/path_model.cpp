#include "pathmine/path_model.hpp"

#include "pathmine/error.hpp"

#include <charconv>
#include <numeric>

namespace pathmine {

std::string_view to_string(TextMode mode) {
    switch (mode) {
    case TextMode::None: return "none";
    case TextMode::TextOnly: return "text";
    case TextMode::TextAndNode: return "text-and-node";
    }
    return "none";
}

TextMode parse_text_mode(std::string_view s) {
    if (s == "none" || s == "node") return TextMode::None;
    if (s == "text") return TextMode::TextOnly;
    if (s == "text-and-node") return TextMode::TextAndNode;
    throw InvalidParams("unknown text mode '" + std::string(s) + "' (none, text, text-and-node)");
}

void ExtractionParams::validate() const {
    if (min_len < 1) throw InvalidParams("min_len must be at least 1");
    if (max_len && *max_len < min_len)
        throw InvalidParams("max_len " + std::to_string(*max_len) + " is below min_len " + std::to_string(min_len));
}

std::string length_range(const ExtractionParams& p) {
    return std::to_string(p.min_len) + "-" + (p.max_len ? std::to_string(*p.max_len) : std::string("*"));
}

// ---------------------------------------------------------------------------
// PathKey

namespace {

void append_escaped(std::string& out, std::string_view label) {
    for (char c : label) {
        if (c == '.' || c == '\\') out += '\\';
        out += c;
    }
}

void append_word(std::string& out, std::string_view word) {
    out += '"';
    for (char c : word) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
}

}  // namespace

PathKey::PathKey(std::vector<std::string> labels, std::optional<std::string> word)
    : labels_(std::move(labels)), word_(std::move(word)) {
    if (labels_.empty() && !word_) throw InvalidParams("a path needs at least one component");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].empty()) throw InvalidParams("empty label in path");
        if (i) text_ += '.';
        append_escaped(text_, labels_[i]);
    }
    if (word_) {
        if (!labels_.empty()) text_ += '.';
        append_word(text_, *word_);
    }
}

PathKey PathKey::parse(std::string_view s) {
    std::vector<std::string> labels;
    std::optional<std::string> word;
    std::size_t i = 0;
    auto bad = [&](const char* why) { return InvalidParams("malformed path '" + std::string(s) + "': " + why); };
    while (i < s.size()) {
        if (s[i] == '"') {
            std::string w;
            for (++i;; ++i) {
                if (i >= s.size()) throw bad("unterminated word");
                if (s[i] == '\\' && i + 1 < s.size()) {
                    w += s[++i];
                } else if (s[i] == '"') {
                    ++i;
                    break;
                } else {
                    w += s[i];
                }
            }
            if (i != s.size()) throw bad("word must be the last component");
            word = std::move(w);
            break;
        }
        std::string label;
        while (i < s.size() && s[i] != '.') {
            if (s[i] == '\\' && i + 1 < s.size()) ++i;
            label += s[i++];
        }
        if (label.empty()) throw bad("empty label");
        labels.push_back(std::move(label));
        if (i < s.size()) {
            ++i;  // separator
            if (i == s.size()) throw bad("trailing separator");
        }
    }
    PathKey key(std::move(labels), std::move(word));
    if (key.str() != s) throw bad("not in canonical form");
    return key;
}

std::uint64_t PathBag::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0},
                           [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

class Enumerator {
public:
    Enumerator(const DocumentTree& tree, const ExtractionParams& p) : tree_(tree), p_(p) {
        escaped_.resize(tree.size());
        for (NodeId id = 0; id < tree.size(); ++id) {
            const Node& n = tree.node(id);
            if (n.kind == NodeKind::Text) continue;
            append_escaped(escaped_[id], n.label);
            if (n.kind == NodeKind::Attribute) escaped_[id] += '@';
        }
    }

    std::map<std::string, std::uint64_t> run() {
        visit(tree_.root());
        return std::move(counts_);
    }

private:
    bool admits(std::size_t len) const { return len >= p_.min_len && (!p_.max_len || len <= *p_.max_len); }

    // Serializes stack[first, last) joined by '.'.
    std::string window(std::size_t first, std::size_t last) const {
        std::string s;
        for (std::size_t i = first; i < last; ++i) {
            if (i != first) s += '.';
            s += escaped_[stack_[i]];
        }
        return s;
    }

    void visit(NodeId id) {
        stack_.push_back(id);
        const std::size_t depth = stack_.size();  // labels on the root path of id
        const bool leaf = tree_.is_leaf(id);

        if (p_.text_mode != TextMode::TextOnly && (!p_.leaf_only || leaf)) {
            for (std::size_t len = 1; len <= depth; ++len) {
                if (!admits(len) || (p_.root_only && len != depth)) continue;
                ++counts_[window(depth - len, depth)];
            }
        }

        for (NodeId c : tree_.node(id).children) {
            const Node& child = tree_.node(c);
            if (child.kind == NodeKind::Text) {
                if (p_.text_mode != TextMode::None) emit_text(child);
            } else if (child.kind == NodeKind::Element || p_.include_attributes) {
                visit(c);
            }
        }
        stack_.pop_back();
    }

    // One path per token occurrence for every window that ends at an
    // ancestor-or-self of the text's parent (words belong to all enclosing
    // nodes), plus the bare word when length 1 is admitted and no anchor is
    // requested.
    void emit_text(const Node& text) {
        for (const std::string& token : text.tokens) {
            std::string quoted;
            append_word(quoted, token);
            if (admits(1) && !p_.root_only && !p_.leaf_only) ++counts_[quoted];
            for (std::size_t end = 1; end <= stack_.size(); ++end) {
                if (p_.leaf_only && !tree_.is_leaf(stack_[end - 1])) continue;
                for (std::size_t nodes = 1; nodes <= end; ++nodes) {
                    if (!admits(nodes + 1) || (p_.root_only && nodes != end)) continue;
                    ++counts_[window(end - nodes, end) + "." + quoted];
                }
            }
        }
    }

    const DocumentTree& tree_;
    const ExtractionParams& p_;
    std::vector<std::string> escaped_;
    std::vector<NodeId> stack_;
    std::map<std::string, std::uint64_t> counts_;
};

}  // namespace

PathBag enumerate_paths(const DocumentTree& tree, const ExtractionParams& params) {
    params.validate();
    PathBag bag;
    bag.doc_id = tree.doc_id();
    for (auto& [serialized, count] : Enumerator(tree, params).run())
        bag.counts.emplace_hint(bag.counts.end(), PathKey::parse(serialized), count);
    return bag;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

std::optional<std::size_t> parse_argument(std::string_view name, std::string_view prefix) {
    if (!name.starts_with(prefix) || !name.ends_with(")")) return std::nullopt;
    const std::string_view digits = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || end != digits.data() + digits.size() || value < 1) throw UnknownPreset(std::string(name));
    return value;
}

}  // namespace

ExtractionParams preset(std::string_view name) {
    ExtractionParams p;
    if (name == "bag-of-words") {
        p.text_mode = TextMode::TextOnly;
    } else if (name == "tag-set") {
        // defaults: (1, 1, node paths only)
    } else if (name == "tag-and-text") {
        p.text_mode = TextMode::TextAndNode;
    } else if (name == "terminal-paths") {
        p.max_len.reset();
        p.root_only = true;
        p.leaf_only = true;
    } else if (name == "structure-vector") {
        p.max_len.reset();
        p.root_only = true;
        p.text_mode = TextMode::TextOnly;
    } else if (auto limit = parse_argument(name, "bounded-subpaths(")) {
        p.max_len = *limit;
    } else if (auto n = parse_argument(name, "leaf-context(")) {
        p.min_len = *n;
        p.max_len = *n;
        p.leaf_only = true;
        p.text_mode = TextMode::TextOnly;
    } else {
        throw UnknownPreset(std::string(name));
    }
    return p;
}

std::vector<std::string> preset_names() {
    return {"bag-of-words",     "tag-set",             "tag-and-text",    "terminal-paths",
            "structure-vector", "bounded-subpaths(L)", "leaf-context(n)"};
}

}  // namespace pathmine
