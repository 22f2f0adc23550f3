#include "pathmine/tokenize.hpp"

#include "pathmine/error.hpp"
#include "pathmine/porter.hpp"

#include <fstream>

namespace pathmine {

std::set<std::string> TokenPipeline::default_stoplist() {
    return {"a",     "about", "above", "after", "again", "against", "all",   "also",  "am",    "an",
            "and",   "any",   "are",   "as",    "at",    "be",      "been",  "before", "being", "below",
            "between", "both", "but",  "by",    "can",   "could",   "did",   "do",    "does",  "doing",
            "down",  "during", "each", "few",   "for",   "from",    "further", "had", "has",   "have",
            "having", "he",   "her",   "here",  "hers",  "him",     "his",   "how",   "however", "i",
            "if",    "in",    "into",  "is",    "it",    "its",     "itself", "just", "may",   "me",
            "more",  "most",  "must",  "my",    "no",    "nor",     "not",   "now",   "of",    "off",
            "on",    "once",  "only",  "or",    "other", "our",     "ours",  "out",   "over",  "own",
            "same",  "she",   "should", "so",   "some",  "such",    "than",  "that",  "the",   "their",
            "theirs", "them", "then",  "there", "these", "they",    "this",  "those", "through", "thus",
            "to",    "too",   "under", "until", "up",    "upon",    "very",  "was",   "we",    "were",
            "what",  "when",  "where", "which", "while", "who",     "whom",  "why",   "will",  "with",
            "within", "without", "would", "you", "your",  "yours"};
}

std::set<std::string> load_stoplist(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open stoplist " + file.string());
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        words.insert(line.substr(first, last - first + 1));
    }
    return words;
}

namespace {

bool word_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view raw, const TokenPipeline& pipeline, TextSource source) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < raw.size()) {
        while (i < raw.size() && !word_char(static_cast<unsigned char>(raw[i]))) ++i;
        const std::size_t start = i;
        while (i < raw.size() && word_char(static_cast<unsigned char>(raw[i]))) ++i;
        if (i == start) break;
        std::string token(raw.substr(start, i - start));
        if (pipeline.lowercase)
            for (char& c : token)
                if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if (pipeline.stoplist.count(token)) continue;
        if (source == TextSource::Content && token.size() < pipeline.min_token_len) continue;
        if (pipeline.stem) token = porter_stem(token);
        out.push_back(std::move(token));
    }
    return out;
}

DocumentTree tokenize_tree(const DocumentTree& tree, const TokenPipeline& pipeline) {
    TreeBuilder b(tree);
    for (NodeId id = 0; id < tree.size(); ++id) {
        const Node& n = tree.node(id);
        if (n.kind != NodeKind::Text) continue;
        const bool attribute = n.parent && tree.node(*n.parent).kind == NodeKind::Attribute;
        b.set_tokens(id, tokenize(n.text, pipeline, attribute ? TextSource::AttributeValue : TextSource::Content));
    }
    return std::move(b).build();
}

}  // namespace pathmine
