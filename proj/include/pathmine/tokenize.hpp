#pragma once

#include "pathmine/xml_tree.hpp"

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pathmine {

struct TokenPipeline {
    std::set<std::string> stoplist = default_stoplist();
    std::size_t min_token_len = 4;
    bool stem = true;
    bool lowercase = true;

    /// A short English function-word list.
    static std::set<std::string> default_stoplist();
};

/// One lowercase word per line; blank lines and `#` comments are ignored.
std::set<std::string> load_stoplist(const std::filesystem::path& file);

enum class TextSource { Content, AttributeValue };

/// Splits on every ASCII character that is not a letter or digit (bytes of
/// multi-byte UTF-8 sequences count as word characters), then lowercases,
/// drops stop words, drops short tokens and stems. Attribute values are
/// exempt from the length filter.
std::vector<std::string> tokenize(std::string_view raw, const TokenPipeline& pipeline,
                                  TextSource source = TextSource::Content);

/// Copy of `tree` with the token list of every Text node filled in.
DocumentTree tokenize_tree(const DocumentTree& tree, const TokenPipeline& pipeline);

}  // namespace pathmine
