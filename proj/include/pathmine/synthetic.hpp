#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pathmine {

/// Generated corpus where each schema uses its own tag vocabulary
/// (s<schema>_doc, s<schema>_sec<i>, ...) and all schemas draw text from a
/// shared pseudo-word pool.
struct SyntheticSpec {
    std::size_t schemas = 2;
    std::size_t docs = 200;  // assigned to schemas round-robin
    std::uint64_t seed = 0;
    bool text_heavy = false;  // deeper, irregular nesting and longer text runs
};

struct SyntheticDoc {
    std::string id;  // file name
    std::string label;
    std::string xml;
};

std::vector<SyntheticDoc> generate_corpus(const SyntheticSpec& spec);

/// Writes every document under `dir` plus `labels.tsv` (id<TAB>label).
void write_corpus(const std::filesystem::path& dir, const std::vector<SyntheticDoc>& docs);

/// Deterministic pseudo-word for a pool index; at least four letters.
std::string pseudo_word(std::size_t index);

}  // namespace pathmine
