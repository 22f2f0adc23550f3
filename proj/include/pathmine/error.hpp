#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathmine {

// Root of every error the library throws. Subclasses carry the structured
// payload; what() always holds a human-readable message.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SourcePosition {
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
};

class MalformedXml : public Error {
public:
    MalformedXml(SourcePosition where, std::string reason);
    const SourcePosition& position() const noexcept { return where_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    SourcePosition where_;
    std::string reason_;
};

class EmptyDocument : public Error {
public:
    EmptyDocument() : Error("document has no root element") {}
};

class RootDropRequested : public Error {
public:
    explicit RootDropRequested(const std::string& label)
        : Error("tag map drops the root element '" + label + "'") {}
};

class InvalidTagMap : public Error {
public:
    using Error::Error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

class UnknownPreset : public Error {
public:
    explicit UnknownPreset(const std::string& name) : Error("unknown preset '" + name + "'") {}
};

class EmptyVocabulary : public Error {
public:
    EmptyVocabulary() : Error("pruning removed every path; vocabulary is empty") {}
};

class DegenerateCorpus : public Error {
public:
    explicit DegenerateCorpus(std::size_t docs)
        : Error("corpus needs at least 2 documents, got " + std::to_string(docs)) {}
};

class VocabularyTooLarge : public Error {
public:
    VocabularyTooLarge(std::size_t distinct, std::size_t cap)
        : Error("vocabulary of " + std::to_string(distinct) + " distinct paths exceeds cap of " +
                std::to_string(cap)),
          distinct_(distinct), cap_(cap) {}
    std::size_t distinct() const noexcept { return distinct_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t distinct_;
    std::size_t cap_;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t a, std::size_t b)
        : Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class EmptyCluster : public Error {
public:
    EmptyCluster() : Error("cannot compute the prototype of an empty cluster") {}
};

class KTooLarge : public Error {
public:
    KTooLarge(std::size_t k, std::size_t docs)
        : Error("k = " + std::to_string(k) + " exceeds document count " + std::to_string(docs)) {}
};

class LabelMismatch : public Error {
public:
    explicit LabelMismatch(std::vector<std::string> ids);
    const std::vector<std::string>& doc_ids() const noexcept { return ids_; }

private:
    std::vector<std::string> ids_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class CorpusError : public Error {
public:
    using Error::Error;
};

}  // namespace pathmine
