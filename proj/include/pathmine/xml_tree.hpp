#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pathmine {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { Element, Attribute, Text };

/// One node of a parsed document. Attribute labels are stored without the
/// `@` marker; it is added when a path is serialized.
struct Node {
    NodeKind kind = NodeKind::Element;
    std::string label;               // empty for Text nodes
    std::optional<NodeId> parent;    // empty only for the root
    std::vector<NodeId> children;    // document order
    std::string text;                // raw character data, Text nodes only
    std::vector<std::string> tokens; // filled by the token pipeline, Text nodes only
};

class TreeBuilder;

/// Parsed XML as a labeled ordered tree held in an arena. Instances are
/// immutable once built; use TreeBuilder to derive modified copies.
class DocumentTree {
public:
    const std::string& doc_id() const noexcept { return doc_id_; }
    NodeId root() const noexcept { return 0; }
    const Node& node(NodeId id) const { return nodes_.at(id); }
    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    /// True when the node has no Element or Attribute children.
    bool is_leaf(NodeId id) const;

    std::size_t count(NodeKind kind) const;

private:
    friend class TreeBuilder;
    std::string doc_id_;
    std::vector<Node> nodes_;
};

/// Appends nodes in document order. The first element added becomes the root.
class TreeBuilder {
public:
    explicit TreeBuilder(std::string doc_id);
    explicit TreeBuilder(DocumentTree tree);

    NodeId add_root(std::string label);
    NodeId add_element(NodeId parent, std::string label);
    /// Adds an Attribute node; a non-blank value becomes its Text child.
    NodeId add_attribute(NodeId parent, std::string name, std::string_view value);
    NodeId add_text(NodeId parent, std::string text);
    void set_tokens(NodeId text_node, std::vector<std::string> tokens);

    bool empty() const noexcept { return tree_.nodes_.empty(); }
    const DocumentTree& peek() const noexcept { return tree_; }
    DocumentTree build() &&;

private:
    NodeId append(NodeId parent, Node node);
    DocumentTree tree_;
};

/// Parses UTF-8 XML into a DocumentTree. Throws MalformedXml or EmptyDocument.
DocumentTree parse_document(std::string_view bytes, std::string doc_id);

DocumentTree parse_file(const std::filesystem::path& file, std::string doc_id);

/// Structure-level regrouping: renames and presentation-tag removal.
class TagMap {
public:
    TagMap() = default;

    /// Throws InvalidTagMap when a rename target is itself renamed (a chain).
    TagMap(std::map<std::string, std::string> rename, std::set<std::string> drop);

    /// Parses `rename old new` / `drop tag` lines; `#` starts a comment.
    static TagMap parse(std::string_view text);
    static TagMap load(const std::filesystem::path& file);

    const std::map<std::string, std::string>& rename() const noexcept { return rename_; }
    const std::set<std::string>& drop() const noexcept { return drop_; }
    bool empty() const noexcept { return rename_.empty() && drop_.empty(); }

private:
    std::map<std::string, std::string> rename_;
    std::set<std::string> drop_;
};

/// Renames element labels and splices dropped elements' content into their
/// parents. A dropped element's attributes go with it. Drops match the
/// original label. Throws RootDropRequested.
DocumentTree apply_tag_map(const DocumentTree& tree, const TagMap& map);

/// Ordered structural equality (kinds, labels, text, tokens), independent of
/// arena layout.
bool same_structure(const DocumentTree& a, const DocumentTree& b);

/// Serializes elements, attributes and text back to XML.
std::string to_xml(const DocumentTree& tree);

/// Serializes only the element skeleton, e.g. `<a><b/><c/></a>`.
std::string element_skeleton(const DocumentTree& tree);

}  // namespace pathmine
