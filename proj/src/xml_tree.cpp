#include "pathmine/xml_tree.hpp"

#include "pathmine/error.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace pathmine {

MalformedXml::MalformedXml(SourcePosition where, std::string reason)
    : Error("malformed XML at line " + std::to_string(where.line) + ", column " +
            std::to_string(where.column) + ": " + reason),
      where_(where), reason_(std::move(reason)) {}

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size() && i < 10; ++i) {
        if (i) out += ", ";
        out += ids[i];
    }
    if (ids.size() > 10) out += ", ...";
    return out;
}

}  // namespace

LabelMismatch::LabelMismatch(std::vector<std::string> ids)
    : Error("assignments and labels cover different documents: " + join_ids(ids)),
      ids_(std::move(ids)) {}

bool DocumentTree::is_leaf(NodeId id) const {
    for (NodeId c : node(id).children) {
        if (nodes_[c].kind != NodeKind::Text) return false;
    }
    return true;
}

std::size_t DocumentTree::count(NodeKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [&](const Node& n) { return n.kind == kind; }));
}

// ---------------------------------------------------------------------------
// TreeBuilder

TreeBuilder::TreeBuilder(std::string doc_id) { tree_.doc_id_ = std::move(doc_id); }

TreeBuilder::TreeBuilder(DocumentTree tree) : tree_(std::move(tree)) {}

NodeId TreeBuilder::add_root(std::string label) {
    if (!tree_.nodes_.empty()) throw std::logic_error("tree already has a root");
    Node n;
    n.kind = NodeKind::Element;
    n.label = std::move(label);
    tree_.nodes_.push_back(std::move(n));
    return 0;
}

NodeId TreeBuilder::append(NodeId parent, Node node) {
    if (parent >= tree_.nodes_.size()) throw std::out_of_range("parent node does not exist");
    const Node& p = tree_.nodes_[parent];
    if (p.kind == NodeKind::Text) throw std::logic_error("text nodes cannot have children");
    if (p.kind == NodeKind::Attribute && node.kind != NodeKind::Text)
        throw std::logic_error("attribute nodes can only hold text");
    const auto id = static_cast<NodeId>(tree_.nodes_.size());
    node.parent = parent;
    tree_.nodes_.push_back(std::move(node));
    tree_.nodes_[parent].children.push_back(id);
    return id;
}

NodeId TreeBuilder::add_element(NodeId parent, std::string label) {
    Node n;
    n.kind = NodeKind::Element;
    n.label = std::move(label);
    return append(parent, std::move(n));
}

NodeId TreeBuilder::add_attribute(NodeId parent, std::string name, std::string_view value) {
    Node n;
    n.kind = NodeKind::Attribute;
    n.label = std::move(name);
    const NodeId id = append(parent, std::move(n));
    const bool blank = std::all_of(value.begin(), value.end(), [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r';
    });
    if (!blank) add_text(id, std::string(value));
    return id;
}

NodeId TreeBuilder::add_text(NodeId parent, std::string text) {
    Node n;
    n.kind = NodeKind::Text;
    n.text = std::move(text);
    return append(parent, std::move(n));
}

void TreeBuilder::set_tokens(NodeId text_node, std::vector<std::string> tokens) {
    Node& n = tree_.nodes_.at(text_node);
    if (n.kind != NodeKind::Text) throw std::logic_error("tokens belong to text nodes");
    n.tokens = std::move(tokens);
}

DocumentTree TreeBuilder::build() && {
    if (tree_.nodes_.empty()) throw EmptyDocument();
    return std::move(tree_);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool blank(std::string_view s) { return std::all_of(s.begin(), s.end(), is_space); }

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view local_name(std::string_view qname) {
    const auto colon = qname.rfind(':');
    return colon == std::string_view::npos ? qname : qname.substr(colon + 1);
}

// Returns the offset of the first byte that breaks UTF-8, or npos.
std::size_t find_invalid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t len;
        std::uint32_t cp;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return i;
        }
        if (i + len > s.size()) return i;
        for (std::size_t k = 1; k < len; ++k) {
            const auto cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) return i;
            cp = (cp << 6) | (cc & 0x3F);
        }
        const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
        if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return i;
        i += len;
    }
    return std::string_view::npos;
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

class Parser {
public:
    Parser(std::string_view in, std::string doc_id) : in_(in), builder_(std::move(doc_id)) {}

    DocumentTree run() {
        check_encoding();
        skip_misc(/*allow_decl=*/true);
        if (at_end()) throw EmptyDocument();
        if (peek() != '<' || !is_name_start(peek(1))) fail("expected the root element");
        parse_element_tree();
        skip_misc(/*allow_decl=*/false);
        if (!at_end()) fail("content after the root element");
        return std::move(builder_).build();
    }

private:
    [[noreturn]] void fail(const std::string& reason) const { fail_at(pos_, reason); }

    [[noreturn]] void fail_at(std::size_t offset, const std::string& reason) const {
        SourcePosition where;
        where.offset = offset;
        for (std::size_t i = 0; i < offset && i < in_.size(); ++i) {
            if (in_[i] == '\n') {
                ++where.line;
                where.column = 1;
            } else {
                ++where.column;
            }
        }
        throw MalformedXml(where, reason);
    }

    bool at_end() const { return pos_ >= in_.size(); }
    unsigned char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < in_.size() ? static_cast<unsigned char>(in_[pos_ + ahead]) : 0;
    }
    bool starts_with(std::string_view s) const { return in_.substr(pos_).starts_with(s); }
    void skip_space() {
        while (!at_end() && is_space(in_[pos_])) ++pos_;
    }
    void expect(char c, const char* what) {
        if (peek() != static_cast<unsigned char>(c)) fail(std::string("expected ") + what);
        ++pos_;
    }

    void check_encoding() {
        if (in_.starts_with("\xEF\xBB\xBF")) {
            pos_ = 3;
        } else if (in_.starts_with("\xFE\xFF") || in_.starts_with("\xFF\xFE") ||
                   (in_.size() >= 2 && (in_[0] == '\0' || in_[1] == '\0'))) {
            fail_at(0, "unsupported encoding (only UTF-8 is accepted)");
        }
        if (const auto bad = find_invalid_utf8(in_); bad != std::string_view::npos)
            fail_at(bad, "invalid UTF-8 byte sequence");
    }

    // Skips whitespace, comments, processing instructions, the XML
    // declaration and a DOCTYPE.
    void skip_misc(bool allow_decl) {
        bool first = true;
        for (;;) {
            if (!(allow_decl && first && starts_with("<?xml") && is_space(static_cast<char>(peek(5))))) skip_space();
            if (at_end()) return;
            if (starts_with("<?xml") && (is_space(static_cast<char>(peek(5))) || peek(5) == '?')) {
                if (!(allow_decl && first)) fail("XML declaration not at start of document");
                parse_declaration();
            } else if (starts_with("<!--")) {
                skip_comment();
            } else if (starts_with("<?")) {
                skip_pi();
            } else if (starts_with("<!DOCTYPE")) {
                if (!allow_decl) fail("DOCTYPE after the root element");
                skip_doctype();
            } else {
                return;
            }
            first = false;
        }
    }

    void parse_declaration() {
        const std::size_t start = pos_;
        const auto end = in_.find("?>", pos_);
        if (end == std::string_view::npos) fail("unterminated XML declaration");
        const std::string_view decl = in_.substr(start, end - start);
        pos_ = end + 2;
        const auto enc = decl.find("encoding");
        if (enc == std::string_view::npos) return;
        auto q = decl.find_first_of("\"'", enc);
        if (q == std::string_view::npos) fail_at(start + enc, "malformed encoding declaration");
        const auto close = decl.find(decl[q], q + 1);
        if (close == std::string_view::npos) fail_at(start + enc, "malformed encoding declaration");
        const std::string name = lower(decl.substr(q + 1, close - q - 1));
        if (name != "utf-8" && name != "utf8" && name != "us-ascii" && name != "ascii")
            fail_at(start + enc, "unsupported encoding '" + name + "' (only UTF-8 is accepted)");
    }

    void skip_comment() {
        const auto end = in_.find("-->", pos_ + 4);
        if (end == std::string_view::npos) fail("unterminated comment");
        pos_ = end + 3;
    }

    void skip_pi() {
        const auto end = in_.find("?>", pos_ + 2);
        if (end == std::string_view::npos) fail("unterminated processing instruction");
        pos_ = end + 2;
    }

    void skip_doctype() {
        const std::size_t start = pos_;
        pos_ += 9;
        int depth = 0;
        char quote = 0;
        while (!at_end()) {
            const char c = in_[pos_++];
            if (quote) {
                if (c == quote) quote = 0;
            } else if (c == '"' || c == '\'') {
                quote = c;
            } else if (c == '[') {
                ++depth;
            } else if (c == ']') {
                --depth;
            } else if (c == '>' && depth <= 0) {
                return;
            }
        }
        fail_at(start, "unterminated DOCTYPE");
    }

    std::string_view parse_name() {
        const std::size_t start = pos_;
        if (!is_name_start(peek())) fail("expected a name");
        while (!at_end() && is_name_char(peek())) ++pos_;
        return in_.substr(start, pos_ - start);
    }

    // Decodes one reference starting at '&' and appends it to out.
    void parse_reference(std::string& out) {
        const std::size_t start = pos_;
        const auto semi = in_.find(';', pos_);
        if (semi == std::string_view::npos || semi - pos_ > 32) fail("unterminated entity reference");
        const std::string_view ref = in_.substr(pos_ + 1, semi - pos_ - 1);
        pos_ = semi + 1;
        if (ref == "lt") out += '<';
        else if (ref == "gt") out += '>';
        else if (ref == "amp") out += '&';
        else if (ref == "apos") out += '\'';
        else if (ref == "quot") out += '"';
        else if (ref.starts_with("#")) {
            const bool hex = ref.size() > 1 && (ref[1] == 'x');
            const std::string_view digits = ref.substr(hex ? 2 : 1);
            if (digits.empty()) fail_at(start, "empty character reference");
            std::uint32_t cp = 0;
            for (char c : digits) {
                int v;
                if (c >= '0' && c <= '9') v = c - '0';
                else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
                else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
                else fail_at(start, "bad character reference");
                cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
                if (cp > 0x10FFFF) fail_at(start, "character reference out of range");
            }
            if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) fail_at(start, "character reference out of range");
            append_utf8(out, cp);
        } else {
            fail_at(start, "unknown entity '&" + std::string(ref) + ";'");
        }
    }

    void append_text_char(std::string& out, char c) {
        // End-of-line normalization: CRLF and lone CR become LF.
        if (c == '\r') {
            if (peek() == '\n') ++pos_;
            out += '\n';
        } else {
            out += c;
        }
    }

    struct Attr {
        std::string_view qname;
        std::string value;
    };

    std::vector<Attr> parse_attributes() {
        std::vector<Attr> attrs;
        for (;;) {
            const bool had_space = !at_end() && is_space(in_[pos_]);
            skip_space();
            if (peek() == '>' || peek() == '/') return attrs;
            if (!had_space) fail("expected whitespace before attribute");
            const std::size_t name_at = pos_;
            Attr a;
            a.qname = parse_name();
            for (const Attr& other : attrs)
                if (other.qname == a.qname) fail_at(name_at, "duplicate attribute '" + std::string(a.qname) + "'");
            skip_space();
            expect('=', "'=' after attribute name");
            skip_space();
            const char quote = static_cast<char>(peek());
            if (quote != '"' && quote != '\'') fail("expected a quoted attribute value");
            ++pos_;
            for (;;) {
                if (at_end()) fail_at(name_at, "unterminated attribute value");
                const char c = in_[pos_];
                if (c == quote) {
                    ++pos_;
                    break;
                }
                if (c == '<') fail("'<' in attribute value");
                if (c == '&') {
                    parse_reference(a.value);
                } else {
                    ++pos_;
                    if (c == '\r' && peek() == '\n') ++pos_;
                    a.value += is_space(c) ? ' ' : c;
                }
            }
            attrs.push_back(std::move(a));
        }
    }

    // Opens an element at '<'; returns true when it was self-closing.
    bool open_element(std::vector<std::pair<NodeId, std::string_view>>& stack) {
        ++pos_;
        const std::string_view qname = parse_name();
        std::vector<Attr> attrs = parse_attributes();
        const std::string label(local_name(qname));
        const NodeId id = stack.empty() ? builder_.add_root(label) : builder_.add_element(stack.back().first, label);
        for (Attr& a : attrs) {
            if (a.qname == "xmlns" || a.qname.starts_with("xmlns:")) continue;
            builder_.add_attribute(id, std::string(local_name(a.qname)), a.value);
        }
        if (peek() == '/') {
            ++pos_;
            expect('>', "'>' closing empty element");
            return true;
        }
        expect('>', "'>' closing start tag");
        stack.emplace_back(id, qname);
        return false;
    }

    void flush_text(std::string& text, NodeId parent) {
        if (!text.empty() && !blank(text)) builder_.add_text(parent, std::move(text));
        text.clear();
    }

    void parse_element_tree() {
        std::vector<std::pair<NodeId, std::string_view>> stack;
        if (open_element(stack)) return;
        std::string text;
        while (!stack.empty()) {
            if (at_end()) fail("unexpected end of input inside <" + std::string(stack.back().second) + ">");
            const char c = in_[pos_];
            if (c == '<') {
                if (starts_with("</")) {
                    const std::size_t at = pos_;
                    pos_ += 2;
                    const std::string_view name = parse_name();
                    skip_space();
                    expect('>', "'>' closing end tag");
                    if (name != stack.back().second)
                        fail_at(at, "mismatched end tag </" + std::string(name) + ">, expected </" +
                                        std::string(stack.back().second) + ">");
                    flush_text(text, stack.back().first);
                    stack.pop_back();
                } else if (starts_with("<!--")) {
                    skip_comment();
                } else if (starts_with("<![CDATA[")) {
                    const auto end = in_.find("]]>", pos_ + 9);
                    if (end == std::string_view::npos) fail("unterminated CDATA section");
                    for (pos_ += 9; pos_ < end;) append_text_char(text, in_[pos_++]);
                    pos_ = end + 3;
                } else if (starts_with("<?")) {
                    skip_pi();
                } else if (starts_with("<!")) {
                    fail("unexpected markup declaration in content");
                } else {
                    flush_text(text, stack.back().first);
                    open_element(stack);
                }
            } else if (c == '&') {
                parse_reference(text);
            } else {
                ++pos_;
                append_text_char(text, c);
            }
        }
    }

    std::string_view in_;
    std::size_t pos_ = 0;
    TreeBuilder builder_;
};

}  // namespace

DocumentTree parse_document(std::string_view bytes, std::string doc_id) {
    return Parser(bytes, std::move(doc_id)).run();
}

DocumentTree parse_file(const std::filesystem::path& file, std::string doc_id) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw CorpusError("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str(), std::move(doc_id));
}

// ---------------------------------------------------------------------------
// TagMap

TagMap::TagMap(std::map<std::string, std::string> rename, std::set<std::string> drop)
    : rename_(std::move(rename)), drop_(std::move(drop)) {
    for (const auto& [from, to] : rename_) {
        if (from != to && rename_.count(to))
            throw InvalidTagMap("rename chain: " + from + " -> " + to + " -> " + rename_.at(to));
    }
}

TagMap TagMap::parse(std::string_view text) {
    std::map<std::string, std::string> rename;
    std::set<std::string> drop;
    std::istringstream lines{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string verb, a, b, extra;
        if (!(words >> verb)) continue;
        const auto where = " on tag map line " + std::to_string(lineno);
        if (verb == "rename") {
            if (!(words >> a >> b) || (words >> extra)) throw InvalidTagMap("expected 'rename old new'" + where);
            if (auto [it, fresh] = rename.emplace(a, b); !fresh && it->second != b)
                throw InvalidTagMap("conflicting renames for '" + a + "'" + where);
        } else if (verb == "drop") {
            if (!(words >> a) || (words >> extra)) throw InvalidTagMap("expected 'drop tag'" + where);
            drop.insert(a);
        } else {
            throw InvalidTagMap("unknown directive '" + verb + "'" + where);
        }
    }
    return TagMap(std::move(rename), std::move(drop));
}

TagMap TagMap::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open tag map " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

DocumentTree apply_tag_map(const DocumentTree& tree, const TagMap& map) {
    const Node& root = tree.node(tree.root());
    if (map.drop().count(root.label)) throw RootDropRequested(root.label);
    if (map.empty()) return tree;

    auto renamed = [&](const std::string& label) -> std::string {
        const auto it = map.rename().find(label);
        return it == map.rename().end() ? label : it->second;
    };

    TreeBuilder out(tree.doc_id());
    auto copy_text = [&](NodeId parent, const Node& src) {
        const NodeId t = out.add_text(parent, src.text);
        out.set_tokens(t, src.tokens);
    };

    // A dropped element is spliced: its element and text content move to the
    // parent, its attributes are discarded.
    std::function<void(NodeId, NodeId, bool)> walk = [&](NodeId src, NodeId dst, bool splicing) {
        for (NodeId c : tree.node(src).children) {
            const Node& n = tree.node(c);
            if (n.kind == NodeKind::Attribute) {
                if (splicing) continue;
                const NodeId a = out.add_attribute(dst, n.label, {});
                for (NodeId t : n.children) copy_text(a, tree.node(t));
            } else if (n.kind == NodeKind::Text) {
                copy_text(dst, n);
            } else if (map.drop().count(n.label)) {
                walk(c, dst, true);
            } else {
                walk(c, out.add_element(dst, renamed(n.label)), false);
            }
        }
    };

    walk(tree.root(), out.add_root(renamed(root.label)), false);
    return std::move(out).build();
}

bool same_structure(const DocumentTree& a, const DocumentTree& b) {
    std::function<bool(NodeId, NodeId)> eq = [&](NodeId x, NodeId y) {
        const Node& n = a.node(x);
        const Node& m = b.node(y);
        if (n.kind != m.kind || n.label != m.label || n.text != m.text || n.tokens != m.tokens ||
            n.children.size() != m.children.size())
            return false;
        for (std::size_t i = 0; i < n.children.size(); ++i)
            if (!eq(n.children[i], m.children[i])) return false;
        return true;
    };
    return a.size() == b.size() && eq(a.root(), b.root());
}

namespace {

void escape_into(std::string& out, std::string_view s, bool attribute) {
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += attribute ? "&quot;" : "\""; break;
        case '\r': out += "&#13;"; break;
        case '\t': out += attribute ? "&#9;" : "\t"; break;
        case '\n': out += attribute ? "&#10;" : "\n"; break;
        default: out += c;
        }
    }
}

void write_xml(const DocumentTree& tree, NodeId id, std::string& out, bool skeleton) {
    const Node& n = tree.node(id);
    out += '<';
    out += n.label;
    bool has_content = false;
    for (NodeId c : n.children) {
        const Node& ch = tree.node(c);
        if (ch.kind == NodeKind::Attribute) {
            if (skeleton) continue;
            out += ' ';
            out += ch.label;
            out += "=\"";
            for (NodeId t : ch.children) escape_into(out, tree.node(t).text, true);
            out += '"';
        } else if (ch.kind == NodeKind::Element || !skeleton) {
            has_content = true;
        }
    }
    if (!has_content) {
        out += "/>";
        return;
    }
    out += '>';
    for (NodeId c : n.children) {
        const Node& ch = tree.node(c);
        if (ch.kind == NodeKind::Element) write_xml(tree, c, out, skeleton);
        else if (ch.kind == NodeKind::Text && !skeleton) escape_into(out, ch.text, false);
    }
    out += "</";
    out += n.label;
    out += '>';
}

}  // namespace

std::string to_xml(const DocumentTree& tree) {
    std::string out;
    write_xml(tree, tree.root(), out, false);
    return out;
}

std::string element_skeleton(const DocumentTree& tree) {
    std::string out;
    write_xml(tree, tree.root(), out, true);
    return out;
}

}  // namespace pathmine
