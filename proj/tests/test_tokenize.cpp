#include "pathmine/tokenize.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace pathmine;

using Tokens = std::vector<std::string>;

TEST_CASE("default pipeline") {
    const TokenPipeline p;
    CHECK(tokenize("The historians offered", p) == Tokens{"historian", "offer"});
    CHECK(tokenize("", p).empty());
    CHECK(tokenize("  ,;  ", p).empty());
    CHECK(tokenize("cat ox, it", p).empty());
}

TEST_CASE("splitting and case") {
    TokenPipeline p;
    p.stem = false;
    p.min_token_len = 1;
    p.stoplist.clear();
    CHECK(tokenize("Alpha-beta_gamma,DELTA 42x", p) == Tokens{"alpha", "beta", "gamma", "delta", "42x"});
    CHECK(tokenize("caf\xC3\xA9 na\xC3\xAFve", p) == Tokens{"caf\xC3\xA9", "na\xC3\xAFve"});
    p.lowercase = false;
    CHECK(tokenize("Alpha", p) == Tokens{"Alpha"});
}

TEST_CASE("filters apply before stemming") {
    TokenPipeline p;
    p.stoplist = {"offered"};
    CHECK(tokenize("offered offers", p) == Tokens{"offer"});
    p.min_token_len = 7;
    CHECK(tokenize("offers offering", p) == Tokens{"offer"});
}

TEST_CASE("attribute values skip the length filter") {
    const TokenPipeline p;
    CHECK(tokenize("01", p, TextSource::AttributeValue) == Tokens{"01"});
    CHECK(tokenize("01", p, TextSource::Content).empty());
    CHECK(tokenize("the 01", p, TextSource::AttributeValue) == Tokens{"01"});
}

TEST_CASE("default stoplist is lowercase") {
    for (const std::string& w : TokenPipeline::default_stoplist())
        for (char c : w) CHECK_FALSE((c >= 'A' && c <= 'Z'));
    CHECK(TokenPipeline::default_stoplist().count("the") == 1);
}

TEST_CASE("stoplist file") {
    const auto path = std::filesystem::temp_directory_path() / "pathmine_stoplist.txt";
    std::ofstream(path) << "# words\nalpha\n\n  beta  \n";
    CHECK(load_stoplist(path) == std::set<std::string>{"alpha", "beta"});
    std::filesystem::remove(path);
}

TEST_CASE("tokenize_tree fills every text node") {
    const DocumentTree t = tokenize_tree(parse_document(R"(<a id="01"><b>Historians offered</b></a>)", "d"), TokenPipeline{});
    std::vector<Tokens> seen;
    for (const Node& n : t.nodes())
        if (n.kind == NodeKind::Text) seen.push_back(n.tokens);
    CHECK(seen == std::vector<Tokens>{{"01"}, {"historian", "offer"}});
}
