#include "pathmine/porter.hpp"

#include <doctest.h>

#include <string>
#include <utility>
#include <vector>

using pathmine::porter_stem;

// Reference outputs of the original algorithm, steps 1a to 5b.
static const std::vector<std::pair<std::string, std::string>> kVectors{
    {"caresses", "caress"}, {"ponies", "poni"}, {"ties", "ti"}, {"caress", "caress"}, {"cats", "cat"},
    {"feed", "feed"}, {"agreed", "agre"}, {"plastered", "plaster"}, {"bled", "bled"}, {"motoring", "motor"},
    {"sing", "sing"}, {"conflated", "conflat"}, {"troubled", "troubl"}, {"sized", "size"}, {"hopping", "hop"},
    {"tanned", "tan"}, {"falling", "fall"}, {"hissing", "hiss"}, {"fizzed", "fizz"}, {"failing", "fail"},
    {"filing", "file"}, {"happy", "happi"}, {"sky", "sky"}, {"relational", "relat"}, {"conditional", "condit"},
    {"rational", "ration"}, {"valenci", "valenc"}, {"hesitanci", "hesit"}, {"digitizer", "digit"},
    {"conformabli", "conform"}, {"radicalli", "radic"}, {"differentli", "differ"}, {"vileli", "vile"},
    {"analogousli", "analog"}, {"vietnamization", "vietnam"}, {"predication", "predic"}, {"operator", "oper"},
    {"feudalism", "feudal"}, {"decisiveness", "decis"}, {"hopefulness", "hope"}, {"callousness", "callous"},
    {"formaliti", "formal"}, {"sensitiviti", "sensit"}, {"sensibiliti", "sensibl"}, {"triplicate", "triplic"},
    {"formative", "form"}, {"formalize", "formal"}, {"electriciti", "electr"}, {"electrical", "electr"},
    {"hopeful", "hope"}, {"goodness", "good"}, {"revival", "reviv"}, {"allowance", "allow"},
    {"inference", "infer"}, {"airliner", "airlin"}, {"gyroscopic", "gyroscop"}, {"adjustable", "adjust"},
    {"defensible", "defens"}, {"irritant", "irrit"}, {"replacement", "replac"}, {"adjustment", "adjust"},
    {"dependent", "depend"}, {"adoption", "adopt"}, {"homologou", "homolog"}, {"communism", "commun"},
    {"activate", "activ"}, {"angulariti", "angular"}, {"homologous", "homolog"}, {"effective", "effect"},
    {"bowdlerize", "bowdler"}, {"probate", "probat"}, {"rate", "rate"}, {"cease", "ceas"},
    {"controll", "control"}, {"roll", "roll"}, {"historians", "historian"}, {"offered", "offer"},
    {"generalizations", "gener"}, {"oscillators", "oscil"}, {"abling", "abl"}, {"logical", "logic"},
    {"archaeology", "archaeologi"}, {"werner", "werner"}, {"kiessling", "kiessl"}, {"offers", "offer"},
    {"historian", "historian"}, {"knowledge", "knowledg"}, {"sensibility", "sensibl"},
};

TEST_CASE("reference vocabulary") {
    for (const auto& [word, stem] : kVectors) {
        CAPTURE(word);
        CHECK(porter_stem(word) == stem);
    }
}

TEST_CASE("short words are untouched") {
    CHECK(porter_stem("") == "");
    CHECK(porter_stem("a") == "a");
    CHECK(porter_stem("is") == "is");
    CHECK(porter_stem("01") == "01");
}

TEST_CASE("stemming is idempotent on its own output for plain suffixes") {
    for (const std::string w : {"cat", "motor", "hope", "offer", "historian"}) CHECK(porter_stem(porter_stem(w)) == porter_stem(w));
}
