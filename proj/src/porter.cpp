#include "pathmine/porter.hpp"

#include <array>
#include <utility>

namespace pathmine {

namespace {

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

class Stem {
public:
    explicit Stem(std::string_view w) : w_(w) {}

    std::string take() && { return std::move(w_); }

    void step1a() {
        if (ends("sses")) chop(2);
        else if (ends("ies")) chop(2);
        else if (ends("ss")) {}
        else if (ends("s")) chop(1);
    }

    void step1b() {
        if (ends("eed")) {
            if (measure(w_.size() - 3) > 0) chop(1);
            return;
        }
        bool stripped = false;
        if (ends("ed") && has_vowel(w_.size() - 2)) {
            chop(2);
            stripped = true;
        } else if (ends("ing") && has_vowel(w_.size() - 3)) {
            chop(3);
            stripped = true;
        }
        if (!stripped) return;
        if (ends("at") || ends("bl") || ends("iz")) {
            w_ += 'e';
        } else if (double_consonant(w_.size())) {
            const char last = w_.back();
            if (last != 'l' && last != 's' && last != 'z') chop(1);
        } else if (measure(w_.size()) == 1 && cvc(w_.size())) {
            w_ += 'e';
        }
    }

    void step1c() {
        if (ends("y") && has_vowel(w_.size() - 1)) w_.back() = 'i';
    }

    void step2() {
        static constexpr std::array<Rule, 20> rules{{
            {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
            {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
            {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
            {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
            {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
        }};
        replace_longest(rules, 0);
    }

    void step3() {
        static constexpr std::array<Rule, 7> rules{{
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
            {"ical", "ic"},  {"ful", ""},   {"ness", ""},
        }};
        replace_longest(rules, 0);
    }

    void step4() {
        static constexpr std::array<std::string_view, 19> suffixes{
            "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
            "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize"};
        std::string_view best;
        for (std::string_view s : suffixes)
            if (s.size() > best.size() && ends(s)) best = s;
        if (best.empty()) return;
        const std::size_t stem = w_.size() - best.size();
        if (best == "ion" && (stem == 0 || (w_[stem - 1] != 's' && w_[stem - 1] != 't'))) return;
        if (measure(stem) > 1) w_.resize(stem);
    }

    void step5a() {
        if (!ends("e")) return;
        const std::size_t stem = w_.size() - 1;
        const std::size_t m = measure(stem);
        if (m > 1 || (m == 1 && !cvc(stem))) chop(1);
    }

    void step5b() {
        if (measure(w_.size()) > 1 && double_consonant(w_.size()) && w_.back() == 'l') chop(1);
    }

private:
    bool ends(std::string_view s) const { return std::string_view(w_).ends_with(s); }
    void chop(std::size_t n) { w_.resize(w_.size() - n); }

    bool consonant(std::size_t i) const {
        switch (w_[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u': return false;
        case 'y': return i == 0 || !consonant(i - 1);
        default: return true;
        }
    }

    // m in [C](VC)^m[V] over the prefix w[0, len).
    std::size_t measure(std::size_t len) const {
        std::size_t m = 0;
        std::size_t i = 0;
        while (i < len && consonant(i)) ++i;
        while (i < len) {
            while (i < len && !consonant(i)) ++i;
            if (i == len) break;
            while (i < len && consonant(i)) ++i;
            ++m;
        }
        return m;
    }

    bool has_vowel(std::size_t len) const {
        for (std::size_t i = 0; i < len; ++i)
            if (!consonant(i)) return true;
        return false;
    }

    bool double_consonant(std::size_t len) const {
        return len >= 2 && w_[len - 1] == w_[len - 2] && consonant(len - 1);
    }

    // *o: the prefix ends consonant-vowel-consonant, last not w, x or y.
    bool cvc(std::size_t len) const {
        if (len < 3 || !consonant(len - 1) || consonant(len - 2) || !consonant(len - 3)) return false;
        const char c = w_[len - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    template <std::size_t N>
    void replace_longest(const std::array<Rule, N>& rules, std::size_t min_measure) {
        const Rule* best = nullptr;
        for (const Rule& r : rules)
            if (ends(r.suffix) && (!best || r.suffix.size() > best->suffix.size())) best = &r;
        if (!best) return;
        const std::size_t stem = w_.size() - best->suffix.size();
        if (measure(stem) > min_measure) {
            w_.resize(stem);
            w_ += best->replacement;
        }
    }

    std::string w_;
};

}  // namespace

std::string porter_stem(std::string_view word) {
    if (word.size() <= 2) return std::string(word);
    Stem s(word);
    s.step1a();
    s.step1b();
    s.step1c();
    s.step2();
    s.step3();
    s.step4();
    s.step5a();
    s.step5b();
    return std::move(s).take();
}

}  // namespace pathmine
