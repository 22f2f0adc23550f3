#include "pathmine/synthetic.hpp"

#include "pathmine/error.hpp"

#include <cstdio>
#include <fstream>
#include <random>

namespace pathmine {

namespace {

constexpr std::size_t kWordPool = 400;

class Writer {
public:
    Writer(std::size_t schema, std::mt19937_64& rng, bool text_heavy)
        : prefix_("s" + std::to_string(schema) + "_"), rng_(rng), heavy_(text_heavy) {}

    std::string document() {
        out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        open("doc");
        out_ += '\n';
        // Fixed skeleton sec0..sec3 with optional parts; at least one section.
        const std::size_t forced = pick(0, 3);
        for (std::size_t s = 0; s < 4; ++s)
            if (s == forced || coin(0.8)) section(s);
        close("doc");
        out_ += '\n';
        return std::move(out_);
    }

private:
    std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
    bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

    void open(const std::string& tag, const std::string& attrs = {}) { out_ += "<" + prefix_ + tag + attrs + ">"; }
    void close(const std::string& tag) { out_ += "</" + prefix_ + tag + ">"; }

    void words(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (i) out_ += ' ';
            out_ += pseudo_word(pick(0, kWordPool - 1));
        }
    }

    void section(std::size_t index) {
        const std::string tag = "sec" + std::to_string(index);
        open(tag, " kind=\"k" + std::to_string(pick(0, 2)) + "\"");
        for (std::size_t i = 0; i < 5; ++i) {
            if (!coin(0.7)) continue;
            const std::size_t repeats = pick(1, 2);
            for (std::size_t r = 0; r < repeats; ++r) item(i, heavy_ ? pick(0, 2) : 0);
        }
        close(tag);
        out_ += '\n';
    }

    void item(std::size_t index, std::size_t nesting) {
        const std::string tag = "it" + std::to_string(index);
        open(tag);
        for (std::size_t f = 0; f < 4; ++f) {
            if (!coin(0.7)) continue;
            const std::string field = "f" + std::to_string(f);
            open(field);
            words(heavy_ ? pick(5, 15) : pick(1, 3));
            close(field);
        }
        if (nesting > 0) {
            open("grp");
            item(pick(0, 4), nesting - 1);
            close("grp");
        }
        close(tag);
    }

    std::string prefix_;
    std::mt19937_64& rng_;
    bool heavy_;
    std::string out_;
};

}  // namespace

std::string pseudo_word(std::size_t index) {
    static constexpr char consonants[] = "bdfgklmnprstvz";
    static constexpr char vowels[] = "aeiou";
    constexpr std::size_t nc = sizeof(consonants) - 1, nv = sizeof(vowels) - 1;
    std::string w;
    std::size_t x = index;
    do {
        w += consonants[x % nc];
        x /= nc;
        w += vowels[x % nv];
        x /= nv;
    } while (x > 0 || w.size() < 4);
    return w + 'x';
}

std::vector<SyntheticDoc> generate_corpus(const SyntheticSpec& spec) {
    if (spec.schemas == 0) throw InvalidParams("synthetic corpus needs at least one schema");
    std::vector<SyntheticDoc> docs;
    docs.reserve(spec.docs);
    for (std::size_t i = 0; i < spec.docs; ++i) {
        const std::size_t schema = i % spec.schemas;
        std::seed_seq seq{spec.seed, static_cast<std::uint64_t>(i)};
        std::mt19937_64 rng(seq);
        char id[32];
        std::snprintf(id, sizeof id, "doc%05zu.xml", i);
        docs.push_back({id, "schema" + std::to_string(schema), Writer(schema, rng, spec.text_heavy).document()});
    }
    return docs;
}

void write_corpus(const std::filesystem::path& dir, const std::vector<SyntheticDoc>& docs) {
    std::filesystem::create_directories(dir);
    std::ofstream labels(dir / "labels.tsv");
    if (!labels) throw CorpusError("cannot write " + (dir / "labels.tsv").string());
    for (const SyntheticDoc& d : docs) {
        std::ofstream out(dir / d.id, std::ios::binary);
        if (!out) throw CorpusError("cannot write " + (dir / d.id).string());
        out << d.xml;
        labels << d.id << '\t' << d.label << '\n';
    }
}

}  // namespace pathmine
