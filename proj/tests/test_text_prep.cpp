#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "reliascan/text_prep.hpp"
#include "support/fixtures.hpp"

using namespace reliascan;

TEST_CASE("tokenizer matches the documented splitting rules") {
    CHECK(tokenize("Steering of my car locks while turning") ==
          std::vector<std::string>{"steering", "of", "my", "car", "locks", "while", "turning"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("2008 Speed Machine Savoy- the power steering") ==
          std::vector<std::string>{"2008", "speed", "machine", "savoy", "the", "power",
                                   "steering"});
    CHECK(tokenize("wheel/tire shake at 60-65 mph") ==
          std::vector<std::string>{"wheel", "tire", "shake", "at", "60", "65", "mph"});
    CHECK(tokenize("the car's engine") == std::vector<std::string>{"the", "car", "engine"});
    CHECK(tokenize("o'clock isn't split as possessive") ==
          std::vector<std::string>{"o", "clock", "isn", "t", "split", "as", "possessive"});
}

// Trace vectors for the 1980 algorithm, checked by hand against the
// published rules (full runs through all five steps, not per-step examples).
static const std::pair<const char*, const char*> kPorterVectors[] = {
    {"caresses", "caress"}, {"ponies", "poni"},       {"ties", "ti"},
    {"caress", "caress"},   {"cats", "cat"},          {"feed", "feed"},
    {"agreed", "agre"},     {"plastered", "plaster"}, {"bled", "bled"},
    {"motoring", "motor"},  {"sing", "sing"},         {"conflated", "conflat"},
    {"troubled", "troubl"}, {"sized", "size"},        {"hopping", "hop"},
    {"tanned", "tan"},      {"falling", "fall"},      {"hissing", "hiss"},
    {"fizzed", "fizz"},     {"failing", "fail"},      {"filing", "file"},
    {"happy", "happi"},     {"sky", "sky"},           {"relational", "relat"},
    {"conditional", "condit"}, {"rational", "ration"}, {"valenci", "valenc"},
    {"digitizer", "digit"}, {"operator", "oper"},     {"feudalism", "feudal"},
    {"decisiveness", "decis"}, {"hopefulness", "hope"}, {"callousness", "callous"},
    {"formaliti", "formal"}, {"sensitiviti", "sensit"}, {"sensibiliti", "sensibl"},
    {"triplicate", "triplic"}, {"formative", "form"},  {"formalize", "formal"},
    {"electriciti", "electr"}, {"electrical", "electr"}, {"hopeful", "hope"},
    {"goodness", "good"},   {"revival", "reviv"},     {"allowance", "allow"},
    {"inference", "infer"}, {"airliner", "airlin"},   {"gyroscopic", "gyroscop"},
    {"adjustable", "adjust"}, {"defensible", "defens"}, {"irritant", "irrit"},
    {"replacement", "replac"}, {"adjustment", "adjust"}, {"dependent", "depend"},
    {"adoption", "adopt"},  {"homologou", "homolog"}, {"communism", "commun"},
    {"activate", "activ"},  {"angulariti", "angular"}, {"homologous", "homolog"},
    {"effective", "effect"}, {"bowdlerize", "bowdler"}, {"probate", "probat"},
    {"rate", "rate"},       {"cease", "ceas"},        {"controlling", "control"},
    {"rolling", "roll"},    {"driving", "drive"},     {"driven", "driven"},
    {"locks", "lock"},      {"a", "a"},               {"news", "new"},
    {"connected", "connect"}, {"connections", "connect"}, {"steering", "steer"},
    {"vibration", "vibrat"}, {"turning", "turn"},     {"enjoy", "enjoi"},
    {"illuminate", "illumin"}, {"indicator", "indic"},
};

TEST_CASE("porter stemmer reproduces the trace vector set exactly") {
    for (const auto& [word, expected] : kPorterVectors) {
        INFO(word);
        CHECK(porter_stem(word) == expected);
    }
}

TEST_CASE("porter stemmer rejects non-alphabetic input") {
    CHECK_THROWS_AS(porter_stem("2008"), Error);
    CHECK_THROWS_AS(porter_stem("Drive"), Error);
    CHECK_THROWS_AS(porter_stem(""), Error);
}

TEST_CASE("porter stem never grows the word") {
    for (const auto& [word, expected] : kPorterVectors)
        CHECK(porter_stem(word).size() <= std::string(word).size());
}

TEST_CASE("soundex reproduces the standard coding-table examples") {
    CHECK(soundex("robert") == "R163");
    CHECK(soundex("rupert") == "R163");
    CHECK(soundex("tymczak") == "T522");
    CHECK(soundex("a") == "A000");
    CHECK(soundex("ashcraft") == "A261");
    CHECK(soundex("ashcroft") == "A261");
    CHECK(soundex("pfister") == "P236");
    CHECK(soundex("honeyman") == "H555");
    CHECK(soundex("jackson") == "J250");
    CHECK(soundex("washington") == "W252");
    CHECK(soundex("gutierrez") == "G362");
    CHECK(soundex("lee") == "L000");
    CHECK(soundex("vandeusen") == "V532");
    CHECK(soundex("steering") == "S365");
    CHECK(soundex("steeering") == "S365");
    CHECK(soundex("brake") == soundex("break"));  // known phonetic collision
    CHECK_THROWS_AS(soundex(""), Error);
}

TEST_CASE("soundex output always matches letter-plus-three-digits") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> len(1, 12), letter(0, 25);
    for (int trial = 0; trial < 500; ++trial) {
        std::string word;
        for (int i = 0; i < len(rng); ++i) word.push_back(char('a' + letter(rng)));
        std::string code = soundex(word);
        REQUIRE(code.size() == 4);
        CHECK((code[0] >= 'A' && code[0] <= 'Z'));
        for (int i = 1; i < 4; ++i) CHECK((code[i] >= '0' && code[i] <= '6'));
        CHECK(code == soundex(word));  // deterministic
    }
}

TEST_CASE("spell_cluster suggests the frequent soundex mate") {
    std::vector<VocabEntry> vocab{
        {"steering", 40, 60}, {"steeering", 1, 1}, {"brake", 12, 20}};
    auto suggestions = spell_cluster(vocab, 4);
    REQUIRE(suggestions.size() == 1);
    CHECK(suggestions[0].rare_term == "steeering");
    CHECK(suggestions[0].suggested_canonical == "steering");
    CHECK(suggestions[0].soundex_code == "S365");
    CHECK(suggestions[0].rare_df == 1);
    CHECK(suggestions[0].canonical_df == 40);
}

TEST_CASE("spell_cluster with no shared codes or no frequent mate is empty") {
    std::vector<VocabEntry> no_share{{"steering", 40, 60}, {"pump", 9, 9}};
    CHECK(spell_cluster(no_share, 4).empty());
    // two rare same-code terms, no frequent target
    std::vector<VocabEntry> no_target{{"steeering", 1, 1}, {"steerring", 2, 2}};
    CHECK(spell_cluster(no_target, 4).empty());
}

TEST_CASE("figure-style two-document corpus normalizes to 14 terms") {
    PrepConfig config;
    config.min_df = 1;
    config.stemming = false;
    config.drop_numerals = false;
    auto nc = normalize_corpus(fixtures::two_complaints(), config);
    REQUIRE(nc.vocabulary.size() == 14);
    std::vector<std::string> terms;
    for (const auto& e : nc.vocabulary) terms.push_back(e.term);
    std::vector<std::string> expected{"at",      "car",  "high",  "is",    "locks",
                                      "my",      "of",   "running", "speed", "steering",
                                      "turning", "vibrations", "when",  "while"};
    CHECK(terms == expected);
    // "at" occurs twice in the second complaint
    int at_index = nc.vocab_index("at");
    REQUIRE(at_index >= 0);
    CHECK(nc.vocabulary[size_t(at_index)].corpus_frequency == 2);
    CHECK(nc.vocabulary[size_t(at_index)].document_frequency == 1);
}

TEST_CASE("stop list terms vanish from the vocabulary") {
    PrepConfig config;
    config.min_df = 1;
    config.stemming = false;
    config.drop_numerals = false;
    config.stop_list = {"my", "at", "is", "when", "while", "of"};
    auto nc = normalize_corpus(fixtures::two_complaints(), config);
    for (const auto& e : nc.vocabulary) CHECK(config.stop_list.count(e.term) == 0);
    CHECK(nc.vocabulary.size() == 8);  // 14 minus the six stopped terms
}

TEST_CASE("start list restricts the vocabulary to its stemmed image") {
    PrepConfig config;
    config.min_df = 1;
    config.stemming = true;
    config.start_list = std::set<std::string>{"steering"};
    auto nc = normalize_corpus(fixtures::two_complaints(), config);
    REQUIRE(nc.vocabulary.size() == 1);
    CHECK(nc.vocabulary[0].term == "steer");
    CHECK(nc.vocabulary[0].document_frequency == 2);
}

TEST_CASE("synonyms map surface variants before stemming") {
    PrepConfig config;
    config.min_df = 1;
    config.synonyms = {{"driven", "drive"}};
    auto corpus = fixtures::corpus_from_texts({"driven hard", "driving hard"});
    auto nc = normalize_corpus(corpus, config);
    int idx = nc.vocab_index("drive");
    REQUIRE(idx >= 0);
    CHECK(nc.vocabulary[size_t(idx)].document_frequency == 2);
}

TEST_CASE("min_df drops rare terms from vocabulary and streams") {
    PrepConfig config;
    config.min_df = 2;
    config.stemming = false;
    auto corpus = fixtures::corpus_from_texts(
        {"brake pedal noise", "brake pedal squeal", "wiper motor"});
    auto nc = normalize_corpus(corpus, config);
    CHECK(nc.vocab_index("brake") >= 0);
    CHECK(nc.vocab_index("pedal") >= 0);
    CHECK(nc.vocab_index("noise") == -1);
    CHECK(nc.vocab_index("wiper") == -1);
    for (const auto& tokens : nc.doc_tokens)
        for (const auto& t : tokens) CHECK(nc.vocab_index(t) >= 0);
}

TEST_CASE("all terms eliminated raises empty_vocabulary") {
    PrepConfig config;
    config.min_df = 50;
    auto corpus = fixtures::corpus_from_texts({"brake pedal", "wiper motor"});
    try {
        normalize_corpus(corpus, config);
        FAIL("expected empty_vocabulary");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::empty_vocabulary);
    }
}

TEST_CASE("overlapping stop and start lists are rejected") {
    PrepConfig config;
    config.stop_list = {"brake"};
    config.start_list = std::set<std::string>{"brake", "pedal"};
    CHECK_THROWS_AS(config.validate(), Error);
}

TEST_CASE("stemming never increases vocabulary size") {
    std::vector<std::string> texts{
        "steering locks while turning quickly",
        "steering locked when turning",
        "vibration vibrating vibrations in the wheel",
        "connection connected connecting connections failed",
    };
    auto corpus = fixtures::corpus_from_texts(texts);
    PrepConfig plain;
    plain.min_df = 1;
    plain.stemming = false;
    PrepConfig stemmed;
    stemmed.min_df = 1;
    stemmed.stemming = true;
    auto nc_plain = normalize_corpus(corpus, plain);
    auto nc_stemmed = normalize_corpus(corpus, stemmed);
    CHECK(nc_stemmed.vocabulary.size() <= nc_plain.vocabulary.size());
}

TEST_CASE("re-normalizing an already-normalized corpus is a fixed point") {
    // Word pool chosen from the monitored domain; every stem here is stable
    // under a second pass.
    std::vector<std::string> texts{
        "steering locks while turning the car",
        "brake pedal goes soft and the light turns on",
        "engine stalls at high speed on the highway",
        "power steering pump whines when cold",
        "rear wiper motor failed after the recall",
    };
    auto corpus = fixtures::corpus_from_texts(texts);
    PrepConfig config;
    config.min_df = 1;
    config.stop_list = {"the", "and", "at", "on", "when", "while", "after"};
    auto first = normalize_corpus(corpus, config);

    std::vector<std::string> rejoined;
    for (const auto& tokens : first.doc_tokens) {
        std::string text;
        for (const auto& t : tokens) {
            if (!text.empty()) text += ' ';
            text += t;
        }
        rejoined.push_back(text.empty() ? "placeholder" : text);
    }
    auto second = normalize_corpus(fixtures::corpus_from_texts(rejoined), config);
    REQUIRE(second.doc_tokens == first.doc_tokens);
    REQUIRE(second.vocabulary.size() == first.vocabulary.size());
    for (size_t i = 0; i < first.vocabulary.size(); ++i) {
        CHECK(second.vocabulary[i].term == first.vocabulary[i].term);
        CHECK(second.vocabulary[i].document_frequency ==
              first.vocabulary[i].document_frequency);
    }
}

TEST_CASE("term list and synonyms files parse with comments") {
    fixtures::TempDir tmp("lists");
    fixtures::write_file(tmp.file("stop.txt"), "# pronouns\nmy\nat  # inline\n\nis\n");
    auto stop = load_term_list(tmp.file("stop.txt"));
    CHECK(stop == std::set<std::string>{"my", "at", "is"});

    fixtures::write_file(tmp.file("syn.csv"), "variant,canonical\ndriven,drive\n");
    auto syn = load_synonyms(tmp.file("syn.csv"));
    CHECK(syn.at("driven") == "drive");

    fixtures::write_file(tmp.file("bad.csv"), "variant,canonical\ntwo words,drive\n");
    CHECK_THROWS_AS(load_synonyms(tmp.file("bad.csv")), Error);
}
