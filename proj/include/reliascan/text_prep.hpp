#ifndef RELIASCAN_TEXT_PREP_HPP_
#define RELIASCAN_TEXT_PREP_HPP_

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "reliascan/corpus.hpp"
#include "reliascan/csv.hpp"
#include "reliascan/errors.hpp"
#include "reliascan/porter.hpp"
#include "reliascan/soundex.hpp"
#include "reliascan/tokenizer.hpp"

namespace reliascan {

// Term-elimination settings. Defaults follow the monitored-corpus setup:
// min_df 4, numerals dropped, stemming on.
struct PrepConfig {
    std::set<std::string> stop_list;
    std::optional<std::set<std::string>> start_list;
    std::map<std::string, std::string> synonyms;  // surface variant -> canonical
    int min_df = 4;
    bool drop_numerals = true;
    bool stemming = true;

    void validate() const {
        if (min_df < 1) throw Error(ErrorCode::invalid_config, "min_df must be >= 1");
        if (start_list) {
            for (const auto& t : *start_list)
                if (stop_list.count(t))
                    throw Error(ErrorCode::invalid_config,
                                "term '" + t + "' is in both stop and start list");
        }
    }
};

struct VocabEntry {
    std::string term;
    int document_frequency = 0;
    long corpus_frequency = 0;
};

// Per-document normalized token streams plus the surviving vocabulary.
// Streams keep token order so phrase matching stays possible downstream.
struct NormalizedCorpus {
    std::vector<std::string> doc_ids;                    // corpus order
    std::vector<std::vector<std::string>> doc_tokens;    // aligned with doc_ids
    std::vector<VocabEntry> vocabulary;                  // sorted by term

    int vocab_index(const std::string& term) const {
        auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), term,
                                   [](const VocabEntry& e, const std::string& t) {
                                       return e.term < t;
                                   });
        if (it == vocabulary.end() || it->term != term) return -1;
        return int(it - vocabulary.begin());
    }
};

// Applies the per-token stages of the pipeline in their fixed order:
// synonym mapping, numeral drop, stop list, start list, stemming. Stop and
// start lists are authored in surface forms, hence checked before stemming.
// Tokens containing digits pass the stemmer untouched.
inline std::vector<std::string> normalize_tokens(const std::vector<std::string>& raw,
                                                 const PrepConfig& config) {
    std::vector<std::string> out;
    out.reserve(raw.size());
    for (const auto& t : raw) {
        std::string token = t;
        auto syn = config.synonyms.find(token);
        if (syn != config.synonyms.end()) token = syn->second;
        if (config.drop_numerals && is_pure_numeral(token)) continue;
        if (config.stop_list.count(token)) continue;
        if (config.start_list && !config.start_list->count(token)) continue;
        if (config.stemming && is_pure_alphabetic(token)) token = porter_stem(token);
        out.push_back(std::move(token));
    }
    return out;
}

// Full normalization: tokenize every document, run the token pipeline,
// then recompute document frequencies and drop terms below min_df from both
// the vocabulary and the streams.
inline NormalizedCorpus normalize_corpus(const Corpus& corpus, const PrepConfig& config) {
    config.validate();
    if (corpus.size() == 0) throw Error(ErrorCode::empty_corpus, "nothing to normalize");

    NormalizedCorpus nc;
    nc.doc_ids.reserve(corpus.size());
    nc.doc_tokens.reserve(corpus.size());
    std::map<std::string, VocabEntry> vocab;
    for (const auto& doc : corpus.documents()) {
        auto tokens = normalize_tokens(tokenize(doc.text), config);
        std::set<std::string> distinct(tokens.begin(), tokens.end());
        for (const auto& t : distinct) {
            auto& e = vocab[t];
            e.term = t;
            e.document_frequency += 1;
        }
        for (const auto& t : tokens) vocab[t].corpus_frequency += 1;
        nc.doc_ids.push_back(doc.id);
        nc.doc_tokens.push_back(std::move(tokens));
    }

    for (const auto& [term, entry] : vocab)
        if (entry.document_frequency >= config.min_df) nc.vocabulary.push_back(entry);
    if (nc.vocabulary.empty())
        throw Error(ErrorCode::empty_vocabulary, "all terms eliminated");

    if (nc.vocabulary.size() != vocab.size()) {
        for (auto& tokens : nc.doc_tokens) {
            std::erase_if(tokens, [&](const std::string& t) {
                return vocab.at(t).document_frequency < config.min_df;
            });
        }
    }
    return nc;
}

// Spelling-repair suggestions: a rare term (df below the threshold) that
// shares a Soundex code with a frequent term is probably a misspelling of
// it. Suggestions are advisory; nothing is merged automatically.
struct SpellSuggestion {
    std::string rare_term;
    std::string suggested_canonical;
    std::string soundex_code;
    int rare_df = 0;
    int canonical_df = 0;
};

inline std::vector<SpellSuggestion> spell_cluster(const std::vector<VocabEntry>& vocabulary,
                                                  int df_threshold) {
    std::map<std::string, std::vector<const VocabEntry*>> by_code;
    for (const auto& e : vocabulary) {
        if (!is_pure_alphabetic(e.term)) continue;
        by_code[soundex(e.term)].push_back(&e);
    }
    std::vector<SpellSuggestion> suggestions;
    for (const auto& [code, entries] : by_code) {
        const VocabEntry* canonical = nullptr;
        for (const auto* e : entries) {
            if (e->document_frequency < df_threshold) continue;
            if (!canonical || e->document_frequency > canonical->document_frequency ||
                (e->document_frequency == canonical->document_frequency &&
                 e->term < canonical->term))
                canonical = e;
        }
        if (!canonical) continue;  // no frequent mate to map onto
        for (const auto* e : entries) {
            if (e->document_frequency >= df_threshold) continue;
            suggestions.push_back({e->term, canonical->term, code, e->document_frequency,
                                   canonical->document_frequency});
        }
    }
    std::sort(suggestions.begin(), suggestions.end(),
              [](const SpellSuggestion& a, const SpellSuggestion& b) {
                  return a.rare_term < b.rare_term;
              });
    return suggestions;
}

// Term-list file: one lowercase term per line, '#' starts a comment.
inline std::set<std::string> load_term_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
    std::set<std::string> terms;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        terms.insert(line.substr(a, b - a + 1));
    }
    return terms;
}

// synonyms.csv: header `variant,canonical`; keys are single surface tokens.
inline std::map<std::string, std::string> load_synonyms(const std::string& path) {
    auto records = csv::parse_file(path);
    if (records.empty()) throw Error(ErrorCode::parse_error, "empty synonyms file");
    if (records.front().fields != std::vector<std::string>{"variant", "canonical"})
        throw Error(ErrorCode::parse_error, "expected header variant,canonical");
    std::map<std::string, std::string> map;
    for (size_t i = 1; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.fields.size() != 2)
            throw Error(ErrorCode::parse_error,
                        "line " + std::to_string(rec.line) + ": wrong field count");
        const std::string& variant = rec.fields[0];
        if (tokenize(variant).size() != 1 || tokenize(variant)[0] != variant)
            throw Error(ErrorCode::parse_error,
                        "line " + std::to_string(rec.line) +
                            ": synonym keys must be single normalized tokens");
        map[variant] = rec.fields[1];
    }
    return map;
}

}  // namespace reliascan

#endif  // RELIASCAN_TEXT_PREP_HPP_
