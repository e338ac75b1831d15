#ifndef RELIASCAN_PORTER_HPP_
#define RELIASCAN_PORTER_HPP_

#include <array>
#include <string>
#include <string_view>

#include "reliascan/errors.hpp"
#include "reliascan/tokenizer.hpp"

namespace reliascan {

// Porter's 1980 suffix-stripping algorithm, as published (Program 14(3)),
// all five steps. Later revisions (the -bli/-logi rules, the short-word
// bypass) are deliberately not applied.
//
// Rule selection within a step follows the paper: among the rules whose
// suffix matches, only the one with the longest suffix is attempted; if its
// condition fails, the step ends with no change.
namespace porter_detail {

// A letter is a consonant unless it is a/e/i/o/u, or a y preceded by a
// consonant.
inline bool is_consonant(std::string_view w, size_t i) {
    char c = w[i];
    switch (c) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !is_consonant(w, i - 1);
        default:
            return true;
    }
}

// The measure m of [C](VC)^m[V]: number of vowel->consonant transitions.
inline int measure(std::string_view w) {
    int m = 0;
    bool prev_vowel = false;
    for (size_t i = 0; i < w.size(); ++i) {
        bool cons = is_consonant(w, i);
        if (prev_vowel && cons) ++m;
        prev_vowel = !cons;
    }
    return m;
}

inline bool has_vowel(std::string_view w) {
    for (size_t i = 0; i < w.size(); ++i)
        if (!is_consonant(w, i)) return true;
    return false;
}

inline bool ends_double_consonant(std::string_view w) {
    size_t n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: ends consonant-vowel-consonant where the final consonant is not
// w, x or y.
inline bool ends_cvc(std::string_view w) {
    size_t n = w.size();
    if (n < 3) return false;
    if (!is_consonant(w, n - 3) || is_consonant(w, n - 2) || !is_consonant(w, n - 1))
        return false;
    char last = w[n - 1];
    return last != 'w' && last != 'x' && last != 'y';
}

inline bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// Applies the longest textually matching rule whose stem measure exceeds
// min_measure. Returns true if a rule matched textually (even if the
// condition then failed), which per the paper ends the step.
template <size_t N>
inline void apply_rules(std::string& w, const std::array<Rule, N>& rules, int min_measure) {
    const Rule* best = nullptr;
    for (const auto& r : rules) {
        if (ends_with(w, r.suffix) && (!best || r.suffix.size() > best->suffix.size()))
            best = &r;
    }
    if (!best) return;
    std::string_view stem(w.data(), w.size() - best->suffix.size());
    if (measure(stem) > min_measure)
        w = std::string(stem) + std::string(best->replacement);
}

inline void step1a(std::string& w) {
    if (ends_with(w, "sses")) w.erase(w.size() - 2);       // sses -> ss
    else if (ends_with(w, "ies")) w.erase(w.size() - 2);   // ies  -> i
    else if (ends_with(w, "ss")) {}                        // ss   -> ss
    else if (ends_with(w, "s")) w.pop_back();              // s    ->
}

inline void step1b(std::string& w) {
    if (ends_with(w, "eed")) {
        std::string_view stem(w.data(), w.size() - 3);
        if (measure(stem) > 0) w.pop_back();  // eed -> ee
        return;                               // longest match consumed
    }
    bool stripped = false;
    if (ends_with(w, "ed")) {
        std::string_view stem(w.data(), w.size() - 2);
        if (has_vowel(stem)) {
            w.erase(w.size() - 2);
            stripped = true;
        }
    } else if (ends_with(w, "ing")) {
        std::string_view stem(w.data(), w.size() - 3);
        if (has_vowel(stem)) {
            w.erase(w.size() - 3);
            stripped = true;
        }
    }
    if (!stripped) return;
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w.push_back('e');
    } else if (ends_double_consonant(w)) {
        char last = w.back();
        if (last != 'l' && last != 's' && last != 'z') w.pop_back();
    } else if (measure(w) == 1 && ends_cvc(w)) {
        w.push_back('e');
    }
}

inline void step1c(std::string& w) {
    if (ends_with(w, "y") && has_vowel(std::string_view(w.data(), w.size() - 1)))
        w.back() = 'i';
}

inline void step2(std::string& w) {
    static constexpr std::array<Rule, 20> rules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    }};
    apply_rules(w, rules, 0);
}

inline void step3(std::string& w) {
    static constexpr std::array<Rule, 7> rules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    apply_rules(w, rules, 0);
}

inline void step4(std::string& w) {
    static constexpr std::array<Rule, 18> plain{{
        {"al", ""},  {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
        {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
        {"ent", ""}, {"ou", ""},   {"ism", ""},  {"ate", ""}, {"iti", ""},
        {"ous", ""}, {"ive", ""},  {"ize", ""},
    }};
    // "ion" is special-cased: it is only valid after s or t, and at five
    // letters "ement"/"ation"-style overlaps cannot occur with it.
    if (ends_with(w, "ion")) {
        std::string_view stem(w.data(), w.size() - 3);
        if (!stem.empty() && (stem.back() == 's' || stem.back() == 't') && measure(stem) > 1)
            w.erase(w.size() - 3);
        return;
    }
    apply_rules(w, plain, 1);
}

inline void step5a(std::string& w) {
    if (!ends_with(w, "e")) return;
    std::string_view stem(w.data(), w.size() - 1);
    int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
}

inline void step5b(std::string& w) {
    if (w.size() >= 2 && w.back() == 'l' && ends_double_consonant(w) && measure(w) > 1)
        w.pop_back();
}

}  // namespace porter_detail

inline std::string porter_stem(std::string_view word) {
    if (!is_pure_alphabetic(word))
        throw Error(ErrorCode::non_alphabetic_input, "cannot stem '" + std::string(word) + "'");
    std::string w(word);
    using namespace porter_detail;
    step1a(w);
    step1b(w);
    step1c(w);
    step2(w);
    step3(w);
    step4(w);
    step5a(w);
    step5b(w);
    return w;
}

}  // namespace reliascan

#endif  // RELIASCAN_PORTER_HPP_
