#ifndef RELIASCAN_TOKENIZER_HPP_
#define RELIASCAN_TOKENIZER_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace reliascan {

namespace detail {

inline bool is_token_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

}  // namespace detail

// Lowercases and splits on every non-alphanumeric byte, so hyphens and
// slashes break tokens. A possessive «'s» at a token boundary is dropped
// rather than producing a stray "s". Pure-numeral tokens are kept; later
// pipeline stages decide their fate.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
        if (detail::is_token_char(c)) {
            current.push_back(static_cast<char>(c));
            continue;
        }
        if (c == '\'' && !current.empty() && i + 1 < text.size() &&
            (text[i + 1] == 's' || text[i + 1] == 'S')) {
            bool at_boundary = i + 2 >= text.size() ||
                               !detail::is_token_char(static_cast<unsigned char>(
                                   text[i + 2] | 0x20));
            if (at_boundary) {
                ++i;  // swallow the possessive s
                continue;
            }
        }
        if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

inline bool is_pure_numeral(std::string_view token) {
    if (token.empty()) return false;
    for (char c : token)
        if (c < '0' || c > '9') return false;
    return true;
}

inline bool is_pure_alphabetic(std::string_view token) {
    if (token.empty()) return false;
    for (char c : token)
        if (c < 'a' || c > 'z') return false;
    return true;
}

}  // namespace reliascan

#endif  // RELIASCAN_TOKENIZER_HPP_
