#ifndef RELIASCAN_SOUNDEX_HPP_
#define RELIASCAN_SOUNDEX_HPP_

#include <cctype>
#include <string>
#include <string_view>

#include "reliascan/errors.hpp"

namespace reliascan {

// American Soundex. The first letter is kept; the rest map to digit classes
// b f p v -> 1, c g j k q s x z -> 2, d t -> 3, l -> 4, m n -> 5, r -> 6.
// h and w are transparent (a repeated class across them collapses); vowels
// and y separate, so a repeated class across them is coded again. Output is
// always one letter plus three digits.
inline std::string soundex(std::string_view word) {
    auto klass = [](char c) -> char {
        switch (c) {
            case 'b': case 'f': case 'p': case 'v': return '1';
            case 'c': case 'g': case 'j': case 'k': case 'q':
            case 's': case 'x': case 'z': return '2';
            case 'd': case 't': return '3';
            case 'l': return '4';
            case 'm': case 'n': return '5';
            case 'r': return '6';
            default: return '0';  // vowels and y
        }
    };

    std::string code;
    char prev = '0';
    for (char raw : word) {
        char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
        if (c < 'a' || c > 'z') continue;
        if (code.empty()) {
            code.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
            prev = klass(c);
            continue;
        }
        if (c == 'h' || c == 'w') continue;
        char k = klass(c);
        if (k == '0') {
            prev = '0';
            continue;
        }
        if (k != prev) {
            code.push_back(k);
            if (code.size() == 4) break;
        }
        prev = k;
    }
    if (code.empty()) throw Error(ErrorCode::empty_input, "soundex of empty word");
    code.resize(4, '0');
    return code;
}

}  // namespace reliascan

#endif  // RELIASCAN_SOUNDEX_HPP_
