#include "hfc/words.hpp"

#include "hfc/error.hpp"

#include <cctype>

namespace hfc::pres {

Word reduce(const Word& w) {
    Word out;
    for (int l : w) {
        if (!out.empty() && out.back() == letter_inverse(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word word_inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(letter_inverse(*it));
    return out;
}

Word parse_word(const std::string& text) {
    Word w;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        int gen;
        switch (c) {
            case 'a': gen = 0; break;
            case 'b': gen = 1; break;
            case 'g': gen = 2; break;
            default:
                throw error(errc::parse_error,
                            "unexpected character '" + std::string(1, c) + "' in word \"" + text + "\"");
        }
        ++i;
        bool inv = false;
        if (i < text.size() && text[i] == '\'') {
            inv = true;
            ++i;
        }
        int rep = -1;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            rep = (rep < 0 ? 0 : rep) * 10 + (text[i] - '0');
            ++i;
        }
        if (rep == 0) throw error(errc::parse_error, "zero repeat count in word \"" + text + "\"");
        if (rep < 0) rep = 1;
        for (int r = 0; r < rep; ++r) w.push_back(letter(gen, inv));
    }
    return w;
}

std::string format_word(const Word& w) {
    std::string s;
    size_t i = 0;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        s += "abg"[letter_gen(w[i])];
        if (w[i] & 1) s += '\'';
        size_t rep = j - i;
        if (rep > 1) s += std::to_string(rep);
        i = j;
    }
    return s;
}

} // namespace hfc::pres
