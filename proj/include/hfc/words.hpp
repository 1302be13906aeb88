#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hfc::pres {

// Letters over the rotation-group generators a, b, g and their inverses.
// Encoding: 2*gen + (0 = plain, 1 = inverse), gen in {0:a, 1:b, 2:g}.
using Word = std::vector<int>;

constexpr int kNumLetters = 6;

constexpr int letter(int gen, bool inverse) { return 2 * gen + (inverse ? 1 : 0); }
constexpr int letter_inverse(int l) { return l ^ 1; }
constexpr int letter_gen(int l) { return l >> 1; }

/// Free reduction (cancel adjacent x x^-1 pairs).
Word reduce(const Word& w);

Word word_inverse(const Word& w);

/// Parse a word like "ag2ab'g'3": letters a/b/g, optional ' for inverse,
/// optional decimal repeat count.
Word parse_word(const std::string& text);

std::string format_word(const Word& w);

} // namespace hfc::pres
