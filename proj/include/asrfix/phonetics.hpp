#pragma once

#include <string>
#include <string_view>
#include <utility>

namespace asrfix {

struct PhoneticCodes {
  std::string soundex;
  std::string metaphone;
  std::string dmeta_primary;
  std::string dmeta_alternate;
};

// Uppercase ASCII letters of `word` with digits, apostrophes, hyphens and
// whitespace removed. Throws DataError("unencodable") when nothing is left
// or a non-letter remains.
std::string encodable_letters(std::string_view word);
bool is_encodable(std::string_view word);

// Classic American Soundex: first letter kept, three digits, H and W
// transparent, vowels separating repeated codes.
std::string soundex(std::string_view word);

// Lawrence Philips' original Metaphone. '0' stands for "th".
std::string metaphone(std::string_view word);

// Double Metaphone, untruncated. Returns (primary, alternate).
std::pair<std::string, std::string> double_metaphone(std::string_view word);

PhoneticCodes encode(std::string_view word);

// Vowel groups per word (y counts as a vowel), minus a silent trailing e or
// plural -es, at least one per word. Sum over whitespace-separated words.
int syllable_count(std::string_view phrase);

// 1 - levenshtein(a, b) / max(|a|, |b|) over two codes; 1 when both empty.
double code_similarity(std::string_view a, std::string_view b);

// Aggregated phonetic agreement of two (possibly multi-word) spans, in
// [0, 1]. Each span is encoded with whitespace removed, then the mean of
//   soundex   : code_similarity of the codes
//   metaphone : code_similarity of the codes
//   dmetaphone: code_similarity of the primaries, or half the best
//               similarity involving an alternate when that is higher
// An unencodable side scores 0.
double phonetic_similarity(std::string_view a, std::string_view b);

}  // namespace asrfix
