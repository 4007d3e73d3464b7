#include <algorithm>
#include <cctype>
#include <sstream>

#include "asrfix/phonetics.hpp"
#include "asrfix/textcore.hpp"

namespace asrfix {

PhoneticCodes encode(std::string_view word) {
  auto [primary, alternate] = double_metaphone(word);
  return {soundex(word), metaphone(word), std::move(primary),
          std::move(alternate)};
}

namespace {

bool is_syllable_vowel(char c) {
  switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
    case 'y':
      return true;
    default:
      return false;
  }
}

int word_syllables(std::string_view word) {
  int groups = 0;
  bool in_group = false;
  for (char c : word) {
    const bool vowel = is_syllable_vowel(c);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }
  // silent trailing e: "care", "store"; "table" and "free" keep theirs.
  // A plural "-es" after a consonant is silent too ("sales"), except where
  // it adds a syllable ("boxes", "prices", "changes").
  std::string w = to_lower(word);
  if (w.size() >= 3 && w.ends_with("es") &&
      std::string_view("sxzcg").find(w[w.size() - 3]) == std::string_view::npos &&
      !w.ends_with("shes")) {
    w.pop_back();
  }
  const std::size_t n = w.size();
  if (groups > 1 && n >= 2 && w[n - 1] == 'e' && !is_syllable_vowel(w[n - 2]) &&
      !(w[n - 2] == 'l' && n >= 3 && !is_syllable_vowel(w[n - 3]))) {
    --groups;
  }
  return groups < 1 ? 1 : groups;
}

}  // namespace

int syllable_count(std::string_view phrase) {
  std::istringstream words{std::string(phrase)};
  std::string word;
  int total = 0;
  while (words >> word) total += word_syllables(word);
  return total;
}

double code_similarity(std::string_view a, std::string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) /
                   static_cast<double>(longest);
}

double phonetic_similarity(std::string_view a, std::string_view b) {
  if (!is_encodable(a) || !is_encodable(b)) return 0.0;
  const PhoneticCodes x = encode(a);
  const PhoneticCodes y = encode(b);

  const double soundex_part = code_similarity(x.soundex, y.soundex);
  const double metaphone_part = code_similarity(x.metaphone, y.metaphone);
  const double alternate = std::max(
      {code_similarity(x.dmeta_alternate, y.dmeta_primary),
       code_similarity(x.dmeta_primary, y.dmeta_alternate),
       code_similarity(x.dmeta_alternate, y.dmeta_alternate)});
  const double dmeta_part =
      std::max(code_similarity(x.dmeta_primary, y.dmeta_primary),
               0.5 * alternate);
  return (soundex_part + metaphone_part + dmeta_part) / 3.0;
}

}  // namespace asrfix
