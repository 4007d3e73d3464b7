#include <cctype>

#include "asrfix/error.hpp"
#include "asrfix/phonetics.hpp"

namespace asrfix {

std::string encodable_letters(std::string_view word) {
  std::string letters;
  for (char ch : word) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isdigit(c) || c == '\'' || c == '-' || std::isspace(c)) continue;
    if (c >= 0x80 || !std::isalpha(c)) throw DataError("unencodable");
    letters.push_back(static_cast<char>(std::toupper(c)));
  }
  if (letters.empty()) throw DataError("unencodable");
  return letters;
}

bool is_encodable(std::string_view word) {
  try {
    encodable_letters(word);
    return true;
  } catch (const DataError&) {
    return false;
  }
}

namespace {

// '0' marks letters that carry no code (vowels, H, W, Y).
constexpr char kSoundexTable[27] = "01230120022455012623010202";

}  // namespace

std::string soundex(std::string_view word) {
  const std::string letters = encodable_letters(word);
  std::string code(1, letters[0]);
  char last = kSoundexTable[letters[0] - 'A'];
  for (std::size_t i = 1; i < letters.size() && code.size() < 4; ++i) {
    const char c = letters[i];
    const char digit = kSoundexTable[c - 'A'];
    if (c == 'H' || c == 'W') continue;  // do not separate equal codes
    if (digit == '0') {
      last = '0';
      continue;
    }
    if (digit != last) code.push_back(digit);
    last = digit;
  }
  code.resize(4, '0');
  return code;
}

}  // namespace asrfix
