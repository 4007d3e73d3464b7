#include "asrfix/phonetics.hpp"

namespace asrfix {

namespace {

bool is_vowel(char c) {
  return c == 'A' || c == 'E' || c == 'I' || c == 'O' || c == 'U';
}

bool is_front_vowel(char c) { return c == 'E' || c == 'I' || c == 'Y'; }

}  // namespace

std::string metaphone(std::string_view word) {
  const std::string letters = encodable_letters(word);

  std::string w;
  for (char c : letters) {
    if (!w.empty() && w.back() == c && c != 'C') continue;
    w.push_back(c);
  }

  auto starts = [&](std::string_view prefix) {
    return w.compare(0, prefix.size(), prefix) == 0;
  };
  if (starts("AE") || starts("GN") || starts("KN") || starts("PN") ||
      starts("WR")) {
    w.erase(0, 1);
  } else if (starts("X")) {
    w[0] = 'S';
  } else if (starts("WH")) {
    w.erase(1, 1);
  }

  const auto n = static_cast<int>(w.size());
  auto at = [&](int i) -> char { return i >= 0 && i < n ? w[i] : '\0'; };

  std::string code;
  for (int i = 0; i < n; ++i) {
    const char c = w[i];
    const char prev = at(i - 1);
    const char next = at(i + 1);
    const char next2 = at(i + 2);
    switch (c) {
      case 'A':
      case 'E':
      case 'I':
      case 'O':
      case 'U':
        if (i == 0) code.push_back(c);
        break;
      case 'B':
        if (!(i == n - 1 && prev == 'M')) code.push_back('B');
        break;
      case 'C':
        if (next == 'I' && next2 == 'A') {
          code.push_back('X');
        } else if (next == 'H') {
          code.push_back(prev == 'S' ? 'K' : 'X');
        } else if (is_front_vowel(next)) {
          if (prev != 'S') code.push_back('S');
        } else {
          code.push_back('K');
        }
        break;
      case 'D':
        code.push_back(next == 'G' && is_front_vowel(next2) ? 'J' : 'T');
        break;
      case 'G':
        if (next == 'H' && !(i + 2 >= n || is_vowel(next2))) break;
        if (next == 'N' && (i + 2 == n || (w.compare(i + 1, 3, "NED") == 0 &&
                                               i + 4 == n))) {
          break;
        }
        code.push_back(is_front_vowel(next) ? 'J' : 'K');
        break;
      case 'H':
        if (prev == 'C' || prev == 'S' || prev == 'P' || prev == 'T' ||
            prev == 'G') {
          break;
        }
        if (is_vowel(prev) && !is_vowel(next)) break;
        code.push_back('H');
        break;
      case 'K':
        if (prev != 'C') code.push_back('K');
        break;
      case 'P':
        code.push_back(next == 'H' ? 'F' : 'P');
        break;
      case 'Q':
        code.push_back('K');
        break;
      case 'S':
        if (next == 'H' || (next == 'I' && (next2 == 'O' || next2 == 'A'))) {
          code.push_back('X');
        } else {
          code.push_back('S');
        }
        break;
      case 'T':
        if (next == 'I' && (next2 == 'O' || next2 == 'A')) {
          code.push_back('X');
        } else if (next == 'H') {
          code.push_back('0');
        } else if (!(next == 'C' && next2 == 'H')) {
          code.push_back('T');
        }
        break;
      case 'V':
        code.push_back('F');
        break;
      case 'W':
      case 'Y':
        if (is_vowel(next)) code.push_back(c);
        break;
      case 'X':
        code += "KS";
        break;
      case 'Z':
        code.push_back('S');
        break;
      default:  // F J L M N R
        code.push_back(c);
        break;
    }
  }
  return code;
}

}  // namespace asrfix
