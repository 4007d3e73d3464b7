// Double Metaphone after Lawrence Philips' public-domain reference, without
// the four-character cap so multi-word spans keep their full skeleton.

#include <initializer_list>

#include "asrfix/phonetics.hpp"

namespace asrfix {

namespace {

class DoubleMetaphoneEncoder {
 public:
  explicit DoubleMetaphoneEncoder(std::string letters)
      : length_(static_cast<int>(letters.size())),
        last_(length_ - 1),
        w_(std::move(letters) + "     ") {}

  std::pair<std::string, std::string> run();

 private:
  char at(int i) const {
    return i >= 0 && i < static_cast<int>(w_.size()) ? w_[i] : '\0';
  }

  bool string_at(int start, int len,
                 std::initializer_list<std::string_view> options) const {
    if (start < 0 || start + len > static_cast<int>(w_.size())) return false;
    const std::string_view target(w_.data() + start, len);
    for (auto option : options) {
      if (option == target) return true;
    }
    return false;
  }

  bool is_vowel(int i) const {
    if (i < 0 || i >= length_) return false;
    const char c = w_[i];
    return c == 'A' || c == 'E' || c == 'I' || c == 'O' || c == 'U' ||
           c == 'Y';
  }

  bool slavo_germanic() const {
    const std::string_view word(w_.data(), length_);
    return word.find('W') != std::string_view::npos ||
           word.find('K') != std::string_view::npos ||
           word.find("CZ") != std::string_view::npos ||
           word.find("WITZ") != std::string_view::npos;
  }

  void add(std::string_view main) { add(main, {}); }

  void add(std::string_view main, std::string_view alt) {
    if (!main.empty()) primary_ += main;
    if (!alt.empty()) {
      if (alt[0] != ' ') secondary_ += alt;
    } else if (!main.empty() && main[0] != ' ') {
      secondary_ += main;
    }
  }

  int encode_c(int current);
  int encode_g(int current);
  int encode_s(int current);

  int length_;
  int last_;
  std::string w_;
  std::string primary_;
  std::string secondary_;
};

int DoubleMetaphoneEncoder::encode_c(int current) {
  // various germanic
  if (current > 1 && !is_vowel(current - 2) &&
      string_at(current - 1, 3, {"ACH"}) && at(current + 2) != 'I' &&
      (at(current + 2) != 'E' ||
       string_at(current - 2, 6, {"BACHER", "MACHER"}))) {
    add("K");
    return current + 2;
  }
  if (current == 0 && string_at(current, 6, {"CAESAR"})) {
    add("S");
    return current + 2;
  }
  if (string_at(current, 4, {"CHIA"})) {
    add("K");
    return current + 2;
  }
  if (string_at(current, 2, {"CH"})) {
    if (current > 0 && string_at(current, 4, {"CHAE"})) {
      add("K", "X");
      return current + 2;
    }
    // greek roots, e.g. chemistry, chorus
    if (current == 0 &&
        (string_at(current + 1, 5, {"HARAC", "HARIS"}) ||
         string_at(current + 1, 3, {"HOR", "HYM", "HIA", "HEM"})) &&
        !string_at(0, 5, {"CHORE"})) {
      add("K");
      return current + 2;
    }
    if (string_at(0, 4, {"VAN ", "VON "}) || string_at(0, 3, {"SCH"}) ||
        string_at(current - 2, 6, {"ORCHES", "ARCHIT", "ORCHID"}) ||
        string_at(current + 2, 1, {"T", "S"}) ||
        ((string_at(current - 1, 1, {"A", "O", "U", "E"}) || current == 0) &&
         string_at(current + 2, 1,
                   {"L", "R", "N", "M", "B", "H", "F", "V", "W", " "}))) {
      add("K");
    } else if (current > 0) {
      if (string_at(0, 2, {"MC"})) {
        add("K");
      } else {
        add("X", "K");
      }
    } else {
      add("X");
    }
    return current + 2;
  }
  if (string_at(current, 2, {"CZ"}) && !string_at(current - 2, 4, {"WICZ"})) {
    add("S", "X");
    return current + 2;
  }
  if (string_at(current + 1, 3, {"CIA"})) {
    add("X");
    return current + 3;
  }
  if (string_at(current, 2, {"CC"}) && !(current == 1 && at(0) == 'M')) {
    if (string_at(current + 2, 1, {"I", "E", "H"}) &&
        !string_at(current + 2, 2, {"HU"})) {
      // accident, accede, succeed
      if ((current == 1 && at(current - 1) == 'A') ||
          string_at(current - 1, 5, {"UCCEE", "UCCES"})) {
        add("KS");
      } else {
        add("X");
      }
      return current + 3;
    }
    add("K");
    return current + 2;
  }
  if (string_at(current, 2, {"CK", "CG", "CQ"})) {
    add("K");
    return current + 2;
  }
  if (string_at(current, 2, {"CI", "CE", "CY"})) {
    if (string_at(current, 3, {"CIO", "CIE", "CIA"})) {
      add("S", "X");
    } else {
      add("S");
    }
    return current + 2;
  }
  add("K");
  if (string_at(current + 1, 2, {" C", " Q", " G"})) return current + 3;
  if (string_at(current + 1, 1, {"C", "K", "Q"}) &&
      !string_at(current + 1, 2, {"CE", "CI"})) {
    return current + 2;
  }
  return current + 1;
}

int DoubleMetaphoneEncoder::encode_g(int current) {
  if (at(current + 1) == 'H') {
    if (current > 0 && !is_vowel(current - 1)) {
      add("K");
      return current + 2;
    }
    if (current == 0) {
      add(at(current + 2) == 'I' ? "J" : "K");
      return current + 2;
    }
    // Parker's rule: hugh, bough, broughton
    if ((current > 1 && string_at(current - 2, 1, {"B", "H", "D"})) ||
        (current > 2 && string_at(current - 3, 1, {"B", "H", "D"})) ||
        (current > 3 && string_at(current - 4, 1, {"B", "H"}))) {
      return current + 2;
    }
    // laugh, cough, rough, tough
    if (current > 2 && at(current - 1) == 'U' &&
        string_at(current - 3, 1, {"C", "G", "L", "R", "T"})) {
      add("F");
    } else if (current > 0 && at(current - 1) != 'I') {
      add("K");
    }
    return current + 2;
  }
  if (at(current + 1) == 'N') {
    if (current == 1 && is_vowel(0) && !slavo_germanic()) {
      add("KN", "N");
    } else if (!string_at(current + 2, 2, {"EY"}) && at(current + 1) != 'Y' &&
               !slavo_germanic()) {
      add("N", "KN");
    } else {
      add("KN");
    }
    return current + 2;
  }
  if (string_at(current + 1, 2, {"LI"}) && !slavo_germanic()) {
    add("KL", "L");
    return current + 2;
  }
  if (current == 0 &&
      (at(current + 1) == 'Y' ||
       string_at(current + 1, 2,
                 {"ES", "EP", "EB", "EL", "EY", "IB", "IL", "IN", "IE", "EI",
                  "ER"}))) {
    add("K", "J");
    return current + 2;
  }
  if ((string_at(current + 1, 2, {"ER"}) || at(current + 1) == 'Y') &&
      !string_at(0, 6, {"DANGER", "RANGER", "MANGER"}) &&
      !string_at(current - 1, 1, {"E", "I"}) &&
      !string_at(current - 1, 3, {"RGY", "OGY"})) {
    add("K", "J");
    return current + 2;
  }
  if (string_at(current + 1, 1, {"E", "I", "Y"}) ||
      string_at(current - 1, 4, {"AGGI", "OGGI"})) {
    if (string_at(0, 4, {"VAN ", "VON "}) || string_at(0, 3, {"SCH"}) ||
        string_at(current + 1, 2, {"ET"})) {
      add("K");
    } else if (string_at(current + 1, 4, {"IER "})) {
      add("J");
    } else {
      add("J", "K");
    }
    return current + 2;
  }
  add("K");
  return current + (at(current + 1) == 'G' ? 2 : 1);
}

int DoubleMetaphoneEncoder::encode_s(int current) {
  // island, isle, carlisle
  if (string_at(current - 1, 3, {"ISL", "YSL"})) return current + 1;
  if (current == 0 && string_at(current, 5, {"SUGAR"})) {
    add("X", "S");
    return current + 1;
  }
  if (string_at(current, 2, {"SH"})) {
    if (string_at(current + 1, 4, {"HEIM", "HOEK", "HOLM", "HOLZ"})) {
      add("S");
    } else {
      add("X");
    }
    return current + 2;
  }
  if (string_at(current, 3, {"SIO", "SIA"}) ||
      string_at(current, 4, {"SIAN"})) {
    if (!slavo_germanic()) {
      add("S", "X");
    } else {
      add("S");
    }
    return current + 3;
  }
  if ((current == 0 && string_at(current + 1, 1, {"M", "N", "L", "W"})) ||
      string_at(current + 1, 1, {"Z"})) {
    add("S", "X");
    return current + (string_at(current + 1, 1, {"Z"}) ? 2 : 1);
  }
  if (string_at(current, 2, {"SC"})) {
    if (at(current + 2) == 'H') {
      if (string_at(current + 3, 2, {"OO", "ER", "EN", "UY", "ED", "EM"})) {
        if (string_at(current + 3, 2, {"ER", "EN"})) {
          add("X", "SK");
        } else {
          add("SK");
        }
        return current + 3;
      }
      if (current == 0 && !is_vowel(3) && at(3) != 'W') {
        add("X", "S");
      } else {
        add("X");
      }
      return current + 3;
    }
    if (string_at(current + 2, 1, {"I", "E", "Y"})) {
      add("S");
      return current + 3;
    }
    add("SK");
    return current + 3;
  }
  if (current == last_ && string_at(current - 2, 2, {"AI", "OI"})) {
    add("", "S");
  } else {
    add("S");
  }
  return current + (string_at(current + 1, 1, {"S", "Z"}) ? 2 : 1);
}

std::pair<std::string, std::string> DoubleMetaphoneEncoder::run() {
  int current = 0;
  if (string_at(0, 2, {"GN", "KN", "PN", "WR", "PS"})) current += 1;
  if (at(0) == 'X') {
    add("S");
    current += 1;
  }

  while (current < length_) {
    const char c = at(current);
    switch (c) {
      case 'A':
      case 'E':
      case 'I':
      case 'O':
      case 'U':
      case 'Y':
        if (current == 0) add("A");
        current += 1;
        break;
      case 'B':
        add("P");
        current += at(current + 1) == 'B' ? 2 : 1;
        break;
      case 'C':
        current = encode_c(current);
        break;
      case 'D':
        if (string_at(current, 2, {"DG"})) {
          if (string_at(current + 2, 1, {"I", "E", "Y"})) {
            add("J");
            current += 3;
          } else {
            add("TK");
            current += 2;
          }
        } else if (string_at(current, 2, {"DT", "DD"})) {
          add("T");
          current += 2;
        } else {
          add("T");
          current += 1;
        }
        break;
      case 'F':
        add("F");
        current += at(current + 1) == 'F' ? 2 : 1;
        break;
      case 'G':
        current = encode_g(current);
        break;
      case 'H':
        // only kept when first or between vowels
        if ((current == 0 || is_vowel(current - 1)) && is_vowel(current + 1)) {
          add("H");
          current += 2;
        } else {
          current += 1;
        }
        break;
      case 'J':
        if (string_at(current, 4, {"JOSE"}) || string_at(0, 4, {"SAN "})) {
          if ((current == 0 && at(current + 4) == ' ') ||
              string_at(0, 4, {"SAN "})) {
            add("H");
          } else {
            add("J", "H");
          }
          current += 1;
          break;
        }
        if (current == 0 && !string_at(current, 4, {"JOSE"})) {
          add("J", "A");
        } else if (is_vowel(current - 1) && !slavo_germanic() &&
                   (at(current + 1) == 'A' || at(current + 1) == 'O')) {
          add("J", "H");
        } else if (current == last_) {
          add("J", " ");
        } else if (!string_at(current + 1, 1,
                              {"L", "T", "K", "S", "N", "M", "B", "Z"}) &&
                   !string_at(current - 1, 1, {"S", "K", "L"})) {
          add("J");
        }
        current += at(current + 1) == 'J' ? 2 : 1;
        break;
      case 'K':
        add("K");
        current += at(current + 1) == 'K' ? 2 : 1;
        break;
      case 'L':
        if (at(current + 1) == 'L') {
          // cabrillo, gallegos
          if ((current == length_ - 3 &&
               string_at(current - 1, 4, {"ILLO", "ILLA", "ALLE"})) ||
              ((string_at(last_ - 1, 2, {"AS", "OS"}) ||
                string_at(last_, 1, {"A", "O"})) &&
               string_at(current - 1, 4, {"ALLE"}))) {
            add("L", " ");
            current += 2;
            break;
          }
          current += 2;
        } else {
          current += 1;
        }
        add("L");
        break;
      case 'M':
        if ((string_at(current - 1, 3, {"UMB"}) &&
             (current + 1 == last_ || string_at(current + 2, 2, {"ER"}))) ||
            at(current + 1) == 'M') {
          current += 2;
        } else {
          current += 1;
        }
        add("M");
        break;
      case 'N':
        add("N");
        current += at(current + 1) == 'N' ? 2 : 1;
        break;
      case 'P':
        if (at(current + 1) == 'H') {
          add("F");
          current += 2;
          break;
        }
        add("P");
        current += string_at(current + 1, 1, {"P", "B"}) ? 2 : 1;
        break;
      case 'Q':
        add("K");
        current += at(current + 1) == 'Q' ? 2 : 1;
        break;
      case 'R':
        // rogier, but not hochmeier
        if (current == last_ && !slavo_germanic() &&
            string_at(current - 2, 2, {"IE"}) &&
            !string_at(current - 4, 2, {"ME", "MA"})) {
          add("", "R");
        } else {
          add("R");
        }
        current += at(current + 1) == 'R' ? 2 : 1;
        break;
      case 'S':
        current = encode_s(current);
        break;
      case 'T':
        if (string_at(current, 4, {"TION"})) {
          add("X");
          current += 3;
        } else if (string_at(current, 3, {"TIA", "TCH"})) {
          add("X");
          current += 3;
        } else if (string_at(current, 2, {"TH"}) ||
                   string_at(current, 3, {"TTH"})) {
          if (string_at(current + 2, 2, {"OM", "AM"}) ||
              string_at(0, 4, {"VAN ", "VON "}) || string_at(0, 3, {"SCH"})) {
            add("T");
          } else {
            add("0", "T");
          }
          current += 2;
        } else {
          add("T");
          current += string_at(current + 1, 1, {"T", "D"}) ? 2 : 1;
        }
        break;
      case 'V':
        add("F");
        current += at(current + 1) == 'V' ? 2 : 1;
        break;
      case 'W':
        if (string_at(current, 2, {"WR"})) {
          add("R");
          current += 2;
          break;
        }
        if (current == 0 &&
            (is_vowel(current + 1) || string_at(current, 2, {"WH"}))) {
          if (is_vowel(current + 1)) {
            add("A", "F");
          } else {
            add("A");
          }
        }
        if ((current == last_ && is_vowel(current - 1)) ||
            string_at(current - 1, 5, {"EWSKI", "EWSKY", "OWSKI", "OWSKY"}) ||
            string_at(0, 3, {"SCH"})) {
          add("", "F");
          current += 1;
          break;
        }
        if (string_at(current, 4, {"WICZ", "WITZ"})) {
          add("TS", "FX");
          current += 4;
          break;
        }
        current += 1;
        break;
      case 'X':
        // breaux
        if (!(current == last_ &&
              (string_at(current - 3, 3, {"IAU", "EAU"}) ||
               string_at(current - 2, 2, {"AU", "OU"})))) {
          add("KS");
        }
        current += string_at(current + 1, 1, {"C", "X"}) ? 2 : 1;
        break;
      case 'Z':
        if (at(current + 1) == 'H') {
          add("J");
          current += 2;
          break;
        }
        if (string_at(current + 1, 2, {"ZO", "ZI", "ZA"}) ||
            (slavo_germanic() && current > 0 && at(current - 1) != 'T')) {
          add("S", "TS");
        } else {
          add("S");
        }
        current += at(current + 1) == 'Z' ? 2 : 1;
        break;
      default:
        current += 1;
        break;
    }
  }
  return {primary_, secondary_};
}

}  // namespace

std::pair<std::string, std::string> double_metaphone(std::string_view word) {
  return DoubleMetaphoneEncoder(encodable_letters(word)).run();
}

}  // namespace asrfix
