#include "asrfix/postag.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "asrfix/error.hpp"

namespace asrfix {

TokenSequence TaggedSentence::tokens() const {
  std::vector<std::string> words;
  words.reserve(items.size());
  for (const auto& item : items) words.push_back(item.token);
  return make_sequence(std::move(words));
}

bool TaggedSentence::has_tag(std::string_view tag) const {
  return std::any_of(items.begin(), items.end(),
                     [&](const TaggedToken& t) { return t.tag == tag; });
}

TagLexicon TagLexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon: " + path);
  return parse(in);
}

TagLexicon TagLexicon::parse(std::istream& in) {
  TagLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw DataError("lexicon line " + std::to_string(line_no) +
                      ": expected word<TAB>TAG");
    }
    lexicon.add(to_lower(fields[0]), fields[1]);
  }
  return lexicon;
}

void TagLexicon::add(std::string word, std::string tag) {
  tags_.try_emplace(std::move(word), std::move(tag));
}

const std::string* TagLexicon::find(std::string_view word) const {
  auto it = tags_.find(std::string(word));
  return it == tags_.end() ? nullptr : &it->second;
}

std::vector<std::string> TagLexicon::words(std::string_view tag) const {
  std::vector<std::string> out;
  for (const auto& [word, t] : tags_) {
    if (tag.empty() || t == tag) out.push_back(word);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_cardinal(std::string_view word) {
  bool digit = false;
  for (char c : word) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != ',' && c != '.' && c != '-') {
      return false;
    }
  }
  return digit;
}

std::string plural_tag(std::string_view word, const TagLexicon& lexicon) {
  std::vector<std::string> stems{std::string(word.substr(0, word.size() - 1))};
  if (ends_with(word, "es")) {
    stems.emplace_back(word.substr(0, word.size() - 2));
  }
  if (ends_with(word, "ies")) {
    stems.push_back(std::string(word.substr(0, word.size() - 3)) + "y");
  }
  for (const auto& stem : stems) {
    if (const auto* tag = lexicon.find(stem)) {
      if (*tag == "NN") return "NNS";
      if (*tag == "VB") return "VBZ";
    }
  }
  if (ends_with(word, "ss") || ends_with(word, "us") || ends_with(word, "is")) {
    return "NN";
  }
  return "NNS";
}

std::string guess_tag(std::string_view word, const TagLexicon& lexicon) {
  if (is_cardinal(word)) return "CD";
  if (word.size() > 4 && ends_with(word, "ing")) return "VBG";
  if (word.size() > 3 && ends_with(word, "ed")) return "VBD";
  if (word.size() > 3 && ends_with(word, "ly")) return "RB";
  if (word.size() > 2 && ends_with(word, "s")) return plural_tag(word, lexicon);
  return "NN";
}

}  // namespace

TaggedSentence pos_tag(const TokenSequence& tokens, const TagLexicon& lexicon) {
  TaggedSentence out;
  out.items.reserve(tokens.size());
  for (const auto& token : tokens.tokens) {
    const auto* tag = lexicon.find(token);
    out.items.push_back({token, tag ? *tag : guess_tag(token, lexicon)});
  }
  return out;
}

TaggedSentence parse_tagged(std::string_view text) {
  TaggedSentence out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    std::size_t end = pos;
    while (end < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    if (end == pos) break;
    const std::string_view item = text.substr(pos, end - pos);
    const std::size_t slash = item.rfind('/');
    if (slash == std::string_view::npos || slash == 0 ||
        slash + 1 == item.size()) {
      throw DataError("bad tagged token: " + std::string(item));
    }
    out.items.push_back({to_lower(item.substr(0, slash)),
                         std::string(item.substr(slash + 1))});
    pos = end;
  }
  return out;
}

bool is_content_tag(std::string_view tag) {
  return tag.starts_with("NN") || tag.starts_with("VB");
}

std::vector<std::pair<std::size_t, std::string>> content_words(
    const TaggedSentence& tagged) {
  std::vector<std::pair<std::size_t, std::string>> out;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (is_content_tag(tagged.items[i].tag)) {
      out.emplace_back(i, tagged.items[i].token);
    }
  }
  return out;
}

}  // namespace asrfix
