#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "asrfix/textcore.hpp"

namespace asrfix {

struct TaggedToken {
  std::string token;
  std::string tag;  // Penn Treebank tag

  bool operator==(const TaggedToken&) const = default;
};

struct TaggedSentence {
  std::vector<TaggedToken> items;

  std::size_t size() const { return items.size(); }
  TokenSequence tokens() const;
  bool has_tag(std::string_view tag) const;
};

// Immutable word -> tag table. The first tag listed for a word wins.
class TagLexicon {
 public:
  TagLexicon() = default;

  // UTF-8 TSV of word<TAB>TAG lines; '#' comments allowed.
  static TagLexicon load(const std::string& path);
  static TagLexicon parse(std::istream& in);

  void add(std::string word, std::string tag);
  const std::string* find(std::string_view word) const;
  std::size_t size() const { return tags_.size(); }

  // Every word carrying `tag` (or any tag when empty), sorted.
  std::vector<std::string> words(std::string_view tag = {}) const;

 private:
  std::unordered_map<std::string, std::string> tags_;
};

// Lexicon lookup, then suffix rules for unknown words: digit strings -> CD,
// -ing -> VBG, -ed -> VBD, -ly -> RB, -s over a known noun -> NNS (over a
// known verb -> VBZ), other plural-looking -s -> NNS, default NN.
TaggedSentence pos_tag(const TokenSequence& tokens, const TagLexicon& lexicon);

// Parses "token/TAG token/TAG ..." (the corpus fourth column).
TaggedSentence parse_tagged(std::string_view text);

// Tokens tagged NN* or VB*, as (index, token) in sentence order.
std::vector<std::pair<std::size_t, std::string>> content_words(
    const TaggedSentence& tagged);

bool is_content_tag(std::string_view tag);

}  // namespace asrfix
