#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace asrfix {

// Normalized words of a transcript. Tokens are lowercase, never empty and
// never contain whitespace.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::string source;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens[i]; }

  bool operator==(const TokenSequence& other) const {
    return tokens == other.tokens;
  }
};

// Half-open token range [begin, begin + length).
struct Span {
  std::size_t begin = 0;
  std::size_t length = 0;

  std::size_t end() const { return begin + length; }
  bool overlaps(const Span& other) const {
    return begin < other.end() && other.begin < end();
  }
  bool operator==(const Span&) const = default;
};

TokenSequence tokenize(std::string_view raw);
std::string detokenize(const TokenSequence& seq);
TokenSequence make_sequence(std::vector<std::string> tokens);

// Space-joined words of tokens[span].
std::string join_span(const TokenSequence& seq, Span span);

enum class EditOp { kMatch, kSubstitute, kInsert, kDelete };

// One alignment step. Insert consumes a hypothesis token only (the
// hypothesis has an extra word); Delete consumes a reference token only (the
// hypothesis lost a word). Unused indices are kNone.
struct AlignStep {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  EditOp op = EditOp::kMatch;
  std::size_t hyp = kNone;
  std::size_t ref = kNone;

  bool operator==(const AlignStep&) const = default;
};

struct AlignmentTrace {
  std::vector<AlignStep> ops;
  std::size_t cost = 0;
};

// Minimal word-level Levenshtein alignment. Equal-cost paths are resolved
// during the backtrace by preferring Match, then Substitute, Delete, Insert.
AlignmentTrace align(const TokenSequence& hyp, const TokenSequence& ref);

// 100 * (|ref| - edits) / |ref|, floored at 0. Throws InvalidArgument on an
// empty reference. The value is unrounded; use format_percent for display.
double accuracy(const TokenSequence& hyp, const TokenSequence& ref);

// One decimal, half-up ("80.95" -> "81.0").
std::string format_percent(double value);

struct Mispair {
  Span erroneous;   // hypothesis tokens, length >= 1
  Span correction;  // reference tokens, length >= 0
  std::vector<std::string> erroneous_words;
  std::vector<std::string> correction_words;

  std::string erroneous_text() const;
  std::string correction_text() const;
};

// Groups maximal runs of non-Match steps. A run that touches no hypothesis
// token (pure deletion) absorbs its neighbouring matched word, left one
// preferred, so every erroneous span holds at least one token.
std::vector<Mispair> extract_mispairs(const AlignmentTrace& trace,
                                      const TokenSequence& hyp,
                                      const TokenSequence& ref);

// Replaces every erroneous span by its correction.
TokenSequence apply_mispairs(const TokenSequence& hyp,
                             const std::vector<Mispair>& pairs);

// Character-level Levenshtein distance.
std::size_t levenshtein(std::string_view a, std::string_view b);

// Levenshtein / max(len) on lowercased, whitespace-stripped strings; 0 when
// both are empty.
double normalized_edit_distance(std::string_view a, std::string_view b);

std::string strip_whitespace(std::string_view s);
std::string to_lower(std::string_view s);

struct CorpusRecord {
  std::string id;
  std::string reference;
  std::string hypothesis;
  std::string tagged;  // optional fourth column: "token/TAG ..."
};

// UTF-8 TSV: id<TAB>reference<TAB>hypothesis[<TAB>tagged]. '#' lines and
// blank lines are skipped. Throws DataError naming the line on bad arity.
std::vector<CorpusRecord> read_corpus(std::istream& in);
std::vector<CorpusRecord> read_corpus_file(const std::string& path);
void write_corpus(std::ostream& out, const std::vector<CorpusRecord>& records);

// Splits on '\t' keeping empty fields.
std::vector<std::string> split_tabs(std::string_view line);

}  // namespace asrfix
