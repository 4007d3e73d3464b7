#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "asrfix/ontology.hpp"
#include "asrfix/postag.hpp"
#include "asrfix/textcore.hpp"

namespace asrfix {

// Tunables of the gene-level repair. Defaults reproduce the worked retail
// examples shipped under data/.
struct FitnessConfig {
  double w_phon = 0.6;     // weight of the phonetic agreement
  double w_edit = 0.4;     // weight of 1 - normalized edit distance
  double threshold = 0.55;
  // soundex, metaphone, edit distance, syllables, embeddings
  std::array<double, 5> b{0.2, 0.2, 0.3, 0.2, 0.1};
  std::size_t max_window = 3;
  double retrieval_floor = 0.5;

  // Throws DataError naming the offending key.
  void validate() const;

  // "key = value" lines; '#' comments. Keys: w_phon w_edit threshold b1..b5
  // max_window retrieval_floor. Unset keys keep their defaults.
  static FitnessConfig parse(std::istream& in);
  static FitnessConfig load(const std::string& path);
  std::string to_string() const;
};

// Pre-trained word vectors of one fixed dimension.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  // "word v1 v2 ... vd" per line.
  static EmbeddingTable parse(std::istream& in);
  static EmbeddingTable load(const std::string& path);

  void add(std::string word, Eigen::VectorXd vector);
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }
  const Eigen::VectorXd* find(std::string_view word) const;

  // Mean vector of the phrase's known words; nullopt when none is known.
  std::optional<Eigen::VectorXd> phrase_vector(std::string_view phrase) const;

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, Eigen::VectorXd> vectors_;
};

// w_phon * phonetic_similarity + w_edit * (1 - normalized_edit_distance).
double final_score(std::string_view span, std::string_view term,
                   const FitnessConfig& cfg);

// Five-term similarity, each term in [0, 1]:
//   b1 [soundex equal] + b2 [metaphone equal] + b3 (1 - edit distance)
//   + b4 (1 - |syl(span) - syl(term)| / max(syl(span), syl(term), 1))
//   + b5 (1 - min(1, |v(span) - v(term)|^2 / d))
// The embedding term is 0 without a table or when either side has no vector.
double cost_score(std::string_view span, std::string_view term,
                  const FitnessConfig& cfg,
                  const EmbeddingTable* embeddings = nullptr);

struct Replacement {
  Span span;  // token range in the sentence the repair started from
  std::string original;
  std::string term;
  double final_score = 0.0;
  double cost_score = 0.0;
};

struct RuleFiring {
  std::string rule_id;
  std::size_t position = 0;
  std::string before;
  std::string after;
};

struct RepairResult {
  TokenSequence input;
  TokenSequence after_gene_repair;
  TokenSequence output;
  std::vector<Replacement> replacements;
  std::vector<RuleFiring> rule_firings;
  TaggedSentence tagged_output;
};

// One (window, term) decision considered by the gene repair.
struct WindowProposal {
  Span span;
  std::string term;
  double final_score = 0.0;
  double cost_score = 0.0;
  std::size_t raw_edit = 0;
};

// Ranking used both to pick a window's best term and to order proposals:
// final score, cost score, lower raw edit distance, shorter term, term text.
bool proposal_before(const WindowProposal& a, const WindowProposal& b);

// Windows of 1..max_window tokens containing at least one NN*/VB* token and
// starting and ending on an open-class token (NN*, VB*, JJ*, RB*, CD, FW).
std::vector<Span> anchored_windows(const TaggedSentence& tagged,
                                   std::size_t max_window);

// Gene-level repair: best term per window, proposals clearing the threshold
// accepted greedily (highest first, longer window on ties) without overlap.
// Only subject/object terms replace inexact spans, never by merely adding or
// dropping words around the span ("stores" -> "shoe stores"), and digits
// must agree verbatim; predicates claim exact matches. Exact matches claim their tokens but are not recorded.
RepairResult ontology_based_repair(const TaggedSentence& tagged,
                                   const Ontology& ontology,
                                   const FitnessConfig& cfg,
                                   const EmbeddingTable* embeddings = nullptr);

}  // namespace asrfix
