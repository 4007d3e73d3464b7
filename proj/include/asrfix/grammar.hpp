#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asrfix/evodevo.hpp"
#include "asrfix/ontology.hpp"
#include "asrfix/postag.hpp"

namespace asrfix {

// One element of a rule's token pattern.
struct PatternElement {
  enum class Kind { kTerm, kTag, kWord, kAny };
  Kind kind = Kind::kAny;
  std::string value;  // tag ("NN*" is a prefix match) or literal word
  bool focus = false;
};

// A declarative linguistic repair rule. Rule file lines read
//
//   id | pattern | action | description
//
// Pattern: whitespace-separated elements matched against consecutive tokens.
//   TERM      a domain term (longest first, up to max_window words)
//   NN* / IN  a Penn tag, '*' suffix for a prefix match
//   =word     a literal word
//   *         any token
//   [ ... ]   wraps exactly one single-token element: the token to repair
// plus sentence guards anywhere in the pattern:
//   has:TAG, !has:TAG   some token does / no token does carry TAG
//   related, !related   the two TERMs share / do not share a triple
//   siblings, !siblings the two TERMs are / are not Ontology::siblings
// Action:
//   best:w1,w2,...  replace the focus by the phonetically fittest word
//   set:w           replace the focus by w
struct GrammarRule {
  enum class Action { kBest, kSet };

  std::string id;
  std::string pattern_text;
  std::vector<PatternElement> sequence;
  std::vector<std::string> required_tags;
  std::vector<std::string> forbidden_tags;
  std::optional<bool> terms_related;
  std::optional<bool> terms_siblings;
  Action action = Action::kBest;
  std::vector<std::string> words;
  std::string description;
};

GrammarRule parse_rule(std::string_view line);
// Throws DataError naming the line on a malformed rule.
std::vector<GrammarRule> parse_rules(std::istream& in);
std::vector<GrammarRule> load_rules(const std::string& path);

// Whether `rule` matches with its focus on token `position`.
bool rule_matches(const GrammarRule& rule, const TaggedSentence& tagged,
                  std::size_t position, const Ontology& ontology,
                  std::size_t max_window);

// Candidate with the highest phonetic_similarity to `offending`; ties go to
// the lower character edit distance, then to list order.
std::string fittest_word(std::string_view offending,
                         const std::vector<std::string>& candidates);

// Applies rules in order, each at most once per position, re-tagging the
// sentence after every firing.
RepairResult linguistic_repair(RepairResult partial,
                               const std::vector<GrammarRule>& rules,
                               const Ontology& ontology,
                               const TagLexicon& lexicon,
                               const FitnessConfig& cfg);

struct RepairContext {
  const Ontology& ontology;
  const FitnessConfig& config;
  const std::vector<GrammarRule>& rules;
  const TagLexicon& lexicon;
  const EmbeddingTable* embeddings = nullptr;
};

// tokenize -> pos_tag -> ontology_based_repair -> linguistic_repair.
RepairResult repair(std::string_view sentence, const RepairContext& ctx);
// Same, starting from an already tagged sentence.
RepairResult repair(const TaggedSentence& tagged, const RepairContext& ctx);

}  // namespace asrfix
