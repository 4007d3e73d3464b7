#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "asrfix/grammar.hpp"
#include "asrfix/mlrepair.hpp"
#include "asrfix/ontology.hpp"
#include "asrfix/postag.hpp"
#include "asrfix/textcore.hpp"

namespace asrfix {

// Seeded word-level noise model standing in for a recognizer.
struct ChannelConfig {
  double substitution_rate = 0.1;
  double deletion_rate = 0.02;
  double insertion_rate = 0.02;
  // Substitutes are drawn from words sharing the original's soundex code.
  bool phonetic_confusion = true;
  std::uint64_t seed = 1;
  // Pairs to emit; 0 means one attempt per reference.
  std::size_t count = 0;
  // Emitted pairs satisfy min_accuracy <= accuracy < max_accuracy.
  double min_accuracy = 70.0;
  double max_accuracy = 100.0;

  // Throws DataError naming the offending key.
  void validate() const;
  // "key = value" lines with the field names above.
  static ChannelConfig parse(std::istream& in);
  static ChannelConfig load(const std::string& path);
};

// Replacement words for the channel, grouped by soundex code.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> words);
  // Words of every ontology term plus every alphabetic lexicon entry.
  static Vocabulary build(const Ontology& ontology, const TagLexicon& lexicon);

  const std::vector<std::string>& words() const { return words_; }
  // Sorted words sharing `word`'s soundex code, `word` excluded.
  std::vector<std::string> sound_alikes(std::string_view word) const;

 private:
  std::vector<std::string> words_;
  std::map<std::string, std::vector<std::string>> by_code_;
};

// Reference lines, one per line; '#' comments and blank lines skipped.
std::vector<std::string> read_references(std::istream& in);
std::vector<std::string> read_references_file(const std::string& path);

// Noisy hypotheses for the references, cycling over them until cfg.count
// pairs fall in the accuracy band (or 50 * count attempts). Ids are
// "syn-0001", ... Throws InvalidArgument on an empty reference list.
std::vector<CorpusRecord> generate_corpus(
    const std::vector<std::string>& references, const ChannelConfig& cfg,
    const Vocabulary& vocabulary);

enum class Method { kEvo, kMl, kBoth };

Method parse_method(std::string_view text);
const char* method_name(Method method);

struct EvalRow {
  std::string id;
  std::string method;
  double before = 0.0;
  double after = 0.0;
  std::string output;

  double delta() const { return after - before; }
};

struct EvalSummary {
  std::string method;
  std::size_t sentences = 0;
  double mean_before = 0.0;
  double mean_after = 0.0;
  std::size_t improved = 0;
  std::size_t unchanged = 0;
  std::size_t degraded = 0;
  // Accuracy bands: exactly 100, [70, 100), below 70.
  std::size_t correct_before = 0;
  std::size_t usable_before = 0;
  std::size_t poor_before = 0;
  std::size_t correct_after = 0;
  std::size_t usable_after = 0;
  std::size_t poor_after = 0;

  double mean_delta() const { return mean_after - mean_before; }
};

struct EvalReport {
  std::vector<EvalRow> rows;

  // Aggregates over the rows of one method, recomputed on every call.
  EvalSummary summary(std::string_view method) const;
  std::vector<std::string> methods() const;
};

struct EvalInputs {
  const RepairContext* evo = nullptr;
  const NaiveBayesModel* ml = nullptr;
};

// Accuracy before and after repair for every record. ML repair marks the
// erroneous spans from the alignment with the reference. Throws
// InvalidArgument when a requested method has no inputs.
EvalReport evaluate(const std::vector<CorpusRecord>& corpus, Method method,
                    const EvalInputs& inputs);

// TSV: id, method, before, after, delta, output; summary lines start '#'.
void write_report(std::ostream& out, const EvalReport& report);

}  // namespace asrfix
