#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "asrfix/textcore.hpp"

namespace asrfix {

// f1 left context, f2 errors in sentence, f3 words in span, f4 right
// context, f5 vowel bag, f6 consonant bag.
enum class Feature { kLeft, kErrors, kWords, kRight, kVowels, kConsonants };
inline constexpr std::size_t kFeatureCount = 6;

using FeatureSet = std::bitset<kFeatureCount>;

// {f1, f3, f4, f5, f6}
FeatureSet default_features();
// "f1,f3,f4" -> set. Throws DataError on an unknown name or an empty list.
FeatureSet parse_feature_set(std::string_view text);
std::string feature_set_string(const FeatureSet& set);

// Label meaning "delete the span".
inline constexpr std::string_view kEmptyCorrection = "<eps>";

inline constexpr char kStartSentinel[] = "^";
inline constexpr char kEndSentinel[] = "$";

struct FeatureVector {
  std::string left;
  std::size_t errors = 1;
  std::size_t words = 1;
  std::string right;
  std::map<char, int> vowels;      // a e i o u
  std::map<char, int> consonants;  // the other 21 letters

  // Value of a categorical feature (f1..f4) as a string.
  std::string categorical(Feature f) const;
  bool operator==(const FeatureVector&) const = default;
};

// Throws InvalidArgument on an empty or out-of-bounds span, or when
// total_errors is 0.
FeatureVector extract_features(const TokenSequence& sentence, Span span,
                               std::size_t total_errors);

struct TrainingExample {
  FeatureVector features;
  std::string label;
};

// A marked span of a hypothesis with its correction.
struct LabeledSpan {
  TokenSequence sentence;
  Span span;
  std::size_t total_errors = 1;
  std::string label;

  TrainingExample example() const;
};

// sentence<TAB>start<TAB>len<TAB>correction[<TAB>errors] rows. Without the
// fifth column the error count is the number of rows sharing the sentence.
// An empty correction reads as kEmptyCorrection.
std::vector<LabeledSpan> read_training(std::istream& in);
std::vector<LabeledSpan> read_training_file(const std::string& path);
void write_training(std::ostream& out, const std::vector<LabeledSpan>& rows);

// One LabeledSpan per mispair of the aligned (hypothesis, reference) pair.
std::vector<LabeledSpan> mispair_spans(const TokenSequence& hyp,
                                       const TokenSequence& ref);

class NaiveBayesModel {
 public:
  static constexpr int kFormatVersion = 1;

  // Throws InvalidArgument on an empty set or alpha <= 0.
  static NaiveBayesModel train(const std::vector<TrainingExample>& examples,
                               double alpha = 1.0,
                               FeatureSet features = default_features());

  double alpha() const { return alpha_; }
  const FeatureSet& features() const { return features_; }
  std::vector<std::string> labels() const;
  std::size_t example_count() const { return total_; }

  double prior(std::string_view label) const;
  // P(value | label) for categorical feature f; unseen values share one
  // bucket, so observed values plus that bucket sum to 1.
  double categorical_probability(Feature f, std::string_view value,
                                 std::string_view label) const;
  // Per-character event probability of bag feature f.
  double bag_probability(Feature f, char c, std::string_view label) const;
  // Number of distinct observed values of categorical feature f.
  std::size_t vocabulary_size(Feature f) const;

  // log P(label) + sum of log likelihoods of the active features.
  double log_score(const FeatureVector& fv, std::string_view label) const;
  // Every label, best first; scores within 1e-9 relative tie and go by label.
  std::vector<std::pair<std::string, double>> classify(
      const FeatureVector& fv) const;
  std::string best_label(const FeatureVector& fv) const;

  // Versioned JSON of the raw counts.
  std::string to_json() const;
  static NaiveBayesModel from_json(std::string_view text);
  static NaiveBayesModel load(const std::string& path);
  void save(const std::string& path) const;

 private:
  using Counts = std::map<std::string, std::size_t, std::less<>>;

  struct LabelStats {
    std::size_t count = 0;
    std::array<Counts, 4> values;  // f1..f4
    std::map<char, std::size_t> vowels;
    std::map<char, std::size_t> consonants;
    std::size_t vowel_total = 0;
    std::size_t consonant_total = 0;
  };

  const LabelStats& stats(std::string_view label) const;

  double alpha_ = 1.0;
  FeatureSet features_;
  std::size_t total_ = 0;
  std::map<std::string, LabelStats, std::less<>> labels_;
  std::array<std::size_t, 4> vocabulary_{};
};

// Replaces each marked span by its top label, right to left. Features come
// from the original sentence with total_errors = spans.size(). Throws
// InvalidArgument on overlapping or out-of-bounds spans.
TokenSequence apply_repair(const NaiveBayesModel& model,
                           const TokenSequence& sentence,
                           const std::vector<Span>& spans);

struct FoldResult {
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  double accuracy = 0.0;
  double baseline = 0.0;  // majority training label on the test fold
};

struct CrossValidation {
  std::vector<FoldResult> folds;
  double mean_accuracy = 0.0;
  double mean_baseline = 0.0;
};

// Seeded shuffle, k contiguous folds (the first n % k one larger).
// Throws InvalidArgument when k < 2 or k > examples.size().
CrossValidation cross_validate(const std::vector<TrainingExample>& examples,
                               std::size_t k, double alpha,
                               std::uint64_t seed,
                               FeatureSet features = default_features());

// Fold boundaries [begin, end) over n shuffled items.
std::vector<std::pair<std::size_t, std::size_t>> fold_bounds(std::size_t n,
                                                             std::size_t k);

}  // namespace asrfix
