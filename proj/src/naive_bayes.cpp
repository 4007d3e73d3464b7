#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

#include "asrfix/error.hpp"
#include "asrfix/mlrepair.hpp"

namespace asrfix {

namespace {

constexpr std::size_t kVowelCount = 5;
constexpr std::size_t kConsonantCount = 21;

constexpr std::size_t index_of(Feature f) { return static_cast<std::size_t>(f); }

constexpr Feature kCategorical[] = {Feature::kLeft, Feature::kErrors,
                                    Feature::kWords, Feature::kRight};

}  // namespace

NaiveBayesModel NaiveBayesModel::train(
    const std::vector<TrainingExample>& examples, double alpha,
    FeatureSet features) {
  if (examples.empty()) throw InvalidArgument("empty training set");
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be > 0");
  NaiveBayesModel m;
  m.alpha_ = alpha;
  m.features_ = features;
  m.total_ = examples.size();
  std::array<std::set<std::string>, 4> seen;
  for (const auto& ex : examples) {
    if (ex.label.empty()) throw InvalidArgument("empty training label");
    LabelStats& s = m.labels_[ex.label];
    ++s.count;
    for (Feature f : kCategorical) {
      const std::string value = ex.features.categorical(f);
      ++s.values[index_of(f)][value];
      seen[index_of(f)].insert(value);
    }
    for (auto [c, n] : ex.features.vowels) {
      s.vowels[c] += static_cast<std::size_t>(n);
      s.vowel_total += static_cast<std::size_t>(n);
    }
    for (auto [c, n] : ex.features.consonants) {
      s.consonants[c] += static_cast<std::size_t>(n);
      s.consonant_total += static_cast<std::size_t>(n);
    }
  }
  for (std::size_t i = 0; i < 4; ++i) m.vocabulary_[i] = seen[i].size();
  return m;
}

std::vector<std::string> NaiveBayesModel::labels() const {
  std::vector<std::string> out;
  for (const auto& [label, _] : labels_) out.push_back(label);
  return out;
}

const NaiveBayesModel::LabelStats& NaiveBayesModel::stats(
    std::string_view label) const {
  const auto it = labels_.find(label);
  if (it == labels_.end()) {
    throw InvalidArgument("unknown label '" + std::string(label) + "'");
  }
  return it->second;
}

double NaiveBayesModel::prior(std::string_view label) const {
  return static_cast<double>(stats(label).count) / static_cast<double>(total_);
}

std::size_t NaiveBayesModel::vocabulary_size(Feature f) const {
  if (index_of(f) >= 4) throw InvalidArgument("not a categorical feature");
  return vocabulary_[index_of(f)];
}

double NaiveBayesModel::categorical_probability(Feature f,
                                                std::string_view value,
                                                std::string_view label) const {
  const LabelStats& s = stats(label);
  const auto& counts = s.values.at(index_of(f));
  const auto it = counts.find(value);
  const double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
  const double v = static_cast<double>(vocabulary_size(f));
  return (c + alpha_) / (static_cast<double>(s.count) + alpha_ * (v + 1.0));
}

double NaiveBayesModel::bag_probability(Feature f, char c,
                                        std::string_view label) const {
  const LabelStats& s = stats(label);
  const bool vowels = f == Feature::kVowels;
  if (!vowels && f != Feature::kConsonants) {
    throw InvalidArgument("not a bag feature");
  }
  const auto& counts = vowels ? s.vowels : s.consonants;
  const auto it = counts.find(c);
  const double n = it == counts.end() ? 0.0 : static_cast<double>(it->second);
  const double total =
      static_cast<double>(vowels ? s.vowel_total : s.consonant_total);
  const double alphabet = vowels ? kVowelCount : kConsonantCount;
  return (n + alpha_) / (total + alpha_ * alphabet);
}

double NaiveBayesModel::log_score(const FeatureVector& fv,
                                  std::string_view label) const {
  double score = std::log(prior(label));
  for (Feature f : kCategorical) {
    if (!features_.test(index_of(f))) continue;
    score += std::log(categorical_probability(f, fv.categorical(f), label));
  }
  if (features_.test(index_of(Feature::kVowels))) {
    for (auto [c, n] : fv.vowels) {
      score += n * std::log(bag_probability(Feature::kVowels, c, label));
    }
  }
  if (features_.test(index_of(Feature::kConsonants))) {
    for (auto [c, n] : fv.consonants) {
      score += n * std::log(bag_probability(Feature::kConsonants, c, label));
    }
  }
  return score;
}

std::vector<std::pair<std::string, double>> NaiveBayesModel::classify(
    const FeatureVector& fv) const {
  std::vector<std::pair<std::string, double>> ranked;
  ranked.reserve(labels_.size());
  for (const auto& [label, _] : labels_) {
    ranked.emplace_back(label, log_score(fv, label));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  // Equal posteriors summed in a different order can differ in the last
  // bits; scores this close count as ties and go by label.
  for (std::size_t i = 0; i < ranked.size();) {
    const double head = ranked[i].second;
    const double tol = 1e-9 * std::max(1.0, std::abs(head));
    std::size_t j = i + 1;
    while (j < ranked.size() && head - ranked[j].second <= tol) ++j;
    std::sort(ranked.begin() + static_cast<std::ptrdiff_t>(i),
              ranked.begin() + static_cast<std::ptrdiff_t>(j),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    i = j;
  }
  return ranked;
}

std::string NaiveBayesModel::best_label(const FeatureVector& fv) const {
  return classify(fv).front().first;
}

std::string NaiveBayesModel::to_json() const {
  using nlohmann::json;
  json labels = json::object();
  for (const auto& [label, s] : labels_) {
    json entry;
    entry["count"] = s.count;
    for (Feature f : kCategorical) {
      json values = json::object();
      for (const auto& [v, n] : s.values[index_of(f)]) values[v] = n;
      entry["f" + std::to_string(index_of(f) + 1)] = values;
    }
    json vowels = json::object();
    for (auto [c, n] : s.vowels) vowels[std::string(1, c)] = n;
    json consonants = json::object();
    for (auto [c, n] : s.consonants) consonants[std::string(1, c)] = n;
    entry["f5"] = vowels;
    entry["f6"] = consonants;
    labels[label] = entry;
  }
  json doc;
  doc["format"] = "asrfix-naive-bayes";
  doc["version"] = kFormatVersion;
  doc["alpha"] = alpha_;
  doc["features"] = feature_set_string(features_);
  doc["labels"] = labels;
  return doc.dump(1);
}

NaiveBayesModel NaiveBayesModel::from_json(std::string_view text) {
  using nlohmann::json;
  NaiveBayesModel m;
  try {
    const json doc = json::parse(text);
    if (doc.at("format") != "asrfix-naive-bayes") {
      throw DataError("not a naive bayes model");
    }
    if (doc.at("version").get<int>() != kFormatVersion) {
      throw DataError("unsupported model version " + doc.at("version").dump());
    }
    m.alpha_ = doc.at("alpha").get<double>();
    if (!(m.alpha_ > 0.0)) throw DataError("model alpha must be > 0");
    m.features_ = parse_feature_set(doc.at("features").get<std::string>());
    std::array<std::set<std::string>, 4> seen;
    for (const auto& [label, entry] : doc.at("labels").items()) {
      LabelStats& s = m.labels_[label];
      s.count = entry.at("count").get<std::size_t>();
      m.total_ += s.count;
      for (Feature f : kCategorical) {
        const auto key = "f" + std::to_string(index_of(f) + 1);
        for (const auto& [v, n] : entry.at(key).items()) {
          s.values[index_of(f)][v] = n.get<std::size_t>();
          seen[index_of(f)].insert(v);
        }
      }
      for (const auto& [c, n] : entry.at("f5").items()) {
        s.vowels[c.at(0)] = n.get<std::size_t>();
        s.vowel_total += n.get<std::size_t>();
      }
      for (const auto& [c, n] : entry.at("f6").items()) {
        s.consonants[c.at(0)] = n.get<std::size_t>();
        s.consonant_total += n.get<std::size_t>();
      }
    }
    for (std::size_t i = 0; i < 4; ++i) m.vocabulary_[i] = seen[i].size();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model: ") + e.what());
  }
  if (m.total_ == 0) throw DataError("model has no training examples");
  return m;
}

NaiveBayesModel NaiveBayesModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

void NaiveBayesModel::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model: " + path);
  out << to_json() << '\n';
}

std::vector<std::pair<std::size_t, std::size_t>> fold_bounds(std::size_t n,
                                                             std::size_t k) {
  if (k < 2) throw InvalidArgument("k must be >= 2");
  if (k > n) throw InvalidArgument("k exceeds the number of examples");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t size = n / k + (i < n % k ? 1 : 0);
    out.emplace_back(begin, begin + size);
    begin += size;
  }
  return out;
}

CrossValidation cross_validate(const std::vector<TrainingExample>& examples,
                               std::size_t k, double alpha, std::uint64_t seed,
                               FeatureSet features) {
  const auto bounds = fold_bounds(examples.size(), k);
  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  CrossValidation cv;
  for (const auto& [begin, end] : bounds) {
    std::vector<TrainingExample> train;
    std::map<std::string, std::size_t> label_counts;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i >= begin && i < end) continue;
      train.push_back(examples[order[i]]);
      ++label_counts[examples[order[i]].label];
    }
    std::string majority;
    std::size_t majority_count = 0;
    for (const auto& [label, n] : label_counts) {
      if (n > majority_count) {
        majority = label;
        majority_count = n;
      }
    }
    const auto model = NaiveBayesModel::train(train, alpha, features);
    std::size_t hits = 0;
    std::size_t baseline_hits = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& ex = examples[order[i]];
      if (model.best_label(ex.features) == ex.label) ++hits;
      if (majority == ex.label) ++baseline_hits;
    }
    const double n = static_cast<double>(end - begin);
    cv.folds.push_back({train.size(), end - begin, hits / n,
                        baseline_hits / n});
  }
  for (const auto& f : cv.folds) {
    cv.mean_accuracy += f.accuracy / static_cast<double>(cv.folds.size());
    cv.mean_baseline += f.baseline / static_cast<double>(cv.folds.size());
  }
  return cv;
}

}  // namespace asrfix
