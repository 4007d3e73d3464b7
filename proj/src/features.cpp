#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "asrfix/error.hpp"
#include "asrfix/mlrepair.hpp"

namespace asrfix {

namespace {

constexpr std::string_view kFeatureNames[kFeatureCount] = {"f1", "f2", "f3",
                                                           "f4", "f5", "f6"};

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

std::size_t parse_count(const std::string& text, std::size_t line_no,
                        const char* what) {
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw DataError("training line " + std::to_string(line_no) + ": bad " +
                    what + " '" + text + "'");
  }
  return value;
}

}  // namespace

FeatureSet default_features() {
  FeatureSet set;
  set.set(static_cast<std::size_t>(Feature::kLeft));
  set.set(static_cast<std::size_t>(Feature::kWords));
  set.set(static_cast<std::size_t>(Feature::kRight));
  set.set(static_cast<std::size_t>(Feature::kVowels));
  set.set(static_cast<std::size_t>(Feature::kConsonants));
  return set;
}

FeatureSet parse_feature_set(std::string_view text) {
  FeatureSet set;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string name = to_lower(text.substr(start, end - start));
    name.erase(std::remove(name.begin(), name.end(), ' '), name.end());
    const auto* it =
        std::find(std::begin(kFeatureNames), std::end(kFeatureNames), name);
    if (it == std::end(kFeatureNames)) {
      throw DataError("unknown feature '" + name + "' (expected f1..f6)");
    }
    set.set(static_cast<std::size_t>(it - std::begin(kFeatureNames)));
    start = end + 1;
  }
  if (set.none()) throw DataError("empty feature set");
  return set;
}

std::string feature_set_string(const FeatureSet& set) {
  std::string out;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (!set.test(i)) continue;
    if (!out.empty()) out.push_back(',');
    out += kFeatureNames[i];
  }
  return out;
}

std::string FeatureVector::categorical(Feature f) const {
  switch (f) {
    case Feature::kLeft:
      return left;
    case Feature::kErrors:
      return std::to_string(errors);
    case Feature::kWords:
      return std::to_string(words);
    case Feature::kRight:
      return right;
    default:
      throw InvalidArgument("not a categorical feature");
  }
}

FeatureVector extract_features(const TokenSequence& sentence, Span span,
                               std::size_t total_errors) {
  if (span.length == 0 || span.end() > sentence.size()) {
    throw InvalidArgument("span out of bounds");
  }
  if (total_errors == 0) throw InvalidArgument("total_errors must be >= 1");
  FeatureVector fv;
  fv.left = span.begin == 0 ? kStartSentinel : sentence[span.begin - 1];
  fv.right = span.end() == sentence.size() ? kEndSentinel : sentence[span.end()];
  fv.errors = total_errors;
  fv.words = span.length;
  for (std::size_t i = span.begin; i < span.end(); ++i) {
    for (char c : sentence[i]) {
      const char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (lc < 'a' || lc > 'z') continue;
      ++(is_vowel(lc) ? fv.vowels : fv.consonants)[lc];
    }
  }
  return fv;
}

TrainingExample LabeledSpan::example() const {
  return {extract_features(sentence, span, total_errors), label};
}

std::vector<LabeledSpan> read_training(std::istream& in) {
  std::vector<LabeledSpan> rows;
  std::vector<bool> explicit_errors;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 4 && fields.size() != 5) {
      throw DataError("training line " + std::to_string(line_no) +
                      ": expected 4 or 5 tab-separated fields");
    }
    LabeledSpan row;
    row.sentence = tokenize(fields[0]);
    row.span.begin = parse_count(fields[1], line_no, "start");
    row.span.length = parse_count(fields[2], line_no, "length");
    if (row.span.length == 0 || row.span.end() > row.sentence.size()) {
      throw DataError("training line " + std::to_string(line_no) +
                      ": span outside the sentence");
    }
    row.label = fields[3] == kEmptyCorrection ? fields[3]
                                              : detokenize(tokenize(fields[3]));
    if (row.label.empty()) row.label = kEmptyCorrection;
    if (fields.size() == 5) {
      row.total_errors = parse_count(fields[4], line_no, "error count");
      if (row.total_errors == 0) {
        throw DataError("training line " + std::to_string(line_no) +
                        ": error count must be >= 1");
      }
    }
    explicit_errors.push_back(fields.size() == 5);
    rows.push_back(std::move(row));
  }
  std::unordered_map<std::string, std::size_t> per_sentence;
  for (const auto& row : rows) ++per_sentence[detokenize(row.sentence)];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!explicit_errors[i]) {
      rows[i].total_errors = per_sentence[detokenize(rows[i].sentence)];
    }
  }
  return rows;
}

std::vector<LabeledSpan> read_training_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open training file: " + path);
  return read_training(in);
}

void write_training(std::ostream& out, const std::vector<LabeledSpan>& rows) {
  for (const auto& row : rows) {
    out << detokenize(row.sentence) << '\t' << row.span.begin << '\t'
        << row.span.length << '\t'
        << (row.label == kEmptyCorrection ? std::string() : row.label) << '\t'
        << row.total_errors << '\n';
  }
}

std::vector<LabeledSpan> mispair_spans(const TokenSequence& hyp,
                                       const TokenSequence& ref) {
  const auto pairs = extract_mispairs(align(hyp, ref), hyp, ref);
  std::vector<LabeledSpan> rows;
  for (const auto& p : pairs) {
    std::string label = p.correction_text();
    if (label.empty()) label = kEmptyCorrection;
    rows.push_back({hyp, p.erroneous, pairs.size(), std::move(label)});
  }
  return rows;
}

TokenSequence apply_repair(const NaiveBayesModel& model,
                           const TokenSequence& sentence,
                           const std::vector<Span>& spans) {
  std::vector<Span> order = spans;
  std::sort(order.begin(), order.end(),
            [](const Span& a, const Span& b) { return a.begin > b.begin; });
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i].length == 0 || order[i].end() > sentence.size()) {
      throw InvalidArgument("marked span out of bounds");
    }
    if (i > 0 && order[i].overlaps(order[i - 1])) {
      throw InvalidArgument("marked spans overlap");
    }
  }
  std::vector<std::string> words = sentence.tokens;
  for (const Span& span : order) {
    const std::string label =
        model.best_label(extract_features(sentence, span, spans.size()));
    std::vector<std::string> replacement;
    if (label != kEmptyCorrection) replacement = tokenize(label).tokens;
    words.erase(words.begin() + static_cast<std::ptrdiff_t>(span.begin),
                words.begin() + static_cast<std::ptrdiff_t>(span.end()));
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(span.begin),
                 replacement.begin(), replacement.end());
  }
  return make_sequence(std::move(words));
}

}  // namespace asrfix
