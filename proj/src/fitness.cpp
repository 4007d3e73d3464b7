#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "asrfix/error.hpp"
#include "asrfix/evodevo.hpp"
#include "asrfix/phonetics.hpp"

namespace asrfix {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size() || !std::isfinite(out)) {
    throw DataError("config key '" + key + "': not a number: " + value);
  }
  return out;
}

}  // namespace

void FitnessConfig::validate() const {
  auto unit = [](const char* key, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DataError(std::string("config key '") + key +
                      "' must lie in [0, 1]");
    }
  };
  unit("w_phon", w_phon);
  unit("w_edit", w_edit);
  if (std::abs(w_phon + w_edit - 1.0) > 1e-9) {
    throw DataError("config key 'w_edit': w_phon + w_edit must equal 1");
  }
  // threshold may exceed 1 to disable replacement entirely
  if (!(threshold >= 0.0)) {
    throw DataError("config key 'threshold' must be non-negative");
  }
  double b_sum = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::string key = "b" + std::to_string(i + 1);
    unit(key.c_str(), b[i]);
    b_sum += b[i];
  }
  if (std::abs(b_sum - 1.0) > 1e-9) {
    throw DataError("config key 'b5': b1 + ... + b5 must equal 1");
  }
  if (max_window < 1 || max_window > 5) {
    throw DataError("config key 'max_window' must lie in [1, 5]");
  }
  unit("retrieval_floor", retrieval_floor);
}

FitnessConfig FitnessConfig::parse(std::istream& in) {
  FitnessConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DataError("config line " + std::to_string(line_no) +
                      ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "w_phon") {
      cfg.w_phon = parse_real(key, value);
    } else if (key == "w_edit") {
      cfg.w_edit = parse_real(key, value);
    } else if (key == "threshold") {
      cfg.threshold = parse_real(key, value);
    } else if (key.size() == 2 && key[0] == 'b' && key[1] >= '1' &&
               key[1] <= '5') {
      cfg.b[key[1] - '1'] = parse_real(key, value);
    } else if (key == "max_window") {
      const double w = parse_real(key, value);
      if (w != std::floor(w) || w < 0) {
        throw DataError("config key 'max_window': not an integer: " + value);
      }
      cfg.max_window = static_cast<std::size_t>(w);
    } else if (key == "retrieval_floor") {
      cfg.retrieval_floor = parse_real(key, value);
    } else {
      throw DataError("config key '" + key + "': unknown key");
    }
  }
  cfg.validate();
  return cfg;
}

FitnessConfig FitnessConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config: " + path);
  return parse(in);
}

namespace {

// Shortest text that reads back to the same double.
std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string FitnessConfig::to_string() const {
  std::ostringstream out;
  out << "w_phon = " << shortest(w_phon) << "\nw_edit = " << shortest(w_edit)
      << "\nthreshold = " << shortest(threshold) << '\n';
  for (std::size_t i = 0; i < b.size(); ++i) {
    out << 'b' << i + 1 << " = " << shortest(b[i]) << '\n';
  }
  out << "max_window = " << max_window
      << "\nretrieval_floor = " << shortest(retrieval_floor) << '\n';
  return out.str();
}

EmbeddingTable EmbeddingTable::parse(std::istream& in) {
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;
    std::vector<double> values;
    std::string item;
    while (fields >> item) {
      try {
        values.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw DataError("embeddings line " + std::to_string(line_no) +
                        ": bad number '" + item + "'");
      }
    }
    if (values.empty() ||
        (table.dimension_ != 0 && values.size() != table.dimension_)) {
      throw DataError("embeddings line " + std::to_string(line_no) +
                      ": expected " + std::to_string(table.dimension_) +
                      " values, got " + std::to_string(values.size()));
    }
    table.add(to_lower(word),
              Eigen::Map<Eigen::VectorXd>(values.data(),
                                          static_cast<Eigen::Index>(values.size())));
  }
  return table;
}

EmbeddingTable EmbeddingTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open embeddings: " + path);
  return parse(in);
}

void EmbeddingTable::add(std::string word, Eigen::VectorXd vector) {
  if (dimension_ == 0) dimension_ = static_cast<std::size_t>(vector.size());
  if (static_cast<std::size_t>(vector.size()) != dimension_) {
    throw DataError("embedding for '" + word + "' has the wrong dimension");
  }
  vectors_.insert_or_assign(std::move(word), std::move(vector));
}

const Eigen::VectorXd* EmbeddingTable::find(std::string_view word) const {
  auto it = vectors_.find(std::string(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

std::optional<Eigen::VectorXd> EmbeddingTable::phrase_vector(
    std::string_view phrase) const {
  if (dimension_ == 0) return std::nullopt;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dimension_));
  int known = 0;
  for (const auto& word : tokenize(phrase).tokens) {
    if (const auto* v = find(word)) {
      sum += *v;
      ++known;
    }
  }
  if (known == 0) return std::nullopt;
  return sum / known;
}

double final_score(std::string_view span, std::string_view term,
                   const FitnessConfig& cfg) {
  return cfg.w_phon * phonetic_similarity(span, term) +
         cfg.w_edit * (1.0 - normalized_edit_distance(span, term));
}

double cost_score(std::string_view span, std::string_view term,
                  const FitnessConfig& cfg, const EmbeddingTable* embeddings) {
  double soundex_eq = 0.0;
  double metaphone_eq = 0.0;
  if (is_encodable(span) && is_encodable(term)) {
    soundex_eq = soundex(span) == soundex(term) ? 1.0 : 0.0;
    metaphone_eq = metaphone(span) == metaphone(term) ? 1.0 : 0.0;
  }
  const double edit = 1.0 - normalized_edit_distance(span, term);
  const int syl_span = syllable_count(span);
  const int syl_term = syllable_count(term);
  const double syl =
      1.0 - static_cast<double>(std::abs(syl_span - syl_term)) /
                std::max({syl_span, syl_term, 1});
  double embed = 0.0;
  if (embeddings != nullptr && embeddings->dimension() > 0) {
    const auto u = embeddings->phrase_vector(span);
    const auto v = embeddings->phrase_vector(term);
    if (u && v) {
      const double dist = (*u - *v).squaredNorm() /
                          static_cast<double>(embeddings->dimension());
      embed = 1.0 - std::min(1.0, dist);
    }
  }
  return cfg.b[0] * soundex_eq + cfg.b[1] * metaphone_eq + cfg.b[2] * edit +
         cfg.b[3] * syl + cfg.b[4] * embed;
}

}  // namespace asrfix
