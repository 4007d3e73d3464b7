#include "asrfix/harness.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "asrfix/error.hpp"
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
  if (used == 0 || used != value.size()) {
    throw DataError("channel key '" + key + "': not a number: " + value);
  }
  return out;
}

bool alphabetic(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) {
    return c >= 'a' && c <= 'z';
  });
}

}  // namespace

void ChannelConfig::validate() const {
  auto rate = [](const char* key, double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DataError(std::string("channel key '") + key + "' must be in [0, 1]");
    }
  };
  rate("substitution_rate", substitution_rate);
  rate("deletion_rate", deletion_rate);
  rate("insertion_rate", insertion_rate);
  if (substitution_rate + deletion_rate + insertion_rate > 1.0 + 1e-12) {
    throw DataError("channel key 'insertion_rate': rates sum above 1");
  }
  if (!(min_accuracy >= 0.0 && min_accuracy <= max_accuracy)) {
    throw DataError("channel key 'min_accuracy' must be in [0, max_accuracy]");
  }
}

ChannelConfig ChannelConfig::parse(std::istream& in) {
  ChannelConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw DataError("channel line without '=': " + t);
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "substitution_rate") {
      cfg.substitution_rate = parse_real(key, value);
    } else if (key == "deletion_rate") {
      cfg.deletion_rate = parse_real(key, value);
    } else if (key == "insertion_rate") {
      cfg.insertion_rate = parse_real(key, value);
    } else if (key == "phonetic_confusion") {
      if (value != "true" && value != "false") {
        throw DataError("channel key 'phonetic_confusion' must be true or false");
      }
      cfg.phonetic_confusion = value == "true";
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_real(key, value));
    } else if (key == "count") {
      const double c = parse_real(key, value);
      if (c < 0) throw DataError("channel key 'count' must be >= 0");
      cfg.count = static_cast<std::size_t>(c);
    } else if (key == "min_accuracy") {
      cfg.min_accuracy = parse_real(key, value);
    } else if (key == "max_accuracy") {
      cfg.max_accuracy = parse_real(key, value);
    } else {
      throw DataError("unknown channel key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ChannelConfig ChannelConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open channel config: " + path);
  return parse(in);
}

Vocabulary::Vocabulary(std::vector<std::string> words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  words_ = std::move(words);
  for (const auto& w : words_) {
    if (is_encodable(w)) by_code_[soundex(w)].push_back(w);
  }
}

Vocabulary Vocabulary::build(const Ontology& ontology,
                             const TagLexicon& lexicon) {
  std::vector<std::string> words;
  for (const auto& term : ontology.terms()) {
    for (auto& w : tokenize(term).tokens) {
      if (alphabetic(w)) words.push_back(std::move(w));
    }
  }
  for (auto& w : lexicon.words()) {
    if (alphabetic(w)) words.push_back(std::move(w));
  }
  return Vocabulary(std::move(words));
}

std::vector<std::string> Vocabulary::sound_alikes(std::string_view word) const {
  if (!is_encodable(word)) return {};
  const auto it = by_code_.find(soundex(word));
  if (it == by_code_.end()) return {};
  std::vector<std::string> out;
  for (const auto& w : it->second) {
    if (w != word) out.push_back(w);
  }
  return out;
}

std::vector<std::string> read_references(std::istream& in) {
  std::vector<std::string> refs;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    refs.push_back(t);
  }
  return refs;
}

std::vector<std::string> read_references_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open references: " + path);
  return read_references(in);
}

std::vector<CorpusRecord> generate_corpus(
    const std::vector<std::string>& references, const ChannelConfig& cfg,
    const Vocabulary& vocabulary) {
  if (references.empty()) throw InvalidArgument("empty reference list");
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto pick = [&](const std::vector<std::string>& pool) -> std::string {
    std::uniform_int_distribution<std::size_t> at(0, pool.size() - 1);
    return pool[at(rng)];
  };
  auto substitute = [&](const std::string& word) -> std::string {
    if (cfg.phonetic_confusion) {
      const auto alikes = vocabulary.sound_alikes(word);
      if (!alikes.empty()) return pick(alikes);
    }
    if (vocabulary.words().empty()) return word;
    return pick(vocabulary.words());
  };

  const std::size_t target = cfg.count == 0 ? references.size() : cfg.count;
  const std::size_t attempts = cfg.count == 0 ? references.size() : 50 * cfg.count;
  std::vector<CorpusRecord> out;
  for (std::size_t n = 0; n < attempts && out.size() < target; ++n) {
    const TokenSequence ref = tokenize(references[n % references.size()]);
    if (ref.empty()) continue;
    std::vector<std::string> hyp;
    for (const auto& word : ref.tokens) {
      const double r = coin(rng);
      if (r < cfg.substitution_rate) {
        hyp.push_back(substitute(word));
      } else if (r < cfg.substitution_rate + cfg.deletion_rate) {
        continue;
      } else if (r < cfg.substitution_rate + cfg.deletion_rate +
                         cfg.insertion_rate &&
                 !vocabulary.words().empty()) {
        hyp.push_back(word);
        hyp.push_back(pick(vocabulary.words()));
      } else {
        hyp.push_back(word);
      }
    }
    const TokenSequence h = make_sequence(std::move(hyp));
    const double acc = accuracy(h, ref);
    if (acc < cfg.min_accuracy || acc >= cfg.max_accuracy) continue;
    std::ostringstream id;
    id << "syn-" << std::setw(4) << std::setfill('0') << out.size() + 1;
    out.push_back({id.str(), detokenize(ref), detokenize(h), {}});
  }
  return out;
}

Method parse_method(std::string_view text) {
  if (text == "evo") return Method::kEvo;
  if (text == "ml") return Method::kMl;
  if (text == "both") return Method::kBoth;
  throw InvalidArgument("method must be evo, ml or both");
}

const char* method_name(Method method) {
  switch (method) {
    case Method::kEvo:
      return "evo";
    case Method::kMl:
      return "ml";
    case Method::kBoth:
      return "both";
  }
  return "?";
}

EvalSummary EvalReport::summary(std::string_view method) const {
  EvalSummary s;
  s.method = std::string(method);
  auto band = [](double acc, std::size_t& correct, std::size_t& usable,
                 std::size_t& poor) {
    if (acc >= 100.0) {
      ++correct;
    } else if (acc >= 70.0) {
      ++usable;
    } else {
      ++poor;
    }
  };
  for (const auto& row : rows) {
    if (row.method != method) continue;
    ++s.sentences;
    s.mean_before += row.before;
    s.mean_after += row.after;
    if (row.after > row.before) {
      ++s.improved;
    } else if (row.after < row.before) {
      ++s.degraded;
    } else {
      ++s.unchanged;
    }
    band(row.before, s.correct_before, s.usable_before, s.poor_before);
    band(row.after, s.correct_after, s.usable_after, s.poor_after);
  }
  if (s.sentences > 0) {
    s.mean_before /= static_cast<double>(s.sentences);
    s.mean_after /= static_cast<double>(s.sentences);
  }
  return s;
}

std::vector<std::string> EvalReport::methods() const {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    if (std::find(out.begin(), out.end(), row.method) == out.end()) {
      out.push_back(row.method);
    }
  }
  return out;
}

EvalReport evaluate(const std::vector<CorpusRecord>& corpus, Method method,
                    const EvalInputs& inputs) {
  const bool evo = method != Method::kMl;
  const bool ml = method != Method::kEvo;
  if (evo && inputs.evo == nullptr) {
    throw InvalidArgument("evo evaluation needs an ontology and config");
  }
  if (ml && inputs.ml == nullptr) {
    throw InvalidArgument("ml evaluation needs a model");
  }
  EvalReport report;
  for (const auto& record : corpus) {
    const TokenSequence ref = tokenize(record.reference);
    const TokenSequence hyp = tokenize(record.hypothesis);
    const double before = accuracy(hyp, ref);
    if (evo) {
      const RepairResult r =
          record.tagged.empty()
              ? repair(record.hypothesis, *inputs.evo)
              : repair(parse_tagged(record.tagged), *inputs.evo);
      report.rows.push_back({record.id, "evo", before,
                             accuracy(r.output, ref), detokenize(r.output)});
    }
    if (ml) {
      std::vector<Span> spans;
      for (const auto& p : extract_mispairs(align(hyp, ref), hyp, ref)) {
        spans.push_back(p.erroneous);
      }
      const TokenSequence out = apply_repair(*inputs.ml, hyp, spans);
      report.rows.push_back(
          {record.id, "ml", before, accuracy(out, ref), detokenize(out)});
    }
  }
  return report;
}

void write_report(std::ostream& out, const EvalReport& report) {
  out << "# deltas are absolute accuracy points (after - before)\n";
  out << "id\tmethod\tbefore\tafter\tdelta\toutput\n";
  for (const auto& row : report.rows) {
    out << row.id << '\t' << row.method << '\t' << format_percent(row.before)
        << '\t' << format_percent(row.after) << '\t'
        << format_percent(row.delta()) << '\t' << row.output << '\n';
  }
  for (const auto& method : report.methods()) {
    const EvalSummary s = report.summary(method);
    out << "# " << method << " sentences=" << s.sentences
        << " mean_before=" << format_percent(s.mean_before)
        << " mean_after=" << format_percent(s.mean_after)
        << " mean_delta=" << format_percent(s.mean_delta())
        << " improved=" << s.improved << " unchanged=" << s.unchanged
        << " degraded=" << s.degraded << '\n';
    out << "# " << method << " bands before correct=" << s.correct_before
        << " >=70=" << s.usable_before << " <70=" << s.poor_before
        << " after correct=" << s.correct_after << " >=70=" << s.usable_after
        << " <70=" << s.poor_after << '\n';
  }
}

}  // namespace asrfix
