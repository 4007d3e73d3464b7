// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failing criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "asrfix/harness.hpp"
#include "oracles.hpp"
#include "paths.hpp"
#include "properties.hpp"

using namespace asrfix;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail,
            Clock::time_point start) {
  const double s = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%s  criterion %d  %-34s %s (%.2fs)\n", ok ? "PASS" : "FAIL", id, title,
              detail.c_str(), s);
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

struct Shared {
  Ontology table1 = Ontology::load(data_file("table1.tsv"));
  Ontology retail = Ontology::load(data_file("retail.tsv"));
  FitnessConfig cfg = FitnessConfig::load(data_file("default.cfg"));
  std::vector<GrammarRule> rules = load_rules(data_file("rules.txt"));
  TagLexicon lexicon = TagLexicon::load(data_file("lexicon.tsv"));
};

void accuracy_fidelity() {
  const auto start = Clock::now();
  std::ifstream in(fixture_file("accuracy.tsv"));
  std::string line;
  int rows = 0, within = 0;
  double worst = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_tabs(line);
    const double diff = std::abs(accuracy(tokenize(f[1]), tokenize(f[0])) - std::stod(f[2]));
    worst = std::max(worst, diff);
    ++rows;
    within += diff <= 0.1;
  }
  const bool fast = std::chrono::duration<double>(Clock::now() - start).count() < 1.0;
  report(1, "accuracy metric fidelity", rows == 10 && within == rows && fast,
         fmt("%.0f/%.0f printed figures within 0.1, worst %.3f", within, rows, worst), start);
}

void golden_repairs(const Shared& s) {
  const auto start = Clock::now();
  const RepairContext retail{s.retail, s.cfg, s.rules, s.lexicon};
  const RepairContext table{s.table1, s.cfg, s.rules, s.lexicon};
  const std::string a =
      detokenize(repair("Which industry has the pixel in nineteen ninety seven?", retail).output);
  const std::string b = detokenize(
      repair("Which business has more sales in 2013: car dealers for optical quotes?", table)
          .output);
  const bool ok_a = a == "which industry has the peak sales in nineteen ninety seven";
  const bool ok_b = b == "which business has more sales in 2013 car dealers or optical goods";
  const bool fast = std::chrono::duration<double>(Clock::now() - start).count() < 1.0;
  std::string detail = std::string("pixel->peak sales (retail triples) ") + (ok_a ? "ok" : "got '" + a + "'") +
                       ", for->or with optical goods " + (ok_b ? "ok" : "got '" + b + "'");
  report(2, "golden repairs", ok_a && ok_b && fast, detail, start);
}

void fitness_conformance(const Shared& s) {
  const auto start = Clock::now();
  // Sentences over the eight-triple vocabulary, the worked examples first.
  std::vector<std::string> sentences{
      "which business has more sales in 2013 car dealers for optical quotes",
      "which industry has the pixel in nineteen ninety seven",
      "car dealer sales in 2011 and optical good sales in 2009",
      "what is the naics code of car dealers",
  };
  std::vector<std::string> words;
  for (const auto& term : s.table1.terms()) {
    for (const auto& w : tokenize(term).tokens) words.push_back(w);
  }
  for (const char* w : {"which", "the", "in", "for", "of", "quotes", "dealer", "cells",
                        "sails", "business", "has", "had", "optical", "good", "code"}) {
    words.push_back(w);
  }
  std::mt19937_64 rng(2013);
  for (int i = 0; i < 500; ++i) {
    std::string line;
    const auto n = std::uniform_int_distribution<int>(1, 9)(rng);
    for (int k = 0; k < n; ++k) {
      line += (line.empty() ? "" : " ") +
              words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];
    }
    sentences.push_back(line);
  }

  std::size_t pairs = 0, score_mismatches = 0, decision_mismatches = 0, decisions = 0;
  for (const auto& sentence : sentences) {
    const auto tagged = pos_tag(tokenize(sentence), s.lexicon);
    const auto tokens = tagged.tokens();
    for (const Span& w : anchored_windows(tagged, s.cfg.max_window)) {
      const std::string span = join_span(tokens, w);
      for (const auto& term : s.table1.terms()) {
        ++pairs;
        if (std::abs(final_score(span, term, s.cfg) - oracle::final_score(span, term, s.cfg)) >
                1e-12 ||
            std::abs(cost_score(span, term, s.cfg) - oracle::cost_score(span, term, s.cfg)) >
                1e-12) {
          ++score_mismatches;
        }
      }
    }
    const auto r = ontology_based_repair(tagged, s.table1, s.cfg);
    std::vector<std::pair<std::size_t, std::string>> got, want;
    for (const auto& x : r.replacements) got.emplace_back(x.span.begin, x.term);
    for (const auto& d : oracle::gene_repair(tagged, s.table1, s.cfg)) {
      if (join_span(tokens, {d.begin, d.length}) != d.term) want.emplace_back(d.begin, d.term);
    }
    decisions += want.size();
    decision_mismatches += got != want;
  }
  report(3, "score and cost conformance", score_mismatches == 0 && decision_mismatches == 0,
         fmt("%.0f window x term pairs, %.0f score mismatches, ", pairs, score_mismatches) +
             fmt("%.0f sentences, %.0f replacements, %.0f decision mismatches",
                 sentences.size(), decisions, decision_mismatches),
         start);
}

void naive_bayes_oracle() {
  const auto start = Clock::now();
  const auto r = props::run_one("classify ranks by the direct posterior");
  const std::size_t models = r.cases, mismatches = r.failures;
  const auto t = tokenize("whether the sales of than twenty business rose");
  const auto fv = extract_features(t, {4, 2}, 1);
  int vowels = 0;
  for (auto [c, k] : fv.vowels) vowels += k;
  const int syllables = syllable_count(join_span(t, {4, 2}));
  const bool shape = fv.words == 2 && syllables == 3 && vowels == 2 && fv.consonants.at('y') == 1;
  report(4, "naive bayes oracle equivalence", models >= 1000 && mismatches == 0 && shape,
         fmt("%.0f toy models, %.0f ranking mismatches, ", models, mismatches) +
             fmt("than twenty -> words %.0f, syllables %.0f", fv.words, syllables),
         start);
}

std::vector<CorpusRecord> synthetic(const std::vector<std::string>& refs,
                                    const Vocabulary& vocabulary, std::uint64_t seed,
                                    std::size_t count) {
  ChannelConfig channel = ChannelConfig::load(data_file("channel.cfg"));
  channel.seed = seed;
  channel.count = count;
  return generate_corpus(refs, channel, vocabulary);
}

std::vector<LabeledSpan> spans_of(const std::vector<CorpusRecord>& corpus) {
  std::vector<LabeledSpan> out;
  for (const auto& r : corpus) {
    for (auto& row : mispair_spans(tokenize(r.hypothesis), tokenize(r.reference))) {
      out.push_back(std::move(row));
    }
  }
  return out;
}

void cross_validation_shape(const Shared& s) {
  const auto start = Clock::now();
  const auto refs = read_references_file(data_file("refs.txt"));
  const Vocabulary vocabulary = Vocabulary::build(s.retail, s.lexicon);
  auto rows = spans_of(synthetic(refs, vocabulary, 11, 600));
  const bool enough = rows.size() >= 570;
  rows.resize(std::min<std::size_t>(rows.size(), 570));
  std::vector<TrainingExample> data;
  for (const auto& r : rows) data.push_back(r.example());
  const auto cv = cross_validate(data, 10, 1.0, 7);
  bool shape = cv.folds.size() == 10;
  for (const auto& f : cv.folds) shape = shape && f.train_size == 513 && f.test_size == 57;
  report(5, "cross-validation shape", enough && shape && cv.mean_accuracy > cv.mean_baseline,
         fmt("%.0f examples, folds 513/57 ", data.size()) + (shape ? "yes" : "no") +
             fmt(", accuracy %.1f%% vs majority %.1f%%", 100 * cv.mean_accuracy,
                 100 * cv.mean_baseline),
         start);
}

void synthetic_substitute(const Shared& s) {
  const auto start = Clock::now();
  const auto refs = read_references_file(data_file("refs.txt"));
  const Vocabulary vocabulary = Vocabulary::build(s.retail, s.lexicon);
  const ChannelConfig channel = ChannelConfig::load(data_file("channel.cfg"));
  const auto test = generate_corpus(refs, channel, vocabulary);

  const RepairContext ctx{s.retail, s.cfg, s.rules, s.lexicon};
  const auto evo = evaluate(test, Method::kEvo, {&ctx, nullptr}).summary("evo");

  // Train on an independent draw of the same channel.
  std::vector<TrainingExample> training;
  for (const auto& r : spans_of(synthetic(refs, vocabulary, channel.seed + 1000, 600))) {
    training.push_back(r.example());
  }
  const auto model = NaiveBayesModel::train(training);
  const auto ml = evaluate(test, Method::kMl, {nullptr, &model}).summary("ml");

  // Majority baseline: the most frequent training correction for every span.
  std::map<std::string, std::size_t> freq;
  for (const auto& ex : training) ++freq[ex.label];
  std::string majority;
  std::size_t best = 0;
  for (const auto& [label, n] : freq) {
    if (n > best) best = n, majority = label;
  }
  std::size_t spans = 0, model_right = 0, majority_right = 0;
  double majority_sentences = 0;
  for (const auto& r : test) {
    const auto hyp = tokenize(r.hypothesis), ref = tokenize(r.reference);
    for (const auto& row : mispair_spans(hyp, ref)) {
      ++spans;
      model_right += model.best_label(row.example().features) == row.label;
      majority_right += majority == row.label;
    }
    auto pairs = extract_mispairs(align(hyp, ref), hyp, ref);
    for (auto& p : pairs) {
      p.correction_words =
          majority == kEmptyCorrection ? std::vector<std::string>{} : tokenize(majority).tokens;
    }
    majority_sentences += accuracy(apply_mispairs(hyp, pairs), ref);
  }
  majority_sentences /= static_cast<double>(test.size());
  const double model_acc = 100.0 * static_cast<double>(model_right) / spans;
  const double majority_acc = 100.0 * static_cast<double>(majority_right) / spans;

  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  const double degraded = 100.0 * static_cast<double>(evo.degraded) / evo.sentences;
  const bool ok = test.size() == 200 && evo.mean_delta() > 0 && degraded <= 5.0 &&
                  model_acc - majority_acc >= 10.0 && elapsed < 60.0;
  report(6, "synthetic corpus substitute", ok,
         fmt("evo delta %+.2f, degraded %.1f%%; ", evo.mean_delta(), degraded) +
             fmt("ml spans %.1f%% vs majority %.1f%% (%+.1f points); ", model_acc,
                 majority_acc, model_acc - majority_acc) +
             fmt("sentences %.1f -> %.1f, majority substitution %.1f", ml.mean_before,
                 ml.mean_after, majority_sentences),
         start);
}

void property_suites() {
  const auto start = Clock::now();
  std::size_t suites = 0, green = 0, least = static_cast<std::size_t>(-1);
  std::string failed;
  for (const auto& r : props::run_all(props::kCases)) {
    ++suites;
    least = std::min(least, r.cases);
    if (r.passed()) {
      ++green;
    } else {
      failed += " [" + r.name + "]";
    }
  }
  report(7, "property suites", green == suites && least >= 1000,
         fmt("%.0f/%.0f suites green, at least %.0f cases each", green, suites, least) + failed,
         start);
}

}  // namespace

int main() {
  const Shared shared;
  accuracy_fidelity();
  golden_repairs(shared);
  fitness_conformance(shared);
  naive_bayes_oracle();
  cross_validation_shape(shared);
  synthetic_substitute(shared);
  property_suites();
  return failures;
}
