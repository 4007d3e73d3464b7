#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "asrfix/error.hpp"
#include "asrfix/harness.hpp"
#include "doctest.h"
#include "paths.hpp"

using namespace asrfix;

namespace {

struct Fixture {
  Ontology retail = Ontology::load(data_file("retail.tsv"));
  FitnessConfig cfg = FitnessConfig::load(data_file("default.cfg"));
  std::vector<GrammarRule> rules = load_rules(data_file("rules.txt"));
  TagLexicon lexicon = TagLexicon::load(data_file("lexicon.tsv"));
  Vocabulary vocabulary = Vocabulary::build(retail, lexicon);
  std::vector<std::string> refs = read_references_file(data_file("refs.txt"));
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

}  // namespace

TEST_CASE("published accuracies") {
  std::istringstream in([] {
    std::ifstream f(fixture_file("accuracy.tsv"));
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_tabs(line);
    REQUIRE(f.size() == 3);
    const double printed = std::stod(f[2]);
    CHECK(std::abs(accuracy(tokenize(f[1]), tokenize(f[0])) - printed) <= 0.1);
    ++rows;
  }
  CHECK(rows == 10);
}

TEST_CASE("channel config") {
  const auto cfg = ChannelConfig::load(data_file("channel.cfg"));
  CHECK(cfg.seed == 7);
  CHECK(cfg.count == 200);
  CHECK(cfg.phonetic_confusion);
  std::istringstream bad_rate("substitution_rate = 1.5\n");
  CHECK_THROWS_AS(ChannelConfig::parse(bad_rate), DataError);
  std::istringstream sum("substitution_rate = 0.6\ndeletion_rate = 0.5\n");
  CHECK_THROWS_AS(ChannelConfig::parse(sum), DataError);
  std::istringstream unknown("speed = 2\n");
  CHECK_THROWS_AS(ChannelConfig::parse(unknown), DataError);
  std::istringstream flag("phonetic_confusion = maybe\n");
  CHECK_THROWS_AS(ChannelConfig::parse(flag), DataError);
  CHECK_THROWS_AS(ChannelConfig::load("/nonexistent.cfg"), DataError);
}

TEST_CASE("sound-alike vocabulary") {
  const Vocabulary v({"sales", "sails", "cells", "goods"});
  const auto alikes = v.sound_alikes("sales");
  CHECK(std::find(alikes.begin(), alikes.end(), "sails") != alikes.end());
  CHECK(std::find(alikes.begin(), alikes.end(), "sales") == alikes.end());
  CHECK(std::find(alikes.begin(), alikes.end(), "goods") == alikes.end());
  CHECK_FALSE(fx().vocabulary.words().empty());
}

TEST_CASE("generator") {
  ChannelConfig cfg = ChannelConfig::load(data_file("channel.cfg"));
  const auto a = generate_corpus(fx().refs, cfg, fx().vocabulary);
  const auto b = generate_corpus(fx().refs, cfg, fx().vocabulary);
  REQUIRE(a.size() == 200);
  CHECK(a.front().id == "syn-0001");
  CHECK(a.back().id == "syn-0200");
  bool same = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    same = same && a[i].hypothesis == b[i].hypothesis;
    const double acc = accuracy(tokenize(a[i].hypothesis), tokenize(a[i].reference));
    CHECK(acc >= cfg.min_accuracy);
    CHECK(acc < cfg.max_accuracy);
  }
  CHECK(same);

  cfg.seed = 8;
  const auto c = generate_corpus(fx().refs, cfg, fx().vocabulary);
  bool differs = false;
  for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i) {
    differs = differs || a[i].hypothesis != c[i].hypothesis;
  }
  CHECK(differs);
  CHECK_THROWS_AS(generate_corpus({}, cfg, fx().vocabulary), InvalidArgument);
}

TEST_CASE("method names") {
  CHECK(parse_method("both") == Method::kBoth);
  CHECK(std::string(method_name(Method::kMl)) == "ml");
  CHECK_THROWS_AS(parse_method("svm"), InvalidArgument);
}

TEST_CASE("recognizer samples through the evaluator") {
  const RepairContext ctx{fx().retail, fx().cfg, fx().rules, fx().lexicon};
  const auto corpus = read_corpus_file(data_file("asr_samples.tsv"));
  const auto report = evaluate(corpus, Method::kEvo, {&ctx, nullptr});
  REQUIRE(report.rows.size() == 3);
  CHECK(format_percent(report.rows[0].after) == "100.0");
  CHECK(format_percent(report.rows[1].after) == "85.7");
  CHECK(format_percent(report.rows[2].after) == "89.3");
  const auto s = report.summary("evo");
  CHECK(s.sentences == 3);
  CHECK(s.improved == 3);
  CHECK(s.correct_after == 1);
  CHECK(s.usable_after == 2);
  CHECK_THROWS_AS(evaluate(corpus, Method::kMl, {&ctx, nullptr}), InvalidArgument);

  std::ostringstream out;
  write_report(out, report);
  CHECK(out.str().find("ga-1\tevo\t80.0\t100.0\t20.0\t") != std::string::npos);
  CHECK(out.str().find("# evo sentences=3") != std::string::npos);
}

TEST_CASE("oracle-marked ml evaluation repairs what it has seen") {
  const auto corpus = read_corpus_file(data_file("asr_samples.tsv"));
  std::vector<TrainingExample> data;
  for (const auto& r : corpus) {
    for (const auto& row : mispair_spans(tokenize(r.hypothesis), tokenize(r.reference))) {
      data.push_back(row.example());
    }
  }
  const auto model = NaiveBayesModel::train(data);
  const auto report = evaluate(corpus, Method::kMl, {nullptr, &model});
  REQUIRE(report.rows.size() == 3);
  for (const auto& row : report.rows) CHECK(row.after >= row.before);
}
