#include <filesystem>
#include <fstream>
#include <sstream>

#include "asrfix/cli.hpp"
#include "doctest.h"
#include "paths.hpp"

using namespace asrfix;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("asrfix_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(cli({}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"score", "--hyp", "a"}).code == 1);
  CHECK(cli({"gen", "--refs", data_file("refs.txt"), "--channel",
             data_file("channel.cfg")})
            .code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("text tools") {
  CHECK(cli({"tokenize", "Which  Industry, has?"}).out == "which industry has\n");
  CHECK(cli({"score", "--hyp", "which state has total sales more than twenty thousand",
             "--ref", "Which stores has total sales more than two hundred thousand"})
            .out == "70.0\n");
  CHECK(cli({"score", "--hyp", "a", "--ref", ""}).code == 2);
  const auto a = cli({"align", "--hyp", "a b", "--ref", "b"});
  CHECK(a.out == "insert\ta\t-\nmatch\tb\tb\n# cost 1\n");
  const auto e = cli({"encode", "pixel"});
  CHECK(e.out.find("soundex\tP240\n") != std::string::npos);
  CHECK(e.out.find("syllables\t2\n") != std::string::npos);
  CHECK(cli({"encode", "42"}).code == 2);
}

TEST_CASE("ontology stats") {
  CHECK(cli({"ontology", "stats", data_file("table1.tsv")}).out ==
        "triples\t8\nterms\t13\n");
  CHECK(cli({"ontology", "stats", "/nonexistent.tsv"}).code == 2);
}

TEST_CASE("evo repair of one sentence") {
  const auto r = cli({"repair", "evo", "--ontology", data_file("table1.tsv"), "--config",
                      data_file("default.cfg"), "--sentence",
                      "which business has more sales in 2013 car dealers for optical quotes",
                      "--explain"});
  CHECK(r.code == 0);
  CHECK(r.out == "which business has more sales in 2013 car dealers or optical goods\n");
  CHECK(r.err.find("replace\t10:2\toptical quotes\toptical goods") != std::string::npos);
  CHECK(r.err.find("rule\tconj-unrelated\t9\tfor\tor") != std::string::npos);

  CHECK(cli({"repair", "evo", "--sentence", "x"}).code == 1);
  CHECK(cli({"repair", "evo", "--ontology", data_file("table1.tsv"), "--config",
             "/nonexistent.cfg", "--sentence", "x"})
            .code == 2);
}

TEST_CASE("evo repair of a corpus") {
  const auto r = cli({"repair", "evo", "--ontology", data_file("retail.tsv"), "--in",
                      data_file("asr_samples.tsv")});
  CHECK(r.code == 0);
  CHECK(r.out.find("ga-1\tevo\t80.0\t100.0\t20.0\t") != std::string::npos);
}

TEST_CASE("ml train, apply and cv") {
  const auto model = temp_path("model.json");
  auto t = cli({"repair", "ml", "train", "--in", fixture_file("walkthrough.tsv"), "--out",
                model});
  REQUIRE(t.code == 0);
  CHECK(slurp(model).find("asrfix-naive-bayes") != std::string::npos);

  const auto marked = temp_path("marked.tsv");
  std::ofstream(marked) << "sales wine same in retail between two thousand thirteen\t1:1\n"
                        << "no marks here\t\n";
  const auto a = cli({"repair", "ml", "apply", "--model", model, "--in", marked});
  CHECK(a.code == 0);
  CHECK(a.out ==
        "sales remain the same in retail between two thousand thirteen\nno marks here\n");

  std::ofstream(marked) << "a b\t1:5\n";
  CHECK(cli({"repair", "ml", "apply", "--model", model, "--in", marked}).code == 2);

  const auto cv = cli({"repair", "ml", "cv", "--in", fixture_file("walkthrough.tsv"),
                       "--k", "3", "--seed", "1"});
  CHECK(cv.code == 0);
  CHECK(cv.out.rfind("fold\ttrain\ttest\taccuracy\tbaseline\n", 0) == 0);
  CHECK(cv.out.find("\n1\t6\t3\t") != std::string::npos);
  CHECK(cli({"repair", "ml", "cv", "--in", fixture_file("walkthrough.tsv"), "--k", "30",
             "--seed", "1"})
            .code == 2);
  CHECK(cli({"repair", "ml", "cv", "--in", fixture_file("walkthrough.tsv")}).code == 1);
  std::filesystem::remove(model);
  std::filesystem::remove(marked);
}

TEST_CASE("gen, pairs and eval") {
  const auto corpus = temp_path("corpus.tsv");
  const auto g = cli({"gen", "--refs", data_file("refs.txt"), "--channel",
                      data_file("channel.cfg"), "--seed", "3", "--count", "20",
                      "--ontology", data_file("retail.tsv"), "--out", corpus});
  REQUIRE(g.code == 0);
  const std::string first = slurp(corpus);
  cli({"gen", "--refs", data_file("refs.txt"), "--channel", data_file("channel.cfg"),
       "--seed", "3", "--count", "20", "--ontology", data_file("retail.tsv"), "--out",
       corpus});
  CHECK(slurp(corpus) == first);

  const auto training = temp_path("pairs.tsv");
  REQUIRE(cli({"repair", "ml", "pairs", "--corpus", corpus, "--out", training}).code == 0);
  const auto model = temp_path("gen_model.json");
  REQUIRE(cli({"repair", "ml", "train", "--in", training, "--out", model}).code == 0);

  const auto e = cli({"eval", "--corpus", corpus, "--method", "both", "--ontology",
                      data_file("retail.tsv"), "--model", model});
  CHECK(e.code == 0);
  CHECK(e.out.find("# evo sentences=20") != std::string::npos);
  CHECK(e.out.find("# ml sentences=20") != std::string::npos);
  CHECK(cli({"eval", "--corpus", corpus, "--method", "ml"}).code == 1);
  CHECK(cli({"eval", "--corpus", corpus, "--method", "svm", "--model", model}).code == 1);
  for (const auto& p : {corpus, training, model}) std::filesystem::remove(p);
}
