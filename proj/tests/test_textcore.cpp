#include <sstream>

#include "asrfix/error.hpp"
#include "asrfix/textcore.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace asrfix;

namespace {

std::vector<std::string> words(std::string_view s) { return tokenize(s).tokens; }

}  // namespace

TEST_CASE("tokenize normalizes case and punctuation") {
  CHECK(words("Which business has more sales in 2013: Car dealers or optical "
              "goods?") ==
        std::vector<std::string>{"which", "business", "has", "more", "sales",
                                 "in", "2013", "car", "dealers", "or",
                                 "optical", "goods"});
  CHECK(words("").empty());
  CHECK(words("Robert's  SALES!!") ==
        std::vector<std::string>{"robert's", "sales"});
  CHECK(words("well-known, ok.") ==
        std::vector<std::string>{"well-known", "ok"});
  CHECK(words("  ...  ").empty());
}

TEST_CASE("detokenize round trips") {
  const auto t = tokenize("In two thousand fourteen, which industry?");
  CHECK(tokenize(detokenize(t)) == t);
}

TEST_CASE("align finds the two substitutions of the beer example") {
  const auto hyp =
      tokenize("in which year dear wine and liquor stores have successful year");
  const auto ref =
      tokenize("In which year beer wine and liquor stores has successful year");
  const auto trace = align(hyp, ref);
  CHECK(trace.cost == 2);
  std::vector<std::pair<std::string, std::string>> subs;
  for (const auto& s : trace.ops) {
    CHECK(s.op != EditOp::kInsert);
    CHECK(s.op != EditOp::kDelete);
    if (s.op == EditOp::kSubstitute) subs.emplace_back(hyp[s.hyp], ref[s.ref]);
  }
  CHECK(subs == std::vector<std::pair<std::string, std::string>>{
                    {"dear", "beer"}, {"have", "has"}});
}

TEST_CASE("align of identical sequences is all Match") {
  const auto x = tokenize("a b c d");
  const auto trace = align(x, x);
  CHECK(trace.cost == 0);
  for (const auto& s : trace.ops) CHECK(s.op == EditOp::kMatch);
}

TEST_CASE("an extra hypothesis word costs one") {
  const auto hyp = tokenize("a b");
  const auto ref = tokenize("b");
  const auto trace = align(hyp, ref);
  CHECK(trace.cost == 1);
  CHECK(trace.cost == oracle::align_cost(hyp.tokens, ref.tokens));
  REQUIRE(trace.ops.size() == 2);
  CHECK(trace.ops[0] == AlignStep{EditOp::kInsert, 0, AlignStep::kNone});
  CHECK(trace.ops[1] == AlignStep{EditOp::kMatch, 1, 0});
}

TEST_CASE("equal-cost ties prefer substitution, then deletion") {
  // x/y z: substituting x for z at the last cell beats deleting z
  const auto trace = align(tokenize("x"), tokenize("y z"));
  REQUIRE(trace.cost == 2);
  CHECK(trace.ops.front().op == EditOp::kDelete);
  CHECK(trace.ops.back().op == EditOp::kSubstitute);
}

TEST_CASE("accuracy reproduces printed figures") {
  CHECK(accuracy(tokenize("in two thousand fourteen which industry had the pixels"),
                 tokenize("In two thousand fourteen which industry had the peak sales")) ==
        doctest::Approx(80.0));
  const auto x = tokenize("which industry");
  CHECK(accuracy(x, x) == doctest::Approx(100.0));
  CHECK(accuracy(tokenize("which state has total sales more than twenty thousand"),
                 tokenize("Which stores has total sales more than two hundred thousand")) ==
        doctest::Approx(70.0));
  CHECK_THROWS_AS(accuracy(x, tokenize("")), InvalidArgument);
  CHECK(accuracy(tokenize("a b c d e f g"), tokenize("x y")) == 0.0);
}

TEST_CASE("format_percent rounds half up to one decimal") {
  CHECK(format_percent(80.0) == "80.0");
  CHECK(format_percent(100.0 * 17 / 21) == "81.0");
  CHECK(format_percent(100.0 * 18 / 21) == "85.7");
  CHECK(format_percent(100.0 * 25 / 28) == "89.3");
  CHECK(format_percent(-2.5) == "-2.5");
  CHECK(format_percent(-0.01) == "0.0");
}

TEST_CASE("mispairs group contiguous edits") {
  const auto hyp = tokenize(
      "whether the sales of than twenty business crosses fifty thousand in a year");
  const auto ref = tokenize(
      "Whether the sales of jewelry business crosses fifty thousand in a year");
  const auto pairs = extract_mispairs(align(hyp, ref), hyp, ref);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].erroneous_text() == "than twenty");
  CHECK(pairs[0].correction_text() == "jewelry");

  const auto x = tokenize("a b");
  CHECK(extract_mispairs(align(x, x), x, x).empty());
}

TEST_CASE("mispair for the retail example") {
  const auto hyp = tokenize(
      "sales wine same in retail between two thousand thirteen and two "
      "thousand fourteen");
  const auto ref = tokenize(
      "Did sales remain the same in retail between two thousand thirteen and "
      "two thousand fourteen");
  const auto pairs = extract_mispairs(align(hyp, ref), hyp, ref);
  bool found = false;
  for (const auto& p : pairs) {
    found = found || (p.erroneous_text() == "wine" &&
                      p.correction_text() == "remain the");
  }
  CHECK(found);
  CHECK(apply_mispairs(hyp, pairs) == ref);
}

TEST_CASE("a lone deletion borrows a neighbouring word") {
  const auto hyp = tokenize("a c");
  const auto ref = tokenize("a b c");
  const auto pairs = extract_mispairs(align(hyp, ref), hyp, ref);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].erroneous_text() == "a");
  CHECK(pairs[0].correction_text() == "a b");
  CHECK(apply_mispairs(hyp, pairs) == ref);
}

TEST_CASE("corpus reader") {
  std::istringstream in(
      "# comment\n"
      "s1\tWhich industry\twhich industri\n"
      "\n"
      "s2\ta b\ta c\ta/DT c/NN\n");
  const auto records = read_corpus(in);
  REQUIRE(records.size() == 2);
  CHECK(records[0].id == "s1");
  CHECK(records[1].tagged == "a/DT c/NN");
  std::ostringstream out;
  write_corpus(out, records);
  std::istringstream back(out.str());
  CHECK(read_corpus(back).size() == 2);

  std::istringstream bad("only\ttwo\n");
  CHECK_THROWS_AS(read_corpus(bad), DataError);
}

TEST_CASE("character edit distance") {
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(normalized_edit_distance("", "") == 0.0);
  CHECK(normalized_edit_distance("Peak Sales", "peaksales") == 0.0);
  CHECK(normalized_edit_distance("abc", "xyz") == 1.0);
}
