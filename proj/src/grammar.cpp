#include "asrfix/grammar.hpp"

#include <fstream>
#include <functional>
#include <istream>
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

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at == std::string_view::npos
                                           ? std::string_view::npos
                                           : at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

PatternElement parse_element(std::string item) {
  PatternElement e;
  if (item.size() >= 2 && item.front() == '[' && item.back() == ']') {
    e.focus = true;
    item = item.substr(1, item.size() - 2);
  }
  if (item == "TERM") {
    e.kind = PatternElement::Kind::kTerm;
  } else if (item == "*") {
    e.kind = PatternElement::Kind::kAny;
  } else if (item.size() > 1 && item[0] == '=') {
    e.kind = PatternElement::Kind::kWord;
    e.value = to_lower(item.substr(1));
  } else if (!item.empty()) {
    e.kind = PatternElement::Kind::kTag;
    e.value = item;
  } else {
    throw DataError("empty pattern element");
  }
  return e;
}

bool tag_matches(std::string_view pattern, std::string_view tag) {
  if (!pattern.empty() && pattern.back() == '*') {
    return tag.starts_with(pattern.substr(0, pattern.size() - 1));
  }
  return tag == pattern;
}

bool token_matches(const PatternElement& e, const TaggedToken& t) {
  switch (e.kind) {
    case PatternElement::Kind::kAny:
      return true;
    case PatternElement::Kind::kWord:
      return t.token == e.value;
    case PatternElement::Kind::kTag:
      return tag_matches(e.value, t.tag);
    case PatternElement::Kind::kTerm:
      return false;
  }
  return false;
}

using Terms = std::vector<std::string>;

class Matcher {
 public:
  Matcher(const std::vector<PatternElement>& seq, const TaggedSentence& tagged,
          const Ontology& ontology, std::size_t max_window)
      : seq_(seq), tagged_(tagged), ontology_(ontology), max_window_(max_window) {
    for (const auto& item : tagged.items) tokens_.push_back(item.token);
  }

  // Elements [0, idx) must end exactly at `end`; calls `done` with the
  // matched terms (left to right) for every way to do so.
  bool left(std::size_t idx, std::size_t end, Terms& terms,
            const std::function<bool(const Terms&)>& done) const {
    if (idx == 0) return done(terms);
    const auto& e = seq_[idx - 1];
    if (e.kind == PatternElement::Kind::kTerm) {
      for (std::size_t len = std::min(max_window_, end); len >= 1; --len) {
        if (ontology_.term_length_at(tokens_, end - len, len) != len) continue;
        terms.insert(terms.begin(), join(end - len, len));
        const bool ok = left(idx - 1, end - len, terms, done);
        terms.erase(terms.begin());
        if (ok) return true;
      }
      return false;
    }
    if (end == 0 || !token_matches(e, tagged_.items[end - 1])) return false;
    return left(idx - 1, end - 1, terms, done);
  }

  bool right(std::size_t idx, std::size_t begin, Terms& terms,
             const std::function<bool(const Terms&)>& done) const {
    if (idx == seq_.size()) return done(terms);
    const auto& e = seq_[idx];
    if (e.kind == PatternElement::Kind::kTerm) {
      const std::size_t room = tokens_.size() - begin;
      for (std::size_t len = std::min(max_window_, room); len >= 1; --len) {
        if (ontology_.term_length_at(tokens_, begin, len) != len) continue;
        terms.push_back(join(begin, len));
        const bool ok = right(idx + 1, begin + len, terms, done);
        terms.pop_back();
        if (ok) return true;
      }
      return false;
    }
    if (begin >= tokens_.size() || !token_matches(e, tagged_.items[begin])) {
      return false;
    }
    return right(idx + 1, begin + 1, terms, done);
  }

 private:
  std::string join(std::size_t begin, std::size_t len) const {
    std::string out;
    for (std::size_t i = begin; i < begin + len; ++i) {
      if (!out.empty()) out.push_back(' ');
      out += tokens_[i];
    }
    return out;
  }

  const std::vector<PatternElement>& seq_;
  const TaggedSentence& tagged_;
  const Ontology& ontology_;
  std::size_t max_window_;
  std::vector<std::string> tokens_;
};

}  // namespace

GrammarRule parse_rule(std::string_view line) {
  const auto fields = split(line, '|');
  if (fields.size() != 4) {
    throw DataError("expected 'id | pattern | action | description'");
  }
  GrammarRule rule;
  rule.id = fields[0];
  rule.pattern_text = fields[1];
  rule.description = fields[3];
  if (rule.id.empty()) throw DataError("rule without an id");

  std::istringstream items(fields[1]);
  std::string item;
  std::size_t focus_count = 0;
  while (items >> item) {
    if (item.starts_with("has:")) {
      rule.required_tags.push_back(item.substr(4));
    } else if (item.starts_with("!has:")) {
      rule.forbidden_tags.push_back(item.substr(5));
    } else if (item == "related") {
      rule.terms_related = true;
    } else if (item == "!related") {
      rule.terms_related = false;
    } else if (item == "siblings") {
      rule.terms_siblings = true;
    } else if (item == "!siblings") {
      rule.terms_siblings = false;
    } else {
      auto e = parse_element(item);
      if (e.focus) {
        ++focus_count;
        if (e.kind == PatternElement::Kind::kTerm) {
          throw DataError("rule " + rule.id + ": TERM cannot be the focus");
        }
      }
      rule.sequence.push_back(std::move(e));
    }
  }
  if (focus_count != 1) {
    throw DataError("rule " + rule.id + ": pattern needs exactly one [focus]");
  }

  const std::string& action = fields[2];
  if (action.starts_with("best:")) {
    rule.action = GrammarRule::Action::kBest;
    for (auto& w : split(action.substr(5), ',')) {
      if (!w.empty()) rule.words.push_back(to_lower(w));
    }
  } else if (action.starts_with("set:")) {
    rule.action = GrammarRule::Action::kSet;
    rule.words.push_back(to_lower(trim(action.substr(4))));
  } else {
    throw DataError("rule " + rule.id + ": unknown action '" + action + "'");
  }
  if (rule.words.empty() || rule.words.front().empty()) {
    throw DataError("rule " + rule.id + ": action names no word");
  }
  return rule;
}

std::vector<GrammarRule> parse_rules(std::istream& in) {
  std::vector<GrammarRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    try {
      rules.push_back(parse_rule(line));
    } catch (const DataError& e) {
      throw DataError("rules line " + std::to_string(line_no) + ": " +
                      e.what());
    }
  }
  return rules;
}

std::vector<GrammarRule> load_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open rules: " + path);
  return parse_rules(in);
}

bool rule_matches(const GrammarRule& rule, const TaggedSentence& tagged,
                  std::size_t position, const Ontology& ontology,
                  std::size_t max_window) {
  for (const auto& tag : rule.required_tags) {
    if (!tagged.has_tag(tag)) return false;
  }
  for (const auto& tag : rule.forbidden_tags) {
    if (tagged.has_tag(tag)) return false;
  }
  std::size_t focus = 0;
  while (!rule.sequence[focus].focus) ++focus;
  if (position >= tagged.size() ||
      !token_matches(rule.sequence[focus], tagged.items[position])) {
    return false;
  }

  Matcher matcher(rule.sequence, tagged, ontology, max_window);
  auto guard = [&](const Terms& terms) {
    if (!rule.terms_related && !rule.terms_siblings) return true;
    if (terms.size() != 2) return false;
    if (rule.terms_related &&
        ontology.related(terms[0], terms[1]) != *rule.terms_related) {
      return false;
    }
    return !rule.terms_siblings ||
           ontology.siblings(terms[0], terms[1]) == *rule.terms_siblings;
  };
  Terms left_terms;
  return matcher.left(focus, position, left_terms, [&](const Terms& lt) {
    Terms right_terms = lt;
    return matcher.right(focus + 1, position + 1, right_terms, guard);
  });
}

std::string fittest_word(std::string_view offending,
                         const std::vector<std::string>& candidates) {
  std::string best;
  double best_sim = -1.0;
  std::size_t best_edit = 0;
  for (const auto& c : candidates) {
    const double sim = phonetic_similarity(offending, c);
    const std::size_t edit = levenshtein(offending, c);
    if (sim > best_sim || (sim == best_sim && edit < best_edit)) {
      best = c;
      best_sim = sim;
      best_edit = edit;
    }
  }
  return best;
}

RepairResult linguistic_repair(RepairResult partial,
                               const std::vector<GrammarRule>& rules,
                               const Ontology& ontology,
                               const TagLexicon& lexicon,
                               const FitnessConfig& cfg) {
  std::vector<std::string> words = partial.after_gene_repair.tokens;
  TaggedSentence tagged = pos_tag(partial.after_gene_repair, lexicon);
  for (const auto& rule : rules) {
    for (std::size_t pos = 0; pos < words.size(); ++pos) {
      if (!rule_matches(rule, tagged, pos, ontology, cfg.max_window)) continue;
      const std::string replacement = rule.action == GrammarRule::Action::kSet
                                          ? rule.words.front()
                                          : fittest_word(words[pos], rule.words);
      if (replacement == words[pos]) continue;
      partial.rule_firings.push_back({rule.id, pos, words[pos], replacement});
      words[pos] = replacement;
      tagged = pos_tag(make_sequence(words), lexicon);
    }
  }
  partial.output = make_sequence(std::move(words));
  partial.tagged_output = std::move(tagged);
  return partial;
}

RepairResult repair(const TaggedSentence& tagged, const RepairContext& ctx) {
  auto partial =
      ontology_based_repair(tagged, ctx.ontology, ctx.config, ctx.embeddings);
  return linguistic_repair(std::move(partial), ctx.rules, ctx.ontology,
                           ctx.lexicon, ctx.config);
}

RepairResult repair(std::string_view sentence, const RepairContext& ctx) {
  auto result = repair(pos_tag(tokenize(sentence), ctx.lexicon), ctx);
  result.input.source = std::string(sentence);
  return result;
}

}  // namespace asrfix
