#include <algorithm>
#include <set>

#include "asrfix/evodevo.hpp"

namespace asrfix {

namespace {

bool open_class(std::string_view tag) {
  return tag.starts_with("NN") || tag.starts_with("VB") ||
         tag.starts_with("JJ") || tag.starts_with("RB") || tag == "CD" ||
         tag == "FW";
}

// True when one side is the other plus extra words around it
// ("stores" / "shoe stores"): adding or dropping words is not a repair.
bool nested(const TokenSequence& a, const TokenSequence& b) {
  if (a.size() == b.size()) return false;
  const auto& outer = a.size() > b.size() ? a.tokens : b.tokens;
  const auto& inner = a.size() > b.size() ? b.tokens : a.tokens;
  return std::search(outer.begin(), outer.end(), inner.begin(), inner.end()) !=
         outer.end();
}

// "industries" for "industry": the term itself, inflected for number on its
// last (head) word.
bool plural_of(const TokenSequence& span, const TokenSequence& term) {
  if (span.size() != term.size() || span.empty()) return false;
  if (!std::equal(term.tokens.begin(), term.tokens.end() - 1,
                  span.tokens.begin())) {
    return false;
  }
  const std::string& w = span.tokens.back();
  const std::string& t = term.tokens.back();
  if (w == t + "s" || w == t + "es") return true;
  return t.size() > 1 && t.back() == 'y' &&
         w == t.substr(0, t.size() - 1) + "ies";
}

// Digits are invisible to the phonetic codes, so they must agree verbatim.
std::string digits_of(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c >= '0' && c <= '9') out.push_back(c);
  }
  return out;
}

// Best term for one window: score, then the documented tie-breaks.
bool better_term(const WindowProposal& a, const WindowProposal& b) {
  if (a.final_score != b.final_score) return a.final_score > b.final_score;
  if (a.cost_score != b.cost_score) return a.cost_score > b.cost_score;
  if (a.raw_edit != b.raw_edit) return a.raw_edit < b.raw_edit;
  if (a.term.size() != b.term.size()) return a.term.size() < b.term.size();
  return a.term < b.term;
}

}  // namespace

bool proposal_before(const WindowProposal& a, const WindowProposal& b) {
  if (a.final_score != b.final_score) return a.final_score > b.final_score;
  if (a.cost_score != b.cost_score) return a.cost_score > b.cost_score;
  if (a.span.length != b.span.length) return a.span.length > b.span.length;
  if (a.span.begin != b.span.begin) return a.span.begin < b.span.begin;
  return better_term(a, b);
}

std::vector<Span> anchored_windows(const TaggedSentence& tagged,
                                   std::size_t max_window) {
  std::vector<Span> out;
  const std::size_t n = tagged.size();
  for (std::size_t len = std::min(max_window, n); len >= 1; --len) {
    for (std::size_t begin = 0; begin + len <= n; ++begin) {
      bool anchored = false;
      for (std::size_t i = begin; i < begin + len; ++i) {
        anchored = anchored || is_content_tag(tagged.items[i].tag);
      }
      if (anchored && open_class(tagged.items[begin].tag) &&
          open_class(tagged.items[begin + len - 1].tag)) {
        out.push_back({begin, len});
      }
    }
  }
  return out;
}

RepairResult ontology_based_repair(const TaggedSentence& tagged,
                                   const Ontology& ontology,
                                   const FitnessConfig& cfg,
                                   const EmbeddingTable* embeddings) {
  RepairResult result;
  result.input = tagged.tokens();

  std::vector<WindowProposal> proposals;
  for (const Span& window : anchored_windows(tagged, cfg.max_window)) {
    const std::string text = join_span(result.input, window);
    bool nominal = false;
    for (std::size_t i = window.begin; i < window.end(); ++i) {
      nominal = nominal || tagged.items[i].tag.starts_with("NN");
    }
    std::set<std::string> seen;
    std::optional<WindowProposal> best;
    for (const auto& gene :
         candidate_genes(text, ontology, cfg.retrieval_floor)) {
      if (!seen.insert(gene.matched_term).second) continue;
      // Relation names only ever claim their exact spelling.
      if (text != gene.matched_term &&
          (!nominal || !ontology.is_entity(gene.matched_term) ||
           digits_of(text) != digits_of(gene.matched_term) ||
           nested(tokenize(text), tokenize(gene.matched_term)) ||
           plural_of(tokenize(text), tokenize(gene.matched_term)))) {
        continue;
      }
      WindowProposal p{window, gene.matched_term,
                       final_score(text, gene.matched_term, cfg),
                       cost_score(text, gene.matched_term, cfg, embeddings),
                       levenshtein(strip_whitespace(text),
                                   strip_whitespace(gene.matched_term))};
      if (!best || better_term(p, *best)) best = std::move(p);
    }
    if (best && best->final_score >= cfg.threshold) {
      proposals.push_back(std::move(*best));
    }
  }
  std::sort(proposals.begin(), proposals.end(), proposal_before);

  std::vector<bool> claimed(result.input.size(), false);
  std::vector<WindowProposal> accepted;
  for (auto& p : proposals) {
    bool free = true;
    for (std::size_t i = p.span.begin; i < p.span.end(); ++i) {
      free = free && !claimed[i];
    }
    if (!free) continue;
    for (std::size_t i = p.span.begin; i < p.span.end(); ++i) claimed[i] = true;
    if (join_span(result.input, p.span) != p.term) accepted.push_back(p);
  }

  std::sort(accepted.begin(), accepted.end(),
            [](const auto& a, const auto& b) {
              return a.span.begin < b.span.begin;
            });
  std::vector<std::string> words;
  std::size_t next = 0;
  for (const auto& p : accepted) {
    for (; next < p.span.begin; ++next) words.push_back(result.input[next]);
    for (auto& w : tokenize(p.term).tokens) words.push_back(std::move(w));
    next = p.span.end();
    result.replacements.push_back({p.span, join_span(result.input, p.span),
                                   p.term, p.final_score, p.cost_score});
  }
  for (; next < result.input.size(); ++next) {
    words.push_back(result.input[next]);
  }
  result.after_gene_repair = make_sequence(std::move(words));
  result.output = result.after_gene_repair;
  return result;
}

}  // namespace asrfix
