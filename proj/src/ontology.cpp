#include "asrfix/ontology.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>

#include "asrfix/error.hpp"
#include "asrfix/phonetics.hpp"
#include "asrfix/textcore.hpp"

namespace asrfix {

const char* slot_name(Slot slot) {
  switch (slot) {
    case Slot::kSubject:
      return "subject";
    case Slot::kPredicate:
      return "predicate";
    case Slot::kObject:
      return "object";
  }
  return "?";
}

const std::string& Triple::at(Slot slot) const {
  switch (slot) {
    case Slot::kSubject:
      return subject;
    case Slot::kPredicate:
      return predicate;
    default:
      return object;
  }
}

std::string normalize_term(std::string_view raw) {
  std::string spaced(raw);
  std::replace(spaced.begin(), spaced.end(), '_', ' ');
  return detokenize(tokenize(spaced));
}

Ontology::Ontology(std::vector<Triple> triples) {
  std::set<Triple> seen;
  for (auto& t : triples) {
    Triple norm{normalize_term(t.subject), normalize_term(t.predicate),
                normalize_term(t.object)};
    if (norm.subject.empty() || norm.predicate.empty() || norm.object.empty()) {
      throw DataError("triple with an empty field");
    }
    if (!seen.insert(norm).second) continue;
    triples_.push_back(std::move(norm));
  }
  for (std::size_t id = 0; id < triples_.size(); ++id) {
    for (Slot slot : {Slot::kSubject, Slot::kPredicate, Slot::kObject}) {
      index_[triples_[id].at(slot)].push_back({id, slot});
    }
  }
}

Ontology Ontology::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open ontology: " + path);
  return parse(in);
}

Ontology Ontology::parse(std::istream& in) {
  std::vector<Triple> triples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw DataError("ontology line " + std::to_string(line_no) +
                      ": expected 3 tab-separated fields, got " +
                      std::to_string(fields.size()));
    }
    Triple t{fields[0], fields[1], fields[2]};
    if (normalize_term(t.subject).empty() ||
        normalize_term(t.predicate).empty() ||
        normalize_term(t.object).empty()) {
      throw DataError("ontology line " + std::to_string(line_no) +
                      ": empty field");
    }
    triples.push_back(std::move(t));
  }
  return Ontology(std::move(triples));
}

std::vector<std::string> Ontology::terms() const {
  std::vector<std::string> out;
  out.reserve(index_.size());
  for (const auto& [term, _] : index_) out.push_back(term);
  return out;
}

const std::vector<TermOccurrence>* Ontology::lookup(
    std::string_view term) const {
  auto it = index_.find(std::string(term));
  return it == index_.end() ? nullptr : &it->second;
}

bool Ontology::is_entity(std::string_view term) const {
  const auto* occurrences = lookup(term);
  if (occurrences == nullptr) return false;
  return std::any_of(occurrences->begin(), occurrences->end(),
                     [](const TermOccurrence& o) {
                       return o.slot != Slot::kPredicate;
                     });
}

bool Ontology::related(std::string_view a, std::string_view b) const {
  const auto* left = lookup(a);
  const auto* right = lookup(b);
  if (!left || !right) return false;
  for (const auto& x : *left) {
    for (const auto& y : *right) {
      if (x.triple == y.triple && x.slot != y.slot) return true;
    }
  }
  return false;
}

bool Ontology::siblings(std::string_view a, std::string_view b) const {
  if (a == b) return false;
  const auto* left = lookup(a);
  const auto* right = lookup(b);
  if (!left || !right) return false;
  for (const auto& x : *left) {
    for (const auto& y : *right) {
      if (x.slot == y.slot && x.slot != Slot::kPredicate &&
          triples_[x.triple].predicate == triples_[y.triple].predicate) {
        return true;
      }
    }
  }
  return false;
}

std::size_t Ontology::term_length_at(const std::vector<std::string>& tokens,
                                     std::size_t begin,
                                     std::size_t max_words) const {
  for (std::size_t len = std::min(max_words, tokens.size() - std::min(begin, tokens.size()));
       len > 0; --len) {
    std::string phrase;
    for (std::size_t i = begin; i < begin + len; ++i) {
      if (!phrase.empty()) phrase.push_back(' ');
      phrase += tokens[i];
    }
    if (contains(phrase)) return len;
  }
  return 0;
}

std::size_t Ontology::term_length_before(const std::vector<std::string>& tokens,
                                         std::size_t end,
                                         std::size_t max_words) const {
  for (std::size_t len = std::min(max_words, end); len > 0; --len) {
    if (term_length_at(tokens, end - len, len) == len) return len;
  }
  return 0;
}

double retrieval_similarity(std::string_view span, std::string_view term) {
  return std::max(phonetic_similarity(span, term),
                  1.0 - normalized_edit_distance(span, term));
}

std::vector<CandidateGene> candidate_genes(std::string_view span,
                                           const Ontology& ontology,
                                           double floor) {
  std::vector<CandidateGene> out;
  for (const auto& [term, occurrences] : ontology.term_index()) {
    const double score = retrieval_similarity(span, term);
    if (score < floor) continue;
    for (const auto& occ : occurrences) {
      out.push_back({ontology.triples()[occ.triple], occ.slot, term,
                     std::string(span), score});
    }
  }
  // term_index is ordered, so a stable sort keeps term then triple order.
  std::stable_sort(out.begin(), out.end(),
                   [](const CandidateGene& a, const CandidateGene& b) {
                     return a.match_score > b.match_score;
                   });
  return out;
}

}  // namespace asrfix
