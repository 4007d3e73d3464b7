#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace asrfix {

enum class Slot { kSubject, kPredicate, kObject };

const char* slot_name(Slot slot);

// A domain subject-predicate-object entry. Fields hold normalized terms:
// lowercase, underscores read as spaces ("PEAK_SALES" -> "peak sales").
struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;

  const std::string& at(Slot slot) const;
  bool operator==(const Triple&) const = default;
  auto operator<=>(const Triple&) const = default;
};

std::string normalize_term(std::string_view raw);

struct TermOccurrence {
  std::size_t triple = 0;
  Slot slot = Slot::kSubject;
};

// Immutable after construction.
class Ontology {
 public:
  Ontology() = default;
  explicit Ontology(std::vector<Triple> triples);

  static Ontology load(const std::string& path);
  // subject<TAB>predicate<TAB>object rows; '#' comments and blank lines
  // allowed. Throws DataError naming the line on a row with != 3 fields.
  static Ontology parse(std::istream& in);

  const std::vector<Triple>& triples() const { return triples_; }
  const std::map<std::string, std::vector<TermOccurrence>>& term_index() const {
    return index_;
  }
  // Distinct indexed terms, sorted.
  std::vector<std::string> terms() const;

  const std::vector<TermOccurrence>* lookup(std::string_view term) const;
  bool contains(std::string_view term) const { return lookup(term) != nullptr; }

  // True when the term fills a subject or object slot somewhere.
  bool is_entity(std::string_view term) const;

  // True when one triple mentions both terms (in any two slots).
  bool related(std::string_view a, std::string_view b) const;

  // True when distinct terms fill the same subject or object slot of two
  // triples with the same predicate (car dealers / optical goods).
  bool siblings(std::string_view a, std::string_view b) const;

  // Longest term spelled by tokens starting at `begin`, up to max_words
  // words; 0 when none.
  std::size_t term_length_at(const std::vector<std::string>& tokens,
                             std::size_t begin, std::size_t max_words) const;
  // Longest term ending just before `end`; 0 when none.
  std::size_t term_length_before(const std::vector<std::string>& tokens,
                                 std::size_t end, std::size_t max_words) const;

 private:
  std::vector<Triple> triples_;
  std::map<std::string, std::vector<TermOccurrence>> index_;
};

struct CandidateGene {
  Triple triple;
  Slot slot = Slot::kSubject;
  std::string matched_term;
  std::string span;
  double match_score = 0.0;
};

// max(phonetic_similarity, 1 - normalized_edit_distance) of span and term.
double retrieval_similarity(std::string_view span, std::string_view term);

// Every indexed term whose retrieval similarity reaches `floor`, expanded to
// one candidate per (triple, slot) occurrence. Sorted by similarity
// descending, then term, then triple order.
std::vector<CandidateGene> candidate_genes(std::string_view span,
                                           const Ontology& ontology,
                                           double floor);

}  // namespace asrfix
