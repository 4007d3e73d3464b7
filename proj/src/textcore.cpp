#include "asrfix/textcore.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "asrfix/error.hpp"

namespace asrfix {

namespace {

bool is_word_byte(unsigned char c) {
  return std::isalnum(c) || c >= 0x80;
}

bool is_inner_byte(unsigned char c) {
  return is_word_byte(c) || c == '\'' || c == '-';
}

void flush_chunk(std::string& chunk, std::vector<std::string>& out) {
  std::size_t first = 0;
  std::size_t last = chunk.size();
  while (first < last && !is_word_byte(chunk[first])) ++first;
  while (last > first && !is_word_byte(chunk[last - 1])) --last;
  if (first < last) out.push_back(chunk.substr(first, last - first));
  chunk.clear();
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string strip_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

TokenSequence tokenize(std::string_view raw) {
  TokenSequence seq;
  seq.source = std::string(raw);
  std::string chunk;
  for (char ch : raw) {
    auto c = static_cast<unsigned char>(ch);
    if (is_inner_byte(c)) {
      chunk.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush_chunk(chunk, seq.tokens);
    }
  }
  flush_chunk(chunk, seq.tokens);
  return seq;
}

std::string detokenize(const TokenSequence& seq) {
  return join_span(seq, {0, seq.size()});
}

TokenSequence make_sequence(std::vector<std::string> tokens) {
  TokenSequence seq;
  seq.tokens = std::move(tokens);
  seq.source = detokenize(seq);
  return seq;
}

std::string join_span(const TokenSequence& seq, Span span) {
  std::string out;
  for (std::size_t i = span.begin; i < span.end() && i < seq.size(); ++i) {
    if (!out.empty()) out.push_back(' ');
    out += seq[i];
  }
  return out;
}

AlignmentTrace align(const TokenSequence& hyp, const TokenSequence& ref) {
  const std::size_t n = hyp.size();
  const std::size_t m = ref.size();
  // dist[i][j]: edits turning hyp[0, i) into ref[0, j).
  std::vector<std::vector<std::size_t>> dist(n + 1,
                                             std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) dist[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) dist[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t diag = dist[i - 1][j - 1] + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      dist[i][j] = std::min({diag, dist[i - 1][j] + 1, dist[i][j - 1] + 1});
    }
  }

  AlignmentTrace trace;
  trace.cost = dist[n][m];
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::size_t here = dist[i][j];
    if (i > 0 && j > 0 && hyp[i - 1] == ref[j - 1] &&
        here == dist[i - 1][j - 1]) {
      trace.ops.push_back({EditOp::kMatch, i - 1, j - 1});
      --i;
      --j;
    } else if (i > 0 && j > 0 && here == dist[i - 1][j - 1] + 1) {
      trace.ops.push_back({EditOp::kSubstitute, i - 1, j - 1});
      --i;
      --j;
    } else if (j > 0 && here == dist[i][j - 1] + 1) {
      trace.ops.push_back({EditOp::kDelete, AlignStep::kNone, j - 1});
      --j;
    } else {
      trace.ops.push_back({EditOp::kInsert, i - 1, AlignStep::kNone});
      --i;
    }
  }
  std::reverse(trace.ops.begin(), trace.ops.end());
  return trace;
}

double accuracy(const TokenSequence& hyp, const TokenSequence& ref) {
  if (ref.empty()) throw InvalidArgument("empty reference");
  const auto cost = static_cast<double>(align(hyp, ref).cost);
  const auto len = static_cast<double>(ref.size());
  return std::max(0.0, 100.0 * (len - cost) / len);
}

std::string format_percent(double value) {
  // Work in tenths with a small guard so 80.95 (stored as 80.9499...) still
  // rounds up. Negative values round away from zero.
  const double tenths = std::floor(std::fabs(value) * 10.0 + 0.5 + 1e-9);
  const auto whole = static_cast<long long>(tenths);
  std::string out = value < 0 && whole != 0 ? "-" : "";
  out += std::to_string(whole / 10);
  out.push_back('.');
  out += std::to_string(whole % 10);
  return out;
}

std::string Mispair::erroneous_text() const {
  return make_sequence(erroneous_words).source;
}

std::string Mispair::correction_text() const {
  return make_sequence(correction_words).source;
}

std::vector<Mispair> extract_mispairs(const AlignmentTrace& trace,
                                      const TokenSequence& hyp,
                                      const TokenSequence& ref) {
  const auto& ops = trace.ops;
  // Runs of non-match steps as half-open ranges over ops.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t k = 0; k < ops.size();) {
    if (ops[k].op == EditOp::kMatch) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end < ops.size() && ops[end].op != EditOp::kMatch) ++end;
    runs.emplace_back(k, end);
    k = end;
  }
  for (auto& [first, last] : runs) {
    bool touches_hyp = false;
    for (std::size_t k = first; k < last; ++k) {
      touches_hyp = touches_hyp || ops[k].hyp != AlignStep::kNone;
    }
    if (touches_hyp) continue;
    if (first > 0) {
      --first;
    } else if (last < ops.size()) {
      ++last;
    }
  }
  // Two runs can claim the same matched word; merge those.
  std::vector<std::pair<std::size_t, std::size_t>> merged;
  for (const auto& run : runs) {
    if (!merged.empty() && run.first < merged.back().second) {
      merged.back().second = std::max(merged.back().second, run.second);
    } else {
      merged.push_back(run);
    }
  }

  std::vector<Mispair> pairs;
  for (const auto& [first, last] : merged) {
    Mispair pair;
    std::size_t hyp_lo = AlignStep::kNone, hyp_hi = 0;
    std::size_t ref_lo = AlignStep::kNone, ref_hi = 0;
    for (std::size_t k = first; k < last; ++k) {
      if (ops[k].hyp != AlignStep::kNone) {
        hyp_lo = std::min(hyp_lo, ops[k].hyp);
        hyp_hi = std::max(hyp_hi, ops[k].hyp + 1);
        pair.erroneous_words.push_back(hyp[ops[k].hyp]);
      }
      if (ops[k].ref != AlignStep::kNone) {
        ref_lo = std::min(ref_lo, ops[k].ref);
        ref_hi = std::max(ref_hi, ops[k].ref + 1);
        pair.correction_words.push_back(ref[ops[k].ref]);
      }
    }
    if (hyp_lo == AlignStep::kNone) continue;  // both sequences empty
    pair.erroneous = {hyp_lo, hyp_hi - hyp_lo};
    if (ref_lo == AlignStep::kNone) {
      // Correction is empty; anchor it where the reference would resume.
      std::size_t anchor = 0;
      for (std::size_t k = 0; k < first; ++k) {
        if (ops[k].ref != AlignStep::kNone) anchor = ops[k].ref + 1;
      }
      pair.correction = {anchor, 0};
    } else {
      pair.correction = {ref_lo, ref_hi - ref_lo};
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

TokenSequence apply_mispairs(const TokenSequence& hyp,
                             const std::vector<Mispair>& pairs) {
  std::vector<std::string> out;
  std::size_t next = 0;
  std::vector<const Mispair*> ordered;
  for (const auto& p : pairs) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    return a->erroneous.begin < b->erroneous.begin;
  });
  for (const auto* p : ordered) {
    for (; next < p->erroneous.begin; ++next) out.push_back(hyp[next]);
    out.insert(out.end(), p->correction_words.begin(),
               p->correction_words.end());
    next = p->erroneous.end();
  }
  for (; next < hyp.size(); ++next) out.push_back(hyp[next]);
  return make_sequence(std::move(out));
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

double normalized_edit_distance(std::string_view a, std::string_view b) {
  const std::string x = to_lower(strip_whitespace(a));
  const std::string y = to_lower(strip_whitespace(b));
  const std::size_t longest = std::max(x.size(), y.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(levenshtein(x, y)) /
         static_cast<double>(longest);
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

std::vector<CorpusRecord> read_corpus(std::istream& in) {
  std::vector<CorpusRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() != 3 && fields.size() != 4) {
      throw DataError("corpus line " + std::to_string(line_no) +
                      ": expected 3 or 4 tab-separated fields, got " +
                      std::to_string(fields.size()));
    }
    CorpusRecord rec{fields[0], fields[1], fields[2], ""};
    if (fields.size() == 4) rec.tagged = fields[3];
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<CorpusRecord> read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path);
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const std::vector<CorpusRecord>& records) {
  for (const auto& r : records) {
    out << r.id << '\t' << r.reference << '\t' << r.hypothesis;
    if (!r.tagged.empty()) out << '\t' << r.tagged;
    out << '\n';
  }
}

}  // namespace asrfix
