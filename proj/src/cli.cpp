#include "asrfix/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "asrfix/error.hpp"
#include "asrfix/harness.hpp"
#include "asrfix/mlrepair.hpp"
#include "asrfix/phonetics.hpp"

#ifndef ASRFIX_DATA_DIR
#define ASRFIX_DATA_DIR "data"
#endif

namespace asrfix {

namespace {

const std::string kDataDir = ASRFIX_DATA_DIR;

// Output goes to `path`, or to `fallback` when the path is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw DataError("cannot write " + path);
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct EvoOptions {
  std::string ontology;
  std::string config;
  std::string rules = kDataDir + "/rules.txt";
  std::string lexicon = kDataDir + "/lexicon.tsv";
  std::string embeddings;

  void add_to(CLI::App* cmd, bool ontology_required) {
    auto* o = cmd->add_option("--ontology", ontology, "ontology TSV");
    if (ontology_required) o->required();
    cmd->add_option("--config", config, "fitness config (defaults if absent)");
    cmd->add_option("--rules", rules, "grammar rule file")
        ->capture_default_str();
    cmd->add_option("--lexicon", lexicon, "word<TAB>TAG lexicon")
        ->capture_default_str();
    cmd->add_option("--embeddings", embeddings, "word vectors");
  }
};

// Loaded evo inputs, kept alive for a RepairContext.
struct EvoState {
  Ontology ontology;
  FitnessConfig config;
  std::vector<GrammarRule> rules;
  TagLexicon lexicon;
  std::optional<EmbeddingTable> embeddings;

  explicit EvoState(const EvoOptions& o)
      : ontology(Ontology::load(o.ontology)),
        config(o.config.empty() ? FitnessConfig{}
                                : FitnessConfig::load(o.config)),
        rules(o.rules.empty() ? std::vector<GrammarRule>{}
                              : load_rules(o.rules)),
        lexicon(TagLexicon::load(o.lexicon)) {
    if (!o.embeddings.empty()) embeddings = EmbeddingTable::load(o.embeddings);
  }

  RepairContext context() const {
    return {ontology, config, rules, lexicon,
            embeddings ? &*embeddings : nullptr};
  }
};

struct MarkedSentence {
  TokenSequence sentence;
  std::vector<Span> spans;
};

// sentence<TAB>start:len,start:len,... ; an empty second field marks nothing.
std::vector<MarkedSentence> read_marked(std::istream& in) {
  std::vector<MarkedSentence> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2) {
      throw DataError("marked line " + std::to_string(line_no) +
                      ": expected sentence<TAB>start:len,...");
    }
    MarkedSentence row{tokenize(fields[0]), {}};
    std::stringstream spans(fields[1]);
    std::string item;
    while (std::getline(spans, item, ',')) {
      if (item.empty()) continue;
      const auto colon = item.find(':');
      try {
        if (colon == std::string::npos) throw std::invalid_argument(item);
        std::size_t used = 0;
        const auto begin = std::stoul(item.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument(item);
        const auto len = std::stoul(item.substr(colon + 1), &used);
        if (used != item.size() - colon - 1) throw std::invalid_argument(item);
        row.spans.push_back({begin, len});
      } catch (const std::logic_error&) {
        throw DataError("marked line " + std::to_string(line_no) +
                        ": bad span '" + item + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Domain repair of speech recognizer transcripts", "asrfix"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  // tokenize
  std::string text;
  auto* tok = app.add_subcommand("tokenize", "Print normalized tokens");
  tok->add_option("text", text, "raw text")->required();

  // align
  std::string hyp_text, ref_text;
  auto* aln = app.add_subcommand("align", "Word alignment of hyp against ref");
  aln->add_option("--hyp", hyp_text, "hypothesis text")->required();
  aln->add_option("--ref", ref_text, "reference text")->required();

  // score
  auto* score = app.add_subcommand("score", "Word accuracy of hyp against ref");
  score->add_option("--hyp", hyp_text, "hypothesis text")->required();
  score->add_option("--ref", ref_text, "reference text")->required();

  // encode
  std::string word;
  auto* enc = app.add_subcommand("encode", "Phonetic codes of a word");
  enc->add_option("word", word, "word or phrase")->required();

  // ontology stats
  std::string ontology_path;
  auto* ont = app.add_subcommand("ontology", "Ontology tools");
  ont->require_subcommand(1);
  auto* stats = ont->add_subcommand("stats", "Triple and term counts");
  stats->add_option("path", ontology_path, "ontology TSV")
      ->required();

  // repair
  auto* rep = app.add_subcommand("repair", "Repair transcripts");
  rep->require_subcommand(1);

  EvoOptions evo_opts;
  std::string sentence, in_path, out_path;
  bool explain = false;
  auto* evo = rep->add_subcommand("evo", "Ontology-driven repair");
  evo_opts.add_to(evo, true);
  auto* evo_sentence =
      evo->add_option("--sentence", sentence, "repair one sentence");
  auto* evo_in = evo->add_option("--in", in_path, "corpus TSV to repair");
  evo_sentence->excludes(evo_in);
  evo->add_option("--out", out_path, "report TSV (default stdout)");
  evo->add_flag("--explain", explain,
                "print replacements and rule firings to stderr");

  auto* ml = rep->add_subcommand("ml", "Naive Bayes span repair");
  ml->require_subcommand(1);
  double alpha = 1.0;
  std::string features = feature_set_string(default_features());
  std::string model_path;
  std::size_t k = 10;
  std::uint64_t seed = 0;

  auto* train = ml->add_subcommand("train", "Train a model on labeled spans");
  train->add_option("--in", in_path, "training TSV")
      ->required();
  train->add_option("--out", out_path, "model JSON")->required();
  train->add_option("--alpha", alpha, "smoothing")->capture_default_str();
  train->add_option("--features", features, "active features")
      ->capture_default_str();

  auto* apply = ml->add_subcommand("apply", "Repair marked spans");
  apply->add_option("--model", model_path, "model JSON")
      ->required();
  apply->add_option("--in", in_path, "sentence<TAB>start:len,... TSV")
      ->required();
  apply->add_option("--out", out_path, "output (default stdout)");

  auto* cv = ml->add_subcommand("cv", "k-fold cross-validation");
  cv->add_option("--in", in_path, "training TSV")
      ->required();
  cv->add_option("--k", k, "folds")->capture_default_str();
  cv->add_option("--seed", seed, "shuffle seed")->required();
  cv->add_option("--alpha", alpha, "smoothing")->capture_default_str();
  cv->add_option("--features", features, "active features")
      ->capture_default_str();

  std::string corpus_path;
  auto* pairs = ml->add_subcommand("pairs", "Labeled spans from a corpus");
  pairs->add_option("--corpus", corpus_path, "corpus TSV")
      ->required();
  pairs->add_option("--out", out_path, "training TSV (default stdout)");

  // gen
  std::string refs_path, channel_path;
  std::optional<std::size_t> count;
  auto* gen = app.add_subcommand("gen", "Synthetic noisy corpus");
  gen->add_option("--refs", refs_path, "reference sentences")
      ->required();
  gen->add_option("--channel", channel_path, "channel config")
      ->required();
  gen->add_option("--seed", seed, "channel seed")->required();
  gen->add_option("--count", count, "pairs to emit (overrides the config)");
  gen->add_option("--ontology", evo_opts.ontology, "vocabulary source");
  gen->add_option("--lexicon", evo_opts.lexicon, "vocabulary source")
      ->capture_default_str();
  gen->add_option("--out", out_path, "corpus TSV (default stdout)");

  // eval
  std::string method_text = "evo";
  auto* eval = app.add_subcommand("eval", "Accuracy before and after repair");
  eval->add_option("--corpus", corpus_path, "corpus TSV")
      ->required();
  eval->add_option("--method", method_text, "evo, ml or both")
      ->check(CLI::IsMember({"evo", "ml", "both"}))
      ->capture_default_str();
  evo_opts.add_to(eval, false);
  eval->add_option("--model", model_path, "model JSON for ml");
  eval->add_option("--report", out_path, "report TSV (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 1;
  }

  try {
    if (*tok) {
      out << detokenize(tokenize(text)) << '\n';
    } else if (*aln) {
      const auto hyp = tokenize(hyp_text);
      const auto ref = tokenize(ref_text);
      const auto trace = align(hyp, ref);
      static const char* names[] = {"match", "substitute", "insert", "delete"};
      for (const auto& step : trace.ops) {
        out << names[static_cast<int>(step.op)] << '\t'
            << (step.hyp == AlignStep::kNone ? "-" : hyp[step.hyp]) << '\t'
            << (step.ref == AlignStep::kNone ? "-" : ref[step.ref]) << '\n';
      }
      out << "# cost " << trace.cost << '\n';
    } else if (*score) {
      out << format_percent(accuracy(tokenize(hyp_text), tokenize(ref_text)))
          << '\n';
    } else if (*enc) {
      const PhoneticCodes codes = encode(word);
      out << "soundex\t" << codes.soundex << '\n'
          << "metaphone\t" << codes.metaphone << '\n'
          << "dmeta_primary\t" << codes.dmeta_primary << '\n'
          << "dmeta_alternate\t" << codes.dmeta_alternate << '\n'
          << "syllables\t" << syllable_count(word) << '\n';
    } else if (*stats) {
      const Ontology o = Ontology::load(ontology_path);
      out << "triples\t" << o.triples().size() << '\n'
          << "terms\t" << o.terms().size() << '\n';
    } else if (*evo) {
      const EvoState state(evo_opts);
      const RepairContext ctx = state.context();
      if (!sentence.empty() || in_path.empty()) {
        const RepairResult r = repair(sentence, ctx);
        out << detokenize(r.output) << '\n';
        if (explain) {
          for (const auto& x : r.replacements) {
            err << "replace\t" << x.span.begin << ':' << x.span.length << '\t'
                << x.original << '\t' << x.term << '\t' << x.final_score
                << '\t' << x.cost_score << '\n';
          }
          for (const auto& f : r.rule_firings) {
            err << "rule\t" << f.rule_id << '\t' << f.position << '\t'
                << f.before << '\t' << f.after << '\n';
          }
        }
      } else {
        const auto corpus = read_corpus_file(in_path);
        Sink sink(out_path, out);
        write_report(*sink, evaluate(corpus, Method::kEvo, {&ctx, nullptr}));
      }
    } else if (*train) {
      std::vector<TrainingExample> examples;
      for (const auto& row : read_training_file(in_path)) {
        examples.push_back(row.example());
      }
      if (examples.empty()) throw DataError("no training rows in " + in_path);
      if (!(alpha > 0.0)) throw DataError("--alpha must be > 0");
      NaiveBayesModel::train(examples, alpha, parse_feature_set(features))
          .save(out_path);
      err << "trained on " << examples.size() << " spans\n";
    } else if (*apply) {
      const auto model = NaiveBayesModel::load(model_path);
      auto in = open_input(in_path);
      const auto rows = read_marked(in);
      Sink sink(out_path, out);
      for (const auto& row : rows) {
        try {
          *sink << detokenize(apply_repair(model, row.sentence, row.spans))
                << '\n';
        } catch (const InvalidArgument& e) {
          throw DataError(detokenize(row.sentence) + ": " + e.what());
        }
      }
    } else if (*cv) {
      std::vector<TrainingExample> examples;
      for (const auto& row : read_training_file(in_path)) {
        examples.push_back(row.example());
      }
      if (k < 2 || k > examples.size()) {
        throw DataError("--k must be in [2, " +
                        std::to_string(examples.size()) + "]");
      }
      const auto result = cross_validate(examples, k, alpha, seed,
                                         parse_feature_set(features));
      out << "fold\ttrain\ttest\taccuracy\tbaseline\n";
      for (std::size_t i = 0; i < result.folds.size(); ++i) {
        const auto& f = result.folds[i];
        out << i + 1 << '\t' << f.train_size << '\t' << f.test_size << '\t'
            << format_percent(100.0 * f.accuracy) << '\t'
            << format_percent(100.0 * f.baseline) << '\n';
      }
      out << "mean\t-\t-\t" << format_percent(100.0 * result.mean_accuracy)
          << '\t' << format_percent(100.0 * result.mean_baseline) << '\n';
    } else if (*pairs) {
      Sink sink(out_path, out);
      std::vector<LabeledSpan> rows;
      for (const auto& record : read_corpus_file(corpus_path)) {
        for (auto& row : mispair_spans(tokenize(record.hypothesis),
                                       tokenize(record.reference))) {
          rows.push_back(std::move(row));
        }
      }
      write_training(*sink, rows);
    } else if (*gen) {
      ChannelConfig channel = ChannelConfig::load(channel_path);
      channel.seed = seed;
      if (count) channel.count = *count;
      const Ontology vocab_ontology = evo_opts.ontology.empty()
                                          ? Ontology{}
                                          : Ontology::load(evo_opts.ontology);
      const Vocabulary vocabulary =
          Vocabulary::build(vocab_ontology, TagLexicon::load(evo_opts.lexicon));
      const auto refs = read_references_file(refs_path);
      if (refs.empty()) throw DataError("no references in " + refs_path);
      Sink sink(out_path, out);
      write_corpus(*sink, generate_corpus(refs, channel, vocabulary));
    } else if (*eval) {
      const Method method = parse_method(method_text);
      const auto corpus = read_corpus_file(corpus_path);
      std::optional<EvoState> state;
      std::optional<RepairContext> ctx;
      std::optional<NaiveBayesModel> model;
      if (method != Method::kMl) {
        if (evo_opts.ontology.empty()) {
          err << "eval --method " << method_text << " needs --ontology\n";
          return 1;
        }
        state.emplace(evo_opts);
        ctx.emplace(state->context());
      }
      if (method != Method::kEvo) {
        if (model_path.empty()) {
          err << "eval --method " << method_text << " needs --model\n";
          return 1;
        }
        model = NaiveBayesModel::load(model_path);
      }
      Sink sink(out_path, out);
      write_report(*sink, evaluate(corpus, method,
                                   {ctx ? &*ctx : nullptr,
                                    model ? &*model : nullptr}));
    }
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace asrfix
