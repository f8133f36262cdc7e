// ngramid command line: train language models, identify text, build dataset
// variants and run accuracy experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ngramid/errors.hpp"
#include "ngramid/evaluation.hpp"
#include "ngramid/serial_ref.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace ngramid;

struct CorpusArgs {
  std::string folder;
  std::string articles;
  std::string dataset_tag;
};

void add_corpus_options(CLI::App* cmd, CorpusArgs& args, bool with_tag = true) {
  auto* folder = cmd->add_option("--corpus", args.folder,
                                 "corpus root laid out as <language>/<domain>/<file>.txt");
  auto* articles =
      cmd->add_option("--articles", args.articles, "newline-delimited JSON article file");
  folder->excludes(articles);
  articles->excludes(folder);
  if (with_tag) {
    cmd->add_option("--dataset-tag", args.dataset_tag,
                    "dataset tag used in reports (default: derived from the input path)");
  }
}

LabeledCorpus load_corpus(const CorpusArgs& args) {
  if (args.folder.empty() && args.articles.empty()) {
    throw ParameterError("one of --corpus or --articles is required");
  }
  IngestionReport report;
  LabeledCorpus corpus = args.folder.empty() ? load_article_corpus(args.articles, &report)
                                             : load_folder_corpus(args.folder, &report);
  for (const auto& e : report.errors) {
    std::cerr << e.item << '\t' << e.message << '\n';
  }
  if (!args.dataset_tag.empty()) corpus.provenance = args.dataset_tag;
  return corpus;
}

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

std::string format_score(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string((std::istreambuf_iterator<char>(std::cin)),
                       std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input '" + path + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::vector<Method> parse_methods_list(const std::string& list) {
  std::vector<Method> methods;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string::npos) comma = list.size();
    const std::string name = list.substr(pos, comma - pos);
    const auto method = parse_method(name);
    if (!method) throw ParameterError("unknown method '" + name + "'");
    methods.push_back(*method);
    pos = comma + 1;
  }
  return methods;
}

std::vector<Field> parse_fields_list(const std::string& list) {
  std::vector<Field> fields;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string::npos) comma = list.size();
    const std::string name = list.substr(pos, comma - pos);
    const auto field = parse_field(name);
    if (!field) throw ParameterError("unknown field '" + name + "'");
    fields.push_back(*field);
    pos = comma + 1;
  }
  return fields;
}

PriorsMode parse_priors(const std::string& name) {
  if (name == "uniform") return PriorsMode::Uniform;
  if (name == "train-size") return PriorsMode::TrainSize;
  throw ParameterError("unknown priors mode '" + name + "'");
}

int cmd_train(const CorpusArgs& corpus_args, const std::string& out_path,
              const TrainingConfig& cfg, int threads) {
  set_threads(threads);
  const LabeledCorpus corpus = load_corpus(corpus_args);
  const ModelSet set = train_model_set(corpus, cfg);
  save_model_set(set, out_path);

  std::map<std::string, std::uint64_t> doc_counts;
  for (const auto& d : corpus.documents) ++doc_counts[d.language];
  for (const auto& m : set.models) {
    std::cout << "language " << m.language << ": " << doc_counts[m.language] << " documents, "
              << m.train_bytes << " bytes, " << m.table.counts.size() << " n-grams, "
              << m.short_word_counts.size() << " short words\n";
  }
  const CorpusStats stats = corpus_stats(corpus);
  if (stats.title) {
    std::cout << "title bytes: min " << stats.title->min_bytes << " max "
              << stats.title->max_bytes << " avg " << format_score(stats.title->avg_bytes)
              << '\n';
  }
  std::cout << "content bytes: min " << stats.content.min_bytes << " max "
            << stats.content.max_bytes << " avg " << format_score(stats.content.avg_bytes)
            << '\n';
  std::cout << "model written to " << out_path << '\n';
  return 0;
}

int cmd_identify(const std::string& model_path, const std::string& input,
                 const std::string& method_name_arg, bool verbose,
                 const ClassifyOptions& opts) {
  const auto method = parse_method(method_name_arg);
  if (!method) throw ParameterError("unknown method '" + method_name_arg + "'");
  const ModelSet set = load_model_set(model_path);
  const std::string text = read_input(input);
  const Verdict verdict = classify(text, set, *method, opts);
  // Threshold rejection reports the reserved label "und".
  std::cout << (verdict.unknown ? "und" : verdict.language) << '\t'
            << format_score(verdict.scores.at(verdict.language)) << '\n';
  if (verbose) {
    // Full score map, best first.
    std::vector<std::pair<std::string, double>> ordered(verdict.scores.begin(),
                                                        verdict.scores.end());
    const bool minimize = *method == Method::RankOrder;
    std::sort(ordered.begin(), ordered.end(), [minimize](const auto& a, const auto& b) {
      if (a.second != b.second) return minimize ? a.second < b.second : a.second > b.second;
      return a.first < b.first;
    });
    for (const auto& [label, score] : ordered) {
      std::cout << label << '\t' << format_score(score) << '\n';
    }
    if (verdict.tie) std::cerr << "note: tie resolved by label order\n";
  }
  return 0;
}

int cmd_perturb(const CorpusArgs& corpus_args, const std::string& variant_name,
                std::optional<std::uint64_t> seed, double probability,
                const std::string& out_path) {
  const LabeledCorpus corpus = load_corpus(corpus_args);
  Variant variant;
  if (variant_name == "strip-all") {
    variant = Variant::strip_all();
  } else if (variant_name == "strip-half") {
    if (!seed) throw ParameterError("--seed is required for strip-half");
    variant = Variant::strip_half(*seed, probability);
  } else {
    throw ParameterError("unknown variant '" + variant_name + "' (strip-all|strip-half)");
  }
  const LabeledCorpus out = make_variant(corpus, variant);
  save_article_corpus(out, out_path);
  std::cout << "documents " << out.documents.size() << '\n';
  return 0;
}

int cmd_excerpt(const CorpusArgs& corpus_args, std::size_t max_bytes,
                const std::string& out_path) {
  const LabeledCorpus corpus = load_corpus(corpus_args);
  const LabeledCorpus out = make_variant(corpus, Variant::excerpt(max_bytes));
  save_article_corpus(out, out_path);
  std::cout << "excluded " << corpus.documents.size() - out.documents.size() << '\n';
  std::cout << "documents " << out.documents.size() << '\n';
  return 0;
}

int cmd_eval(const std::string& model_path, const CorpusArgs& corpus_args,
             const std::string& methods_list, const std::string& fields_list,
             const std::string& format, const std::string& out_path, int threads,
             const ClassifyOptions& copts) {
  set_threads(threads);
  if (format != "table" && format != "tsv") {
    throw ParameterError("unknown format '" + format + "' (table|tsv)");
  }
  const ModelSet set = load_model_set(model_path);
  const LabeledCorpus corpus = load_corpus(corpus_args);
  EvalOptions opts;
  opts.classify = copts;
  const EvaluationReport report =
      evaluate(set, corpus, parse_methods_list(methods_list), parse_fields_list(fields_list),
               opts);
  const std::string rendered = render_report(
      report, format == "tsv" ? ReportFormat::TabSeparated : ReportFormat::TableText);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error("cannot open '" + out_path + "' for writing");
    out << rendered;
    if (!out.flush()) throw Error("write to '" + out_path + "' failed");
  }
  return 0;
}

int cmd_compare(const std::string& path_a, const std::string& path_b) {
  auto load = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open report '" + path + "'");
    const std::string body((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    return parse_report_tsv(body);
  };
  const auto deltas = compare_runs(load(path_a), load(path_b));
  std::cout << "method\tfield\taccuracy_a\taccuracy_b\tdelta\n";
  for (const auto& d : deltas) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s\t%s\t%.4f\t%.4f\t%+.4f\n",
                  std::string(method_name(d.method)).c_str(),
                  std::string(field_name(d.field)).c_str(), d.accuracy_a, d.accuracy_b,
                  d.delta);
    std::cout << buf;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"character n-gram language identification toolkit"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "train a model set from a labeled corpus");
  CorpusArgs train_corpus;
  add_corpus_options(train, train_corpus, /*with_tag=*/false);
  std::string train_out;
  train->add_option("--out", train_out, "model file to write")->required();
  TrainingConfig cfg;
  int train_threads = 0;
  train->add_option("--ngram-min", cfg.n_min, "smallest n-gram length (default 1)");
  train->add_option("--ngram-max", cfg.n_max,
                    "largest n-gram length for frequency statistics (default 4)");
  train->add_option("--rank-ngram-max", cfg.rank_n_max,
                    "largest n-gram length for the ranked profile (default 5)");
  train->add_option("--profile-size", cfg.profile_size, "ranked profile size K (default 300)");
  train->add_option("--cosine-size", cfg.cosine_size, "cosine vector size M (default 3500)");
  train->add_option("--alpha", cfg.alpha, "add-alpha smoothing constant (default 1)");
  train->add_option("--shortword-max-len", cfg.short_word_max_len,
                    "maximum short-word length (default 5)");
  train->add_option("--shortword-size", cfg.short_word_profile,
                    "short-word profile size (default 200)");
  train->add_option("--threads", train_threads, "worker threads (default: all)");

  // identify
  auto* identify = app.add_subcommand("identify", "identify the language of one text");
  std::string id_model, id_input = "-", id_method = "naive-bayes", id_priors = "uniform";
  bool id_verbose = false;
  std::optional<int> id_profile_size;
  identify->add_option("--model", id_model, "trained model file")->required();
  identify->add_option("--input", id_input, "input file, or - for standard input");
  identify->add_option("--method", id_method,
                       "rank-order|cfa|cosine|naive-bayes|short-words (default naive-bayes)");
  identify->add_option("--profile-size", id_profile_size,
                       "override profile size K for rank-order");
  identify->add_option("--priors", id_priors, "uniform|train-size (default uniform)");
  std::optional<double> id_min_score, id_min_margin;
  identify->add_option("--min-score", id_min_score,
                       "report 'und' when the winning score is worse than this");
  identify->add_option("--min-margin", id_min_margin,
                       "report 'und' when the winner leads by less than this");
  identify->add_flag("--verbose", id_verbose, "print the full score map");

  // perturb
  auto* perturb = app.add_subcommand("perturb", "strip diacritics from a corpus");
  CorpusArgs perturb_corpus;
  add_corpus_options(perturb, perturb_corpus);
  std::string perturb_variant, perturb_out;
  std::optional<std::uint64_t> perturb_seed;
  double perturb_p = 0.5;
  perturb->add_option("--variant", perturb_variant, "strip-all|strip-half")->required();
  perturb->add_option("--seed", perturb_seed, "random seed (required for strip-half)");
  perturb->add_option("--p", perturb_p, "replacement probability for strip-half (default 0.5)");
  perturb->add_option("--out", perturb_out, "article file to write")->required();

  // excerpt
  auto* excerpt = app.add_subcommand("excerpt", "keep fixed-size content excerpts");
  CorpusArgs excerpt_corpus;
  add_corpus_options(excerpt, excerpt_corpus);
  std::size_t excerpt_bytes_limit = 500;
  std::string excerpt_out;
  excerpt->add_option("--max-bytes", excerpt_bytes_limit, "excerpt size in bytes (default 500)");
  excerpt->add_option("--out", excerpt_out, "article file to write")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "run accuracy experiments");
  CorpusArgs eval_corpus;
  add_corpus_options(eval, eval_corpus);
  std::string eval_model, eval_out, eval_format = "table", eval_priors = "uniform";
  std::string eval_methods = "rank-order,cfa,cosine,naive-bayes,short-words";
  std::string eval_fields = "title,contents";
  std::optional<int> eval_profile_size;
  int eval_threads = 0;
  eval->add_option("--model", eval_model, "trained model file")->required();
  eval->add_option("--methods", eval_methods, "comma-separated method list (default all)");
  eval->add_option("--fields", eval_fields, "comma-separated fields (default title,contents)");
  eval->add_option("--format", eval_format, "table|tsv (default table)");
  eval->add_option("--out", eval_out, "write the report here instead of standard output");
  eval->add_option("--profile-size", eval_profile_size,
                   "override profile size K for rank-order");
  eval->add_option("--priors", eval_priors, "uniform|train-size (default uniform)");
  eval->add_option("--threads", eval_threads, "worker threads (default: all)");

  // compare
  auto* compare = app.add_subcommand("compare", "diff two tsv reports");
  std::string compare_a, compare_b;
  compare->add_option("--a", compare_a, "baseline tsv report")->required();
  compare->add_option("--b", compare_b, "comparison tsv report")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return cmd_train(train_corpus, train_out, cfg, train_threads);
    if (identify->parsed()) {
      ClassifyOptions opts;
      opts.profile_size = id_profile_size;
      opts.priors = parse_priors(id_priors);
      opts.min_score = id_min_score;
      opts.min_margin = id_min_margin;
      return cmd_identify(id_model, id_input, id_method, id_verbose, opts);
    }
    if (perturb->parsed()) {
      return cmd_perturb(perturb_corpus, perturb_variant, perturb_seed, perturb_p, perturb_out);
    }
    if (excerpt->parsed()) {
      return cmd_excerpt(excerpt_corpus, excerpt_bytes_limit, excerpt_out);
    }
    if (eval->parsed()) {
      ClassifyOptions opts;
      opts.profile_size = eval_profile_size;
      opts.priors = parse_priors(eval_priors);
      return cmd_eval(eval_model, eval_corpus, eval_methods, eval_fields, eval_format, eval_out,
                      eval_threads, opts);
    }
    if (compare->parsed()) return cmd_compare(compare_a, compare_b);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
