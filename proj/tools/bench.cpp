// Benchmark of the OpenMP-parallel training and evaluation kernels against
// the single-threaded reference implementations, on the bundled fixture
// corpus (or any article file). Also cross-checks that both paths produce
// identical output.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ngramid/serial_ref.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace ngramid;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double best_of(int repeat, F&& body) {
  double best = 1e300;
  for (int i = 0; i < repeat; ++i) {
    const auto start = Clock::now();
    body();
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (ms < best) best = ms;
  }
  return best;
}

LabeledCorpus scale_corpus(const LabeledCorpus& corpus, int scale) {
  if (scale <= 1) return corpus;
  LabeledCorpus out;
  out.provenance = corpus.provenance;
  for (int copy = 0; copy < scale; ++copy) {
    for (Document d : corpus.documents) {
      d.id += "#" + std::to_string(copy);
      out.documents.push_back(std::move(d));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernel benchmark"};
  std::string articles = "data/fixtures/articles.jsonl";
  int threads = 0;
  int repeat = 3;
  int scale = 1;
  app.add_option("--articles", articles, "article corpus to benchmark on");
  app.add_option("--threads", threads, "worker threads for the parallel runs (default: all)");
  app.add_option("--repeat", repeat, "repetitions per measurement, best is kept (default 3)");
  app.add_option("--scale", scale, "duplicate the corpus this many times");
  CLI11_PARSE(app, argc, argv);

  try {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif
    const LabeledCorpus corpus = scale_corpus(load_article_corpus(articles), scale);
    const TrainingConfig cfg;
    std::printf("corpus: %zu documents, parallel runs use %d thread(s)\n",
                corpus.documents.size(), max_threads);

    ModelSet serial_set, parallel_set;
    const double train_serial =
        best_of(repeat, [&] { serial_set = serial_ref::train_model_set(corpus, cfg); });
    const double train_parallel =
        best_of(repeat, [&] { parallel_set = train_model_set(corpus, cfg, true); });

    const std::vector<Method> methods = {Method::NaiveBayes, Method::RankOrder, Method::CFA};
    const std::vector<Field> fields = {Field::Contents};
    EvaluationReport serial_report, parallel_report;
    const double eval_serial = best_of(
        repeat, [&] { serial_report = serial_ref::evaluate(serial_set, corpus, methods, fields); });
    EvalOptions opts;
    opts.parallel = true;
    const double eval_parallel = best_of(
        repeat, [&] { parallel_report = evaluate(parallel_set, corpus, methods, fields, opts); });

    std::printf("%-22s %12s %12s %9s\n", "kernel", "serial ms", "parallel ms", "speedup");
    std::printf("%-22s %12.1f %12.1f %8.2fx\n", "train_model_set", train_serial, train_parallel,
                train_serial / train_parallel);
    std::printf("%-22s %12.1f %12.1f %8.2fx\n", "evaluate", eval_serial, eval_parallel,
                eval_serial / eval_parallel);

    // The whole point of keeping the reference around: identical results.
    const std::string a = render_report(serial_report, ReportFormat::TabSeparated);
    const std::string b = render_report(parallel_report, ReportFormat::TabSeparated);
    if (a != b) {
      std::fprintf(stderr, "MISMATCH: parallel evaluation differs from the serial reference\n");
      return 1;
    }
    std::printf("outputs verified identical\n");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
