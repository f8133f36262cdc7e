// Acceptance suite: end-to-end checks over the bundled fixture corpora plus
// randomized oracle-equivalence and property runs. Prints one PASS/FAIL line
// per criterion and exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ngramid/errors.hpp"
#include "ngramid/evaluation.hpp"
#include "ngramid/hash.hpp"
#include "ngramid/serial_ref.hpp"
#include "ngramid/utf8.hpp"

using namespace ngramid;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Harness {
 public:
  void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures_;
  }

  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::string fmt(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

LabeledCorpus filter_corpus(const LabeledCorpus& corpus, const std::string& tag,
                            const std::function<bool(const Document&)>& keep) {
  LabeledCorpus out;
  out.provenance = tag;
  for (const auto& d : corpus.documents) {
    if (keep(d)) out.documents.push_back(d);
  }
  return out;
}

double row_accuracy(const EvaluationReport& report, Method method, Field field) {
  for (const auto& row : report.rows) {
    if (row.method == method && row.field == field) return row.accuracy();
  }
  throw Error("acceptance: report row not found");
}

std::uint64_t row_evaluated(const EvaluationReport& report, Method method, Field field) {
  for (const auto& row : report.rows) {
    if (row.method == method && row.field == field) return row.n_evaluated;
  }
  throw Error("acceptance: report row not found");
}

// --- criterion 1: rank-order distance vs brute force ------------------------

std::uint64_t brute_force_distance(const RankedProfile& doc, const RankedProfile& lang) {
  std::uint64_t distance = 0;
  for (std::size_t i = 0; i < doc.entries.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < lang.entries.size(); ++j) {
      if (doc.entries[i] == lang.entries[j]) {
        distance += i > j ? i - j : j - i;
        found = true;
        break;
      }
    }
    if (!found) distance += lang.entries.size();
  }
  return distance;
}

bool run_rank_order_oracle(std::string& detail) {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);

  // Pool of distinct grams to draw profiles from.
  std::vector<NGram> pool;
  for (char a = 'a'; a <= 'j'; ++a) {
    for (char b = 'a'; b <= 'j'; ++b) {
      pool.push_back(std::string{a, b});
    }
  }

  std::size_t mismatches = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    auto draw = [&rng, &pool]() {
      std::vector<NGram> entries = pool;
      for (std::size_t i = entries.size() - 1; i > 0; --i) {
        std::swap(entries[i], entries[rng() % (i + 1)]);
      }
      entries.resize(1 + rng() % 50);
      RankedProfile p;
      p.entries = std::move(entries);
      p.rebuild_rank_index();
      return p;
    };
    const RankedProfile doc = draw();
    const RankedProfile lang = draw();
    if (out_of_place_distance(doc, lang) != brute_force_distance(doc, lang)) ++mismatches;
  }
  const double elapsed = seconds_since(start);
  detail = fmt("1000 random profile pairs, K<=50, %zu mismatches, %.2fs", mismatches, elapsed);
  return mismatches == 0 && elapsed < 5.0;
}

// --- criterion 2: naive Bayes vs direct formula ------------------------------

bool run_nb_oracle(std::string& detail) {
  const auto start = Clock::now();
  std::mt19937_64 rng(202);
  const double alphas[] = {0.5, 1.0, 2.0};

  std::size_t checked = 0;
  double worst = 0.0;
  std::size_t argmax_mismatches = 0;
  for (int iter = 0; iter < 200; ++iter) {
    TrainingConfig cfg;
    cfg.n_min = 1;
    cfg.n_max = 1;
    cfg.rank_n_max = 1;
    cfg.alpha = alphas[rng() % 3];

    ModelSet set;
    set.config = cfg;
    std::map<std::string, std::map<std::string, std::uint64_t>> raw;
    for (const std::string& label : {"l1", "l2"}) {
      LanguageModel m;
      m.language = label;
      m.table.n_min = 1;
      m.table.n_max = 1;
      const int vocab = 1 + static_cast<int>(rng() % 10);
      for (int v = 0; v < vocab; ++v) {
        const std::string gram(1, static_cast<char>('a' + v));
        const std::uint64_t count = 1 + rng() % 50;
        m.table.counts[gram] = count;
        m.table.total += count;
        raw[label][gram] = count;
      }
      derive_statistics(m, cfg);
      set.models.push_back(std::move(m));
    }

    // One random word; the extraction layer pads it with two '_' marks.
    std::string word;
    const int len = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) word += static_cast<char>('a' + rng() % 12);

    const auto posterior = nb_log_posterior(word, set);

    std::map<std::string, std::uint64_t> doc_counts;
    for (char c : word) ++doc_counts[std::string(1, c)];
    doc_counts["_"] += 2;

    std::string expected_best;
    double expected_best_score = 0.0;
    for (const auto& model : set.models) {
      const auto& counts = raw[model.language];
      std::uint64_t total = 0;
      for (const auto& [g, c] : counts) total += c;
      const double denom =
          static_cast<double>(total) + cfg.alpha * (static_cast<double>(counts.size()) + 1.0);
      // Independent route: log(c+a) - log(denom) term by term.
      double expected = -std::log(2.0);
      for (const auto& [g, c] : doc_counts) {
        auto it = counts.find(g);
        const double num = it == counts.end() ? cfg.alpha
                                              : static_cast<double>(it->second) + cfg.alpha;
        expected += static_cast<double>(c) * (std::log(num) - std::log(denom));
      }
      worst = std::max(worst, std::abs(expected - posterior.at(model.language)));
      if (expected_best.empty() || expected > expected_best_score + 1e-12) {
        expected_best = model.language;
        expected_best_score = expected;
      }
      ++checked;
    }

    const Verdict verdict = classify_nb(word, set);
    if (!verdict.tie && verdict.language != expected_best) ++argmax_mismatches;
  }
  const double elapsed = seconds_since(start);
  detail = fmt("200 random model pairs, max |delta| = %.3g, %zu argmax mismatches, %.2fs",
               worst, argmax_mismatches, elapsed);
  return worst <= 1e-10 && argmax_mismatches == 0 && elapsed < 5.0;
}

// --- criterion 9: CFA linearity and cosine range -----------------------------

bool run_cfa_cosine_properties(const ModelSet& set, std::string& detail) {
  const auto start = Clock::now();
  std::mt19937_64 rng(909);
  const std::string letters = "abcdefgëçxyz";

  auto random_doc = [&]() {
    std::string text;
    const int words = 1 + static_cast<int>(rng() % 20);
    for (int w = 0; w < words; ++w) {
      if (w) text += ' ';
      const int len = 1 + static_cast<int>(rng() % 9);
      for (int i = 0; i < len; ++i) {
        // letters is UTF-8; pick by character, not byte
        std::size_t pick = rng() % 12;
        std::size_t offset = 0;
        for (std::size_t c = 0; c < pick; ++c) utf8::decode_next(letters, offset);
        std::size_t end = offset;
        utf8::decode_next(letters, end);
        text += letters.substr(offset, end - offset);
      }
    }
    return text;
  };

  std::size_t linearity_violations = 0;
  std::size_t range_violations = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const std::string text = random_doc();
    for (const auto& model : set.models) {
      const double once = cfa_score(text, model);
      const std::string twice = text + " " + text;
      const std::string quad = twice + " " + twice;
      if (cfa_score(twice, model) != 2.0 * once) ++linearity_violations;
      if (cfa_score(quad, model) != 4.0 * once) ++linearity_violations;

      const double cos = cosine_score(text, model);
      if (!(cos >= 0.0 && cos <= 1.0)) ++range_violations;
    }
  }
  const double elapsed = seconds_since(start);
  detail = fmt("1000 random documents x %zu models, %zu linearity / %zu range violations, %.2fs",
               set.models.size(), linearity_violations, range_violations, elapsed);
  return linearity_violations == 0 && range_violations == 0;
}

}  // namespace

int main() {
  const fs::path fixtures = NGRAMID_FIXTURES_DIR;
  const fs::path scratch =
      fs::temp_directory_path() / ("ngramid-acceptance-" + std::to_string(fnv1a64("scratch")));
  fs::create_directories(scratch);

  Harness harness;
  try {
    std::string detail;

    // 1. rank-order oracle
    {
      const bool ok = run_rank_order_oracle(detail);
      harness.report(1, "rank-order distance equals a brute-force oracle", ok, detail);
    }

    // 2. naive Bayes oracle
    {
      const bool ok = run_nb_oracle(detail);
      harness.report(2, "naive Bayes posterior matches the direct smoothed formula", ok,
                     detail);
    }

    // Shared fixture artifacts for criteria 3-9.
    const auto setup_start = Clock::now();
    const LabeledCorpus articles = load_article_corpus(fixtures / "articles.jsonl");
    const auto [train_half, held_out] = split_train_test(articles, 0.5, 20250809);

    const TrainingConfig cfg;  // defaults: 1..4 statistics, 1..5 rank, K=300, M=3500
    const ModelSet clean_models = train_model_set(train_half, cfg);

    const LabeledCorpus striphalf_train = make_variant(train_half, Variant::strip_half(4242));
    const ModelSet perturbed_models = train_model_set(striphalf_train, cfg);
    const double setup_seconds = seconds_since(setup_start);

    // 3. probability-mass invariants over every trained model
    {
      double worst_norm = 0.0, worst_nb = 0.0, worst_cos = 0.0;
      for (const ModelSet* set : {&clean_models, &perturbed_models}) {
        for (const auto& m : set->models) {
          double norm_sum = 0.0;
          for (const auto& [g, f] : m.norm_freq) norm_sum += f;
          worst_norm = std::max(worst_norm, std::abs(norm_sum - 1.0));

          double nb_mass = std::exp(m.unseen_log_prob);
          for (const auto& [g, lp] : m.nb_log_prob) nb_mass += std::exp(lp);
          worst_nb = std::max(worst_nb, std::abs(nb_mass - 1.0));

          double cos = 0.0;
          for (const auto& [g, w] : m.cosine_vector) cos += w * w;
          worst_cos = std::max(worst_cos, std::abs(std::sqrt(cos) - 1.0));
        }
      }
      const bool ok = worst_norm < 1e-9 && worst_nb < 1e-9 && worst_cos < 1e-9;
      harness.report(3, "probability-mass invariants hold for every trained model", ok,
                     fmt("6 models; |norm-1| <= %.2g, |nb-1| <= %.2g, |cos-1| <= %.2g",
                         worst_norm, worst_nb, worst_cos));
    }

    // 4. long-text accuracy
    {
      const auto start = Clock::now();
      const LabeledCorpus long_texts =
          filter_corpus(held_out, "held-out-long", [](const Document& d) {
            return utf8::char_length(d.content) >= 300;
          });
      const EvaluationReport report =
          evaluate(clean_models, long_texts, {Method::NaiveBayes, Method::RankOrder},
                   {Field::Contents});
      const double nb = row_accuracy(report, Method::NaiveBayes, Field::Contents);
      const double rank = row_accuracy(report, Method::RankOrder, Field::Contents);
      const std::uint64_t n = row_evaluated(report, Method::NaiveBayes, Field::Contents);
      const double elapsed = seconds_since(start) + setup_seconds;
      const bool ok = n >= 200 && nb >= 0.95 && rank >= 0.95 && elapsed < 60.0;
      harness.report(4, "held-out long-text accuracy >= 0.95 for naive Bayes and rank-order",
                     ok, fmt("%llu documents >= 300 chars; nb %.4f, rank-order %.4f, %.1fs",
                             static_cast<unsigned long long>(n), nb, rank, elapsed));
    }

    // 5. degradation direction on stripped Albanian titles
    double clean_title_nb = 0.0, stripped_title_nb = 0.0;  // reused by criterion 6
    {
      const LabeledCorpus sq_titles =
          filter_corpus(held_out, "held-out-sq-titles", [](const Document& d) {
            return d.language == "sq" && utf8::char_length(d.title) <= 80;
          });
      const LabeledCorpus stripped = make_variant(sq_titles, Variant::strip_all());

      const std::vector<Method> methods = {Method::NaiveBayes, Method::RankOrder};
      const EvaluationReport clean_report =
          evaluate(clean_models, sq_titles, methods, {Field::Title});
      const EvaluationReport stripped_report =
          evaluate(clean_models, stripped, methods, {Field::Title});

      clean_title_nb = row_accuracy(clean_report, Method::NaiveBayes, Field::Title);
      stripped_title_nb = row_accuracy(stripped_report, Method::NaiveBayes, Field::Title);
      const double clean_rank = row_accuracy(clean_report, Method::RankOrder, Field::Title);
      const double stripped_rank =
          row_accuracy(stripped_report, Method::RankOrder, Field::Title);
      const std::uint64_t n = row_evaluated(clean_report, Method::NaiveBayes, Field::Title);

      const bool ok = n >= 200 && stripped_title_nb < clean_title_nb &&
                      stripped_rank < clean_rank;
      harness.report(
          5, "stripping diacritics strictly lowers clean-model title accuracy", ok,
          fmt("%llu titles; nb %.4f -> %.4f, rank-order %.4f -> %.4f",
              static_cast<unsigned long long>(n), clean_title_nb, stripped_title_nb,
              clean_rank, stripped_rank));
    }

    // 6. perturbed-training recovery
    {
      const auto start = Clock::now();
      const LabeledCorpus sq_long =
          filter_corpus(held_out, "held-out-sq-long", [](const Document& d) {
            return d.language == "sq" && utf8::char_length(d.content) >= 300;
          });
      const LabeledCorpus sq_titles =
          filter_corpus(held_out, "held-out-sq-titles", [](const Document& d) {
            return d.language == "sq" && utf8::char_length(d.title) <= 80;
          });
      const LabeledCorpus stripped_long = make_variant(sq_long, Variant::strip_all());
      const LabeledCorpus stripped_titles = make_variant(sq_titles, Variant::strip_all());

      const double recovered_long = row_accuracy(
          evaluate(perturbed_models, stripped_long, {Method::NaiveBayes}, {Field::Contents}),
          Method::NaiveBayes, Field::Contents);
      const double recovered_title = row_accuracy(
          evaluate(perturbed_models, stripped_titles, {Method::NaiveBayes}, {Field::Title}),
          Method::NaiveBayes, Field::Title);
      const double elapsed = seconds_since(start) + setup_seconds;

      // Baseline = the clean model scored on the same stripped titles.
      const bool ok =
          recovered_long >= 0.99 && recovered_title >= stripped_title_nb && elapsed < 120.0;
      harness.report(
          6, "training on half-stripped text recovers stripped-text accuracy", ok,
          fmt("stripped long-text nb %.4f (need >= 0.99); stripped titles %.4f vs clean-model "
              "baseline %.4f; %.1fs",
              recovered_long, recovered_title, stripped_title_nb, elapsed));
    }

    // 7. determinism: model files, perturbed corpora, reports
    {
      save_model_set(train_model_set(train_half, cfg), scratch / "a.lm");
      save_model_set(train_model_set(train_half, cfg), scratch / "b.lm");
      auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
      };
      const std::string model_a = slurp(scratch / "a.lm");
      const std::string model_b = slurp(scratch / "b.lm");

      save_article_corpus(make_variant(held_out, Variant::strip_half(7)), scratch / "a.jsonl");
      save_article_corpus(make_variant(held_out, Variant::strip_half(7)), scratch / "b.jsonl");
      const std::string corpus_a = slurp(scratch / "a.jsonl");
      const std::string corpus_b = slurp(scratch / "b.jsonl");

      const std::vector<Method> methods = {Method::NaiveBayes, Method::CFA};
      const std::string report_a = render_report(
          evaluate(clean_models, held_out, methods, {Field::Contents}),
          ReportFormat::TabSeparated);
      const std::string report_b = render_report(
          evaluate(clean_models, held_out, methods, {Field::Contents}),
          ReportFormat::TabSeparated);

      const bool ok = !model_a.empty() && model_a == model_b && corpus_a == corpus_b &&
                      report_a == report_b;
      harness.report(
          7, "model files, perturbed corpora and reports are byte-deterministic", ok,
          fmt("checksums: model %016llx/%016llx, corpus %016llx/%016llx, report %016llx/%016llx",
              static_cast<unsigned long long>(fnv1a64(model_a)),
              static_cast<unsigned long long>(fnv1a64(model_b)),
              static_cast<unsigned long long>(fnv1a64(corpus_a)),
              static_cast<unsigned long long>(fnv1a64(corpus_b)),
              static_cast<unsigned long long>(fnv1a64(report_a)),
              static_cast<unsigned long long>(fnv1a64(report_b))));
    }

    // 8. excerpt conformance
    {
      const LabeledCorpus excerpted = make_variant(articles, Variant::excerpt(500));
      std::size_t independent_short = 0;
      for (const auto& d : articles.documents) {
        if (d.content.size() < 500) ++independent_short;
      }
      std::size_t over_limit = 0, invalid = 0;
      for (const auto& d : excerpted.documents) {
        if (d.content.size() > 500) ++over_limit;
        if (!utf8::is_valid(d.content)) ++invalid;
      }
      const std::size_t excluded = articles.documents.size() - excerpted.documents.size();
      const bool ok = over_limit == 0 && invalid == 0 && excluded == independent_short;
      harness.report(8, "500-byte excerpting conforms to the exclusion rule", ok,
                     fmt("%zu documents kept, %zu excluded (independent scan: %zu), "
                         "%zu over limit, %zu invalid",
                         excerpted.documents.size(), excluded, independent_short, over_limit,
                         invalid));
    }

    // 9. CFA linearity and cosine range
    {
      const bool ok = run_cfa_cosine_properties(clean_models, detail);
      harness.report(9, "CFA is exactly linear and cosine stays within [0,1]", ok, detail);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
    std::error_code ec;
    fs::remove_all(scratch, ec);
    return 99;
  }

  std::error_code ec;
  fs::remove_all(scratch, ec);
  if (harness.failures() == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", harness.failures());
  }
  return harness.failures() == 0 ? 0 : 1;
}
