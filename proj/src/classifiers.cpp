#include "ngramid/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ngramid/errors.hpp"

namespace ngramid {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::RankOrder: return "rank-order";
    case Method::CFA: return "cfa";
    case Method::Cosine: return "cosine";
    case Method::NaiveBayes: return "naive-bayes";
    case Method::ShortWords: return "short-words";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (name == method_name(m)) return m;
  }
  if (name == "nb") return Method::NaiveBayes;  // common shorthand
  return std::nullopt;
}

namespace {

// Doc n-grams in byte order so floating-point accumulation is identical
// across runs and platforms regardless of hash-map iteration order.
std::vector<std::pair<NGram, std::uint64_t>> sorted_grams(const NGramCounts& doc) {
  std::vector<std::pair<NGram, std::uint64_t>> v(doc.counts.begin(), doc.counts.end());
  std::sort(v.begin(), v.end());
  return v;
}

[[noreturn]] void throw_empty(const char* where) {
  throw ClassificationError(ClassificationError::Kind::EmptyInput,
                            std::string(where) + ": no usable text");
}

Verdict make_verdict(Method method, std::map<std::string, double> scores, bool minimize,
                     const ClassifyOptions& opts) {
  Verdict v;
  v.method = method;
  const double inf = std::numeric_limits<double>::infinity();
  double best = minimize ? inf : -inf;
  double runner_up = best;
  for (const auto& [label, score] : scores) {
    if (minimize ? score < best : score > best) {
      runner_up = best;
      best = score;
    } else if (minimize ? score < runner_up : score > runner_up) {
      runner_up = score;
    }
  }
  int optimal = 0;
  for (const auto& [label, score] : scores) {
    if (std::abs(score - best) <= kScoreTieTolerance) {
      if (optimal == 0) v.language = label;  // map order = lexicographic
      ++optimal;
    }
  }
  v.tie = optimal >= 2;
  if (opts.min_score && (minimize ? best > *opts.min_score : best < *opts.min_score)) {
    v.unknown = true;
  }
  if (opts.min_margin && scores.size() > 1) {
    const double margin = minimize ? runner_up - best : best - runner_up;
    if (margin < *opts.min_margin) v.unknown = true;
  }
  v.scores = std::move(scores);
  return v;
}

const TrainingConfig& config_of(const ModelSet& set) {
  if (set.models.empty()) throw ParameterError("classify: empty model set");
  return set.config;
}

std::map<std::string, double> log_priors(const ModelSet& set, PriorsMode mode) {
  std::map<std::string, double> out;
  if (mode == PriorsMode::TrainSize) {
    std::uint64_t total = 0;
    for (const auto& m : set.models) total += m.train_bytes;
    if (total > 0) {
      for (const auto& m : set.models) {
        if (m.train_bytes == 0) {
          throw ParameterError("train-size priors: language '" + m.language +
                               "' has zero training bytes");
        }
        out[m.language] = std::log(static_cast<double>(m.train_bytes) /
                                   static_cast<double>(total));
      }
      return out;
    }
    // All-zero byte counts (hand-built models): fall back to uniform.
  }
  const double lp = -std::log(static_cast<double>(set.models.size()));
  for (const auto& m : set.models) out[m.language] = lp;
  return out;
}

}  // namespace

std::uint64_t out_of_place_distance(const RankedProfile& doc, const RankedProfile& lang) {
  if (doc.empty()) {
    throw ClassificationError(ClassificationError::Kind::EmptyInput,
                              "out_of_place_distance: empty document profile");
  }
  if (lang.empty()) throw ParameterError("out_of_place_distance: empty language profile");
  const std::uint64_t penalty = lang.size();
  std::uint64_t distance = 0;
  for (std::size_t r = 0; r < doc.entries.size(); ++r) {
    auto it = lang.rank.find(doc.entries[r]);
    if (it == lang.rank.end()) {
      distance += penalty;
    } else {
      const std::int64_t d = static_cast<std::int64_t>(r) - it->second;
      distance += static_cast<std::uint64_t>(d < 0 ? -d : d);
    }
  }
  return distance;
}

double cfa_score_counts(const NGramCounts& doc, const LanguageModel& model) {
  if (doc.total == 0) throw_empty("cfa_score");
  double score = 0.0;
  for (const auto& [gram, count] : sorted_grams(doc)) {
    auto it = model.norm_freq.find(gram);
    if (it != model.norm_freq.end()) {
      score += static_cast<double>(count) * it->second;
    }
  }
  return score;
}

double cfa_score(std::string_view text, const LanguageModel& model) {
  return cfa_score_counts(extract_ngrams(normalize_text(text), model.n_min, model.n_max), model);
}

double cosine_score_counts(const NGramCounts& doc, const LanguageModel& model) {
  if (doc.total == 0) throw_empty("cosine_score");
  // Document vector restricted to the model's support, in the model's rank
  // order: one pass for the norm, one for the dot product.
  double doc_norm_sq = 0.0;
  for (const auto& [gram, weight] : model.cosine_vector) {
    auto it = doc.counts.find(gram);
    if (it != doc.counts.end()) {
      const double d = static_cast<double>(it->second);
      doc_norm_sq += d * d;
    }
  }
  if (doc_norm_sq == 0.0) return 0.0;
  const double doc_norm = std::sqrt(doc_norm_sq);
  double dot = 0.0;
  for (const auto& [gram, weight] : model.cosine_vector) {
    auto it = doc.counts.find(gram);
    if (it != doc.counts.end()) {
      dot += (static_cast<double>(it->second) / doc_norm) * weight;
    }
  }
  return std::clamp(dot, 0.0, 1.0);
}

double cosine_score(std::string_view text, const LanguageModel& model) {
  return cosine_score_counts(extract_ngrams(normalize_text(text), model.n_min, model.n_max),
                             model);
}

std::map<std::string, double> nb_log_posterior_counts(const NGramCounts& doc,
                                                      const ModelSet& set,
                                                      const ClassifyOptions& opts) {
  config_of(set);
  if (doc.total == 0) throw_empty("nb_log_posterior");
  auto posterior = log_priors(set, opts.priors);
  const auto grams = sorted_grams(doc);
  for (const auto& model : set.models) {
    double sum = 0.0;
    for (const auto& [gram, count] : grams) {
      auto it = model.nb_log_prob.find(gram);
      const double lp = it == model.nb_log_prob.end() ? model.unseen_log_prob : it->second;
      sum += static_cast<double>(count) * lp;
    }
    posterior[model.language] += sum;
  }
  return posterior;
}

std::map<std::string, double> nb_log_posterior(std::string_view text, const ModelSet& set,
                                               const ClassifyOptions& opts) {
  const TrainingConfig& cfg = config_of(set);
  return nb_log_posterior_counts(extract_ngrams(normalize_text(text), cfg.n_min, cfg.n_max),
                                 set, opts);
}

double short_word_score_counts(const std::map<std::string, std::uint64_t>& words,
                               const LanguageModel& model) {
  if (words.empty()) {
    throw ClassificationError(ClassificationError::Kind::NoEvidence,
                              "short_word_score: text contains no short words");
  }
  double score = 0.0;
  for (const auto& [word, count] : words) {
    auto it = model.short_words.find(word);
    const double lp = it == model.short_words.end() ? model.unseen_word_log_prob
                                                    : std::log(it->second);
    score += static_cast<double>(count) * lp;
  }
  return score;
}

double short_word_score(std::string_view text, const LanguageModel& model) {
  return short_word_score_counts(
      extract_short_words(normalize_text(text), model.short_word_max_len), model);
}

Verdict classify_rank_order(std::string_view text, const ModelSet& set,
                            const ClassifyOptions& opts) {
  const TrainingConfig& cfg = config_of(set);
  const std::string norm = normalize_text(text);
  if (norm.empty()) throw_empty("classify_rank_order");
  const int k = opts.profile_size.value_or(cfg.profile_size);
  if (k < 1) throw ParameterError("classify: profile size must be >= 1");

  NGramCounts doc_counts = extract_ngrams(norm, cfg.n_min, cfg.rank_n_max);
  if (doc_counts.total == 0) throw_empty("classify_rank_order");
  FrequencyTable doc_table;
  doc_table.counts = std::move(doc_counts.counts);
  doc_table.total = doc_counts.total;
  doc_table.n_min = cfg.n_min;
  doc_table.n_max = cfg.rank_n_max;
  const RankedProfile doc_profile = rank_profile(doc_table, k);

  std::map<std::string, double> scores;
  for (const auto& model : set.models) {
    std::uint64_t d;
    if (k < static_cast<int>(model.ranked.size())) {
      RankedProfile truncated;
      truncated.entries.assign(model.ranked.entries.begin(), model.ranked.entries.begin() + k);
      truncated.rebuild_rank_index();
      d = out_of_place_distance(doc_profile, truncated);
    } else {
      d = out_of_place_distance(doc_profile, model.ranked);
    }
    scores[model.language] = static_cast<double>(d);
  }
  Verdict v = make_verdict(Method::RankOrder, std::move(scores), /*minimize=*/true, opts);
  return v;
}

namespace {

Verdict classify_scored(std::string_view text, const ModelSet& set, Method method,
                        const ClassifyOptions& opts) {
  const TrainingConfig& cfg = config_of(set);
  const std::string norm = normalize_text(text);
  if (norm.empty()) throw_empty("classify");

  std::map<std::string, double> scores;
  switch (method) {
    case Method::CFA:
    case Method::Cosine: {
      const NGramCounts doc = extract_ngrams(norm, cfg.n_min, cfg.n_max);
      for (const auto& model : set.models) {
        scores[model.language] = method == Method::CFA ? cfa_score_counts(doc, model)
                                                       : cosine_score_counts(doc, model);
      }
      break;
    }
    case Method::NaiveBayes: {
      scores = nb_log_posterior_counts(extract_ngrams(norm, cfg.n_min, cfg.n_max), set, opts);
      break;
    }
    case Method::ShortWords: {
      const auto words = extract_short_words(norm, cfg.short_word_max_len);
      for (const auto& model : set.models) {
        scores[model.language] = short_word_score_counts(words, model);
      }
      break;
    }
    case Method::RankOrder:
      break;  // handled by classify_rank_order
  }
  return make_verdict(method, std::move(scores), /*minimize=*/false, opts);
}

}  // namespace

Verdict classify(std::string_view text, const ModelSet& set, Method method,
                 const ClassifyOptions& opts) {
  if (method == Method::RankOrder) return classify_rank_order(text, set, opts);
  return classify_scored(text, set, method, opts);
}

Verdict classify_cfa(std::string_view text, const ModelSet& set, const ClassifyOptions& opts) {
  return classify(text, set, Method::CFA, opts);
}

Verdict classify_cosine(std::string_view text, const ModelSet& set, const ClassifyOptions& opts) {
  return classify(text, set, Method::Cosine, opts);
}

Verdict classify_nb(std::string_view text, const ModelSet& set, const ClassifyOptions& opts) {
  return classify(text, set, Method::NaiveBayes, opts);
}

Verdict classify_short_words(std::string_view text, const ModelSet& set,
                             const ClassifyOptions& opts) {
  return classify(text, set, Method::ShortWords, opts);
}

}  // namespace ngramid
