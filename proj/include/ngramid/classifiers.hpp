#pragma once

// The five scoring methods and the common classify() front door. All
// functions are read-only over an immutable ModelSet and safe to call
// concurrently.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ngramid/profiles.hpp"

namespace ngramid {

enum class Method { RankOrder, CFA, Cosine, NaiveBayes, ShortWords };

inline constexpr std::array<Method, 5> kAllMethods = {
    Method::RankOrder, Method::CFA, Method::Cosine, Method::NaiveBayes, Method::ShortWords};

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

enum class PriorsMode { Uniform, TrainSize };

struct ClassifyOptions {
  std::optional<int> profile_size;  // rank-order: truncate both profiles to this K
  PriorsMode priors = PriorsMode::Uniform;

  // Optional unknown-language thresholds, off by default (the evaluation
  // workflow always assigns a language; crawlers can opt in). A verdict is
  // flagged unknown when the winning score is worse than min_score, or when
  // it beats the runner-up by less than min_margin. For rank-order, where
  // smaller is better, min_score bounds the distance from above.
  std::optional<double> min_score;
  std::optional<double> min_margin;
};

// Two score levels tie within kScoreTieTolerance; the winner among tied
// labels is the lexicographically smallest.
inline constexpr double kScoreTieTolerance = 1e-12;

struct Verdict {
  std::string language;
  Method method = Method::RankOrder;
  std::map<std::string, double> scores;  // every candidate language
  bool tie = false;
  bool unknown = false;  // set when ClassifyOptions thresholds reject the winner
};

// Sum over the document profile of |rank difference| against the language
// profile, with a miss penalty of |lang| per absent n-gram. Throws
// ClassificationError on an empty document profile.
std::uint64_t out_of_place_distance(const RankedProfile& doc, const RankedProfile& lang);

// Cumulative frequency addition: sum of the model's normalized frequencies
// over every n-gram occurrence of the text; unseen n-grams are ignored.
double cfa_score(std::string_view text, const LanguageModel& model);
double cfa_score_counts(const NGramCounts& doc, const LanguageModel& model);

// Cosine of the document vector restricted to the model's weighted support;
// 0 when the document shares no n-gram with it. Always within [0,1].
double cosine_score(std::string_view text, const LanguageModel& model);
double cosine_score_counts(const NGramCounts& doc, const LanguageModel& model);

// Smoothed multinomial log posterior per language (uniform priors unless
// configured otherwise).
std::map<std::string, double> nb_log_posterior(std::string_view text, const ModelSet& set,
                                               const ClassifyOptions& opts = {});
std::map<std::string, double> nb_log_posterior_counts(const NGramCounts& doc, const ModelSet& set,
                                                      const ClassifyOptions& opts = {});

// Sum of log word probabilities over words of at most the trained length.
// Throws ClassificationError{NoEvidence} when the text has no short word.
double short_word_score(std::string_view text, const LanguageModel& model);
double short_word_score_counts(const std::map<std::string, std::uint64_t>& words,
                               const LanguageModel& model);

Verdict classify(std::string_view text, const ModelSet& set, Method method,
                 const ClassifyOptions& opts = {});

Verdict classify_rank_order(std::string_view text, const ModelSet& set,
                            const ClassifyOptions& opts = {});
Verdict classify_cfa(std::string_view text, const ModelSet& set,
                     const ClassifyOptions& opts = {});
Verdict classify_cosine(std::string_view text, const ModelSet& set,
                        const ClassifyOptions& opts = {});
Verdict classify_nb(std::string_view text, const ModelSet& set,
                    const ClassifyOptions& opts = {});
Verdict classify_short_words(std::string_view text, const ModelSet& set,
                             const ClassifyOptions& opts = {});

}  // namespace ngramid
