#pragma once

// Per-language statistical models: frequency tables, ranked n-gram profiles,
// smoothed n-gram probabilities, short-word probabilities and weighted cosine
// vectors, plus persistence of a whole model set. A trained ModelSet is
// immutable and safe to share across threads.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ngramid/corpus.hpp"
#include "ngramid/text_prep.hpp"

namespace ngramid {

struct FrequencyTable {
  std::unordered_map<NGram, std::uint64_t> counts;
  std::uint64_t total = 0;
  int n_min = 1;
  int n_max = 1;
};

// Top-K n-grams by descending count, ties broken by ascending byte order.
// The rank of entries[r] is r.
struct RankedProfile {
  std::vector<NGram> entries;
  std::unordered_map<NGram, int> rank;  // derived lookup, rank[entries[r]] == r

  void rebuild_rank_index();
  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

struct TrainingConfig {
  int n_min = 1;
  int n_max = 4;       // range behind norm_freq, naive Bayes and cosine statistics
  int rank_n_max = 5;  // range behind the ranked profile used by rank-order
  int profile_size = 300;   // K
  int cosine_size = 3500;   // M
  double alpha = 1.0;       // add-alpha smoothing
  int short_word_max_len = 5;
  int short_word_profile = 200;

  int extraction_n_max() const { return n_max > rank_n_max ? n_max : rank_n_max; }
  void validate() const;  // throws ParameterError
};

struct LanguageModel {
  std::string language;

  // Extraction metadata, mirrored from the training configuration.
  int n_min = 1;
  int n_max = 4;
  int rank_n_max = 5;
  double alpha = 1.0;
  int short_word_max_len = 5;

  // Raw statistics gathered from training text; everything below derives
  // from them deterministically.
  FrequencyTable table;  // all n-grams in [n_min, extraction_n_max]
  std::vector<std::pair<std::string, std::uint64_t>> short_word_counts;  // top words, rank order

  RankedProfile ranked;
  std::unordered_map<NGram, double> norm_freq;    // count/total over n <= n_max
  std::unordered_map<NGram, double> nb_log_prob;  // log add-alpha probability
  double unseen_log_prob = 0.0;
  std::map<std::string, double> short_words;      // word -> smoothed probability
  double unseen_word_log_prob = 0.0;
  std::vector<std::pair<NGram, double>> cosine_vector;  // unit norm, rank order

  std::uint64_t stat_total = 0;       // total count over n <= n_max
  std::uint64_t train_bytes = 0;      // raw content bytes seen in training
  std::vector<std::string> domains;   // sorted unique topic labels
};

struct ModelSet {
  TrainingConfig config;
  std::vector<LanguageModel> models;  // sorted by language label

  const LanguageModel* find(const std::string& language) const;
};

// Multiset union of extract_ngrams over already-normalized documents.
// Throws TrainingError when no document contributes an n-gram.
FrequencyTable build_frequency_table(const std::vector<std::string>& normalized_docs,
                                     int n_min, int n_max, bool parallel = true);

// Top-K by descending count, byte-order ascending on ties.
RankedProfile rank_profile(const FrequencyTable& table, int profile_size = 300);

// Keeps the `size` most frequent words (count desc, byte order asc on ties).
std::vector<std::pair<std::string, std::uint64_t>> top_short_words(
    const std::map<std::string, std::uint64_t>& counts, int size);

// Fills every derived field of a model from table + short_word_counts.
// Exposed so loaded models and hand-built test models share one code path.
void derive_statistics(LanguageModel& model, const TrainingConfig& config);

// Trains one language from the content fields of the given documents.
LanguageModel train_language_model(const std::string& language,
                                   std::span<const Document> docs,
                                   const TrainingConfig& config,
                                   bool parallel = true);

// Groups a corpus by language label and trains one model per label.
ModelSet train_model_set(const LabeledCorpus& corpus, const TrainingConfig& config,
                         bool parallel = true);

// Plain-text model file; see docs/model-format.md for the exact grammar.
// load(save(m)) reproduces every field bit-for-bit.
void save_model_set(const ModelSet& set, const std::filesystem::path& path);
ModelSet load_model_set(const std::filesystem::path& path);

}  // namespace ngramid
