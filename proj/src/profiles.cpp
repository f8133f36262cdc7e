#include "ngramid/profiles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ngramid/errors.hpp"
#include "ngramid/utf8.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ngramid {

void TrainingConfig::validate() const {
  if (n_min < 1 || n_max < n_min || n_max > 8) {
    throw ParameterError("config: require 1 <= n_min <= n_max <= 8");
  }
  if (rank_n_max < n_min || rank_n_max > 8) {
    throw ParameterError("config: require n_min <= rank_n_max <= 8");
  }
  if (profile_size < 1) throw ParameterError("config: profile_size must be >= 1");
  if (cosine_size < 1) throw ParameterError("config: cosine_size must be >= 1");
  if (!(alpha > 0.0)) throw ParameterError("config: alpha must be > 0");
  if (short_word_max_len < 1) throw ParameterError("config: short_word_max_len must be >= 1");
  if (short_word_profile < 1) throw ParameterError("config: short_word_profile must be >= 1");
}

void RankedProfile::rebuild_rank_index() {
  rank.clear();
  rank.reserve(entries.size());
  for (std::size_t r = 0; r < entries.size(); ++r) {
    rank.emplace(entries[r], static_cast<int>(r));
  }
}

const LanguageModel* ModelSet::find(const std::string& language) const {
  for (const auto& m : models) {
    if (m.language == language) return &m;
  }
  return nullptr;
}

namespace {

// (count desc, key asc): the rank order used everywhere.
template <typename Map>
std::vector<std::pair<std::string, std::uint64_t>> sort_by_rank(const Map& counts) {
  std::vector<std::pair<std::string, std::uint64_t>> v(counts.begin(), counts.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return v;
}

}  // namespace

std::vector<std::pair<std::string, std::uint64_t>> top_short_words(
    const std::map<std::string, std::uint64_t>& counts, int size) {
  auto sorted = sort_by_rank(counts);
  if (static_cast<int>(sorted.size()) > size) sorted.resize(size);
  return sorted;
}

FrequencyTable build_frequency_table(const std::vector<std::string>& normalized_docs,
                                     int n_min, int n_max, bool parallel) {
  if (normalized_docs.empty()) throw TrainingError("build_frequency_table: empty corpus");
  NGramCounts acc;
  std::string error;
#ifdef _OPENMP
#pragma omp parallel if (parallel)
  {
    NGramCounts local;
    std::string local_error;
#pragma omp for nowait schedule(dynamic, 8)
    for (long i = 0; i < static_cast<long>(normalized_docs.size()); ++i) {
      try {
        local.merge(extract_ngrams(normalized_docs[i], n_min, n_max));
      } catch (const std::exception& e) {
        if (local_error.empty()) local_error = e.what();
      }
    }
#pragma omp critical
    {
      acc.merge(local);
      if (error.empty() && !local_error.empty()) error = local_error;
    }
  }
#else
  (void)parallel;
  for (const auto& doc : normalized_docs) {
    acc.merge(extract_ngrams(doc, n_min, n_max));
  }
#endif
  if (!error.empty()) throw TrainingError("build_frequency_table: " + error);
  if (acc.total == 0) throw TrainingError("build_frequency_table: no n-grams in corpus");
  FrequencyTable table;
  table.counts = std::move(acc.counts);
  table.total = acc.total;
  table.n_min = n_min;
  table.n_max = n_max;
  return table;
}

RankedProfile rank_profile(const FrequencyTable& table, int profile_size) {
  if (profile_size < 1) throw ParameterError("rank_profile: profile_size must be >= 1");
  auto sorted = sort_by_rank(table.counts);
  if (static_cast<int>(sorted.size()) > profile_size) sorted.resize(profile_size);
  RankedProfile profile;
  profile.entries.reserve(sorted.size());
  for (auto& [gram, count] : sorted) profile.entries.push_back(std::move(gram));
  profile.rebuild_rank_index();
  return profile;
}

void derive_statistics(LanguageModel& m, const TrainingConfig& cfg) {
  cfg.validate();
  if (m.table.counts.empty()) {
    throw TrainingError("derive_statistics: empty frequency table for '" + m.language + "'");
  }
  m.n_min = cfg.n_min;
  m.n_max = cfg.n_max;
  m.rank_n_max = cfg.rank_n_max;
  m.alpha = cfg.alpha;
  m.short_word_max_len = cfg.short_word_max_len;

  // Statistics subset: n-grams of at most n_max characters. The table itself
  // may extend to rank_n_max for the ranked profile.
  const bool whole_table = m.table.n_max <= cfg.n_max;
  std::unordered_map<NGram, std::uint64_t> stat_counts;
  const auto* stats = &m.table.counts;
  std::uint64_t stat_total = 0;
  if (whole_table) {
    stat_total = m.table.total;
  } else {
    for (const auto& [g, c] : m.table.counts) {
      if (utf8::char_length(g) <= static_cast<std::size_t>(cfg.n_max)) {
        stat_counts.emplace(g, c);
        stat_total += c;
      }
    }
    stats = &stat_counts;
  }
  if (stat_total == 0) {
    throw TrainingError("derive_statistics: no n-grams within statistics range for '" +
                        m.language + "'");
  }
  m.stat_total = stat_total;

  const double total = static_cast<double>(stat_total);
  const std::size_t vocab = stats->size();
  const double denom = total + cfg.alpha * (static_cast<double>(vocab) + 1.0);

  m.norm_freq.clear();
  m.norm_freq.reserve(vocab);
  m.nb_log_prob.clear();
  m.nb_log_prob.reserve(vocab);
  for (const auto& [g, c] : *stats) {
    const double count = static_cast<double>(c);
    m.norm_freq.emplace(g, count / total);
    m.nb_log_prob.emplace(g, std::log((count + cfg.alpha) / denom));
  }
  m.unseen_log_prob = std::log(cfg.alpha / denom);

  // Ranked profile over n-grams of at most rank_n_max characters.
  if (m.table.n_max <= cfg.rank_n_max) {
    m.ranked = rank_profile(m.table, cfg.profile_size);
  } else {
    FrequencyTable sub;
    sub.n_min = m.table.n_min;
    sub.n_max = cfg.rank_n_max;
    for (const auto& [g, c] : m.table.counts) {
      if (utf8::char_length(g) <= static_cast<std::size_t>(cfg.rank_n_max)) {
        sub.counts.emplace(g, c);
        sub.total += c;
      }
    }
    m.ranked = rank_profile(sub, cfg.profile_size);
  }

  // Cosine vector: top-M statistics n-grams weighted by normalized frequency,
  // then scaled to unit Euclidean norm, kept in rank order.
  auto sorted = sort_by_rank(*stats);
  if (static_cast<int>(sorted.size()) > cfg.cosine_size) sorted.resize(cfg.cosine_size);
  m.cosine_vector.clear();
  m.cosine_vector.reserve(sorted.size());
  double norm_sq = 0.0;
  for (const auto& [g, c] : sorted) {
    const double w = static_cast<double>(c) / total;
    norm_sq += w * w;
    m.cosine_vector.emplace_back(g, w);
  }
  const double norm = std::sqrt(norm_sq);
  for (auto& [g, w] : m.cosine_vector) w /= norm;

  // Short-word probabilities over the kept profile plus one unseen event.
  std::uint64_t word_total = 0;
  for (const auto& [w, c] : m.short_word_counts) word_total += c;
  const double wdenom = static_cast<double>(word_total) +
                        cfg.alpha * (static_cast<double>(m.short_word_counts.size()) + 1.0);
  m.short_words.clear();
  for (const auto& [w, c] : m.short_word_counts) {
    m.short_words.emplace(w, (static_cast<double>(c) + cfg.alpha) / wdenom);
  }
  m.unseen_word_log_prob = std::log(cfg.alpha / wdenom);
}

namespace {

struct Accumulator {
  NGramCounts grams;
  std::map<std::string, std::uint64_t> words;

  void merge(const Accumulator& other) {
    grams.merge(other.grams);
    for (const auto& [w, c] : other.words) words[w] += c;
  }
};

void accumulate_document(const Document& doc, const TrainingConfig& cfg, Accumulator& acc) {
  const std::string norm = normalize_text(doc.content);
  acc.grams.merge(extract_ngrams(norm, cfg.n_min, cfg.extraction_n_max()));
  for (const auto& [w, c] : extract_short_words(norm, cfg.short_word_max_len)) {
    acc.words[w] += c;
  }
}

LanguageModel train_from_pointers(const std::string& language,
                                  const std::vector<const Document*>& docs,
                                  const TrainingConfig& cfg, bool parallel) {
  cfg.validate();
  if (docs.empty()) throw TrainingError("train: empty corpus for language '" + language + "'");

  Accumulator acc;
  std::string error;
#ifdef _OPENMP
#pragma omp parallel if (parallel)
  {
    Accumulator local;
    std::string local_error;
#pragma omp for nowait schedule(dynamic, 8)
    for (long i = 0; i < static_cast<long>(docs.size()); ++i) {
      try {
        accumulate_document(*docs[i], cfg, local);
      } catch (const std::exception& e) {
        if (local_error.empty()) local_error = e.what();
      }
    }
#pragma omp critical
    {
      acc.merge(local);
      if (error.empty() && !local_error.empty()) error = local_error;
    }
  }
#else
  (void)parallel;
  for (const Document* doc : docs) accumulate_document(*doc, cfg, acc);
#endif
  if (!error.empty()) throw TrainingError("train '" + language + "': " + error);
  if (acc.grams.total == 0) {
    throw TrainingError("train: corpus for language '" + language +
                        "' is empty after normalization");
  }

  LanguageModel m;
  m.language = language;
  m.table.counts = std::move(acc.grams.counts);
  m.table.total = acc.grams.total;
  m.table.n_min = cfg.n_min;
  m.table.n_max = cfg.extraction_n_max();
  m.short_word_counts = top_short_words(acc.words, cfg.short_word_profile);

  std::set<std::string> domains;
  for (const Document* doc : docs) {
    m.train_bytes += doc->content.size();
    if (!doc->domain.empty()) domains.insert(doc->domain);
  }
  m.domains.assign(domains.begin(), domains.end());

  derive_statistics(m, cfg);
  return m;
}

}  // namespace

LanguageModel train_language_model(const std::string& language, std::span<const Document> docs,
                                   const TrainingConfig& cfg, bool parallel) {
  if (language.empty()) throw TrainingError("train: empty language label");
  std::vector<const Document*> ptrs;
  ptrs.reserve(docs.size());
  for (const Document& d : docs) ptrs.push_back(&d);
  return train_from_pointers(language, ptrs, cfg, parallel);
}

ModelSet train_model_set(const LabeledCorpus& corpus, const TrainingConfig& cfg, bool parallel) {
  cfg.validate();
  if (corpus.documents.empty()) throw TrainingError("train: empty corpus");
  std::map<std::string, std::vector<const Document*>> groups;
  for (const Document& d : corpus.documents) {
    if (d.language.empty()) {
      throw TrainingError("train: document '" + d.id + "' has an empty language label");
    }
    groups[d.language].push_back(&d);
  }
  ModelSet set;
  set.config = cfg;
  set.models.reserve(groups.size());
  for (const auto& [language, docs] : groups) {
    set.models.push_back(train_from_pointers(language, docs, cfg, parallel));
  }
  return set;
}

// --- persistence ------------------------------------------------------------
//
// Plain-text format, one logical value per line; see docs/model-format.md.

namespace {

constexpr std::string_view kMagic = "ngramid-model 1";

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // False at clean end of input.
  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++lineno_;
    return true;
  }

  std::string require(const char* what) {
    std::string line;
    if (!next(line)) {
      throw ModelFormatError("model file truncated: expected " + std::string(what) +
                             " after line " + std::to_string(lineno_));
    }
    return line;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ModelFormatError("model file line " + std::to_string(lineno_) + ": " + msg);
  }

  std::size_t lineno() const { return lineno_; }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.emplace_back(line.substr(pos));
      return parts;
    }
    parts.emplace_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
}

std::uint64_t parse_u64(const LineReader& r, std::string_view token, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    r.fail(std::string("bad ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

int parse_int(const LineReader& r, std::string_view token, const char* what) {
  const std::uint64_t v = parse_u64(r, token, what);
  if (v > 1000000) r.fail(std::string(what) + " out of range");
  return static_cast<int>(v);
}

double parse_double(const LineReader& r, std::string_view token, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    r.fail(std::string("bad ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

// Reads "key value" with an exact key match.
std::string header_value(LineReader& r, const char* key) {
  const std::string line = r.require(key);
  const auto sp = line.find(' ');
  if (sp == std::string::npos || line.substr(0, sp) != key || sp + 1 >= line.size()) {
    r.fail(std::string("expected '") + key + " <value>'");
  }
  return line.substr(sp + 1);
}

struct CountLine {
  std::string key;
  std::uint64_t count;
};

CountLine parse_count_line(LineReader& r, const char* what) {
  const std::string line = r.require(what);
  const auto tab = line.find('\t');
  if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
    r.fail(std::string(what) + " line must be 'key<TAB>count'");
  }
  CountLine out;
  out.key = line.substr(0, tab);
  if (out.key.empty()) r.fail(std::string(what) + " key is empty");
  out.count = parse_u64(r, std::string_view(line).substr(tab + 1), "count");
  if (out.count == 0) r.fail(std::string(what) + " count must be positive");
  return out;
}

void check_rank_order(LineReader& r, const CountLine& prev, const CountLine& cur,
                      const char* what) {
  if (cur.count > prev.count || (cur.count == prev.count && cur.key <= prev.key)) {
    r.fail(std::string(what) + " section not in rank order at '" + cur.key + "'");
  }
}

}  // namespace

void save_model_set(const ModelSet& set, const std::filesystem::path& path) {
  if (set.models.empty()) throw Error("save_model_set: empty model set");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("save_model_set: cannot open '" + path.string() + "' for writing");

  const TrainingConfig& cfg = set.config;
  out << kMagic << '\n'
      << "nmin " << cfg.n_min << '\n'
      << "stat-nmax " << cfg.n_max << '\n'
      << "rank-nmax " << cfg.rank_n_max << '\n'
      << "alpha " << format_double(cfg.alpha) << '\n'
      << "profile-size " << cfg.profile_size << '\n'
      << "cosine-size " << cfg.cosine_size << '\n'
      << "shortword-maxlen " << cfg.short_word_max_len << '\n'
      << "shortword-size " << cfg.short_word_profile << '\n';

  out << "languages " << set.models.size();
  for (const auto& m : set.models) {
    if (m.language.find_first_of(" \t\n") != std::string::npos) {
      throw Error("save_model_set: language label contains whitespace");
    }
    out << ' ' << m.language;
  }
  out << '\n';

  for (const auto& m : set.models) {
    auto sorted = sort_by_rank(m.table.counts);
    out << "language " << m.language << " ngrams " << sorted.size() << " total "
        << m.table.total << " shortwords " << m.short_word_counts.size() << " cosine "
        << m.cosine_vector.size() << " trainbytes " << m.train_bytes << " domains ";
    if (m.domains.empty()) {
      out << '-';
    } else {
      for (std::size_t i = 0; i < m.domains.size(); ++i) {
        const auto& d = m.domains[i];
        if (d.find_first_of(" \t\n,") != std::string::npos) {
          throw Error("save_model_set: domain label '" + d + "' contains a separator");
        }
        if (i) out << ',';
        out << d;
      }
    }
    out << '\n';
    for (const auto& [gram, count] : sorted) out << gram << '\t' << count << '\n';
    for (const auto& [word, count] : m.short_word_counts) out << word << '\t' << count << '\n';
    for (const auto& [gram, weight] : m.cosine_vector) {
      out << gram << '\t' << m.table.counts.at(gram) << '\n';
    }
    out << "end\n";
  }
  out.flush();
  if (!out) throw Error("save_model_set: write to '" + path.string() + "' failed");
}

ModelSet load_model_set(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelFormatError("cannot open model file '" + path.string() + "'");
  LineReader r(in);

  const std::string magic = r.require("header");
  if (magic != kMagic) {
    throw ModelFormatError("unsupported model format or version: '" + magic + "'");
  }

  ModelSet set;
  TrainingConfig& cfg = set.config;
  cfg.n_min = parse_int(r, header_value(r, "nmin"), "nmin");
  cfg.n_max = parse_int(r, header_value(r, "stat-nmax"), "stat-nmax");
  cfg.rank_n_max = parse_int(r, header_value(r, "rank-nmax"), "rank-nmax");
  cfg.alpha = parse_double(r, header_value(r, "alpha"), "alpha");
  cfg.profile_size = parse_int(r, header_value(r, "profile-size"), "profile-size");
  cfg.cosine_size = parse_int(r, header_value(r, "cosine-size"), "cosine-size");
  cfg.short_word_max_len = parse_int(r, header_value(r, "shortword-maxlen"), "shortword-maxlen");
  cfg.short_word_profile = parse_int(r, header_value(r, "shortword-size"), "shortword-size");
  try {
    cfg.validate();
  } catch (const ParameterError& e) {
    throw ModelFormatError(std::string("model header invalid: ") + e.what());
  }

  const auto langs = split(header_value(r, "languages"), ' ');
  if (langs.empty()) r.fail("empty languages list");
  const std::uint64_t n_langs = parse_u64(r, langs[0], "language count");
  if (langs.size() != n_langs + 1) r.fail("language count does not match list");
  std::set<std::string> seen;
  for (std::size_t i = 1; i < langs.size(); ++i) {
    if (langs[i].empty()) r.fail("empty language label");
    if (!seen.insert(langs[i]).second) {
      throw ModelFormatError("duplicate language label '" + langs[i] + "'");
    }
  }

  for (std::size_t li = 1; li < langs.size(); ++li) {
    const auto header = split(r.require("language section"), ' ');
    if (header.size() != 14 || header[0] != "language" || header[2] != "ngrams" ||
        header[4] != "total" || header[6] != "shortwords" || header[8] != "cosine" ||
        header[10] != "trainbytes" || header[12] != "domains") {
      r.fail("malformed language section header");
    }
    if (header[1] != langs[li]) {
      r.fail("language section order does not match header list ('" + header[1] + "')");
    }

    LanguageModel m;
    m.language = header[1];
    const std::uint64_t n_grams = parse_u64(r, header[3], "ngram count");
    const std::uint64_t total = parse_u64(r, header[5], "total");
    const std::uint64_t n_words = parse_u64(r, header[7], "shortword count");
    const std::uint64_t n_cosine = parse_u64(r, header[9], "cosine count");
    m.train_bytes = parse_u64(r, header[11], "trainbytes");
    if (header[13].empty()) r.fail("empty domains field");
    if (header[13] != "-") {
      m.domains = split(header[13], ',');
      for (std::size_t i = 0; i < m.domains.size(); ++i) {
        if (m.domains[i].empty()) r.fail("empty domain label");
        if (i > 0 && m.domains[i] <= m.domains[i - 1]) r.fail("domains not sorted and unique");
      }
    }

    m.table.n_min = cfg.n_min;
    m.table.n_max = cfg.extraction_n_max();
    m.table.counts.reserve(n_grams);
    CountLine prev;
    std::uint64_t sum = 0;
    for (std::uint64_t i = 0; i < n_grams; ++i) {
      CountLine line = parse_count_line(r, "ngram");
      if (i > 0) check_rank_order(r, prev, line, "ngram");
      const std::size_t len = utf8::is_valid(line.key) ? utf8::char_length(line.key) : 0;
      if (len < static_cast<std::size_t>(cfg.n_min) ||
          len > static_cast<std::size_t>(cfg.extraction_n_max())) {
        r.fail("n-gram '" + line.key + "' outside configured length bounds");
      }
      sum += line.count;
      if (!m.table.counts.emplace(line.key, line.count).second) {
        r.fail("duplicate n-gram '" + line.key + "'");
      }
      prev = std::move(line);
    }
    if (sum != total) r.fail("ngram counts sum to " + std::to_string(sum) +
                             ", header says " + std::to_string(total));
    m.table.total = total;

    m.short_word_counts.reserve(n_words);
    for (std::uint64_t i = 0; i < n_words; ++i) {
      CountLine line = parse_count_line(r, "shortword");
      if (i > 0) check_rank_order(r, prev, line, "shortword");
      m.short_word_counts.emplace_back(line.key, line.count);
      prev = std::move(line);
    }

    // The cosine section repeats the top-M statistics n-grams; validate it
    // against the counts table after deriving.
    std::vector<CountLine> cosine_lines;
    cosine_lines.reserve(n_cosine);
    for (std::uint64_t i = 0; i < n_cosine; ++i) {
      CountLine line = parse_count_line(r, "cosine");
      if (i > 0) check_rank_order(r, prev, line, "cosine");
      cosine_lines.push_back(line);
      prev = std::move(line);
    }

    if (r.require("section terminator") != "end") r.fail("expected 'end'");

    try {
      derive_statistics(m, cfg);
    } catch (const TrainingError& e) {
      throw ModelFormatError(std::string("model section unusable: ") + e.what());
    }
    if (cosine_lines.size() != m.cosine_vector.size()) {
      r.fail("cosine section size does not match derived vector");
    }
    for (std::size_t i = 0; i < cosine_lines.size(); ++i) {
      if (cosine_lines[i].key != m.cosine_vector[i].first ||
          cosine_lines[i].count != m.table.counts.at(cosine_lines[i].key)) {
        r.fail("cosine section disagrees with counts table at '" + cosine_lines[i].key + "'");
      }
    }
    set.models.push_back(std::move(m));
  }

  std::string trailing;
  if (r.next(trailing)) r.fail("unexpected content after last language section");
  return set;
}

}  // namespace ngramid
