#pragma once

// Labeled corpus ingestion from disk, dataset variant construction
// (diacritic stripping, fixed-byte excerpting) and train/test splitting.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ngramid {

struct Document {
  std::string id;        // unique within a corpus
  std::string language;  // label, e.g. "sq", "en"
  std::string title;     // may be empty (plain-text files have no title)
  std::string content;   // never empty for an ingested document
  std::string domain;    // topic label, e.g. "politics"
  std::string source;    // provider label
};

struct LabeledCorpus {
  std::vector<Document> documents;
  std::string provenance;  // dataset tag carried into evaluation reports
};

struct IngestionError {
  std::string item;  // file path or record id/line
  std::string message;
};

// Per-item failures collected while loading; fatal problems throw instead.
struct IngestionReport {
  std::vector<IngestionError> errors;
};

// Loads root/<language>/<domain>/<file>.txt, one document per file, with the
// whole file body as content and an empty title. Document ids are the path
// relative to root. Unreadable or non-UTF-8 files and exact-content
// duplicates are recorded in the report and skipped; a corpus with zero valid
// files throws CorpusError.
LabeledCorpus load_folder_corpus(const std::filesystem::path& root,
                                 IngestionReport* report = nullptr);

// Loads newline-delimited JSON records with fields id, language, title,
// content, domain, source. Records violating document invariants (empty
// content, empty language, duplicate id, duplicate content) go to the report.
LabeledCorpus load_article_corpus(const std::filesystem::path& file,
                                  IngestionReport* report = nullptr);

// Writes a corpus back as newline-delimited JSON, one record per document,
// keys sorted, so equal corpora serialize to identical bytes.
void save_article_corpus(const LabeledCorpus& corpus, const std::filesystem::path& file);

enum class VariantKind { StripAll, StripHalf, Excerpt };

struct Variant {
  VariantKind kind = VariantKind::StripAll;
  std::uint64_t seed = 0;       // StripHalf
  double probability = 0.5;     // StripHalf
  std::size_t max_bytes = 500;  // Excerpt

  static Variant strip_all() { return {VariantKind::StripAll, 0, 1.0, 0}; }
  static Variant strip_half(std::uint64_t seed, double p = 0.5) {
    return {VariantKind::StripHalf, seed, p, 0};
  }
  static Variant excerpt(std::size_t max_bytes = 500) {
    return {VariantKind::Excerpt, 0, 0.0, max_bytes};
  }
};

// StripAll/StripHalf perturb title and content; Excerpt truncates content
// only and drops documents shorter than max_bytes. Ids, languages, domains
// and sources are never altered. The provenance tag records the variant.
LabeledCorpus make_variant(const LabeledCorpus& corpus, const Variant& variant);

// Deterministic, document-order-independent split by id hash. Both parts are
// non-empty; train gets round(train_fraction * N) documents clamped to
// [1, N-1].
std::pair<LabeledCorpus, LabeledCorpus> split_train_test(const LabeledCorpus& corpus,
                                                         double train_fraction,
                                                         std::uint64_t seed);

struct FieldStats {
  std::uint64_t min_bytes = 0;
  std::uint64_t max_bytes = 0;
  double avg_bytes = 0.0;
  std::uint64_t count = 0;
};

struct CorpusStats {
  std::optional<FieldStats> title;  // absent when no document has a title
  FieldStats content;
};

// Byte-length statistics per field. Title statistics cover documents with
// non-empty titles only.
CorpusStats corpus_stats(const LabeledCorpus& corpus);

}  // namespace ngramid
