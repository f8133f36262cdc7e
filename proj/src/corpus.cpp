#include "ngramid/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "ngramid/errors.hpp"
#include "ngramid/hash.hpp"
#include "ngramid/text_prep.hpp"
#include "ngramid/utf8.hpp"

namespace fs = std::filesystem;

namespace ngramid {

namespace {

void report_error(IngestionReport* report, std::string item, std::string message) {
  if (report) report->errors.push_back({std::move(item), std::move(message)});
}

// Exact-content duplicate detection, the only deduplication performed.
class ContentSeen {
 public:
  bool insert(const std::string& content) {
    return seen_.insert(fnv1a64(content)).second;
  }

 private:
  std::unordered_set<std::uint64_t> seen_;
};

}  // namespace

LabeledCorpus load_folder_corpus(const fs::path& root, IngestionReport* report) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw CorpusError("corpus root '" + root.string() + "' is not a directory");
  }

  std::vector<fs::path> files;
  for (auto it = fs::recursive_directory_iterator(root, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw CorpusError("cannot walk '" + root.string() + "': " + ec.message());
    if (it->is_regular_file()) files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());  // order-insensitive ingestion

  LabeledCorpus corpus;
  corpus.provenance = root.filename().string();
  ContentSeen seen;
  for (const fs::path& file : files) {
    const fs::path rel = fs::relative(file, root);
    std::vector<std::string> parts;
    for (const auto& p : rel) parts.push_back(p.string());
    if (parts.size() != 3 || rel.extension() != ".txt") {
      report_error(report, rel.string(), "expected <language>/<domain>/<file>.txt layout");
      continue;
    }
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      report_error(report, rel.string(), "unreadable file");
      continue;
    }
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
      report_error(report, rel.string(), "read error");
      continue;
    }
    if (body.empty()) {
      report_error(report, rel.string(), "empty content");
      continue;
    }
    if (!utf8::is_valid(body)) {
      report_error(report, rel.string(), "invalid UTF-8");
      continue;
    }
    if (!seen.insert(body)) {
      report_error(report, rel.string(), "duplicate content");
      continue;
    }
    Document doc;
    doc.id = rel.generic_string();
    doc.language = parts[0];
    doc.domain = parts[1];
    doc.content = std::move(body);
    corpus.documents.push_back(std::move(doc));
  }
  if (corpus.documents.empty()) {
    throw CorpusError("no valid documents under '" + root.string() + "'");
  }
  return corpus;
}

LabeledCorpus load_article_corpus(const fs::path& file, IngestionReport* report) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CorpusError("cannot open article file '" + file.string() + "'");

  LabeledCorpus corpus;
  corpus.provenance = file.stem().string();
  ContentSeen seen;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (!utf8::is_valid(line)) {
      report_error(report, where, "invalid UTF-8");
      continue;
    }
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      report_error(report, where, "malformed record");
      continue;
    }
    Document doc;
    bool ok = true;
    for (const auto& [field, target] :
         std::initializer_list<std::pair<const char*, std::string*>>{
             {"id", &doc.id},
             {"language", &doc.language},
             {"title", &doc.title},
             {"content", &doc.content},
             {"domain", &doc.domain},
             {"source", &doc.source}}) {
      auto it = record.find(field);
      if (it == record.end() || !it->is_string()) {
        report_error(report, where, std::string("missing or non-string field '") + field + "'");
        ok = false;
        break;
      }
      *target = it->get<std::string>();
    }
    if (!ok) continue;
    if (doc.id.empty()) {
      report_error(report, where, "empty id");
      continue;
    }
    if (doc.language.empty()) {
      report_error(report, where, "empty language label");
      continue;
    }
    if (doc.content.empty()) {
      report_error(report, where, "empty content");
      continue;
    }
    if (!ids.insert(doc.id).second) {
      report_error(report, where, "duplicate id '" + doc.id + "'");
      continue;
    }
    if (!seen.insert(doc.content)) {
      report_error(report, where, "duplicate content (id '" + doc.id + "')");
      continue;
    }
    corpus.documents.push_back(std::move(doc));
  }
  if (in.bad()) throw CorpusError("read error on '" + file.string() + "'");
  if (corpus.documents.empty()) {
    throw CorpusError("no valid records in '" + file.string() + "'");
  }
  return corpus;
}

void save_article_corpus(const LabeledCorpus& corpus, const fs::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw CorpusError("cannot open '" + file.string() + "' for writing");
  for (const Document& d : corpus.documents) {
    const nlohmann::json record = {
        {"id", d.id},         {"language", d.language}, {"title", d.title},
        {"content", d.content}, {"domain", d.domain},     {"source", d.source}};
    out << record.dump() << '\n';
  }
  out.flush();
  if (!out) throw CorpusError("write to '" + file.string() + "' failed");
}

LabeledCorpus make_variant(const LabeledCorpus& corpus, const Variant& variant) {
  if (corpus.documents.empty()) throw CorpusError("make_variant: empty corpus");

  LabeledCorpus out;
  switch (variant.kind) {
    case VariantKind::StripAll: {
      const PerturbationSpec spec{1.0, 0};
      for (const Document& d : corpus.documents) {
        Document copy = d;
        copy.title = perturb_diacritics(d.title, spec);
        copy.content = perturb_diacritics(d.content, spec);
        out.documents.push_back(std::move(copy));
      }
      out.provenance = corpus.provenance + "+strip-all";
      break;
    }
    case VariantKind::StripHalf: {
      const PerturbationSpec spec{variant.probability, variant.seed};
      for (const Document& d : corpus.documents) {
        Document copy = d;
        copy.title = perturb_diacritics(d.title, spec);
        copy.content = perturb_diacritics(d.content, spec);
        out.documents.push_back(std::move(copy));
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "+strip-half(p=%g,seed=%llu)", variant.probability,
                    static_cast<unsigned long long>(variant.seed));
      out.provenance = corpus.provenance + buf;
      break;
    }
    case VariantKind::Excerpt: {
      for (const Document& d : corpus.documents) {
        auto result = excerpt_bytes(d.content, variant.max_bytes);
        if (std::holds_alternative<TooShort>(result)) continue;
        Document copy = d;
        copy.content = std::get<std::string>(std::move(result));
        out.documents.push_back(std::move(copy));
      }
      if (out.documents.empty()) {
        throw CorpusError("make_variant: every document is shorter than " +
                          std::to_string(variant.max_bytes) + " bytes");
      }
      out.provenance =
          corpus.provenance + "+excerpt(" + std::to_string(variant.max_bytes) + ")";
      break;
    }
  }
  return out;
}

std::pair<LabeledCorpus, LabeledCorpus> split_train_test(const LabeledCorpus& corpus,
                                                         double train_fraction,
                                                         std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ParameterError("split_train_test: train_fraction must be in (0,1)");
  }
  const std::size_t n = corpus.documents.size();
  if (n < 2) throw CorpusError("split_train_test: need at least 2 documents");

  // Order documents by a seeded hash of their id; the split then depends only
  // on the id set, not on document order in the corpus.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::vector<std::uint64_t> key(n);
  for (std::size_t i = 0; i < n; ++i) {
    key[i] = fnv1a64(corpus.documents[i].id, kFnvBasis ^ seed);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key[a] != key[b]) return key[a] < key[b];
    return corpus.documents[a].id < corpus.documents[b].id;
  });

  std::size_t n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);

  LabeledCorpus train, test;
  train.provenance = corpus.provenance + "+train";
  test.provenance = corpus.provenance + "+test";
  for (std::size_t i = 0; i < n; ++i) {
    (i < n_train ? train : test).documents.push_back(corpus.documents[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

CorpusStats corpus_stats(const LabeledCorpus& corpus) {
  if (corpus.documents.empty()) throw CorpusError("corpus_stats: empty corpus");

  auto accumulate = [](FieldStats& s, std::uint64_t bytes) {
    if (s.count == 0) {
      s.min_bytes = s.max_bytes = bytes;
    } else {
      s.min_bytes = std::min(s.min_bytes, bytes);
      s.max_bytes = std::max(s.max_bytes, bytes);
    }
    s.avg_bytes += static_cast<double>(bytes);  // running sum; divided below
    ++s.count;
  };

  CorpusStats stats;
  FieldStats title;
  for (const Document& d : corpus.documents) {
    accumulate(stats.content, d.content.size());
    if (!d.title.empty()) accumulate(title, d.title.size());
  }
  stats.content.avg_bytes /= static_cast<double>(stats.content.count);
  if (title.count > 0) {
    title.avg_bytes /= static_cast<double>(title.count);
    stats.title = title;
  }
  return stats;
}

}  // namespace ngramid
