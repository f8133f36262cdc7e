#include "ngramid/serial_ref.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ngramid/errors.hpp"

namespace ngramid::serial_ref {

FrequencyTable build_frequency_table(const std::vector<std::string>& normalized_docs,
                                     int n_min, int n_max) {
  if (normalized_docs.empty()) throw TrainingError("build_frequency_table: empty corpus");
  NGramCounts acc;
  for (const auto& doc : normalized_docs) {
    acc.merge(extract_ngrams(doc, n_min, n_max));
  }
  if (acc.total == 0) throw TrainingError("build_frequency_table: no n-grams in corpus");
  FrequencyTable table;
  table.counts = std::move(acc.counts);
  table.total = acc.total;
  table.n_min = n_min;
  table.n_max = n_max;
  return table;
}

ModelSet train_model_set(const LabeledCorpus& corpus, const TrainingConfig& cfg) {
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
  for (const auto& [language, docs] : groups) {
    LanguageModel m;
    m.language = language;
    NGramCounts grams;
    std::map<std::string, std::uint64_t> words;
    std::set<std::string> domains;
    for (const Document* doc : docs) {
      const std::string norm = normalize_text(doc->content);
      grams.merge(extract_ngrams(norm, cfg.n_min, cfg.extraction_n_max()));
      for (const auto& [w, c] : extract_short_words(norm, cfg.short_word_max_len)) {
        words[w] += c;
      }
      m.train_bytes += doc->content.size();
      if (!doc->domain.empty()) domains.insert(doc->domain);
    }
    if (grams.total == 0) {
      throw TrainingError("train: corpus for language '" + language +
                          "' is empty after normalization");
    }
    m.table.counts = std::move(grams.counts);
    m.table.total = grams.total;
    m.table.n_min = cfg.n_min;
    m.table.n_max = cfg.extraction_n_max();
    m.short_word_counts = top_short_words(words, cfg.short_word_profile);
    m.domains.assign(domains.begin(), domains.end());
    derive_statistics(m, cfg);
    set.models.push_back(std::move(m));
  }
  return set;
}

EvaluationReport evaluate(const ModelSet& set, const LabeledCorpus& corpus,
                          const std::vector<Method>& methods, const std::vector<Field>& fields,
                          const EvalOptions& opts) {
  if (set.models.empty()) throw ParameterError("evaluate: empty model set");
  if (corpus.documents.empty()) throw ParameterError("evaluate: empty corpus");
  if (methods.empty()) throw ParameterError("evaluate: no methods selected");
  if (fields.empty()) throw ParameterError("evaluate: no fields selected");
  const bool overlap = std::any_of(corpus.documents.begin(), corpus.documents.end(),
                                   [&](const Document& d) { return set.find(d.language); });
  if (!overlap) {
    throw ParameterError("evaluate: corpus and model set share no language label");
  }

  EvaluationReport report;
  for (Method method : methods) {
    for (Field field : fields) {
      EvalRow row;
      row.method = method;
      row.dataset = corpus.provenance;
      row.field = field;
      for (const Document& doc : corpus.documents) {
        const std::string& text = field == Field::Title ? doc.title : doc.content;
        try {
          const Verdict v = classify(text, set, method, opts.classify);
          if (v.language == doc.language) ++row.n_correct;
          ++row.confusion[{doc.language, v.language}];
          ++row.n_evaluated;
        } catch (const ClassificationError&) {
          ++row.n_errors;
        }
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace ngramid::serial_ref
