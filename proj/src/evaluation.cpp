#include "ngramid/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "ngramid/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ngramid {

std::string_view field_name(Field f) {
  return f == Field::Title ? "title" : "contents";
}

std::optional<Field> parse_field(std::string_view name) {
  if (name == "title") return Field::Title;
  if (name == "contents") return Field::Contents;
  return std::nullopt;
}

namespace {

struct Tally {
  std::uint64_t correct = 0;
  std::uint64_t errors = 0;
  std::map<std::pair<std::string, std::string>, std::uint64_t> confusion;

  void merge(const Tally& other) {
    correct += other.correct;
    errors += other.errors;
    for (const auto& [key, count] : other.confusion) confusion[key] += count;
  }
};

void classify_into(const ModelSet& set, const Document& doc, Field field, Method method,
                   const ClassifyOptions& copts, Tally& tally) {
  const std::string& text = field == Field::Title ? doc.title : doc.content;
  try {
    const Verdict v = classify(text, set, method, copts);
    if (v.language == doc.language) ++tally.correct;
    ++tally.confusion[{doc.language, v.language}];
  } catch (const ClassificationError&) {
    ++tally.errors;
  }
}

}  // namespace

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
  const auto& docs = corpus.documents;
  for (Method method : methods) {
    for (Field field : fields) {
      Tally tally;
      std::string error;
#ifdef _OPENMP
#pragma omp parallel if (opts.parallel)
      {
        Tally local;
        std::string local_error;
#pragma omp for nowait schedule(dynamic, 16)
        for (long i = 0; i < static_cast<long>(docs.size()); ++i) {
          try {
            classify_into(set, docs[i], field, method, opts.classify, local);
          } catch (const std::exception& e) {
            if (local_error.empty()) local_error = e.what();
          }
        }
#pragma omp critical
        {
          tally.merge(local);
          if (error.empty() && !local_error.empty()) error = local_error;
        }
      }
#else
      for (const Document& doc : docs) {
        classify_into(set, doc, field, method, opts.classify, tally);
      }
#endif
      if (!error.empty()) throw Error("evaluate: " + error);

      EvalRow row;
      row.method = method;
      row.dataset = corpus.provenance;
      row.field = field;
      row.n_errors = tally.errors;
      row.n_evaluated = docs.size() - tally.errors;
      row.n_correct = tally.correct;
      row.confusion = std::move(tally.confusion);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string format_accuracy(std::uint64_t correct, std::uint64_t evaluated) {
  if (evaluated == 0) return "N/A";
  // floor(correct/evaluated * 10^4 + 1/2) in exact integer arithmetic.
  const std::uint64_t scaled = (correct * 20000 + evaluated) / (2 * evaluated);
  std::string digits = std::to_string(scaled);
  while (digits.size() < 5) digits.insert(digits.begin(), '0');
  return digits.substr(0, digits.size() - 4) + "." + digits.substr(digits.size() - 4);
}

namespace {

constexpr std::string_view kTsvHeader =
    "method\tdataset\tfield\taccuracy\tn_evaluated\tn_correct\tn_errors";

const EvalRow* find_row(const EvaluationReport& report, Method method,
                        const std::string& dataset, Field field) {
  for (const auto& row : report.rows) {
    if (row.method == method && row.dataset == dataset && row.field == field) return &row;
  }
  return nullptr;
}

}  // namespace

std::string render_report(const EvaluationReport& report, ReportFormat format) {
  if (report.rows.empty()) throw ParameterError("render_report: empty report");
  std::ostringstream out;
  if (format == ReportFormat::TabSeparated) {
    out << kTsvHeader << '\n';
    for (const auto& row : report.rows) {
      out << method_name(row.method) << '\t' << row.dataset << '\t' << field_name(row.field)
          << '\t' << format_accuracy(row.n_correct, row.n_evaluated) << '\t' << row.n_evaluated
          << '\t' << row.n_correct << '\t' << row.n_errors << '\n';
    }
    return out.str();
  }

  // TableText: one line per (method, dataset) with a column per field.
  std::vector<std::pair<Method, std::string>> keys;
  for (const auto& row : report.rows) {
    const auto key = std::make_pair(row.method, row.dataset);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  std::size_t method_w = 6, dataset_w = 7;
  for (const auto& [method, dataset] : keys) {
    method_w = std::max(method_w, method_name(method).size());
    dataset_w = std::max(dataset_w, dataset.size());
  }
  auto pad = [&out](std::string_view s, std::size_t width) {
    out << s;
    for (std::size_t i = s.size(); i < width + 2; ++i) out << ' ';
  };
  pad("METHOD", method_w);
  pad("DATASET", dataset_w);
  pad("TITLE", 6);
  out << "CONTENTS\n";
  for (const auto& [method, dataset] : keys) {
    pad(method_name(method), method_w);
    pad(dataset, dataset_w);
    const EvalRow* title = find_row(report, method, dataset, Field::Title);
    const EvalRow* contents = find_row(report, method, dataset, Field::Contents);
    pad(title ? format_accuracy(title->n_correct, title->n_evaluated) : "N/A", 6);
    out << (contents ? format_accuracy(contents->n_correct, contents->n_evaluated) : "N/A")
        << '\n';
  }
  return out.str();
}

EvaluationReport parse_report_tsv(std::string_view text) {
  EvaluationReport report;
  std::size_t pos = 0;
  std::size_t lineno = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    if (!saw_header) {
      if (line != kTsvHeader) throw Error("report parse: missing header line");
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;

    std::vector<std::string_view> cols;
    std::size_t c = 0;
    while (true) {
      std::size_t tab = line.find('\t', c);
      if (tab == std::string_view::npos) {
        cols.push_back(line.substr(c));
        break;
      }
      cols.push_back(line.substr(c, tab - c));
      c = tab + 1;
    }
    const std::string where = "report parse line " + std::to_string(lineno);
    if (cols.size() != 7) throw Error(where + ": expected 7 columns");
    EvalRow row;
    const auto method = parse_method(cols[0]);
    if (!method) throw Error(where + ": unknown method '" + std::string(cols[0]) + "'");
    row.method = *method;
    row.dataset = std::string(cols[1]);
    const auto field = parse_field(cols[2]);
    if (!field) throw Error(where + ": unknown field '" + std::string(cols[2]) + "'");
    row.field = *field;
    auto parse_count = [&](std::string_view tok, const char* what) {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw Error(where + ": bad " + what);
      }
      return v;
    };
    row.n_evaluated = parse_count(cols[4], "n_evaluated");
    row.n_correct = parse_count(cols[5], "n_correct");
    row.n_errors = parse_count(cols[6], "n_errors");
    if (row.n_correct > row.n_evaluated) throw Error(where + ": n_correct > n_evaluated");
    if (cols[3] != format_accuracy(row.n_correct, row.n_evaluated)) {
      throw Error(where + ": accuracy column disagrees with counts");
    }
    report.rows.push_back(std::move(row));
  }
  if (!saw_header || report.rows.empty()) throw Error("report parse: no rows");
  return report;
}

std::vector<RunDelta> compare_runs(const EvaluationReport& a, const EvaluationReport& b) {
  using Key = std::pair<Method, Field>;
  auto index = [](const EvaluationReport& r, const char* name) {
    std::map<Key, const EvalRow*> out;
    for (const auto& row : r.rows) {
      if (!out.emplace(Key{row.method, row.field}, &row).second) {
        throw Error(std::string("compare_runs: report ") + name +
                    " has duplicate (method, field) rows; compare single-dataset reports");
      }
    }
    return out;
  };
  const auto ia = index(a, "a");
  const auto ib = index(b, "b");
  if (ia.size() != ib.size()) throw Error("compare_runs: reports have different row keys");
  std::vector<RunDelta> deltas;
  for (const auto& [key, row_a] : ia) {
    auto it = ib.find(key);
    if (it == ib.end()) {
      throw Error(std::string("compare_runs: row (") + std::string(method_name(key.first)) +
                  ", " + std::string(field_name(key.second)) + ") missing from report b");
    }
    RunDelta d;
    d.method = key.first;
    d.field = key.second;
    d.accuracy_a = row_a->accuracy();
    d.accuracy_b = it->second->accuracy();
    d.delta = d.accuracy_b - d.accuracy_a;
    deltas.push_back(d);
  }
  return deltas;
}

}  // namespace ngramid
