#pragma once

// Classifier x dataset x field experiment runner with accuracy/confusion
// accounting, plus table rendering and run-to-run comparison.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ngramid/classifiers.hpp"
#include "ngramid/corpus.hpp"

namespace ngramid {

enum class Field { Title, Contents };

std::string_view field_name(Field f);
std::optional<Field> parse_field(std::string_view name);

struct EvalRow {
  Method method = Method::RankOrder;
  std::string dataset;
  Field field = Field::Contents;
  std::uint64_t n_evaluated = 0;  // documents that produced a prediction
  std::uint64_t n_correct = 0;
  std::uint64_t n_errors = 0;     // documents the classifier rejected
  std::map<std::pair<std::string, std::string>, std::uint64_t> confusion;  // (true, predicted)

  double accuracy() const {
    return n_evaluated == 0 ? 0.0
                            : static_cast<double>(n_correct) / static_cast<double>(n_evaluated);
  }
};

struct EvaluationReport {
  std::vector<EvalRow> rows;
};

struct EvalOptions {
  bool parallel = true;
  ClassifyOptions classify;
};

// One row per (method, field) in argument order. Documents whose
// classification fails (empty field, no evidence) count under n_errors and
// are excluded from accuracy.
EvaluationReport evaluate(const ModelSet& set, const LabeledCorpus& corpus,
                          const std::vector<Method>& methods, const std::vector<Field>& fields,
                          const EvalOptions& opts = {});

enum class ReportFormat { TableText, TabSeparated };

// Accuracy with exactly four decimals, decimal half-up (e.g. 19991/20000
// renders as "0.9996").
std::string format_accuracy(std::uint64_t correct, std::uint64_t evaluated);

// TableText: one line per (method, dataset) with TITLE and CONTENTS columns,
// N/A for fields that were not evaluated. TabSeparated: machine-readable rows
// that parse_report_tsv() reads back exactly.
std::string render_report(const EvaluationReport& report, ReportFormat format);

// Parses the TabSeparated format (confusion matrices are not serialized).
EvaluationReport parse_report_tsv(std::string_view text);

struct RunDelta {
  Method method = Method::RankOrder;
  Field field = Field::Contents;
  double accuracy_a = 0.0;
  double accuracy_b = 0.0;
  double delta = 0.0;  // b - a
};

// Per (method, field) accuracy difference. Rows are keyed on method and
// field only, so reports over different dataset variants line up; duplicate
// or unmatched keys raise an Error.
std::vector<RunDelta> compare_runs(const EvaluationReport& a, const EvaluationReport& b);

}  // namespace ngramid
