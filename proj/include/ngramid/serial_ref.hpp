#pragma once

// Straightforward single-threaded implementations of the OpenMP-parallel
// kernels (frequency-table accumulation, training, evaluation). Kept as the
// reference the parallel paths are tested against and as the baseline for the
// benchmark tool.

#include "ngramid/evaluation.hpp"
#include "ngramid/profiles.hpp"

namespace ngramid::serial_ref {

FrequencyTable build_frequency_table(const std::vector<std::string>& normalized_docs,
                                     int n_min, int n_max);

ModelSet train_model_set(const LabeledCorpus& corpus, const TrainingConfig& config);

EvaluationReport evaluate(const ModelSet& set, const LabeledCorpus& corpus,
                          const std::vector<Method>& methods, const std::vector<Field>& fields,
                          const EvalOptions& opts = {});

}  // namespace ngramid::serial_ref
