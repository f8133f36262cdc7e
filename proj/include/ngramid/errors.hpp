#pragma once

#include <stdexcept>
#include <string>

namespace ngramid {

// Base class for all library failures.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid argument values: bad n-gram bounds, probabilities, config fields.
struct ParameterError : Error {
  using Error::Error;
};

// Unusable training input (empty corpus, empty vocabulary).
struct TrainingError : Error {
  using Error::Error;
};

// Fatal corpus ingestion problems (zero valid documents, unreadable root).
struct CorpusError : Error {
  using Error::Error;
};

// Model file parsing, validation or version problems.
struct ModelFormatError : Error {
  using Error::Error;
};

// A single document that cannot be classified. Evaluation catches these and
// reports the document under n_errors instead of aborting a run.
class ClassificationError : public Error {
 public:
  enum class Kind {
    EmptyInput,  // text normalizes to nothing usable
    NoEvidence,  // document has no feature the method can score (e.g. no short words)
  };

  ClassificationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace ngramid
