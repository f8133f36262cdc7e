#pragma once

// Text normalization, character n-gram extraction, short-word extraction and
// the corpus perturbation/excerpting primitives. Everything here is a pure
// function of its inputs and safe to call from any number of threads.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>

namespace ngramid {

// UTF-8 encoding of 1..8 Unicode scalars; '_' marks a word boundary.
// Values never contain whitespace or digit characters.
using NGram = std::string;

struct NGramCounts {
  std::unordered_map<NGram, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const NGram& g, std::uint64_t k = 1) {
    counts[g] += k;
    total += k;
  }

  void merge(const NGramCounts& other) {
    for (const auto& [g, c] : other.counts) counts[g] += c;
    total += other.total;
  }
};

// Bernoulli replacement of the four letters Ë->E, ë->e, Ç->C, ç->c. The
// random stream is mt19937_64 seeded with seed ^ fnv1a64(text); one draw per
// mapped occurrence, taken as (next() >> 11) * 2^-53 < probability. Identical
// (text, probability, seed) triples therefore produce identical output on any
// platform. Both letter cases are always mapped.
struct PerturbationSpec {
  double probability = 0.0;
  std::uint64_t seed = 0;
};

// Lowercases (simple one-to-one fold covering ASCII, Latin-1, Latin
// Extended-A and common Extended-B, Greek and Cyrillic), replaces digits,
// punctuation and every other non-letter with a space, collapses whitespace
// runs and trims. Idempotent. Throws Error on malformed UTF-8.
std::string normalize_text(std::string_view raw);

// Counts all n-length windows, n in [n_min, n_max], of every word padded to
// "_word_". Expects normalized text. Throws ParameterError unless
// 1 <= n_min <= n_max <= 8.
NGramCounts extract_ngrams(std::string_view text, int n_min, int n_max);

// Counts whitespace-delimited words of at most max_len characters.
std::map<std::string, std::uint64_t> extract_short_words(std::string_view text,
                                                         int max_len = 5);

std::string perturb_diacritics(std::string_view text, const PerturbationSpec& spec);

struct TooShort {
  std::size_t byte_length;
};

// Longest prefix of whole characters with encoded length <= max_bytes, or
// TooShort{actual length} when the text is shorter than max_bytes.
std::variant<std::string, TooShort> excerpt_bytes(std::string_view text,
                                                  std::size_t max_bytes = 500);

}  // namespace ngramid
