#include "ngramid/text_prep.hpp"

#include <random>
#include <vector>

#include "ngramid/errors.hpp"
#include "ngramid/hash.hpp"
#include "ngramid/utf8.hpp"

namespace ngramid {

namespace {

// Simple one-to-one lowercase fold. Covers the scripts this toolkit is
// realistically fed: ASCII, Latin-1 Supplement, Latin Extended-A, the common
// paired ranges of Extended-B, Greek and Cyrillic. Unmapped code points pass
// through unchanged. Every target is a fixed point, so folding is idempotent.
char32_t fold_case(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  if (c < 0xC0) return c;
  if (c <= 0xDE) return c == 0xD7 ? c : c + 0x20;  // Latin-1 uppercase, skip multiplication sign
  if (c < 0x100) return c;
  if (c == 0x130) return U'i';  // dotted capital I has no one-to-one pair
  if (c <= 0x137) return (c & 1) ? c : c + 1;
  if (c >= 0x139 && c <= 0x148) return (c & 1) ? c + 1 : c;
  if (c >= 0x14A && c <= 0x177) return (c & 1) ? c : c + 1;
  if (c == 0x178) return 0xFF;
  if (c >= 0x179 && c <= 0x17E) return (c & 1) ? c + 1 : c;
  if (c >= 0x1CD && c <= 0x1DC) return (c & 1) ? c + 1 : c;
  if (c >= 0x1DE && c <= 0x1EF) return (c & 1) ? c : c + 1;
  if (c >= 0x1F8 && c <= 0x21F) return (c & 1) ? c : c + 1;
  if (c >= 0x222 && c <= 0x233) return (c & 1) ? c : c + 1;
  if (c >= 0x246 && c <= 0x24F) return (c & 1) ? c : c + 1;
  if (c == 0x386) return 0x3AC;
  if (c >= 0x388 && c <= 0x38A) return c + 0x25;
  if (c == 0x38C) return 0x3CC;
  if (c == 0x38E || c == 0x38F) return c + 0x3F;
  if (c >= 0x391 && c <= 0x3AB && c != 0x3A2) return c + 0x20;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  if (c >= 0x410 && c <= 0x42F) return c + 0x20;
  return c;
}

// True for characters that become word separators: whitespace, digits,
// punctuation and symbols. Anything not positively classified here is kept
// as a letter, so unusual scripts survive normalization intact.
bool is_separator(char32_t c) {
  if (c < 0x80) {
    return !((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'));
  }
  if (c <= 0xBF) return true;                    // C1 controls, Latin-1 punctuation
  if (c == 0xD7 || c == 0xF7) return true;       // multiplication/division signs
  if (c == 0x1680) return true;                  // ogham space
  if (c >= 0x2000 && c <= 0x206F) return true;   // general punctuation incl. spaces
  if (c >= 0x20A0 && c <= 0x20CF) return true;   // currency symbols
  if (c >= 0x2190 && c <= 0x22FF) return true;   // arrows, math operators
  if (c >= 0x3000 && c <= 0x303F) return true;   // CJK punctuation
  if (c >= 0x660 && c <= 0x669) return true;     // Arabic-Indic digits
  if (c >= 0x6F0 && c <= 0x6F9) return true;
  if (c >= 0x966 && c <= 0x96F) return true;     // Devanagari digits
  if (c >= 0xFE50 && c <= 0xFE6F) return true;   // small form variants
  if (c >= 0xFF01 && c <= 0xFF0F) return true;   // fullwidth punctuation and digits
  if (c >= 0xFF10 && c <= 0xFF19) return true;
  if (c >= 0xFF1A && c <= 0xFF20) return true;
  if (c >= 0xFF3B && c <= 0xFF40) return true;
  if (c >= 0xFF5B && c <= 0xFF65) return true;
  return false;
}

void append_word_ngrams(std::string_view word, int n_min, int n_max, NGramCounts& out) {
  // Pad to "_word_" and record the byte offset of every character so windows
  // are cheap substrings.
  std::string padded;
  padded.reserve(word.size() + 2);
  padded.push_back('_');
  padded.append(word);
  padded.push_back('_');

  std::vector<std::uint32_t> offset;
  offset.reserve(padded.size() + 1);
  std::size_t i = 0;
  while (i < padded.size()) {
    offset.push_back(static_cast<std::uint32_t>(i));
    if (!utf8::decode_next(padded, i)) throw Error("extract_ngrams: malformed UTF-8");
  }
  offset.push_back(static_cast<std::uint32_t>(padded.size()));

  const int len = static_cast<int>(offset.size()) - 1;
  for (int n = n_min; n <= n_max && n <= len; ++n) {
    for (int s = 0; s + n <= len; ++s) {
      out.add(padded.substr(offset[s], offset[s + n] - offset[s]));
    }
  }
}

std::optional<char32_t> diacritic_replacement(char32_t c) {
  switch (c) {
    case 0x00CB: return U'E';  // Ë
    case 0x00EB: return U'e';  // ë
    case 0x00C7: return U'C';  // Ç
    case 0x00E7: return U'c';  // ç
    default: return std::nullopt;
  }
}

}  // namespace

std::string normalize_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  std::size_t i = 0;
  while (i < raw.size()) {
    auto cp = utf8::decode_next(raw, i);
    if (!cp) throw Error("normalize_text: malformed UTF-8 at byte " + std::to_string(i));
    const char32_t c = fold_case(*cp);
    if (is_separator(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    utf8::encode(c, out);
  }
  return out;
}

NGramCounts extract_ngrams(std::string_view text, int n_min, int n_max) {
  if (n_min < 1 || n_max < n_min || n_max > 8) {
    throw ParameterError("extract_ngrams: require 1 <= n_min <= n_max <= 8");
  }
  NGramCounts out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t sp = text.find(' ', pos);
    if (sp == std::string_view::npos) sp = text.size();
    if (sp > pos) append_word_ngrams(text.substr(pos, sp - pos), n_min, n_max, out);
    pos = sp + 1;
  }
  return out;
}

std::map<std::string, std::uint64_t> extract_short_words(std::string_view text, int max_len) {
  if (max_len < 1) throw ParameterError("extract_short_words: max_len must be >= 1");
  std::map<std::string, std::uint64_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t sp = text.find(' ', pos);
    if (sp == std::string_view::npos) sp = text.size();
    if (sp > pos) {
      std::string_view word = text.substr(pos, sp - pos);
      if (utf8::char_length(word) <= static_cast<std::size_t>(max_len)) {
        ++out[std::string(word)];
      }
    }
    pos = sp + 1;
  }
  return out;
}

std::string perturb_diacritics(std::string_view text, const PerturbationSpec& spec) {
  if (!(spec.probability >= 0.0 && spec.probability <= 1.0)) {
    throw ParameterError("perturb_diacritics: probability must be in [0,1]");
  }
  auto cps = utf8::decode(text);
  if (!cps) throw Error("perturb_diacritics: malformed UTF-8");
  std::mt19937_64 rng(spec.seed ^ fnv1a64(text));
  for (char32_t& c : *cps) {
    if (auto repl = diacritic_replacement(c)) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (u < spec.probability) c = *repl;
    }
  }
  return utf8::encode(*cps);
}

std::variant<std::string, TooShort> excerpt_bytes(std::string_view text, std::size_t max_bytes) {
  if (max_bytes < 1) throw ParameterError("excerpt_bytes: max_bytes must be >= 1");
  if (!utf8::is_valid(text)) throw Error("excerpt_bytes: malformed UTF-8");
  if (text.size() < max_bytes) return TooShort{text.size()};
  std::size_t end = 0;
  while (end < text.size()) {
    std::size_t next = end;
    utf8::decode_next(text, next);
    if (next > max_bytes) break;
    end = next;
  }
  return std::string(text.substr(0, end));
}

}  // namespace ngramid
