#include <doctest.h>

#include <random>
#include <string>

#include "ngramid/errors.hpp"
#include "ngramid/text_prep.hpp"
#include "ngramid/utf8.hpp"

using namespace ngramid;

namespace {

// Random UTF-8 text over a small mixed alphabet, for property checks.
std::string random_text(std::mt19937_64& rng, std::size_t max_len) {
  static const std::vector<std::string> pieces = {
      "a", "b", "z", "ë", "Ë", "ç", "Ç", "ü", "SH", "Q", " ", "  ", "\t", ".", ",",
      "1", "42", "?", "_", "-", "ö", "G", "x", "\n", "e", "E", "s"};
  std::string out;
  const std::size_t len = rng() % max_len;
  for (std::size_t i = 0; i < len; ++i) {
    out += pieces[rng() % pieces.size()];
  }
  return out;
}

}  // namespace

TEST_CASE("normalize_text basic rules") {
  CHECK(normalize_text("") == "");
  CHECK(normalize_text("Çelësi 123, OK?") == "çelësi ok");
  CHECK(normalize_text("A  B\tC") == "a b c");
  CHECK(normalize_text("  hello  ") == "hello");
  CHECK(normalize_text("ËçÇë") == "ëççë");
  CHECK(normalize_text("don't stop") == "don t stop");
  CHECK(normalize_text("x_y") == "x y");  // '_' is reserved for padding
  CHECK(normalize_text("ÜBER Straße") == "über straße");
  CHECK(normalize_text("1999") == "");
}

TEST_CASE("normalize_text rejects malformed UTF-8") {
  CHECK_THROWS_AS(normalize_text(std::string_view("\xFF\xFE", 2)), Error);
  CHECK_THROWS_AS(normalize_text(std::string_view("ok\xC3", 3)), Error);  // truncated
}

TEST_CASE("normalize_text is idempotent") {
  std::mt19937_64 rng(20240811);
  for (int i = 0; i < 500; ++i) {
    const std::string text = random_text(rng, 80);
    const std::string once = normalize_text(text);
    CHECK(normalize_text(once) == once);
  }
}

TEST_CASE("extract_ngrams examples") {
  CHECK(extract_ngrams("", 1, 3).total == 0);
  CHECK(extract_ngrams("", 1, 3).counts.empty());

  const NGramCounts two = extract_ngrams("ab", 2, 2);
  CHECK(two.total == 3);
  CHECK(two.counts.at("_a") == 1);
  CHECK(two.counts.at("ab") == 1);
  CHECK(two.counts.at("b_") == 1);

  const NGramCounts ones = extract_ngrams("aa aa", 1, 1);
  CHECK(ones.total == 8);
  CHECK(ones.counts.at("_") == 4);
  CHECK(ones.counts.at("a") == 4);
  CHECK(ones.counts.size() == 2);
}

TEST_CASE("extract_ngrams counts multi-byte characters, not bytes") {
  const NGramCounts grams = extract_ngrams("ës", 2, 2);
  CHECK(grams.total == 3);
  CHECK(grams.counts.at("_ë") == 1);
  CHECK(grams.counts.at("ës") == 1);
  CHECK(grams.counts.at("s_") == 1);
}

TEST_CASE("extract_ngrams rejects bad bounds") {
  CHECK_THROWS_AS(extract_ngrams("ab", 0, 2), ParameterError);
  CHECK_THROWS_AS(extract_ngrams("ab", 3, 2), ParameterError);
  CHECK_THROWS_AS(extract_ngrams("ab", 1, 9), ParameterError);
}

TEST_CASE("extract_ngrams total matches the window formula") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    const std::string text = normalize_text(random_text(rng, 60));
    const int n_min = 1 + static_cast<int>(rng() % 3);
    const int n_max = n_min + static_cast<int>(rng() % 4);
    const NGramCounts grams = extract_ngrams(text, n_min, n_max);

    std::uint64_t expected = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t sp = text.find(' ', pos);
      if (sp == std::string::npos) sp = text.size();
      if (sp > pos) {
        const std::int64_t len =
            static_cast<std::int64_t>(utf8::char_length(text.substr(pos, sp - pos))) + 2;
        for (int n = n_min; n <= n_max; ++n) {
          if (len - n + 1 > 0) expected += static_cast<std::uint64_t>(len - n + 1);
        }
      }
      pos = sp + 1;
    }
    CHECK(grams.total == expected);
  }
}

TEST_CASE("extract_short_words examples") {
  CHECK(extract_short_words("").empty());

  const auto counts = extract_short_words("dhe në përgjithësi dhe");
  CHECK(counts.size() == 2);
  CHECK(counts.at("dhe") == 2);
  CHECK(counts.at("në") == 1);

  const auto boundary = extract_short_words("abcde abcdef");
  CHECK(boundary.size() == 1);
  CHECK(boundary.at("abcde") == 1);
}

TEST_CASE("perturb_diacritics endpoints") {
  CHECK(perturb_diacritics("Çelësi është", {1.0, 99}) == "Celesi eshte");
  CHECK(perturb_diacritics("Çelësi është", {0.0, 99}) == "Çelësi është");
  CHECK(perturb_diacritics("nothing here", {1.0, 0}) == "nothing here");
  CHECK_THROWS_AS(perturb_diacritics("x", {1.5, 0}), ParameterError);
}

TEST_CASE("perturb_diacritics replaced fraction concentrates around p") {
  std::string text;
  for (int i = 0; i < 10000; ++i) text += "ë";
  const std::string out = perturb_diacritics(text, {0.5, 42});
  std::size_t replaced = 0;
  for (char c : out) {
    if (c == 'e') ++replaced;
  }
  const double fraction = static_cast<double>(replaced) / 10000.0;
  CHECK(fraction >= 0.47);
  CHECK(fraction <= 0.53);
}

TEST_CASE("perturb_diacritics is deterministic and position-preserving") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 200; ++iter) {
    const std::string text = random_text(rng, 60);
    const PerturbationSpec spec{0.5, rng()};
    const std::string a = perturb_diacritics(text, spec);
    const std::string b = perturb_diacritics(text, spec);
    CHECK(a == b);

    const auto in_cps = *utf8::decode(text);
    const auto out_cps = *utf8::decode(a);
    REQUIRE(in_cps.size() == out_cps.size());
    for (std::size_t i = 0; i < in_cps.size(); ++i) {
      if (in_cps[i] == out_cps[i]) continue;
      const char32_t from = in_cps[i];
      const char32_t to = out_cps[i];
      const bool legal = (from == U'Ë' && to == U'E') ||
                         (from == U'ë' && to == U'e') ||
                         (from == U'Ç' && to == U'C') ||
                         (from == U'ç' && to == U'c');
      CHECK(legal);
    }
  }
}

TEST_CASE("excerpt_bytes examples") {
  const auto short_text = excerpt_bytes("abc", 500);
  REQUIRE(std::holds_alternative<TooShort>(short_text));
  CHECK(std::get<TooShort>(short_text).byte_length == 3);

  const std::string long_text(600, 'a');
  const auto taken = excerpt_bytes(long_text, 500);
  REQUIRE(std::holds_alternative<std::string>(taken));
  CHECK(std::get<std::string>(taken) == std::string(500, 'a'));

  // 499 ASCII bytes, then a 2-byte character that would straddle the limit.
  std::string mixed(499, 'x');
  mixed += "ë";
  mixed += "tail so the text is long enough";
  const auto clipped = excerpt_bytes(mixed, 500);
  REQUIRE(std::holds_alternative<std::string>(clipped));
  const std::string& prefix = std::get<std::string>(clipped);
  CHECK(prefix.size() == 499);
  CHECK(prefix == std::string(499, 'x'));
  CHECK(utf8::is_valid(prefix));
}

TEST_CASE("excerpt_bytes prefix property") {
  std::mt19937_64 rng(123);
  for (int iter = 0; iter < 300; ++iter) {
    const std::string text = random_text(rng, 120);
    const std::size_t max_bytes = 1 + rng() % 100;
    const auto result = excerpt_bytes(text, max_bytes);
    if (std::holds_alternative<TooShort>(result)) {
      CHECK(text.size() < max_bytes);
      CHECK(std::get<TooShort>(result).byte_length == text.size());
    } else {
      const std::string& prefix = std::get<std::string>(result);
      CHECK(prefix.size() <= max_bytes);
      CHECK(utf8::is_valid(prefix));
      CHECK(text.substr(0, prefix.size()) == prefix);
      // Maximal: the next character would not fit.
      if (prefix.size() < text.size()) {
        std::size_t next = prefix.size();
        utf8::decode_next(text, next);
        CHECK(next > max_bytes);
      }
    }
  }
}
