#include "ngramid/utf8.hpp"

namespace ngramid::utf8 {

void encode(char32_t cp, std::string& out) {
  const std::uint32_t c = cp;
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::string encode(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t c : cps) encode(c, out);
  return out;
}

namespace {

inline bool is_continuation(unsigned char b) { return (b & 0xC0) == 0x80; }

}  // namespace

std::optional<char32_t> decode_next(std::string_view s, std::size_t& i) {
  if (i >= s.size()) return std::nullopt;
  const unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return static_cast<char32_t>(b0);
  }
  if (b0 < 0xC2 || b0 > 0xF4) return std::nullopt;  // continuation byte or invalid lead
  std::size_t len;
  std::uint32_t cp;
  unsigned char lo = 0x80, hi = 0xBF;
  if (b0 < 0xE0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if (b0 < 0xF0) {
    len = 3;
    cp = b0 & 0x0F;
    if (b0 == 0xE0) lo = 0xA0;        // reject overlong
    if (b0 == 0xED) hi = 0x9F;        // reject surrogates
  } else {
    len = 4;
    cp = b0 & 0x07;
    if (b0 == 0xF0) lo = 0x90;        // reject overlong
    if (b0 == 0xF4) hi = 0x8F;        // reject > U+10FFFF
  }
  if (i + len > s.size()) return std::nullopt;
  for (std::size_t k = 1; k < len; ++k) {
    const unsigned char b = static_cast<unsigned char>(s[i + k]);
    if (k == 1 ? (b < lo || b > hi) : !is_continuation(b)) return std::nullopt;
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return static_cast<char32_t>(cp);
}

std::optional<std::vector<char32_t>> decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    auto cp = decode_next(s, i);
    if (!cp) return std::nullopt;
    out.push_back(*cp);
  }
  return out;
}

bool is_valid(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    if (!decode_next(s, i)) return false;
  }
  return true;
}

std::size_t char_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char b : s) {
    if (!is_continuation(b)) ++n;
  }
  return n;
}

}  // namespace ngramid::utf8
