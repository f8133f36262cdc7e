#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ngramid::utf8 {

// Appends the UTF-8 encoding of a Unicode scalar value.
void encode(char32_t cp, std::string& out);

std::string encode(const std::vector<char32_t>& cps);

// Decodes the sequence starting at s[i]. On success advances i past it and
// returns the scalar value. Returns nullopt on malformed input (overlong
// forms, surrogates, values past U+10FFFF, truncation), leaving i at the
// offending byte.
std::optional<char32_t> decode_next(std::string_view s, std::size_t& i);

// Full strict decode; nullopt if any sequence is malformed.
std::optional<std::vector<char32_t>> decode(std::string_view s);

bool is_valid(std::string_view s);

// Number of scalar values in valid UTF-8 text.
std::size_t char_length(std::string_view s);

}  // namespace ngramid::utf8
