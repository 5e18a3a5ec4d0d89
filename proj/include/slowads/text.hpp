#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace slowads {

// UTF-8 code point helpers.  Decoding is permissive: bytes that do not form
// a valid sequence pass through untouched, one byte at a time.
struct Utf8Char {
  char32_t cp;
  std::size_t bytes;  // consumed input bytes (1 on invalid sequences)
};

Utf8Char utf8_first(std::string_view s);
void utf8_append(std::string& out, char32_t cp);
std::vector<char32_t> utf8_codepoints(std::string_view s);

// Whitespace per the Unicode default (matches Python's str.split()).
bool is_space_cp(char32_t cp);
// Punctuation over ASCII plus the common punctuation blocks (general
// punctuation, Arabic, Devanagari danda, CJK and fullwidth forms).
bool is_punct_cp(char32_t cp);

// Simple case folding for the bicameral scripts this toolkit meets in
// practice: ASCII, Latin-1, Latin Extended-A, Greek, Cyrillic.  Everything
// else (and any invalid byte) is copied through unchanged.
std::string casefold(std::string_view s);

std::string trim(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);
std::string strip_outer_punct(std::string_view s);

// casefold + strip_outer_punct; the token normalization used by the Differ
// selection strategies.
std::string normalize_token(std::string_view s);

std::string format_double(double v, int precision);

}  // namespace slowads
