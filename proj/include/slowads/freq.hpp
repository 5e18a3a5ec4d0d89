#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>

namespace slowads {

// English word -> Zipf score (log10 occurrences per billion tokens, [0, 9]).
// Words absent from the table score default_zipf; the default of 0 treats
// unseen words as rarest, so they sort first under low-frequency selection.
struct FrequencyTable {
  std::unordered_map<std::string, double> entries;
  double default_zipf = 0.0;
};

// TSV `word<TAB>zipf`, UTF-8, `#` comment lines allowed.  Keys are
// case-folded; duplicate keys keep the maximum score.
FrequencyTable load_freq_table(const std::filesystem::path& path, double default_zipf = 0.0);

// Case-insensitive lookup; total (unknown words get default_zipf).
double zipf(const FrequencyTable& table, std::string_view word);

// Minimum zipf over the whitespace-separated tokens of a phrase: a phrase is
// as rare as its rarest token.
double phrase_zipf(const FrequencyTable& table, std::string_view phrase);

}  // namespace slowads
