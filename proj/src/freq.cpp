#include "slowads/freq.hpp"

#include <cstdlib>
#include <fstream>

#include "slowads/error.hpp"
#include "slowads/text.hpp"

namespace slowads {

FrequencyTable load_freq_table(const std::filesystem::path& path, double default_zipf) {
  if (default_zipf < 0.0 || default_zipf > 9.0) fail("freq table: default zipf outside [0, 9]");
  std::ifstream in(path);
  if (!in) fail("freq table: cannot open " + path.string());

  FrequencyTable table;
  table.default_zipf = default_zipf;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      fail("freq table: " + path.string() + ": line " + std::to_string(lineno) +
           ": expected word<TAB>zipf");
    const std::string key = casefold(trim(line.substr(0, tab)));
    if (key.empty())
      fail("freq table: " + path.string() + ": line " + std::to_string(lineno) + ": empty word");
    for (const char32_t cp : utf8_codepoints(key))
      if (is_space_cp(cp))
        fail("freq table: " + path.string() + ": line " + std::to_string(lineno) +
             ": word contains whitespace: '" + key + "'");
    const std::string value = trim(line.substr(tab + 1));
    char* end = nullptr;
    const double z = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size())
      fail("freq table: " + path.string() + ": line " + std::to_string(lineno) +
           ": zipf column is not a number: '" + value + "'");
    if (z < 0.0 || z > 9.0)
      fail("freq table: " + path.string() + ": line " + std::to_string(lineno) +
           ": zipf " + value + " outside [0, 9]");
    const auto [it, inserted] = table.entries.emplace(key, z);
    if (!inserted && z > it->second) it->second = z;  // max wins on duplicates
  }
  return table;
}

double zipf(const FrequencyTable& table, std::string_view word) {
  const std::string key = casefold(trim(word));
  if (key.empty()) fail("zipf: empty word");
  const auto it = table.entries.find(key);
  return it != table.entries.end() ? it->second : table.default_zipf;
}

double phrase_zipf(const FrequencyTable& table, std::string_view phrase) {
  const auto tokens = split_ws(phrase);
  if (tokens.empty()) fail("phrase_zipf: empty phrase");
  double best = 9.0 + 1.0;
  for (const auto& tok : tokens) best = std::min(best, zipf(table, tok));
  return best;
}

}  // namespace slowads
