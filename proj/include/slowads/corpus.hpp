#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace slowads {

// FLORES-style language code: xxx_Yyyy (ISO 639-3 + script tag).
struct LanguageCode {
  std::string code;

  static bool valid(std::string_view code);
  static LanguageCode parse(std::string_view code);  // throws on invalid codes

  auto operator<=>(const LanguageCode&) const = default;
};

struct PairCode {
  LanguageCode src;
  LanguageCode tgt;

  std::string tag() const { return src.code + "-" + tgt.code; }       // report/pair keys
  static PairCode parse(std::string_view spec);                       // "src:tgt"

  auto operator<=>(const PairCode&) const = default;
};

// Line-aligned multi-way parallel corpus: index i in any two languages is a
// translation pair.
struct ParallelCorpus {
  std::vector<std::pair<LanguageCode, std::vector<std::string>>> sentences;
  std::string provenance;

  std::size_t size() const { return sentences.empty() ? 0 : sentences.front().second.size(); }
  bool has(const LanguageCode& lang) const;
  const std::vector<std::string>& lines(const LanguageCode& lang) const;  // throws if absent
};

// Reads `<code>.devtest` (or an overridden filename) for each language, one
// sentence per line.  A single trailing newline is tolerated; interior blank
// lines and unequal line counts are errors.
ParallelCorpus load_corpus(const std::filesystem::path& dir,
                           const std::vector<LanguageCode>& langs,
                           const std::map<std::string, std::string>& filename_override = {});

// Seeded sample of n sentences without replacement; the same indices are
// taken from every language and original order is preserved.
ParallelCorpus sample(const ParallelCorpus& corpus, std::size_t n, std::uint64_t seed);

}  // namespace slowads
