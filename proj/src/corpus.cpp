#include "slowads/corpus.hpp"

#include <fstream>

#include "slowads/error.hpp"
#include "slowads/rng.hpp"
#include "slowads/text.hpp"

namespace slowads {

bool LanguageCode::valid(std::string_view code) {
  if (code.size() != 8 || code[3] != '_') return false;
  for (int i = 0; i < 3; ++i)
    if (code[i] < 'a' || code[i] > 'z') return false;
  if (code[4] < 'A' || code[4] > 'Z') return false;
  for (int i = 5; i < 8; ++i)
    if (code[i] < 'a' || code[i] > 'z') return false;
  return true;
}

LanguageCode LanguageCode::parse(std::string_view code) {
  if (!valid(code))
    fail("invalid language code '" + std::string(code) +
         "' (expected xxx_Yyyy, e.g. eng_Latn)");
  return LanguageCode{std::string(code)};
}

PairCode PairCode::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    fail("invalid pair '" + std::string(spec) + "' (expected src:tgt)");
  return PairCode{LanguageCode::parse(spec.substr(0, colon)),
                  LanguageCode::parse(spec.substr(colon + 1))};
}

bool ParallelCorpus::has(const LanguageCode& lang) const {
  for (const auto& [code, _] : sentences)
    if (code == lang) return true;
  return false;
}

const std::vector<std::string>& ParallelCorpus::lines(const LanguageCode& lang) const {
  for (const auto& [code, lines] : sentences)
    if (code == lang) return lines;
  fail("corpus has no language " + lang.code);
}

namespace {

std::vector<std::string> read_sentence_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("corpus: cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();  // trailing newline
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (trim(lines[i]).empty())
      fail("corpus: " + path.string() + ": blank line " + std::to_string(i + 1) +
           " (expected one sentence per line)");
  return lines;
}

}  // namespace

ParallelCorpus load_corpus(const std::filesystem::path& dir,
                           const std::vector<LanguageCode>& langs,
                           const std::map<std::string, std::string>& filename_override) {
  if (langs.empty()) fail("corpus: no languages requested");
  ParallelCorpus corpus;
  corpus.provenance = dir.string();
  std::string first_file;
  for (const auto& lang : langs) {
    const auto it = filename_override.find(lang.code);
    const std::string filename =
        it != filename_override.end() ? it->second : lang.code + ".devtest";
    const auto path = dir / filename;
    if (!std::filesystem::exists(path))
      fail("corpus: missing file for " + lang.code + ": " + path.string());
    auto lines = read_sentence_file(path);
    if (!corpus.sentences.empty() && lines.size() != corpus.size())
      fail("corpus: unequal line counts: " + first_file + " has " +
           std::to_string(corpus.size()) + " lines, " + path.string() + " has " +
           std::to_string(lines.size()));
    if (corpus.sentences.empty()) first_file = path.string();
    corpus.sentences.emplace_back(lang, std::move(lines));
  }
  return corpus;
}

ParallelCorpus sample(const ParallelCorpus& corpus, std::size_t n, std::uint64_t seed) {
  if (n > corpus.size())
    fail("sample: n=" + std::to_string(n) + " exceeds corpus length " +
         std::to_string(corpus.size()));
  const auto indices = sample_indices(corpus.size(), n, seed);
  ParallelCorpus out;
  out.provenance = corpus.provenance;
  for (const auto& [lang, lines] : corpus.sentences) {
    std::vector<std::string> picked;
    picked.reserve(indices.size());
    for (const auto i : indices) picked.push_back(lines[i]);
    out.sentences.emplace_back(lang, std::move(picked));
  }
  return out;
}

}  // namespace slowads
