#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slowads/corpus.hpp"

namespace slowads {

// The 17 core universal part-of-speech tags (X doubles as "unknown").
enum class UPos {
  ADJ, ADP, ADV, AUX, CCONJ, DET, INTJ, NOUN, NUM,
  PART, PRON, PROPN, PUNCT, SCONJ, SYM, VERB, X,
};

constexpr std::array<UPos, 17> kAllUPos = {
    UPos::ADJ,  UPos::ADP,   UPos::ADV,   UPos::AUX,   UPos::CCONJ, UPos::DET,
    UPos::INTJ, UPos::NOUN,  UPos::NUM,   UPos::PART,  UPos::PRON,  UPos::PROPN,
    UPos::PUNCT, UPos::SCONJ, UPos::SYM,  UPos::VERB,  UPos::X,
};

std::string_view to_string(UPos pos);
std::optional<UPos> upos_from_string(std::string_view tag);

// One dictionary entry: a word of the sentence plus its rendering on the
// other side of the pair (the English meaning in canonical dictionaries).
struct DictEntry {
  std::string surface;
  std::string gloss;
  UPos pos = UPos::X;
  std::size_t origin_index = 0;

  bool operator==(const DictEntry&) const = default;
};

// The full dictionary constructed for one sentence of one pair.
struct SentenceDictionary {
  PairCode pair;
  std::size_t sentence_index = 0;
  std::vector<DictEntry> entries;

  bool operator==(const SentenceDictionary&) const = default;
};

// Renders the dictionary-construction prompt: given an English sentence and
// its <language> translation, the model is asked to emit a
// `dictionary: word (meaning) word (meaning) ...` line.
std::string build_dict_prompt(const std::string& english_sentence,
                              const std::string& source_sentence,
                              const std::string& language_name);

// Parses the payload after the last `dictionary:` marker into (surface,
// gloss) units.  Glosses may contain nested parentheses; matching is by
// depth counting.
std::vector<std::pair<std::string, std::string>> parse_dictionary_block(std::string_view text);

// English word -> most frequent tag; keys case-folded.
using PosLexicon = std::unordered_map<std::string, UPos>;

PosLexicon load_pos_lexicon(const std::filesystem::path& path);

// Tags each parsed unit by the first token of its English gloss.  Unknown
// glosses get X, except single capitalized tokens, which get PROPN.
std::vector<DictEntry> tag_entries(const std::vector<std::pair<std::string, std::string>>& units,
                                   const PosLexicon& lexicon);

// Line-delimited JSON store, one sentence dictionary per line.
void store_dictionaries(const std::vector<SentenceDictionary>& dicts,
                        const std::filesystem::path& path);
std::vector<SentenceDictionary> load_dictionaries(const std::filesystem::path& path);

}  // namespace slowads
