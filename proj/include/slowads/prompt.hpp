#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "slowads/select.hpp"

namespace slowads {

inline constexpr std::string_view kTranslationMarker = "The refined translation is:";

struct RenderedPrompt {
  std::string text;
  PairCode pair;
  std::size_t sentence_index = 0;
  SelectionStrategy strategy;
  std::size_t entry_count = 0;
};

// Dictionary-assisted translation prompt; with an empty selection this falls
// back to the plain `Translate the following sentence from X into Y: ...`
// instruction, so a degenerate selection and the vanilla arm render
// identical bytes.
RenderedPrompt build_translation_prompt(const std::string& src_name, const std::string& tgt_name,
                                        const std::string& sentence, const Selection& selection);

struct ParsedTranslation {
  std::string text;
  bool unmarked = false;  // set when the response had no marker line
};

// Content after the last "The refined translation is:" marker, trimmed and
// with one layer of surrounding quotes stripped; without a marker the whole
// trimmed response is returned with the unmarked flag set.
ParsedTranslation parse_translation_response(std::string_view response);

// code -> display name table (TSV `code<TAB>name`).
using LanguageNames = std::map<std::string, std::string>;

LanguageNames load_language_names(const std::filesystem::path& path);
const std::string& display_name(const LanguageNames& names, const LanguageCode& code);

}  // namespace slowads
