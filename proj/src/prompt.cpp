#include "slowads/prompt.hpp"

#include <fstream>

#include "slowads/error.hpp"
#include "slowads/text.hpp"

namespace slowads {

RenderedPrompt build_translation_prompt(const std::string& src_name, const std::string& tgt_name,
                                        const std::string& sentence,
                                        const Selection& selection) {
  if (trim(src_name).empty() || trim(tgt_name).empty())
    fail("translation prompt: empty language display name");
  RenderedPrompt out;
  out.strategy = selection.strategy;
  out.entry_count = selection.entries.size();
  if (selection.entries.empty()) {
    out.text = "Translate the following sentence from " + src_name + " into " + tgt_name + ": " +
               sentence;
    return out;
  }
  std::string dict_block;
  for (const auto& e : selection.entries) {
    if (!dict_block.empty()) dict_block.push_back('\n');
    dict_block += e.surface + " (" + e.gloss + ")";
  }
  out.text = "Translate the following sentence from " + src_name + " to " + tgt_name + ".\n" +
             sentence +
             "\nUse the provided dictionary to clarify or improve the translation of any "
             "misaligned words.\n- Here are some dictionaries that you need to focus on:\n" +
             dict_block +
             "\nNote: Finally, only respond to me with the final " + tgt_name +
             " translation. Your output format is as follows:\n" +
             std::string(kTranslationMarker);
  return out;
}

namespace {

// strips one layer of matching straight or typographic quotes
std::string strip_quotes(const std::string& s) {
  static const std::pair<std::string_view, std::string_view> kPairs[] = {
      {"\"", "\""}, {"'", "'"}, {"“", "”"}, {"‘", "’"}, {"«", "»"},
  };
  for (const auto& [open, close] : kPairs) {
    if (s.size() > open.size() + close.size() && s.starts_with(open) && s.ends_with(close))
      return trim(s.substr(open.size(), s.size() - open.size() - close.size()));
  }
  return s;
}

}  // namespace

ParsedTranslation parse_translation_response(std::string_view response) {
  if (trim(response).empty()) fail("translation parse: empty response");
  const auto pos = response.rfind(kTranslationMarker);
  if (pos == std::string_view::npos) return {trim(response), true};
  const auto after = response.substr(pos + kTranslationMarker.size());
  return {strip_quotes(trim(after)), false};
}

LanguageNames load_language_names(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("language names: cannot open " + path.string());
  LanguageNames names;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      fail("language names: " + path.string() + ": line " + std::to_string(lineno) +
           ": expected code<TAB>name");
    const auto code = trim(line.substr(0, tab));
    const auto name = trim(line.substr(tab + 1));
    if (!LanguageCode::valid(code))
      fail("language names: " + path.string() + ": line " + std::to_string(lineno) +
           ": invalid code '" + code + "'");
    if (name.empty())
      fail("language names: " + path.string() + ": line " + std::to_string(lineno) +
           ": empty display name");
    names[code] = name;
  }
  return names;
}

const std::string& display_name(const LanguageNames& names, const LanguageCode& code) {
  const auto it = names.find(code.code);
  if (it == names.end()) fail("no display name for language " + code.code);
  return it->second;
}

}  // namespace slowads
