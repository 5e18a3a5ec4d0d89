#include "slowads/lexicon.hpp"

#include <fstream>

#include <json.hpp>

#include "slowads/error.hpp"
#include "slowads/text.hpp"

namespace slowads {

namespace {

constexpr std::string_view kUPosNames[] = {
    "ADJ",  "ADP",   "ADV",   "AUX", "CCONJ", "DET",  "INTJ", "NOUN", "NUM",
    "PART", "PRON",  "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
};

}  // namespace

std::string_view to_string(UPos pos) { return kUPosNames[static_cast<int>(pos)]; }

std::optional<UPos> upos_from_string(std::string_view tag) {
  for (std::size_t i = 0; i < std::size(kUPosNames); ++i)
    if (kUPosNames[i] == tag) return static_cast<UPos>(i);
  return std::nullopt;
}

std::string build_dict_prompt(const std::string& english_sentence,
                              const std::string& source_sentence,
                              const std::string& language_name) {
  if (trim(english_sentence).empty()) fail("dict prompt: empty English sentence");
  if (trim(source_sentence).empty()) fail("dict prompt: empty source sentence");
  if (trim(language_name).empty()) fail("dict prompt: empty language name");
  std::string text;
  text += "(1) Please provide the translation of the given English sentence into " +
          language_name + ", along with a word-for-word dictionary for each word.\n";
  text += "(2) The output format must be strictly followed:\n";
  text += "1. Start with `English:' followed by the English sentence.\n";
  text += "2. On the next line, start with `" + language_name + ":' followed by the " +
          source_sentence + " translation.\n";
  text += "3. On the next line, start with `dictionary:' followed by each word in the " +
          language_name +
          " sentence, annotated with its English meaning in parentheses, separated by spaces.\n";
  text += "(3) Now generate translations for the following sentence:\n";
  text += "English: " + english_sentence + "\n";
  text += language_name + ": " + source_sentence + "\n";
  text += "dictionary:";
  return text;
}

std::vector<std::pair<std::string, std::string>> parse_dictionary_block(std::string_view text) {
  // the payload follows the last line that starts with "dictionary:"
  constexpr std::string_view kMarker = "dictionary:";
  std::size_t payload_start = std::string_view::npos;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    const auto line_end = text.find('\n', line_start);
    const auto len = (line_end == std::string_view::npos ? text.size() : line_end) - line_start;
    std::string_view line = text.substr(line_start, len);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.starts_with(kMarker))
      payload_start = line.data() - text.data() + kMarker.size();
    if (line_end == std::string_view::npos) break;
    line_start = line_end + 1;
  }
  if (payload_start == std::string_view::npos)
    fail("dictionary parse: no 'dictionary:' line in response");

  const std::string_view payload = text.substr(payload_start);
  std::vector<std::pair<std::string, std::string>> units;
  std::string pending;  // surface text accumulated since the last unit
  for (std::size_t i = 0; i < payload.size(); ++i) {
    const char c = payload[i];
    if (c == '(') {
      const std::string surface = trim(pending);
      if (surface.empty())
        fail("dictionary parse: missing surface before '(' at offset " +
             std::to_string(payload_start + i));
      int depth = 1;
      const std::size_t gloss_begin = i + 1;
      std::size_t j = gloss_begin;
      for (; j < payload.size() && depth > 0; ++j) {
        if (payload[j] == '(') ++depth;
        if (payload[j] == ')') --depth;
      }
      if (depth != 0)
        fail("dictionary parse: unbalanced '(' at offset " + std::to_string(payload_start + i));
      const std::string gloss = trim(payload.substr(gloss_begin, j - 1 - gloss_begin));
      if (gloss.empty())
        fail("dictionary parse: empty gloss at offset " + std::to_string(payload_start + i));
      units.emplace_back(surface, gloss);
      pending.clear();
      i = j - 1;
    } else if (c == ')') {
      fail("dictionary parse: unbalanced ')' at offset " + std::to_string(payload_start + i));
    } else {
      pending.push_back(c);
    }
  }
  if (units.empty()) fail("dictionary parse: no `surface (gloss)` units found");
  return units;
}

PosLexicon load_pos_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("pos lexicon: cannot open " + path.string());
  PosLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      fail("pos lexicon: " + path.string() + ": line " + std::to_string(lineno) +
           ": expected word<TAB>TAG");
    const std::string word = casefold(trim(line.substr(0, tab)));
    const std::string tag = trim(line.substr(tab + 1));
    const auto pos = upos_from_string(tag);
    if (!pos)
      fail("pos lexicon: " + path.string() + ": line " + std::to_string(lineno) +
           ": unknown tag '" + tag + "'");
    lex[word] = *pos;
  }
  return lex;
}

namespace {

bool starts_uppercase(std::string_view token) {
  const Utf8Char c = utf8_first(token);
  if (c.cp >= 'A' && c.cp <= 'Z') return true;
  // capitalized per the same fold table used everywhere else
  return c.cp >= 0x80 && casefold(std::string(token.substr(0, c.bytes))) !=
                             std::string(token.substr(0, c.bytes));
}

}  // namespace

std::vector<DictEntry> tag_entries(const std::vector<std::pair<std::string, std::string>>& units,
                                   const PosLexicon& lexicon) {
  std::vector<DictEntry> entries;
  entries.reserve(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    const auto& [surface, gloss] = units[i];
    const auto tokens = split_ws(gloss);
    UPos pos = UPos::X;
    if (!tokens.empty()) {
      const auto it = lexicon.find(casefold(tokens.front()));
      if (it != lexicon.end()) {
        pos = it->second;
      } else if (tokens.size() == 1 && starts_uppercase(tokens.front())) {
        pos = UPos::PROPN;
      }
    }
    entries.push_back(DictEntry{surface, gloss, pos, i});
  }
  return entries;
}

// ---------------------------------------------------------------------------
// store
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json entry_to_json(const DictEntry& e) {
  return json{{"surface", e.surface},
              {"gloss", e.gloss},
              {"pos", std::string(to_string(e.pos))},
              {"origin_index", e.origin_index}};
}

json dict_to_json(const SentenceDictionary& d) {
  json entries = json::array();
  for (const auto& e : d.entries) entries.push_back(entry_to_json(e));
  return json{{"pair", {{"src", d.pair.src.code}, {"tgt", d.pair.tgt.code}}},
              {"sentence_index", d.sentence_index},
              {"entries", entries}};
}

SentenceDictionary dict_from_json(const json& j) {
  SentenceDictionary d;
  d.pair.src = LanguageCode::parse(j.at("pair").at("src").get<std::string>());
  d.pair.tgt = LanguageCode::parse(j.at("pair").at("tgt").get<std::string>());
  d.sentence_index = j.at("sentence_index").get<std::size_t>();
  for (const auto& je : j.at("entries")) {
    DictEntry e;
    e.surface = je.at("surface").get<std::string>();
    e.gloss = je.at("gloss").get<std::string>();
    const auto pos = upos_from_string(je.at("pos").get<std::string>());
    if (!pos) throw Error("unknown pos tag " + je.at("pos").get<std::string>());
    e.pos = *pos;
    e.origin_index = je.at("origin_index").get<std::size_t>();
    d.entries.push_back(std::move(e));
  }
  return d;
}

}  // namespace

void store_dictionaries(const std::vector<SentenceDictionary>& dicts,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail("dictionary store: cannot write " + path.string());
  for (const auto& d : dicts) out << dict_to_json(d).dump() << '\n';
  if (!out) fail("dictionary store: write failed for " + path.string());
}

std::vector<SentenceDictionary> load_dictionaries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("dictionary store: cannot open " + path.string());
  std::vector<SentenceDictionary> dicts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      dicts.push_back(dict_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      fail("dictionary store: " + path.string() + ": line " + std::to_string(lineno) + ": " +
           e.what());
    }
  }
  return dicts;
}

}  // namespace slowads
