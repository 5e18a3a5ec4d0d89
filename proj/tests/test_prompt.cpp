#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "slowads/error.hpp"
#include "slowads/prompt.hpp"

using namespace slowads;

namespace {

Selection selection_of(std::initializer_list<std::pair<const char*, const char*>> entries) {
  Selection sel;
  sel.strategy.kind = StrategyKind::Slow;
  std::size_t i = 0;
  for (const auto& [s, g] : entries) sel.entries.push_back(DictEntry{s, g, UPos::X, i++});
  sel.budget_used = sel.entries.size();
  return sel;
}

}  // namespace

TEST_CASE("dictionary prompt renders the template") {
  const auto sel = selection_of({{"Kucing", "cat"}, {"duduk", "sat down"}, {"itu", "that"}});
  const auto p =
      build_translation_prompt("Standard Malay", "English", "Kucing itu duduk.", sel);
  CHECK(p.text.find("The refined translation is:") != std::string::npos);
  CHECK(p.text.find("Kucing (cat)\nduduk (sat down)\nitu (that)") != std::string::npos);
  CHECK(p.text.find("from Standard Malay to English.") != std::string::npos);
  CHECK(p.text.find("Kucing itu duduk.") != std::string::npos);
  CHECK(p.entry_count == 3);

  // exactly three dictionary lines
  const auto anchor = p.text.find("focus on:\n");
  const auto note = p.text.find("\nNote:");
  REQUIRE(anchor != std::string::npos);
  REQUIRE(note != std::string::npos);
  const auto block = p.text.substr(anchor + 10, note - anchor - 10);
  CHECK(std::count(block.begin(), block.end(), '\n') == 2);
}

TEST_CASE("vanilla prompt has no dictionary") {
  Selection empty;
  const auto p = build_translation_prompt("English", "Standard Malay", "The cat sat.", empty);
  CHECK(p.text == "Translate the following sentence from English into Standard Malay: The cat sat.");
  CHECK(p.text.find("dictionar") == std::string::npos);
  CHECK(p.entry_count == 0);

  // any strategy with a degenerate empty selection renders identical bytes
  Selection degenerate;
  degenerate.strategy.kind = StrategyKind::Slow;
  const auto q = build_translation_prompt("English", "Standard Malay", "The cat sat.", degenerate);
  CHECK(q.text == p.text);

  CHECK_THROWS_AS(build_translation_prompt("", "X", "s", empty), Error);
}

TEST_CASE("rendering is deterministic") {
  const auto sel = selection_of({{"a", "b"}});
  const auto p1 = build_translation_prompt("A", "B", "s", sel);
  const auto p2 = build_translation_prompt("A", "B", "s", sel);
  CHECK(p1.text == p2.text);
}

TEST_CASE("parse_translation_response") {
  CHECK(parse_translation_response("The refined translation is: Kucing itu duduk.").text ==
        "Kucing itu duduk.");
  CHECK_FALSE(parse_translation_response("The refined translation is: x").unmarked);

  SUBCASE("newline and quote stripping") {
    const auto p = parse_translation_response("Sure!\nThe refined translation is:\n\"X\"");
    CHECK(p.text == "X");
    CHECK_FALSE(p.unmarked);
  }
  SUBCASE("typographic quotes") {
    CHECK(parse_translation_response("The refined translation is: “X y”").text == "X y");
  }
  SUBCASE("last marker wins") {
    const auto p = parse_translation_response(
        "The refined translation is: draft\nThe refined translation is: final");
    CHECK(p.text == "final");
  }
  SUBCASE("missing marker falls back with flag") {
    const auto p = parse_translation_response("Kucing itu duduk.");
    CHECK(p.text == "Kucing itu duduk.");
    CHECK(p.unmarked);
  }
  SUBCASE("empty response is an error") {
    CHECK_THROWS_AS(parse_translation_response(""), Error);
    CHECK_THROWS_AS(parse_translation_response("  \n "), Error);
  }
}

TEST_CASE("language names table") {
  const std::string path = "names_test.tsv";
  {
    std::ofstream out(path);
    out << "# code\tname\nzsm_Latn\tStandard Malay\neng_Latn\tEnglish\n";
  }
  const auto names = load_language_names(path);
  CHECK(display_name(names, LanguageCode::parse("zsm_Latn")) == "Standard Malay");
  CHECK_THROWS_WITH_AS(display_name(names, LanguageCode::parse("xho_Latn")),
                       doctest::Contains("xho_Latn"), Error);
  {
    std::ofstream out(path);
    out << "not_a_code!\tOops\n";
  }
  CHECK_THROWS_AS(load_language_names(path), Error);
  std::remove(path.c_str());
}
