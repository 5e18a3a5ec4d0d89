#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slowads/freq.hpp"
#include "slowads/lexicon.hpp"

namespace slowads {

enum class StrategyKind {
  Vanilla,            // no dictionary
  Full,               // every entry, sentence order
  Slow,               // lowest English zipf first
  HighFreq,           // highest English zipf first
  Pos,                // entries whose tag is in the tagset, padded/dropped to v
  DifferRoundTrip,    // surface words lost in a vanilla round-trip
  DifferTranslation,  // gloss words present in the reference but not the output
  Random,             // seeded uniform v-subset (extra baseline, floor)
};

struct SelectionStrategy {
  StrategyKind kind = StrategyKind::Vanilla;
  std::set<UPos> tagset;   // Pos only; non-empty subset of the 17 tags
  std::uint64_t seed = 0;  // Random and pad/drop alignment

  // "vanilla" | "full" | "slow" | "highfreq" | "pos:NOUN,ADJ" | "differ-rt" |
  // "differ-tr" | "random"
  static SelectionStrategy parse(std::string_view text);
  std::string name() const;

  bool operator==(const SelectionStrategy&) const = default;
};

struct Budget {
  enum class Source { Measured, Fixed };
  std::size_t v = 0;
  Source source = Source::Measured;
};

struct Selection {
  std::vector<DictEntry> entries;
  SelectionStrategy strategy;
  std::size_t budget_used = 0;
};

// Frequency scoring uses the English side of each entry: the gloss by
// default, or the aligned `english_keys` when the caller reoriented the
// dictionary (from-English runs key on the surface, pivot-joined pairs carry
// the keys out of band).
Selection slow_select(const SentenceDictionary& dict, const FrequencyTable& table, std::size_t v,
                      std::span<const std::string> english_keys = {});
Selection high_freq_select(const SentenceDictionary& dict, const FrequencyTable& table,
                           std::size_t v, std::span<const std::string> english_keys = {});

Selection pos_select(const SentenceDictionary& dict, const std::set<UPos>& tagset, std::size_t v,
                     std::uint64_t seed);

// Entries whose normalized surface occurs in the source sentence but not in
// the round-trip; budget_used is the measured per-sentence V.
Selection differ_roundtrip_select(const std::string& source_sentence,
                                  const std::string& roundtrip_sentence,
                                  const SentenceDictionary& dict);

// Entries whose normalized gloss occurs in the reference but not in the
// model translation (oracle baseline).
Selection differ_translation_select(const std::string& model_translation,
                                    const std::string& reference_target,
                                    const SentenceDictionary& dict);

// Seeded uniform drop to v / pad from the unselected remainder up to
// min(v, |dict|); the result is in sentence (origin) order.
Selection align_budget(const std::vector<DictEntry>& selected, const SentenceDictionary& dict,
                       std::size_t v, std::uint64_t seed);

Selection full_select(const SentenceDictionary& dict);
Selection random_select(const SentenceDictionary& dict, std::size_t v, std::uint64_t seed);

struct PosStat {
  double percentage = 0.0;  // share of this tag among all selected entries
  double coverage = 0.0;    // selected entries with this tag / total with this tag
};

std::map<UPos, PosStat> compute_pos_stats(std::span<const Selection> selections,
                                          std::span<const SentenceDictionary> dicts);

}  // namespace slowads
