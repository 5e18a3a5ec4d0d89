#include "slowads/select.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "slowads/error.hpp"
#include "slowads/rng.hpp"
#include "slowads/text.hpp"

namespace slowads {

SelectionStrategy SelectionStrategy::parse(std::string_view text) {
  SelectionStrategy s;
  if (text == "vanilla") {
    s.kind = StrategyKind::Vanilla;
  } else if (text == "full") {
    s.kind = StrategyKind::Full;
  } else if (text == "slow") {
    s.kind = StrategyKind::Slow;
  } else if (text == "highfreq") {
    s.kind = StrategyKind::HighFreq;
  } else if (text == "differ-rt") {
    s.kind = StrategyKind::DifferRoundTrip;
  } else if (text == "differ-tr") {
    s.kind = StrategyKind::DifferTranslation;
  } else if (text == "random") {
    s.kind = StrategyKind::Random;
  } else if (text.starts_with("pos:")) {
    s.kind = StrategyKind::Pos;
    std::string_view rest = text.substr(4);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto tag = trim(rest.substr(0, comma));
      if (!tag.empty()) {
        const auto pos = upos_from_string(tag);
        if (!pos) fail("invalid UPoS tag '" + tag + "' in strategy '" + std::string(text) + "'");
        s.tagset.insert(*pos);
      }
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (s.tagset.empty()) fail("strategy 'pos:' needs at least one UPoS tag");
  } else {
    fail("unknown strategy '" + std::string(text) + "'");
  }
  return s;
}

std::string SelectionStrategy::name() const {
  switch (kind) {
    case StrategyKind::Vanilla: return "vanilla";
    case StrategyKind::Full: return "full";
    case StrategyKind::Slow: return "slow";
    case StrategyKind::HighFreq: return "highfreq";
    case StrategyKind::DifferRoundTrip: return "differ-rt";
    case StrategyKind::DifferTranslation: return "differ-tr";
    case StrategyKind::Random: return "random";
    case StrategyKind::Pos: {
      std::string out = "pos:";
      bool first = true;
      for (const auto tag : tagset) {
        if (!first) out.push_back(',');
        out += to_string(tag);
        first = false;
      }
      return out;
    }
  }
  return "?";
}

namespace {

// ascending (score, origin_index); flip = descending score for high-freq
std::vector<std::size_t> zipf_order(const SentenceDictionary& dict, const FrequencyTable& table,
                                    std::span<const std::string> english_keys, bool descending) {
  if (!english_keys.empty() && english_keys.size() != dict.entries.size())
    fail("select: english key vector does not match dictionary size");
  std::vector<double> score(dict.entries.size());
  for (std::size_t i = 0; i < dict.entries.size(); ++i) {
    const std::string& key = english_keys.empty() ? dict.entries[i].gloss : english_keys[i];
    score[i] = phrase_zipf(table, key);
  }
  std::vector<std::size_t> order(dict.entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return descending ? score[a] > score[b] : score[a] < score[b];
    return dict.entries[a].origin_index < dict.entries[b].origin_index;
  });
  return order;
}

Selection take_first(const SentenceDictionary& dict, const std::vector<std::size_t>& order,
                     std::size_t v, StrategyKind kind) {
  Selection sel;
  sel.strategy.kind = kind;
  const std::size_t take = std::min(v, dict.entries.size());
  sel.entries.reserve(take);
  for (std::size_t i = 0; i < take; ++i) sel.entries.push_back(dict.entries[order[i]]);
  sel.budget_used = sel.entries.size();
  return sel;
}

std::unordered_set<std::string> token_set(const std::string& sentence) {
  std::unordered_set<std::string> out;
  for (const auto& tok : split_ws(sentence)) {
    auto norm = normalize_token(tok);
    if (!norm.empty()) out.insert(std::move(norm));
  }
  return out;
}

}  // namespace

Selection slow_select(const SentenceDictionary& dict, const FrequencyTable& table, std::size_t v,
                      std::span<const std::string> english_keys) {
  return take_first(dict, zipf_order(dict, table, english_keys, false), v, StrategyKind::Slow);
}

Selection high_freq_select(const SentenceDictionary& dict, const FrequencyTable& table,
                           std::size_t v, std::span<const std::string> english_keys) {
  return take_first(dict, zipf_order(dict, table, english_keys, true), v, StrategyKind::HighFreq);
}

Selection pos_select(const SentenceDictionary& dict, const std::set<UPos>& tagset, std::size_t v,
                     std::uint64_t seed) {
  if (tagset.empty()) fail("pos_select: empty tagset");
  std::vector<DictEntry> filtered;
  for (const auto& e : dict.entries)
    if (tagset.count(e.pos)) filtered.push_back(e);
  Selection sel = align_budget(filtered, dict, v, seed);
  sel.strategy.kind = StrategyKind::Pos;
  sel.strategy.tagset = tagset;
  sel.strategy.seed = seed;
  return sel;
}

Selection differ_roundtrip_select(const std::string& source_sentence,
                                  const std::string& roundtrip_sentence,
                                  const SentenceDictionary& dict) {
  const auto src = token_set(source_sentence);
  const auto rt = token_set(roundtrip_sentence);
  Selection sel;
  sel.strategy.kind = StrategyKind::DifferRoundTrip;
  for (const auto& e : dict.entries) {
    const auto key = normalize_token(e.surface);
    if (!key.empty() && src.count(key) && !rt.count(key)) sel.entries.push_back(e);
  }
  sel.budget_used = sel.entries.size();
  return sel;
}

Selection differ_translation_select(const std::string& model_translation,
                                    const std::string& reference_target,
                                    const SentenceDictionary& dict) {
  const auto ref = token_set(reference_target);
  const auto hyp = token_set(model_translation);
  Selection sel;
  sel.strategy.kind = StrategyKind::DifferTranslation;
  for (const auto& e : dict.entries) {
    const auto key = normalize_token(e.gloss);
    if (!key.empty() && ref.count(key) && !hyp.count(key)) sel.entries.push_back(e);
  }
  sel.budget_used = sel.entries.size();
  return sel;
}

Selection align_budget(const std::vector<DictEntry>& selected, const SentenceDictionary& dict,
                       std::size_t v, std::uint64_t seed) {
  Selection sel;
  std::vector<DictEntry> out = selected;
  Rng rng(seed);
  if (out.size() > v) {
    std::vector<std::size_t> keep(out.size());
    std::iota(keep.begin(), keep.end(), 0);
    rng.shuffle(keep);
    keep.resize(v);
    std::sort(keep.begin(), keep.end());
    std::vector<DictEntry> dropped;
    dropped.reserve(v);
    for (const auto i : keep) dropped.push_back(out[i]);
    out = std::move(dropped);
  } else if (out.size() < v) {
    std::unordered_set<std::size_t> have;
    for (const auto& e : out) have.insert(e.origin_index);
    std::vector<DictEntry> pool;
    for (const auto& e : dict.entries)
      if (!have.count(e.origin_index)) pool.push_back(e);
    rng.shuffle(pool);
    const std::size_t need = std::min(v, dict.entries.size()) - out.size();
    for (std::size_t i = 0; i < need; ++i) out.push_back(pool[i]);
  }
  std::sort(out.begin(), out.end(), [](const DictEntry& a, const DictEntry& b) {
    return a.origin_index < b.origin_index;
  });
  sel.entries = std::move(out);
  sel.budget_used = sel.entries.size();
  return sel;
}

Selection full_select(const SentenceDictionary& dict) {
  Selection sel;
  sel.strategy.kind = StrategyKind::Full;
  sel.entries = dict.entries;
  sel.budget_used = sel.entries.size();
  return sel;
}

Selection random_select(const SentenceDictionary& dict, std::size_t v, std::uint64_t seed) {
  Selection sel = align_budget({}, dict, v, seed);
  sel.strategy.kind = StrategyKind::Random;
  sel.strategy.seed = seed;
  return sel;
}

std::map<UPos, PosStat> compute_pos_stats(std::span<const Selection> selections,
                                          std::span<const SentenceDictionary> dicts) {
  std::map<UPos, std::size_t> selected_by_tag, total_by_tag;
  std::size_t selected_total = 0;
  for (const auto& sel : selections)
    for (const auto& e : sel.entries) {
      ++selected_by_tag[e.pos];
      ++selected_total;
    }
  for (const auto& d : dicts)
    for (const auto& e : d.entries) ++total_by_tag[e.pos];

  std::map<UPos, PosStat> out;
  for (const auto tag : kAllUPos) {
    PosStat st;
    const auto sel = selected_by_tag.count(tag) ? selected_by_tag.at(tag) : 0;
    const auto tot = total_by_tag.count(tag) ? total_by_tag.at(tag) : 0;
    if (selected_total > 0)
      st.percentage = 100.0 * static_cast<double>(sel) / static_cast<double>(selected_total);
    if (tot > 0) st.coverage = 100.0 * static_cast<double>(sel) / static_cast<double>(tot);
    out[tag] = st;
  }
  return out;
}

}  // namespace slowads
