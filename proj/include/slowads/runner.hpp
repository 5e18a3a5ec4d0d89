#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slowads/corpus.hpp"
#include "slowads/llm.hpp"
#include "slowads/prompt.hpp"
#include "slowads/select.hpp"

namespace slowads {

enum class Direction { EX, XE, XX };

std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view s);

struct ExperimentPaths {
  std::filesystem::path corpus_dir;
  std::filesystem::path dicts;
  std::filesystem::path freq_table;
  std::filesystem::path pos_lexicon;  // optional
  std::filesystem::path lang_names;
  std::filesystem::path cache_dir;
  std::filesystem::path out_dir;
  std::filesystem::path comet_dir;  // optional; <src>-<tgt>.<strategy>.comet files
};

struct ExperimentConfig {
  Direction direction = Direction::XE;
  std::vector<PairCode> pairs;
  std::vector<SelectionStrategy> strategies;
  std::size_t sample_n = 0;  // 0 = use the whole corpus
  std::uint64_t seed = 0;
  Budget::Source budget_source = Budget::Source::Measured;
  std::size_t fixed_v = 0;
  double default_zipf = 0.0;
  LlmConfig llm;
  std::string backend = "mock";  // mock | http
  std::filesystem::path mock_rules;  // optional rule file for the mock backend
  std::string mock_preset = "echo-after-marker";
  ExperimentPaths paths;
  std::string stats_baseline = "differ-rt";
  std::string stats_candidate = "slow";
  std::vector<double> thresholds = {5, 10, 20};

  // Flat `key = value` file; see README for the schema.
  static ExperimentConfig load(const std::filesystem::path& path);
};

std::unique_ptr<Backend> make_backend(const ExperimentConfig& config);

struct TranslationRecord {
  PairCode pair;
  std::string strategy;
  std::size_t sentence_index = 0;  // index in the unsampled corpus
  std::size_t v = 0;
  std::string prompt_hash;
  std::string translation;
  bool unmarked = false;
  bool failed = false;
  std::string error;
};

struct ReportRow {
  PairCode pair;
  std::string strategy;
  double bleu = 0.0;
  double chrf = 0.0;
  std::optional<double> comet;
  double mean_v = 0.0;
  double full_dict_size = 0.0;
};

struct PosStatRow {
  PairCode pair;
  std::string strategy;
  UPos tag = UPos::X;
  double percentage = 0.0;
  double coverage = 0.0;
};

struct ImprovementStats {
  std::string metric;
  std::string baseline;
  std::string candidate;
  std::size_t pairs = 0;
  std::size_t improved = 0;
  std::size_t degraded = 0;
  std::size_t ties = 0;
  std::vector<double> thresholds;
  std::vector<std::size_t> improved_gt;  // |delta| > threshold among improved
  std::vector<std::size_t> degraded_gt;  // |delta| > threshold among degraded
};

struct ExperimentResult {
  std::vector<TranslationRecord> records;
  std::vector<ReportRow> report;
  std::vector<PosStatRow> pos_stats;
  std::vector<std::string> invalid_pairs;  // >= 5% of sentences failed
};

// Builds canonical (x -> English-gloss) dictionaries for the non-English
// side(s) of a pair by prompting the backend; skips sentences whose response
// does not parse and reports them in `failures`.
std::vector<SentenceDictionary> build_dictionaries(const ExperimentConfig& config,
                                                   const PairCode& pair, Backend& backend,
                                                   std::vector<std::string>* failures = nullptr);

// The full pipeline: per pair, a vanilla forward and back pass measure the
// per-sentence budget, every strategy selects under it, prompts are sent
// through the cached client, and corpus metrics are computed per strategy.
ExperimentResult run_experiment(const ExperimentConfig& config, Backend& backend);

ImprovementStats improvement_stats(std::span<const ReportRow> report, const std::string& baseline,
                                   const std::string& candidate,
                                   std::span<const double> thresholds, const std::string& metric);

// sum(mean_v) / sum(full_dict_size) over the given rows.
double budget_ratio(std::span<const ReportRow> report);

// report.tsv, records.jsonl, stats.tsv, pos_stats.tsv under out_dir;
// byte-stable for identical inputs.
void export_report(const ExperimentResult& result, std::span<const ImprovementStats> stats,
                   const std::filesystem::path& out_dir);

std::vector<ReportRow> read_report(const std::filesystem::path& report_tsv);

std::string format_stats_tsv(std::span<const ImprovementStats> stats,
                             std::span<const ReportRow> report);

}  // namespace slowads
