#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slowads {

// Corpus scorers compatible with the sacreBLEU defaults: BLEU over
// mteval-v13a tokens with exponential smoothing of zero n-gram precisions,
// and chrF with character order 6 / beta 2 over whitespace-stripped text.
//
// The default entry points parallelize the per-segment statistics with
// OpenMP; the *_serial variants are the reference implementations the tests
// compare against.  Both accumulate exact integer statistics, so their
// results are bit-identical.

struct BleuScore {
  double score = 0.0;                      // [0, 100]
  std::array<double, 4> precisions{};      // percent, orders 1..4
  double brevity_penalty = 1.0;
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
};

struct ChrfScore {
  double score = 0.0;  // [0, 100]
  int char_order = 6;
  double beta = 2.0;
};

// Per-segment scores produced by an external scorer (e.g. COMET), one real
// per line, aligned with the sampled corpus.
struct SegmentScores {
  std::vector<double> values;
  std::string provenance;
  double mean() const;
};

// mteval-v13a tokenization: HTML entity unescaping, punctuation splitting
// with digit-adjacent period/comma/dash exceptions, whitespace collapse.
std::vector<std::string> tokenize_13a(std::string_view text);

BleuScore bleu_corpus(std::span<const std::string> hyps, std::span<const std::string> refs);
BleuScore bleu_corpus_serial(std::span<const std::string> hyps, std::span<const std::string> refs);

ChrfScore chrf_corpus(std::span<const std::string> hyps, std::span<const std::string> refs);
ChrfScore chrf_corpus_serial(std::span<const std::string> hyps, std::span<const std::string> refs);

SegmentScores ingest_segment_scores(const std::filesystem::path& path, std::size_t expected_len);

}  // namespace slowads
