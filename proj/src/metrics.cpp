#include "slowads/metrics.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <unordered_map>

#include "slowads/error.hpp"
#include "slowads/text.hpp"

namespace slowads {

namespace {

// Log of a zero precision; large negative so exp() underflows to 0, matching
// the reference scorer's my_log().
constexpr double kLogZero = -9999999999.0;

const std::regex& re_punct() {
  // all ASCII punctuation except ' , - . plus the space character
  static const std::regex re(R"(([\{-\~\[-\` -\&\(-\+\:-\@/]))");
  return re;
}
const std::regex& re_period_pre() {
  static const std::regex re(R"(([^0-9])([\.,]))");
  return re;
}
const std::regex& re_period_post() {
  static const std::regex re(R"(([\.,])([^0-9]))");
  return re;
}
const std::regex& re_digit_dash() {
  static const std::regex re(R"(([0-9])(-))");
  return re;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

}  // namespace

std::vector<std::string> tokenize_13a(std::string_view text) {
  std::string line(text);
  replace_all(line, "<skipped>", "");
  replace_all(line, "-\n", "");
  replace_all(line, "\n", " ");
  if (line.find('&') != std::string::npos) {
    replace_all(line, "&quot;", "\"");
    replace_all(line, "&amp;", "&");
    replace_all(line, "&lt;", "<");
    replace_all(line, "&gt;", ">");
  }
  line = " " + line + " ";
  line = std::regex_replace(line, re_punct(), " $1 ");
  line = std::regex_replace(line, re_period_pre(), "$1 $2 ");
  line = std::regex_replace(line, re_period_post(), " $1 $2");
  line = std::regex_replace(line, re_digit_dash(), "$1 $2 ");
  return split_ws(line);
}

// ---------------------------------------------------------------------------
// BLEU
// ---------------------------------------------------------------------------

namespace {

struct BleuStats {
  std::array<long long, 4> correct{};
  std::array<long long, 4> total{};
  long long hyp_len = 0;
  long long ref_len = 0;

  BleuStats& operator+=(const BleuStats& o) {
    for (int n = 0; n < 4; ++n) {
      correct[n] += o.correct[n];
      total[n] += o.total[n];
    }
    hyp_len += o.hyp_len;
    ref_len += o.ref_len;
    return *this;
  }
};

using NgramCounts = std::unordered_map<std::string, long long>;

// n-gram key: tokens joined with 0x1f (a whitespace byte, so never inside a token)
NgramCounts word_ngrams(const std::vector<std::string>& toks, int n) {
  NgramCounts counts;
  if (static_cast<int>(toks.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    std::string key = toks[i];
    for (int k = 1; k < n; ++k) {
      key.push_back('\x1f');
      key.append(toks[i + k]);
    }
    ++counts[key];
  }
  return counts;
}

BleuStats bleu_segment_stats(const std::string& hyp, const std::string& ref) {
  BleuStats st;
  const auto h = tokenize_13a(hyp);
  const auto r = tokenize_13a(ref);
  st.hyp_len = static_cast<long long>(h.size());
  st.ref_len = static_cast<long long>(r.size());
  for (int n = 1; n <= 4; ++n) {
    const auto hc = word_ngrams(h, n);
    const auto rc = word_ngrams(r, n);
    st.total[n - 1] = std::max<long long>(static_cast<long long>(h.size()) - n + 1, 0);
    long long matched = 0;
    for (const auto& [gram, count] : hc) {
      const auto it = rc.find(gram);
      if (it != rc.end()) matched += std::min(count, it->second);
    }
    st.correct[n - 1] = matched;
  }
  return st;
}

BleuScore bleu_from_stats(const BleuStats& st) {
  BleuScore out;
  out.hyp_len = static_cast<std::size_t>(st.hyp_len);
  out.ref_len = static_cast<std::size_t>(st.ref_len);
  if (st.hyp_len < st.ref_len) {
    out.brevity_penalty =
        st.hyp_len > 0 ? std::exp(1.0 - static_cast<double>(st.ref_len) / st.hyp_len) : 0.0;
  } else {
    out.brevity_penalty = 1.0;
  }

  bool any_correct = false;
  for (int n = 0; n < 4; ++n) any_correct |= st.correct[n] > 0;
  if (!any_correct) {
    out.score = 0.0;
    return out;
  }

  std::array<double, 4> frac{};
  double smooth = 1.0;
  for (int n = 0; n < 4; ++n) {
    if (st.total[n] == 0) break;
    if (st.correct[n] == 0) {
      smooth *= 2.0;
      frac[n] = 1.0 / (smooth * static_cast<double>(st.total[n]));
    } else {
      frac[n] = static_cast<double>(st.correct[n]) / static_cast<double>(st.total[n]);
    }
    out.precisions[n] = 100.0 * frac[n];
  }

  double log_sum = 0.0;
  for (int n = 0; n < 4; ++n) log_sum += frac[n] > 0.0 ? std::log(frac[n]) : kLogZero;
  out.score = out.brevity_penalty * 100.0 * std::exp(log_sum / 4.0);
  return out;
}

void check_corpus(std::span<const std::string> hyps, std::span<const std::string> refs,
                  const char* what) {
  if (hyps.size() != refs.size())
    fail(std::string(what) + ": hypothesis/reference length mismatch (" +
         std::to_string(hyps.size()) + " vs " + std::to_string(refs.size()) + ")");
  if (hyps.empty()) fail(std::string(what) + ": empty corpus");
}

}  // namespace

BleuScore bleu_corpus_serial(std::span<const std::string> hyps, std::span<const std::string> refs) {
  check_corpus(hyps, refs, "bleu");
  BleuStats acc;
  for (std::size_t i = 0; i < hyps.size(); ++i) acc += bleu_segment_stats(hyps[i], refs[i]);
  return bleu_from_stats(acc);
}

BleuScore bleu_corpus(std::span<const std::string> hyps, std::span<const std::string> refs) {
  check_corpus(hyps, refs, "bleu");
  BleuStats acc;
  const auto count = static_cast<std::ptrdiff_t>(hyps.size());
#pragma omp parallel
  {
    BleuStats local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < count; ++i) local += bleu_segment_stats(hyps[i], refs[i]);
#pragma omp critical(slowads_bleu_reduce)
    acc += local;
  }
  return bleu_from_stats(acc);
}

// ---------------------------------------------------------------------------
// chrF
// ---------------------------------------------------------------------------

namespace {

constexpr int kChrfOrder = 6;
constexpr double kChrfBeta = 2.0;

struct ChrfStats {
  // per order: hypothesis n-grams, reference n-grams, matched n-grams
  std::array<long long, 3 * kChrfOrder> v{};

  ChrfStats& operator+=(const ChrfStats& o) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
  }
};

using CharNgramCounts = std::unordered_map<std::u32string, long long>;

std::u32string strip_spaces(const std::string& s) {
  std::u32string out;
  for (const char32_t cp : utf8_codepoints(s))
    if (!is_space_cp(cp)) out.push_back(cp);
  return out;
}

ChrfStats chrf_segment_stats(const std::string& hyp, const std::string& ref) {
  ChrfStats st;
  const std::u32string h = strip_spaces(hyp);
  const std::u32string r = strip_spaces(ref);
  for (int n = 1; n <= kChrfOrder; ++n) {
    CharNgramCounts hc, rc;
    for (std::size_t i = 0; i + n <= h.size(); ++i) ++hc[h.substr(i, n)];
    for (std::size_t i = 0; i + n <= r.size(); ++i) ++rc[r.substr(i, n)];
    long long n_hyp = 0, matched = 0;
    for (const auto& [gram, count] : hc) {
      n_hyp += count;
      const auto it = rc.find(gram);
      if (it != rc.end()) matched += std::min(count, it->second);
    }
    long long n_ref = 0;
    for (const auto& [gram, count] : rc) n_ref += count;
    const int base = 3 * (n - 1);
    st.v[base] = n_hyp;
    st.v[base + 1] = n_ref;
    st.v[base + 2] = matched;
  }
  return st;
}

ChrfScore chrf_from_stats(const ChrfStats& st) {
  const double factor = kChrfBeta * kChrfBeta;
  double score = 0.0;
  int effective_order = 0;
  for (int n = 0; n < kChrfOrder; ++n) {
    const auto n_hyp = st.v[3 * n];
    const auto n_ref = st.v[3 * n + 1];
    const auto n_match = st.v[3 * n + 2];
    if (n_hyp > 0 && n_ref > 0) {
      const double prec = static_cast<double>(n_match) / static_cast<double>(n_hyp);
      const double rec = static_cast<double>(n_match) / static_cast<double>(n_ref);
      const double denom = factor * prec + rec;
      if (denom > 0.0) score += (1.0 + factor) * prec * rec / denom;
      ++effective_order;
    }
  }
  ChrfScore out;
  out.char_order = kChrfOrder;
  out.beta = kChrfBeta;
  out.score = effective_order > 0 ? 100.0 * score / effective_order : 0.0;
  return out;
}

}  // namespace

ChrfScore chrf_corpus_serial(std::span<const std::string> hyps, std::span<const std::string> refs) {
  check_corpus(hyps, refs, "chrf");
  ChrfStats acc;
  for (std::size_t i = 0; i < hyps.size(); ++i) acc += chrf_segment_stats(hyps[i], refs[i]);
  return chrf_from_stats(acc);
}

ChrfScore chrf_corpus(std::span<const std::string> hyps, std::span<const std::string> refs) {
  check_corpus(hyps, refs, "chrf");
  ChrfStats acc;
  const auto count = static_cast<std::ptrdiff_t>(hyps.size());
#pragma omp parallel
  {
    ChrfStats local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < count; ++i) local += chrf_segment_stats(hyps[i], refs[i]);
#pragma omp critical(slowads_chrf_reduce)
    acc += local;
  }
  return chrf_from_stats(acc);
}

// ---------------------------------------------------------------------------
// segment score ingestion
// ---------------------------------------------------------------------------

double SegmentScores::mean() const {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (const double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

SegmentScores ingest_segment_scores(const std::filesystem::path& path, std::size_t expected_len) {
  std::ifstream in(path);
  if (!in) fail("segment scores: cannot open " + path.string());
  SegmentScores out;
  out.provenance = path.string();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() && in.peek() == EOF) break;  // tolerate one trailing newline
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
      fail("segment scores: " + path.string() + ": line " + std::to_string(lineno) +
           ": not a number: '" + t + "'");
    out.values.push_back(v);
  }
  if (out.values.size() != expected_len)
    fail("segment scores: " + path.string() + ": got " + std::to_string(out.values.size()) +
         " values, expected " + std::to_string(expected_len));
  return out;
}

}  // namespace slowads
