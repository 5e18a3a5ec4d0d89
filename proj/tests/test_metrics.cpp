#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "slowads/error.hpp"
#include "slowads/metrics.hpp"
#include "slowads/rng.hpp"
#include "slowads/text.hpp"

using namespace slowads;

namespace {

const std::string kData = SLOWADS_TEST_DATA;

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

struct GoldenRow {
  double bleu, p1, p2, p3, p4, bp;
  std::size_t sys_len, ref_len;
  double chrf;
};

std::map<std::string, GoldenRow> read_golden_scores() {
  std::map<std::string, GoldenRow> rows;
  for (const auto& line : read_lines(kData + "/golden/scores.tsv")) {
    if (line.starts_with("case\t")) continue;
    std::istringstream ss(line);
    std::string name;
    GoldenRow r{};
    std::getline(ss, name, '\t');
    ss >> r.bleu >> r.p1 >> r.p2 >> r.p3 >> r.p4 >> r.bp >> r.sys_len >> r.ref_len >> r.chrf;
    rows[name] = r;
  }
  return rows;
}

// deterministic word soup for property tests; min_words >= 4 guarantees the
// corpus has 4-grams (a corpus without any is scored 0 even against itself)
std::string random_sentence(Rng& rng, std::size_t min_words = 1) {
  static const std::vector<std::string> pool = {
      "the", "cat", "sat", "on", "mat",  "câble", "12.5", "γάτα", "кот", "word,",
      "a",   "b",   "c",  "x!", "day's", "—",     "50%",  "şey",  "イヌ", "end."};
  const std::size_t len = min_words + rng.bounded(12);
  std::string out;
  for (std::size_t i = 0; i < len; ++i) {
    if (i) out.push_back(' ');
    out += pool[rng.bounded(pool.size())];
  }
  return out;
}

std::vector<std::string> random_corpus(Rng& rng, std::size_t n, std::size_t min_words = 1) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_sentence(rng, min_words));
  return out;
}

}  // namespace

TEST_CASE("tokenize_13a matches the reference tokenizer fixtures") {
  for (const auto& line : read_lines(kData + "/golden/tokenizer_cases.tsv")) {
    if (line.starts_with("#")) continue;
    const auto tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    const std::string input = line.substr(0, tab);
    const std::string expected = line.substr(tab + 1);
    const auto toks = tokenize_13a(input);
    std::string joined;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (i) joined.push_back(' ');
      joined += toks[i];
    }
    CHECK_MESSAGE(joined == expected, "input: ", input);
  }
}

TEST_CASE("tokenize_13a basics") {
  CHECK(tokenize_13a("Hello, world!") == std::vector<std::string>{"Hello", ",", "world", "!"});
  CHECK(tokenize_13a("2.5") == std::vector<std::string>{"2.5"});
  CHECK(tokenize_13a("").empty());
}

TEST_CASE("bleu and chrf reproduce the golden scores") {
  const auto golden = read_golden_scores();
  const auto hyps = read_lines(kData + "/golden/toy20.hyp");
  const auto refs = read_lines(kData + "/golden/toy20.ref");
  REQUIRE(hyps.size() == 20);
  REQUIRE(refs.size() == 20);

  struct Case {
    std::string name;
    std::vector<std::string> h, r;
  };
  const std::vector<Case> cases = {
      {"toy20", hyps, refs},
      {"single_the_cat_sat", {"the cat sat"}, {"the dog sat"}},
      {"single_abcd", {"abcd"}, {"abce"}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const auto g = golden.at(c.name);
    const auto b = bleu_corpus(c.h, c.r);
    CHECK(b.score == doctest::Approx(g.bleu).epsilon(0).scale(1).epsilon(1e-9));
    CHECK(b.precisions[0] == doctest::Approx(g.p1));
    CHECK(b.precisions[1] == doctest::Approx(g.p2));
    CHECK(b.precisions[2] == doctest::Approx(g.p3));
    CHECK(b.precisions[3] == doctest::Approx(g.p4));
    CHECK(b.brevity_penalty == doctest::Approx(g.bp));
    CHECK(b.hyp_len == g.sys_len);
    CHECK(b.ref_len == g.ref_len);
    const auto c2 = chrf_corpus(c.h, c.r);
    CHECK(c2.score == doctest::Approx(g.chrf));
  }
}

TEST_CASE("parallel kernels equal the serial reference") {
  Rng rng(2024);
  for (int round = 0; round < 10; ++round) {
    const auto hyps = random_corpus(rng, 1 + rng.bounded(64));
    auto refs = hyps;
    for (auto& r : refs)
      if (rng.bounded(2)) r = random_sentence(rng);
    const auto bs = bleu_corpus_serial(hyps, refs);
    const auto bp = bleu_corpus(hyps, refs);
    CHECK(bs.score == bp.score);
    CHECK(bs.precisions == bp.precisions);
    CHECK(bs.brevity_penalty == bp.brevity_penalty);
    CHECK(bs.hyp_len == bp.hyp_len);
    const auto cs = chrf_corpus_serial(hyps, refs);
    const auto cp = chrf_corpus(hyps, refs);
    CHECK(cs.score == cp.score);
  }
}

TEST_CASE("identity scores are exactly 100") {
  Rng rng(7);
  for (int round = 0; round < 50; ++round) {
    const auto corpus = random_corpus(rng, 1 + rng.bounded(20), 4);
    CHECK(bleu_corpus(corpus, corpus).score == 100.0);
    CHECK(chrf_corpus(corpus, corpus).score == 100.0);
  }
}

TEST_CASE("scores stay in range and degrade monotonically on the golden set") {
  const auto hyps = read_lines(kData + "/golden/toy20.hyp");
  const auto refs = read_lines(kData + "/golden/toy20.ref");
  const double bleu0 = bleu_corpus(hyps, refs).score;
  const double chrf0 = chrf_corpus(hyps, refs).score;
  CHECK(bleu0 > 0.0);
  CHECK(bleu0 < 100.0);
  CHECK(chrf0 > 0.0);
  CHECK(chrf0 < 100.0);
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    auto damaged = hyps;
    damaged[i] = "zzz qqq vvv kkk";
    CHECK(bleu_corpus(damaged, refs).score <= bleu0);
    CHECK(chrf_corpus(damaged, refs).score <= chrf0);
  }
}

TEST_CASE("corpus scores are invariant under pair reordering") {
  auto hyps = read_lines(kData + "/golden/toy20.hyp");
  auto refs = read_lines(kData + "/golden/toy20.ref");
  const double bleu0 = bleu_corpus(hyps, refs).score;
  const double chrf0 = chrf_corpus(hyps, refs).score;
  Rng rng(5);
  std::vector<std::size_t> order(hyps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<std::string> h2, r2;
  for (const auto i : order) {
    h2.push_back(hyps[i]);
    r2.push_back(refs[i]);
  }
  CHECK(bleu_corpus(h2, r2).score == doctest::Approx(bleu0).epsilon(1e-12));
  CHECK(chrf_corpus(h2, r2).score == doctest::Approx(chrf0).epsilon(1e-12));
}

TEST_CASE("bleu edge cases") {
  const std::vector<std::string> empty_hyps = {"", ""};
  const std::vector<std::string> refs = {"a b c", "d e f"};
  CHECK(bleu_corpus(empty_hyps, refs).score == 0.0);
  CHECK_THROWS_AS(bleu_corpus(refs, std::vector<std::string>{"a"}), Error);
  CHECK_THROWS_AS(bleu_corpus({}, {}), Error);
  const std::vector<std::string> h = {"x y"};
  const std::vector<std::string> r = {"p q"};
  CHECK(chrf_corpus(h, r).score == 0.0);  // disjoint character sets
}

TEST_CASE("segment score ingestion") {
  const std::string path = "ingest_test.txt";
  {
    std::ofstream out(path);
    out << "0.5\n0.7\n";
  }
  const auto s = ingest_segment_scores(path, 2);
  CHECK(s.values == std::vector<double>{0.5, 0.7});
  CHECK(s.mean() == doctest::Approx(0.6));
  CHECK_THROWS_AS(ingest_segment_scores(path, 3), Error);
  {
    std::ofstream out(path);
    out << "abc\n";
  }
  CHECK_THROWS_WITH_AS(ingest_segment_scores(path, 1),
                       doctest::Contains("line 1"), Error);
  std::remove(path.c_str());
  CHECK_THROWS_AS(ingest_segment_scores("missing_scores.txt", 1), Error);
}
