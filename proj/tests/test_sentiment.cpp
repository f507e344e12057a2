#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "textmine/error.hpp"
#include "textmine/rng.hpp"
#include "textmine/sentiment.hpp"

using namespace textmine;

namespace {

// ECDF gap maximized over the merged sample, the textbook definition
double ks_brute_force(std::vector<double> a, std::vector<double> b) {
  std::vector<double> merged(a);
  merged.insert(merged.end(), b.begin(), b.end());
  std::sort(merged.begin(), merged.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  auto ecdf = [](const std::vector<double>& s, double x) {
    return static_cast<double>(std::upper_bound(s.begin(), s.end(), x) - s.begin()) /
           static_cast<double>(s.size());
  };
  double d = 0.0;
  for (double x : merged) d = std::max(d, std::abs(ecdf(a, x) - ecdf(b, x)));
  return d;
}

}  // namespace

TEST_CASE("score averages lexicon polarities") {
  const SentimentLexicon lex{{"good", 0.7}, {"bad", -0.6}};
  const auto s = score({"good", "bad"}, lex, ScoreMode::lexicon_words_only);
  CHECK_FALSE(s.no_signal);
  CHECK(s.value == doctest::Approx(0.05));

  CHECK(score({"good"}, lex, ScoreMode::all_words).value == doctest::Approx(0.7));
  CHECK(score({"good"}, lex, ScoreMode::lexicon_words_only).value ==
        doctest::Approx(0.7));

  const SentimentLexicon only_good{{"good", 0.7}};
  CHECK(score({"good", "the", "the"}, only_good, ScoreMode::all_words).value ==
        doctest::Approx(0.7 / 3.0));
}

TEST_CASE("score flags documents without signal") {
  const SentimentLexicon lex{{"good", 0.7}};
  const auto empty = score({}, lex, ScoreMode::all_words);
  CHECK(empty.no_signal);
  CHECK(empty.value == 0.0);
  const auto unmatched = score({"the", "a"}, lex, ScoreMode::lexicon_words_only);
  CHECK(unmatched.no_signal);
  CHECK(unmatched.value == 0.0);
}

TEST_CASE("score is order-invariant and bounded") {
  const SentimentLexicon lex{{"w1", 0.9}, {"w2", -1.0}, {"w3", 0.2}};
  std::vector<std::string> tokens{"w1", "w2", "x", "w3", "w1"};
  const double forward = score(tokens, lex, ScoreMode::all_words).value;
  std::reverse(tokens.begin(), tokens.end());
  CHECK(score(tokens, lex, ScoreMode::all_words).value == doctest::Approx(forward));
  CHECK(forward >= -1.0);
  CHECK(forward <= 1.0);
}

TEST_CASE("ks statistic on hand-checked samples") {
  const auto same = ks_two_sample({0, 1}, {0, 1});
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == doctest::Approx(1.0));

  const auto separated = ks_two_sample({1, 2, 3}, {4, 5, 6});
  CHECK(separated.statistic == doctest::Approx(1.0));

  const auto partial = ks_two_sample({0, 0, 1, 1}, {0, 1, 1, 1});
  CHECK(partial.statistic == doctest::Approx(0.25));

  CHECK_THROWS_AS(ks_two_sample({}, {1.0}), Error);
  CHECK_THROWS_AS(ks_two_sample({1.0}, {}), Error);
}

TEST_CASE("ks is symmetric in its arguments") {
  Rng rng(13);
  for (int i = 0; i < 10; ++i) {
    std::vector<double> a(20), b(35);
    for (double& x : a) x = rng.gaussian();
    for (double& x : b) x = rng.gaussian() + 0.5;
    const auto r1 = ks_two_sample(a, b);
    const auto r2 = ks_two_sample(b, a);
    CHECK(r1.statistic == r2.statistic);
    CHECK(r1.p_value == doctest::Approx(r2.p_value));
    CHECK(r1.n1 == r2.n2);
  }
}

TEST_CASE("ks statistic matches the brute-force ECDF oracle") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n1 = 1 + rng.uniform_int(500);
    const std::size_t n2 = 1 + rng.uniform_int(500);
    std::vector<double> a(n1), b(n2);
    for (double& x : a) x = rng.uniform01();
    // occasional ties across samples
    for (double& x : b)
      x = (rng.uniform01() < 0.3) ? a[rng.uniform_int(n1)] : rng.uniform01() + 0.2;
    const auto r = ks_two_sample(a, b);
    CHECK(r.statistic == ks_brute_force(a, b));
    CHECK(r.p_value >= 0.0);
    CHECK(r.p_value <= 1.0);
  }
}

TEST_CASE("large shifts drive D to one") {
  Rng rng(5);
  std::vector<double> a(100), b(100);
  for (double& x : a) x = rng.gaussian();
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = a[i] + 1000.0;
  CHECK(ks_two_sample(a, b).statistic == doctest::Approx(1.0));
}

TEST_CASE("compare_groups scores and pairs by metadata group") {
  const PipelineConfig pipeline;  // plain lowercase tokenization
  const SentimentLexicon lex{{"good", 0.8}, {"bad", -0.8}};
  std::vector<RawDocument> docs;
  for (int i = 0; i < 5; ++i) {
    docs.push_back({"a" + std::to_string(i), "good good", {{"state", "CA"}}});
    docs.push_back({"b" + std::to_string(i), "bad bad", {{"state", "FL"}}});
  }
  GroupCompareOptions opts;
  opts.group_key = "state";
  const auto report = compare_groups(docs, pipeline, lex, opts);
  REQUIRE(report.pairs.size() == 1);
  CHECK(report.pairs[0].group1 == "CA");
  CHECK(report.pairs[0].group2 == "FL");
  CHECK_FALSE(report.pairs[0].skipped);
  CHECK(report.pairs[0].ks.statistic == doctest::Approx(1.0));
  CHECK(report.samples.at("CA").size() == 5);
  CHECK(report.samples.at("FL").size() == 5);
}

TEST_CASE("compare_groups honors the metadata filter and subsampling") {
  const PipelineConfig pipeline;
  const SentimentLexicon lex{{"good", 0.5}, {"bad", -0.5}};
  std::vector<RawDocument> docs;
  for (int i = 0; i < 20; ++i) {
    const std::string stars = (i % 2 == 0) ? "5" : "1";
    const std::string group = (i % 4 < 2) ? "X" : "Y";
    docs.push_back({"d" + std::to_string(i), i % 2 ? "bad" : "good",
                    {{"stars", stars}, {"group", group}}});
  }
  GroupCompareOptions opts;
  opts.group_key = "group";
  opts.filter_key = "stars";
  opts.filter_value = "5";
  opts.sample_size = 3;
  opts.seed = 7;
  const auto report = compare_groups(docs, pipeline, lex, opts);
  for (const auto& [group, sample] : report.samples) CHECK(sample.size() == 3);
  // only 5-star docs pass the filter, all scored "good"
  REQUIRE(report.pairs.size() == 1);
  CHECK(report.pairs[0].ks.statistic == doctest::Approx(0.0));

  const auto rerun = compare_groups(docs, pipeline, lex, opts);
  CHECK(rerun.samples == report.samples);
}

TEST_CASE("compare_groups marks empty groups as skipped pairs") {
  const PipelineConfig pipeline;
  const SentimentLexicon lex{{"good", 0.5}};
  std::vector<RawDocument> docs{
      {"d1", "good", {{"state", "CA"}, {"stars", "5"}}},
      {"d2", "good", {{"state", "FL"}, {"stars", "1"}}}};
  GroupCompareOptions opts;
  opts.group_key = "state";
  opts.filter_key = "stars";
  opts.filter_value = "5";
  const auto report = compare_groups(docs, pipeline, lex, opts);
  REQUIRE(report.pairs.size() == 1);
  CHECK(report.pairs[0].skipped);
  CHECK_FALSE(report.pairs[0].warning.empty());
}

TEST_CASE("lexicon loader reads tab-separated polarities") {
  std::stringstream ss("good\t0.7\nbad\t-0.6\n");
  const SentimentLexicon lex = load_lexicon(ss);
  REQUIRE(lex.size() == 2);
  CHECK(lex.at("good") == doctest::Approx(0.7));
  CHECK(lex.at("bad") == doctest::Approx(-0.6));

  std::stringstream out_of_range("w\t1.5\n");
  CHECK_THROWS_AS(load_lexicon(out_of_range), Error);
  std::stringstream missing_tab("word 0.5\n");
  CHECK_THROWS_AS(load_lexicon(missing_tab), Error);
}

TEST_CASE("sentiwordnet loader averages synset scores per term") {
  std::stringstream ss(
      "# comment line\n"
      "a\t00001\t0.5\t0.125\tgood#1 nice#2\tgloss text\n"
      "a\t00002\t0.25\t0.0\tgood#3\tanother gloss\n");
  const SentimentLexicon lex = load_sentiwordnet(ss);
  // good: mean of (0.5-0.125) and (0.25-0) = 0.3125
  CHECK(lex.at("good") == doctest::Approx(0.3125));
  CHECK(lex.at("nice") == doctest::Approx(0.375));
}
