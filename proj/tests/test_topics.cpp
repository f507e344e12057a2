#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "doctest.h"
#include "textmine/error.hpp"
#include "textmine/rng.hpp"
#include "textmine/topics.hpp"

using namespace textmine;

namespace {

// ten documents over two disjoint vocabularies
std::vector<ProcessedDocument> disjoint_corpus() {
  std::vector<ProcessedDocument> docs;
  for (int i = 0; i < 5; ++i)
    docs.push_back({"p" + std::to_string(i), {"a", "b", "c", "a", "c", "b", "a"}});
  for (int i = 0; i < 5; ++i)
    docs.push_back({"q" + std::to_string(i), {"x", "y", "z", "y", "x", "z", "y"}});
  return docs;
}

bool topics_are_pure(const LdaModel& model) {
  const std::set<std::string> block1{"a", "b", "c"}, block2{"x", "y", "z"};
  for (std::size_t k = 0; k < model.topics(); ++k) {
    const auto top = model.topic_words(k, 3);
    std::size_t in1 = 0, in2 = 0;
    for (const auto& [term, prob] : top) {
      if (block1.count(term)) ++in1;
      if (block2.count(term)) ++in2;
    }
    if (in1 != 3 && in2 != 3) return false;
  }
  return true;
}

LdaConfig small_lda(std::uint64_t seed) {
  LdaConfig cfg;
  cfg.topics = 2;
  cfg.iterations = 200;
  cfg.burn_in = 50;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("lda rows are normalized probability distributions") {
  const auto corpus = disjoint_corpus();
  const Dictionary dict = build_dictionary(corpus);
  const LdaModel m = LdaModel::fit(corpus, dict, small_lda(1));
  for (std::size_t k = 0; k < m.topics(); ++k) {
    double sum = 0.0;
    for (std::size_t w = 0; w < m.phi().cols(); ++w) {
      CHECK(m.phi()(k, w) >= 0.0);
      sum += m.phi()(k, w);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
  for (std::size_t j = 0; j < m.theta().rows(); ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < m.topics(); ++k) {
      CHECK(m.theta()(j, k) >= 0.0);
      sum += m.theta()(j, k);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("lda separates disjoint vocabulary blocks") {
  const auto corpus = disjoint_corpus();
  const Dictionary dict = build_dictionary(corpus);
  CHECK(topics_are_pure(LdaModel::fit(corpus, dict, small_lda(1))));
}

TEST_CASE("lda sampling is deterministic under a fixed seed") {
  const auto corpus = disjoint_corpus();
  const Dictionary dict = build_dictionary(corpus);
  const LdaModel m1 = LdaModel::fit(corpus, dict, small_lda(9));
  const LdaModel m2 = LdaModel::fit(corpus, dict, small_lda(9));
  CHECK(m1.assignments() == m2.assignments());
  for (std::size_t k = 0; k < m1.topics(); ++k)
    for (std::size_t w = 0; w < m1.phi().cols(); ++w)
      CHECK(m1.phi()(k, w) == m2.phi()(k, w));
}

TEST_CASE("lda assignment counts stay consistent with document lengths") {
  const auto corpus = disjoint_corpus();
  const Dictionary dict = build_dictionary(corpus);
  const LdaModel m = LdaModel::fit(corpus, dict, small_lda(3));
  REQUIRE(m.assignments().size() == corpus.size());
  for (std::size_t j = 0; j < corpus.size(); ++j) {
    CHECK(m.assignments()[j].size() == corpus[j].tokens.size());
    for (std::size_t z : m.assignments()[j]) CHECK(z < m.topics());
  }
}

TEST_CASE("lda rejects bad configuration") {
  const auto corpus = disjoint_corpus();
  const Dictionary dict = build_dictionary(corpus);
  LdaConfig bad = small_lda(1);
  bad.topics = 1;
  CHECK_THROWS_AS(LdaModel::fit(corpus, dict, bad), Error);
  CHECK_THROWS_AS(LdaModel::fit({}, dict, small_lda(1)), Error);
}

TEST_CASE("topic_words are descending with a w cap") {
  const auto corpus = disjoint_corpus();
  const Dictionary dict = build_dictionary(corpus);
  const LdaModel m = LdaModel::fit(corpus, dict, small_lda(1));
  const auto all = m.topic_words(0, 100);
  CHECK(all.size() == dict.size());
  for (std::size_t i = 1; i < all.size(); ++i)
    CHECK(all[i].second <= all[i - 1].second);
  CHECK(m.topic_words(0, 2).size() == 2);
  CHECK_THROWS_AS(m.topic_words(99, 3), Error);
}

TEST_CASE("infer assigns block documents to the block topic") {
  const auto corpus = disjoint_corpus();
  const Dictionary dict = build_dictionary(corpus);
  // small alpha so the inferred mixture can actually concentrate on one topic
  LdaConfig cfg = small_lda(1);
  cfg.alpha = 0.5;
  const LdaModel m = LdaModel::fit(corpus, dict, cfg);

  const auto inf = m.infer({"x", "y", "z", "x", "y", "z", "x", "y", "z"}, 200, 50, 5);
  REQUIRE_FALSE(inf.no_known_tokens);
  double sum = 0.0;
  for (double t : inf.theta) sum += t;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

  // which topic owns the x/y/z block?
  std::size_t block_topic = 0;
  double best = -1.0;
  for (std::size_t k = 0; k < m.topics(); ++k) {
    const double p = m.phi()(k, dict.id_of("x"));
    if (p > best) {
      best = p;
      block_topic = k;
    }
  }
  CHECK(inf.theta[block_topic] > 0.8);

  const auto unknown = m.infer({"unseen", "terms"}, 50, 10, 5);
  CHECK(unknown.no_known_tokens);
  for (double t : unknown.theta) CHECK(t == doctest::Approx(0.5));
}

TEST_CASE("rake hand-checked examples") {
  RakeConfig cfg;
  const auto one = rake_extract("red apple pie", cfg);
  REQUIRE(one.size() == 1);
  CHECK(one[0].phrase == std::vector<std::string>{"red", "apple", "pie"});
  CHECK(one[0].score == doctest::Approx(9.0));

  RakeConfig with_stop;
  with_stop.stopwords = {"and"};
  const auto two = rake_extract("red apple and pie", with_stop);
  REQUIRE(two.size() == 2);
  CHECK(two[0].phrase == std::vector<std::string>{"red", "apple"});
  CHECK(two[0].score == doctest::Approx(4.0));
  CHECK(two[1].phrase == std::vector<std::string>{"pie"});
  CHECK(two[1].score == doctest::Approx(1.0));

  RakeConfig all_stop;
  all_stop.stopwords = {"the", "and"};
  CHECK(rake_extract("the and the", all_stop).empty());
  CHECK(rake_extract("", cfg).empty());
}

TEST_CASE("rake splits on delimiters and honors the phrase length cap") {
  RakeConfig cfg;
  const auto split = rake_extract("red apple, pie", cfg);
  REQUIRE(split.size() == 2);
  CHECK(split[0].phrase == std::vector<std::string>{"red", "apple"});

  RakeConfig capped;
  capped.max_phrase_len = 2;
  const auto dropped = rake_extract("one two three", capped);
  CHECK(dropped.empty());  // the single 3-word run exceeds the cap

  // metric variants on "red apple, red pie"
  RakeConfig freq_cfg;
  freq_cfg.metric = RakeConfig::Metric::frequency;
  const auto by_freq = rake_extract("red apple, red pie", freq_cfg);
  // red: freq 2; apple: 1; pie: 1 -> both phrases score 3
  for (const auto& kw : by_freq) CHECK(kw.score == doctest::Approx(3.0));

  RakeConfig deg_cfg;
  deg_cfg.metric = RakeConfig::Metric::degree;
  const auto by_deg = rake_extract("red apple, red pie", deg_cfg);
  // red: deg 4; apple: 2; pie: 2 -> both phrases score 6
  for (const auto& kw : by_deg) CHECK(kw.score == doctest::Approx(6.0));
}

TEST_CASE("rake matches a naive reimplementation on random streams") {
  Rng rng(17);
  const std::vector<std::string> vocab{"aa", "bb", "cc", "dd", "ee", "stop1", "stop2"};
  RakeConfig cfg;
  cfg.stopwords = {"stop1", "stop2"};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t len = rng.uniform_int(200);
    std::string text;
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < len; ++i) {
      const std::string& t = vocab[rng.uniform_int(vocab.size())];
      tokens.push_back(t);
      if (!text.empty()) text += rng.uniform01() < 0.1 ? ", " : " ";
      text += t;
    }
    // rebuild tokens with delimiter info from the text itself
    std::vector<std::vector<std::string>> candidates;
    {
      std::vector<std::string> cur;
      std::string word;
      auto end_word = [&](bool hard_break) {
        if (!word.empty()) {
          if (cfg.stopwords.count(word)) {
            if (!cur.empty()) candidates.push_back(cur);
            cur.clear();
          } else {
            cur.push_back(word);
          }
          word.clear();
        }
        if (hard_break) {
          if (!cur.empty()) candidates.push_back(cur);
          cur.clear();
        }
      };
      for (char c : text) {
        if (c == ' ')
          end_word(false);
        else if (c == ',')
          end_word(true);
        else
          word.push_back(c);
      }
      end_word(true);
    }
    candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                    [&](const auto& c) {
                                      return c.size() > cfg.max_phrase_len;
                                    }),
                     candidates.end());
    std::map<std::string, double> freq, deg;
    for (const auto& c : candidates)
      for (const auto& w : c) {
        freq[w] += 1;
        deg[w] += static_cast<double>(c.size());
      }
    std::map<std::vector<std::string>, double> expect;
    for (const auto& c : candidates) {
      double s = 0.0;
      for (const auto& w : c) s += deg[w] / freq[w];
      expect[c] = s;
    }

    const auto got = rake_extract(text, cfg);
    REQUIRE(got.size() == expect.size());
    for (const auto& kw : got) {
      REQUIRE(expect.count(kw.phrase) == 1);
      CHECK(kw.score == expect[kw.phrase]);
    }
    for (std::size_t i = 1; i < got.size(); ++i) {
      CHECK(got[i].score <= got[i - 1].score);
      if (got[i].score == got[i - 1].score)
        CHECK(got[i - 1].phrase < got[i].phrase);
    }
  }
}

TEST_CASE("business_topic_words merges review topics with description keywords") {
  LdaConfig lda = small_lda(1);
  RakeConfig rake;
  rake.stopwords = {"of", "the"};

  // description only
  const auto rake_only = business_topic_words({}, "federal reserve bank", lda, rake, 5);
  CHECK_FALSE(rake_only.empty_sources);
  CHECK(rake_only.terms == std::vector<std::string>{"bank", "federal", "reserve"});

  // reviews only
  std::vector<ProcessedDocument> reviews;
  for (int i = 0; i < 4; ++i)
    reviews.push_back({"r" + std::to_string(i), {"vault", "money", "vault"}});
  const auto lda_only = business_topic_words(reviews, "", lda, rake, 2);
  CHECK_FALSE(lda_only.empty_sources);
  CHECK(lda_only.terms.size() == 2);

  // w=1 keeps only the top term
  const auto top1 = business_topic_words(reviews, "federal reserve", lda, rake, 1);
  CHECK(top1.terms.size() == 1);

  // both sources empty
  const auto none = business_topic_words({}, "", lda, rake, 5);
  CHECK(none.empty_sources);
  CHECK(none.terms.empty());
}
