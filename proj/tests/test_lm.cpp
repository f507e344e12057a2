#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "doctest.h"
#include "textmine/error.hpp"
#include "textmine/lm.hpp"

using namespace textmine;

namespace {
const std::vector<std::vector<std::string>> kAbab{{"a", "b", "a", "b"}};
}

TEST_CASE("fit counts padded n-grams") {
  const NgramModel m = NgramModel::fit(kAbab, 2);
  CHECK(m.count({"a"}, "b") == 2.0);
  CHECK(m.count({"b"}, "a") == 1.0);
  CHECK(m.count({NgramModel::kStartPad}, "a") == 1.0);
  CHECK(m.count({"b"}, NgramModel::kEndPad) == 1.0);

  const NgramModel uni = NgramModel::fit(kAbab, 1);
  CHECK(uni.count({}, "a") == 2.0);
  CHECK(uni.count({}, "b") == 2.0);

  const NgramModel twice = NgramModel::fit({kAbab[0], kAbab[0]}, 2);
  CHECK(twice.count({"a"}, "b") == 4.0);
  CHECK(twice.count({"b"}, "a") == 2.0);

  CHECK_THROWS_AS(NgramModel::fit(kAbab, 0), Error);
  CHECK_THROWS_AS(NgramModel::fit({}, 2), Error);
}

TEST_CASE("count multipliers scale specific n-grams at fit time") {
  const NgramModel m = NgramModel::fit(kAbab, 2, Smoothing::mle, 1.0, {{"a b", 3.0}});
  CHECK(m.count({"a"}, "b") == 6.0);
  CHECK(m.count({"b"}, "a") == 1.0);
}

TEST_CASE("cond_prob MLE") {
  const NgramModel m = NgramModel::fit(kAbab, 2);
  CHECK(m.cond_prob({"a"}, "b") == 1.0);
  CHECK(m.cond_prob({"b"}, "a") == 0.5);
  CHECK(m.cond_prob({"b"}, NgramModel::kEndPad) == 0.5);
  CHECK(m.cond_prob({"a"}, "a") == 0.0);  // seen context, unseen continuation
  CHECK_THROWS_AS(m.cond_prob({"zzz"}, "a"), Error);
}

TEST_CASE("cond_prob add-k") {
  // vocabulary is {a, b, </s>}, so |V| = 3
  const NgramModel m = NgramModel::fit(kAbab, 2, Smoothing::add_k, 1.0);
  CHECK(m.vocabulary().size() == 3);
  CHECK(m.cond_prob({"b"}, "a") == doctest::Approx(0.4));  // (1+1)/(2+3)
  CHECK(m.cond_prob({"zzz"}, "a") == doctest::Approx(1.0 / 3.0));  // unseen context
}

TEST_CASE("seen contexts normalize exactly over vocabulary plus end pad") {
  const std::vector<std::vector<std::string>> corpus{
      {"the", "cat", "sat"}, {"the", "dog", "sat", "down"}, {"cat", "and", "dog"}};
  for (std::size_t order : {1u, 2u, 3u}) {
    for (Smoothing s : {Smoothing::mle, Smoothing::add_k}) {
      const NgramModel m = NgramModel::fit(corpus, order, s, 0.5);
      // walk every context seen in training
      for (const auto& doc : corpus) {
        std::vector<std::string> padded(order - 1, NgramModel::kStartPad);
        padded.insert(padded.end(), doc.begin(), doc.end());
        for (std::size_t i = 0; i + order - 1 <= padded.size(); ++i) {
          std::vector<std::string> ctx(padded.begin() + i,
                                       padded.begin() + i + order - 1);
          double total = 0.0;
          for (const auto& t : m.vocabulary()) total += m.cond_prob(ctx, t);
          CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("doc_log_prob follows the chain rule over the padded stream") {
  const NgramModel m = NgramModel::fit(kAbab, 2);
  const LogProb lp = m.doc_log_prob({"a", "b", "a", "b"});
  REQUIRE_FALSE(lp.impossible);
  CHECK(lp.value == doctest::Approx(std::log(0.25)));

  const LogProb bad = m.doc_log_prob({"b", "b"});
  CHECK(bad.impossible);

  // empty doc scores P(end | start pads)
  const NgramModel one = NgramModel::fit({{"x"}}, 2);
  const LogProb empty = one.doc_log_prob({});
  CHECK(empty.impossible);  // <s> never precedes </s> in the training data
}

TEST_CASE("perplexity") {
  // a single-term bigram model is fully deterministic
  const NgramModel bi = NgramModel::fit({{"x"}}, 2);
  CHECK(bi.perplexity({{"x"}}) == doctest::Approx(1.0));

  // add-k with huge k approaches the uniform bound |V|
  const NgramModel uniform = NgramModel::fit({{"a", "b", "c"}}, 1, Smoothing::add_k, 1e9);
  const double ppl = uniform.perplexity({{"a", "b", "c"}});
  CHECK(ppl == doctest::Approx(4.0).epsilon(1e-3));  // |V| = 3 terms + end pad

  const NgramModel m = NgramModel::fit(kAbab, 2);
  CHECK(m.perplexity({{"b", "b"}}) == std::numeric_limits<double>::infinity());
}

TEST_CASE("perplexity is lower on training text than on shuffled text") {
  const std::vector<std::vector<std::string>> train{
      {"the", "cat", "sat", "on", "the", "mat"},
      {"the", "dog", "sat", "on", "the", "rug"}};
  const NgramModel m = NgramModel::fit(train, 2, Smoothing::add_k, 0.1);
  const std::vector<std::vector<std::string>> shuffled{
      {"mat", "the", "on", "sat", "cat", "the"},
      {"rug", "the", "on", "sat", "dog", "the"}};
  CHECK(m.perplexity(train) < m.perplexity(shuffled));
}

TEST_CASE("generate is deterministic and respects hard limits") {
  const NgramModel det = NgramModel::fit({{"a", "b"}}, 2);
  CHECK(det.generate({NgramModel::kStartPad}, 10, 1) ==
        std::vector<std::string>{"a", "b"});
  CHECK(det.generate({NgramModel::kStartPad}, 0, 1).empty());

  const NgramModel m = NgramModel::fit(
      {{"a", "b", "a", "c"}, {"b", "c", "a"}}, 2, Smoothing::add_k, 0.5);
  const auto g1 = m.generate({"a"}, 20, 99);
  const auto g2 = m.generate({"a"}, 20, 99);
  CHECK(g1 == g2);
  CHECK(g1.size() <= 20);
  CHECK_THROWS_AS(det.generate({"zzz"}, 5, 1), Error);
}

TEST_CASE("MLE cond_prob equals a brute-force recount") {
  const std::vector<std::vector<std::string>> corpus{
      {"a", "b", "c", "a", "b"}, {"c", "a", "a"}};
  const NgramModel m = NgramModel::fit(corpus, 2);
  // recount bigrams over padded streams by hand
  std::map<std::string, std::map<std::string, int>> counts;
  for (const auto& doc : corpus) {
    std::vector<std::string> padded{NgramModel::kStartPad};
    padded.insert(padded.end(), doc.begin(), doc.end());
    padded.push_back(NgramModel::kEndPad);
    for (std::size_t i = 0; i + 1 < padded.size(); ++i)
      counts[padded[i]][padded[i + 1]]++;
  }
  for (const auto& [ctx, nexts] : counts) {
    int total = 0;
    for (const auto& [t, c] : nexts) total += c;
    for (const auto& [t, c] : nexts)
      CHECK(m.cond_prob({ctx}, t) == static_cast<double>(c) / total);
  }
}

TEST_CASE("dump and load round-trip the count tables") {
  const NgramModel m = NgramModel::fit(
      {{"a", "b", "a", "b"}, {"b", "c"}}, 3, Smoothing::add_k, 1.0);
  std::stringstream ss;
  m.dump(ss);
  const NgramModel n = NgramModel::load(ss, Smoothing::add_k, 1.0);
  CHECK(n.order() == 3);
  CHECK(n.vocabulary() == m.vocabulary());
  CHECK(n.count({"a", "b"}, "a") == m.count({"a", "b"}, "a"));
  CHECK(n.cond_prob({"a", "b"}, "a") == m.cond_prob({"a", "b"}, "a"));
  // re-dumping yields identical text
  std::stringstream ss2, ss3;
  m.dump(ss2);
  n.dump(ss3);
  CHECK(ss2.str() == ss3.str());
}

TEST_CASE("load rejects malformed dumps") {
  std::stringstream bad("a\tb\n");
  CHECK_THROWS_AS(NgramModel::load(bad), Error);
  std::stringstream bad2("a\tb\tnot_a_number\n");
  CHECK_THROWS_AS(NgramModel::load(bad2), Error);
}
