#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "textmine/classify.hpp"
#include "textmine/error.hpp"
#include "textmine/rng.hpp"

using namespace textmine;

namespace {

// three orthogonal "industry" directions plus per-code synonyms
EmbeddingTable orthogonal_table() {
  EmbeddingTable t;
  t.dim = 3;
  t.vectors = {
      {"food", {1, 0, 0}},   {"pizza", {1, 0, 0}},  {"bakery", {1, 0, 0}},
      {"money", {0, 1, 0}},  {"bank", {0, 1, 0}},   {"loan", {0, 1, 0}},
      {"truck", {0, 0, 1}},  {"cargo", {0, 0, 1}},  {"freight", {0, 0, 1}},
  };
  return t;
}

std::vector<NaicsCode> three_codes() {
  return {{"72", "Food Services", "", {"food", "pizza", "bakery"}},
          {"52", "Finance", "", {"money", "bank", "loan"}},
          {"48", "Transportation", "", {"truck", "cargo", "freight"}}};
}

EmbeddingTable scaled(const EmbeddingTable& t, double factor) {
  EmbeddingTable out = t;
  for (auto& [term, vec] : out.vectors)
    for (double& x : vec) x *= factor;
  return out;
}

}  // namespace

TEST_CASE("term_vector falls back to the word-vector mean") {
  EmbeddingTable t;
  t.dim = 2;
  t.vectors = {{"federal", {1, 0}}, {"reserve", {0, 1}}};
  const auto direct = term_vector(t, "federal");
  REQUIRE(direct.has_value());
  CHECK((*direct)[0] == 1.0);

  const auto mean = term_vector(t, "federal reserve");
  REQUIRE(mean.has_value());
  CHECK((*mean)[0] == doctest::Approx(0.5));
  CHECK((*mean)[1] == doctest::Approx(0.5));

  const auto partial = term_vector(t, "federal unknown");
  REQUIRE(partial.has_value());
  CHECK((*partial)[0] == doctest::Approx(1.0));

  CHECK_FALSE(term_vector(t, "missing").has_value());
}

TEST_CASE("enrich_profile ranks candidates by similarity to the categories") {
  EmbeddingTable t;
  t.dim = 2;
  // cosine(bank,vault)=0.9..., cosine(bank,pizza) small
  t.vectors = {{"bank", {1.0, 0.0}},
               {"vault", {0.9, std::sqrt(1.0 - 0.81)}},
               {"pizza", {0.1, std::sqrt(1.0 - 0.01)}}};
  BusinessProfile p;
  p.id = "biz";
  p.categories = {"bank"};
  const BusinessProfile out = enrich_profile(p, {"vault", "pizza"}, t, 2);
  CHECK(out.topic_words == std::vector<std::string>{"bank", "vault"});
}

TEST_CASE("enrich_profile keeps existing categories and adopts candidates") {
  const EmbeddingTable t = orthogonal_table();
  BusinessProfile rich;
  rich.id = "rich";
  rich.categories = {"food", "pizza", "bakery"};
  const auto truncated = enrich_profile(rich, {"money"}, t, 2);
  CHECK(truncated.topic_words == std::vector<std::string>{"food", "pizza"});

  BusinessProfile bare;
  bare.id = "bare";
  std::size_t dropped = 0;
  const auto adopted = enrich_profile(bare, {"bank", "vaultless", "loan"}, t, 5, &dropped);
  CHECK(adopted.topic_words == std::vector<std::string>{"bank", "loan"});
  CHECK(dropped == 1);

  BusinessProfile hopeless;
  hopeless.id = "hopeless";
  CHECK_THROWS_AS(enrich_profile(hopeless, {"nothing", "matches"}, t, 3), Error);
}

TEST_CASE("score_pair averages the top pair cosines") {
  const EmbeddingTable t = orthogonal_table();
  // single pair: plain cosine
  CHECK(score_pair({"food"}, {"pizza"}, t, 1) == doctest::Approx(1.0));
  CHECK(score_pair({"food"}, {"bank"}, t, 99) == doctest::Approx(0.0));

  // constructed 2x2 pair set with cosines {1.0, 0.8, 0.2, 0.0}
  EmbeddingTable c;
  c.dim = 2;
  c.vectors = {{"b1", {1.0, 0.0}},
               {"b2", {0.0, 1.0}},
               {"n1", {1.0, 0.0}},
               {"n2", {0.8, std::sqrt(1.0 - 0.64)}}};
  // pairs: (b1,n1)=1.0, (b1,n2)=0.8, (b2,n1)=0.0, (b2,n2)=0.6
  const double top2 = score_pair({"b1", "b2"}, {"n1", "n2"}, c, 2);
  CHECK(top2 == doctest::Approx(0.9));
  const double all4 = score_pair({"b1", "b2"}, {"n1", "n2"}, c, 100);
  CHECK(all4 == doctest::Approx((1.0 + 0.8 + 0.0 + 0.6) / 4.0));

  CHECK_THROWS_AS(score_pair({"unknown"}, {"n1"}, c, 2), Error);
  CHECK_THROWS_AS(score_pair({}, {"n1"}, c, 2), Error);
}

TEST_CASE("score_pair equals the brute-force oracle on random instances") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + rng.uniform_int(4);
    const std::size_t nb = 1 + rng.uniform_int(8);
    const std::size_t nn = 1 + rng.uniform_int(8);
    EmbeddingTable t;
    t.dim = dim;
    std::vector<std::string> b_terms, n_terms;
    for (std::size_t i = 0; i < nb; ++i) {
      std::vector<double> v(dim);
      for (double& x : v) x = rng.gaussian();
      const std::string name = "b" + std::to_string(i);
      t.vectors[name] = v;
      b_terms.push_back(name);
    }
    for (std::size_t i = 0; i < nn; ++i) {
      std::vector<double> v(dim);
      for (double& x : v) x = rng.gaussian();
      const std::string name = "n" + std::to_string(i);
      t.vectors[name] = v;
      n_terms.push_back(name);
    }
    const std::size_t top_p = 1 + rng.uniform_int(nb * nn + 10);

    std::vector<double> sims;
    for (const auto& b : b_terms)
      for (const auto& n : n_terms)
        sims.push_back(cosine(t.vectors[b], t.vectors[n]));
    std::sort(sims.rbegin(), sims.rend());
    const std::size_t take = std::min(top_p, sims.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < take; ++i) mean += sims[i];
    mean /= static_cast<double>(take);

    CHECK(score_pair(b_terms, n_terms, t, top_p) == mean);
  }
}

TEST_CASE("rank_industries places the matching code first") {
  const EmbeddingTable t = orthogonal_table();
  BusinessProfile p;
  p.id = "pizzeria";
  p.topic_words = {"pizza", "food"};
  ClassifierConfig cfg;
  cfg.top_p = 4;
  const auto ranked = rank_industries(p, three_codes(), t, cfg);
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].code == "72");
  CHECK(ranked[0].score == doctest::Approx(1.0));
  CHECK(ranked[1].score <= ranked[0].score);
  CHECK(ranked[2].score <= ranked[1].score);

  const auto single = rank_industries(p, {three_codes()[1]}, t, cfg);
  REQUIRE(single.size() == 1);
  CHECK(single[0].code == "52");
}

TEST_CASE("codes with no embeddable terms sort last with the sentinel") {
  const EmbeddingTable t = orthogonal_table();
  BusinessProfile p;
  p.id = "biz";
  p.topic_words = {"pizza"};
  auto codes = three_codes();
  codes.push_back({"99", "Unknowable", "", {"zzzz"}});
  ClassifierConfig cfg;
  const auto ranked = rank_industries(p, codes, t, cfg);
  REQUIRE(ranked.size() == 4);
  CHECK(ranked.back().code == "99");
  CHECK(ranked.back().unembeddable);
  CHECK(ranked.back().score == kUnembeddableScore);
}

TEST_CASE("ranking is invariant to positive embedding rescaling and code order") {
  const EmbeddingTable t = orthogonal_table();
  BusinessProfile p;
  p.id = "hauler";
  p.topic_words = {"truck", "freight"};
  ClassifierConfig cfg;
  const auto base = rank_industries(p, three_codes(), t, cfg);

  const auto rescaled = rank_industries(p, three_codes(), scaled(t, 7.5), cfg);
  REQUIRE(rescaled.size() == base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(rescaled[i].code == base[i].code);

  auto shuffled = three_codes();
  std::swap(shuffled[0], shuffled[2]);
  const auto reordered = rank_industries(p, shuffled, t, cfg);
  for (std::size_t i = 0; i < base.size(); ++i)
    CHECK(reordered[i].code == base[i].code);
}

TEST_CASE("evaluate reports top-k accuracy with the weak-label caveat") {
  const EmbeddingTable t = orthogonal_table();
  std::vector<BusinessProfile> profiles(3);
  profiles[0] = {"pizzeria", {}, {"pizza", "bakery"}, std::string("72"), "", {}};
  profiles[1] = {"lender", {}, {"loan", "money"}, std::string("52"), "", {}};
  profiles[2] = {"hauler", {}, {"cargo", "truck"}, std::string("48"), "", {}};
  ClassifierConfig cfg;
  const EvalReport report = evaluate(profiles, three_codes(), t, cfg);
  CHECK_FALSE(report.caveat.empty());
  CHECK(report.digit_level == 2);
  CHECK(report.n_codes == 3);
  CHECK(report.n_profiles == 3);
  REQUIRE(report.topk_accuracy.size() == 3);
  CHECK(report.topk_accuracy[0].second == doctest::Approx(1.0));
  // monotone in k, and k = |codes| covers everything
  for (std::size_t i = 1; i < report.topk_accuracy.size(); ++i)
    CHECK(report.topk_accuracy[i].second >= report.topk_accuracy[i - 1].second);
  CHECK(report.topk_accuracy.back().second == doctest::Approx(1.0));
}

TEST_CASE("evaluate validates labels and digit levels") {
  const EmbeddingTable t = orthogonal_table();
  std::vector<BusinessProfile> unlabeled(1);
  unlabeled[0] = {"biz", {}, {"pizza"}, std::nullopt, "", {}};
  ClassifierConfig cfg;
  CHECK_THROWS_AS(evaluate(unlabeled, three_codes(), t, cfg), Error);

  auto mixed = three_codes();
  mixed[0].code = "7225";
  std::vector<BusinessProfile> labeled(1);
  labeled[0] = {"biz", {}, {"pizza"}, std::string("72"), "", {}};
  CHECK_THROWS_AS(evaluate(labeled, mixed, t, cfg), Error);
}

TEST_CASE("sweep covers the full grid with monotone accuracies") {
  const EmbeddingTable t = orthogonal_table();
  std::vector<BusinessProfile> profiles(2);
  profiles[0] = {"pizzeria", {}, {"pizza", "bakery"}, std::string("72"), "", {}};
  profiles[1] = {"lender", {}, {"loan", "bank"}, std::string("52"), "", {}};

  const auto points = sweep(profiles, three_codes(), t, {2, 3}, {1, 2}, {1, 4});
  CHECK(points.size() == 8);
  for (const auto& pt : points) {
    for (std::size_t i = 1; i < pt.topk_accuracy.size(); ++i)
      CHECK(pt.topk_accuracy[i].second >= pt.topk_accuracy[i - 1].second);
  }

  // one-point grid equals a plain evaluate
  ClassifierConfig cfg;
  cfg.n_naics_words = 3;
  cfg.n_business_words = 2;
  cfg.top_p = 4;
  const auto one = sweep(profiles, three_codes(), t, {3}, {2}, {4});
  const auto direct = evaluate(profiles, three_codes(), t, cfg);
  REQUIRE(one.size() == 1);
  CHECK(one[0].topk_accuracy == direct.topk_accuracy);

  CHECK_THROWS_AS(sweep(profiles, three_codes(), t, {}, {1}, {1}), Error);
}
