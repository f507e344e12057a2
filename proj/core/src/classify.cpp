#include "textmine/classify.hpp"

#include <algorithm>
#include <cmath>

#include "textmine/error.hpp"
#include "textmine/text.hpp"

namespace textmine {
namespace {

std::vector<std::vector<double>> embed_terms(const EmbeddingTable& table,
                                             const std::vector<std::string>& terms,
                                             std::size_t* dropped = nullptr) {
  std::vector<std::vector<double>> out;
  for (const auto& term : terms) {
    auto v = term_vector(table, term);
    if (v) {
      out.push_back(std::move(*v));
    } else if (dropped) {
      ++*dropped;
    }
  }
  return out;
}

std::vector<std::string> truncated(const std::vector<std::string>& terms, std::size_t n) {
  if (terms.size() <= n) return terms;
  return {terms.begin(), terms.begin() + n};
}

}  // namespace

std::optional<std::vector<double>> term_vector(const EmbeddingTable& table,
                                               const std::string& term) {
  auto it = table.vectors.find(term);
  if (it != table.vectors.end()) return it->second;
  // multi-word term: mean of the covered word vectors
  std::vector<double> mean(table.dim, 0.0);
  std::size_t covered = 0;
  for (const auto& word : tokenize(term)) {
    auto wit = table.vectors.find(word);
    if (wit == table.vectors.end()) continue;
    for (std::size_t d = 0; d < table.dim; ++d) mean[d] += wit->second[d];
    ++covered;
  }
  if (covered == 0) return std::nullopt;
  for (auto& x : mean) x /= static_cast<double>(covered);
  return mean;
}

BusinessProfile enrich_profile(const BusinessProfile& profile,
                               const std::vector<std::string>& candidates,
                               const EmbeddingTable& table,
                               std::size_t n_business_words,
                               std::size_t* warning_count) {
  std::size_t dropped = 0;
  BusinessProfile out = profile;
  out.topic_words.clear();

  std::vector<std::string> kept_categories;
  std::vector<std::vector<double>> category_vecs;
  for (const auto& cat : profile.categories) {
    auto v = term_vector(table, cat);
    if (v) {
      kept_categories.push_back(cat);
      category_vecs.push_back(std::move(*v));
    } else {
      ++dropped;
    }
  }

  if (!kept_categories.empty()) {
    out.topic_words = truncated(kept_categories, n_business_words);
    if (out.topic_words.size() < n_business_words) {
      // fill in candidates ranked by max cosine to any category term
      std::vector<std::pair<std::string, double>> ranked;
      for (const auto& cand : candidates) {
        if (std::find(out.topic_words.begin(), out.topic_words.end(), cand) !=
            out.topic_words.end())
          continue;
        auto v = term_vector(table, cand);
        if (!v) {
          ++dropped;
          continue;
        }
        double best = -2.0;
        for (const auto& cv : category_vecs) best = std::max(best, cosine(*v, cv));
        ranked.emplace_back(cand, best);
      }
      std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
      });
      for (const auto& [cand, _] : ranked) {
        if (out.topic_words.size() >= n_business_words) break;
        out.topic_words.push_back(cand);
      }
    }
  } else {
    // no categories: adopt candidates in their given (score-ranked) order
    for (const auto& cand : candidates) {
      if (out.topic_words.size() >= n_business_words) break;
      if (term_vector(table, cand)) {
        if (std::find(out.topic_words.begin(), out.topic_words.end(), cand) ==
            out.topic_words.end())
          out.topic_words.push_back(cand);
      } else {
        ++dropped;
      }
    }
  }

  if (warning_count) *warning_count = dropped;
  if (out.topic_words.empty())
    throw Error("enrich_profile: no embeddable terms for business '" + profile.id + "'");
  return out;
}

double score_pair(const std::vector<std::string>& business_terms,
                  const std::vector<std::string>& naics_terms,
                  const EmbeddingTable& table, std::size_t top_p) {
  if (top_p < 1) throw Error("score_pair: top_p must be >= 1");
  const auto b = embed_terms(table, business_terms);
  const auto n = embed_terms(table, naics_terms);
  if (b.empty() || n.empty())
    throw Error("score_pair: term list empty after embedding lookup");
  std::vector<double> sims;
  sims.reserve(b.size() * n.size());
  for (const auto& bv : b)
    for (const auto& nv : n) sims.push_back(cosine(bv, nv));
  std::sort(sims.begin(), sims.end(), std::greater<double>());
  const std::size_t take = std::min<std::size_t>(top_p, sims.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < take; ++i) sum += sims[i];
  return sum / static_cast<double>(take);
}

std::vector<RankedIndustry> rank_industries(const BusinessProfile& profile,
                                            const std::vector<NaicsCode>& codes,
                                            const EmbeddingTable& table,
                                            const ClassifierConfig& cfg) {
  if (codes.empty()) throw Error("rank_industries: empty code list");
  const std::vector<std::string> business =
      truncated(profile.topic_words.empty() ? profile.categories : profile.topic_words,
                cfg.n_business_words);
  std::vector<RankedIndustry> out;
  out.reserve(codes.size());
  for (const auto& code : codes) {
    RankedIndustry r;
    r.code = code.code;
    try {
      r.score = score_pair(business, truncated(code.topic_words, cfg.n_naics_words),
                           table, cfg.top_p);
    } catch (const Error&) {
      r.score = kUnembeddableScore;
      r.unembeddable = true;
    }
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const RankedIndustry& a, const RankedIndustry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.code < b.code;
  });
  return out;
}

EvalReport evaluate(const std::vector<BusinessProfile>& profiles,
                    const std::vector<NaicsCode>& codes,
                    const EmbeddingTable& table, const ClassifierConfig& cfg,
                    const std::vector<std::size_t>& k_list) {
  std::size_t digit_level = 0;
  for (const auto& code : codes) {
    if (digit_level == 0) digit_level = code.code.size();
    if (code.code.size() != digit_level)
      throw Error("evaluate: inconsistent code digit levels");
  }
  std::vector<const BusinessProfile*> labeled;
  for (const auto& p : profiles)
    if (p.true_naics && p.true_naics->size() >= digit_level) labeled.push_back(&p);
  if (labeled.empty()) throw Error("evaluate: no labeled profiles");

  EvalReport report;
  report.caveat =
      "weak labels: NAICS codes are scraped/confirmed from external sources and "
      "may be limited or inaccurate";
  report.digit_level = digit_level;
  report.n_codes = codes.size();
  report.n_profiles = labeled.size();

  std::vector<std::size_t> hits(k_list.size(), 0);
  for (const BusinessProfile* p : labeled) {
    const auto ranked = rank_industries(*p, codes, table, cfg);
    const std::string truth = p->true_naics->substr(0, digit_level);
    std::size_t rank = ranked.size();
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (ranked[i].code == truth) {
        rank = i;
        break;
      }
    }
    for (std::size_t ki = 0; ki < k_list.size(); ++ki)
      if (rank < k_list[ki]) ++hits[ki];
  }
  for (std::size_t ki = 0; ki < k_list.size(); ++ki)
    report.topk_accuracy.emplace_back(
        k_list[ki], static_cast<double>(hits[ki]) / static_cast<double>(labeled.size()));
  return report;
}

std::vector<SweepPoint> sweep(const std::vector<BusinessProfile>& profiles,
                              const std::vector<NaicsCode>& codes,
                              const EmbeddingTable& table,
                              const std::vector<std::size_t>& naics_words_grid,
                              const std::vector<std::size_t>& business_words_grid,
                              const std::vector<std::size_t>& top_p_grid,
                              const std::vector<std::size_t>& k_list) {
  if (naics_words_grid.empty() || business_words_grid.empty() || top_p_grid.empty())
    throw Error("sweep: empty grid axis");
  std::vector<SweepPoint> out;
  for (std::size_t nw : naics_words_grid) {
    for (std::size_t bw : business_words_grid) {
      for (std::size_t p : top_p_grid) {
        ClassifierConfig cfg;
        cfg.n_naics_words = nw;
        cfg.n_business_words = bw;
        cfg.top_p = p;
        const EvalReport report = evaluate(profiles, codes, table, cfg, k_list);
        SweepPoint point;
        point.n_naics_words = nw;
        point.n_business_words = bw;
        point.top_p = p;
        point.topk_accuracy = report.topk_accuracy;
        out.push_back(std::move(point));
      }
    }
  }
  return out;
}

}  // namespace textmine
