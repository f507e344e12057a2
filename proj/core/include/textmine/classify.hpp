#pragma once

#include <optional>
#include <string>
#include <vector>

#include "textmine/embed.hpp"

namespace textmine {

struct BusinessProfile {
  std::string id;
  std::vector<std::string> categories;   // InsurTech-style category terms
  std::vector<std::string> topic_words;  // enriched term list used for scoring
  std::optional<std::string> true_naics; // weak label, 2/4/6 digits
  std::string description;
  std::vector<std::string> reviews;
};

struct NaicsCode {
  std::string code;  // 2, 4, or 6 digits
  std::string title;
  std::string description;
  std::vector<std::string> topic_words;
};

struct ClassifierConfig {
  std::size_t n_naics_words = 20;
  std::size_t n_business_words = 16;
  std::size_t top_p = 84;
  bool enrichment = true;
};

// Codes whose terms have no embedding sort last with this sentinel.
inline constexpr double kUnembeddableScore = -2.0;

// Multi-word terms absent from the table as a unit are embedded as the mean
// of their word vectors; returns nullopt when nothing is covered.
std::optional<std::vector<double>> term_vector(const EmbeddingTable& table,
                                               const std::string& term);

// Candidates ranked by max cosine to any existing category term (or kept in
// given order when there are no categories), appended until n terms.
// warning_count, when given, receives the number of dropped un-embeddable
// terms. Throws Error if nothing on the profile side is embeddable.
BusinessProfile enrich_profile(const BusinessProfile& profile,
                               const std::vector<std::string>& candidates,
                               const EmbeddingTable& table,
                               std::size_t n_business_words,
                               std::size_t* warning_count = nullptr);

// Mean of the top min(top_p, |B| * |N|) pairwise cosines.
double score_pair(const std::vector<std::string>& business_terms,
                  const std::vector<std::string>& naics_terms,
                  const EmbeddingTable& table, std::size_t top_p);

struct RankedIndustry {
  std::string code;
  double score = 0.0;
  bool unembeddable = false;
};

std::vector<RankedIndustry> rank_industries(const BusinessProfile& profile,
                                            const std::vector<NaicsCode>& codes,
                                            const EmbeddingTable& table,
                                            const ClassifierConfig& cfg);

struct EvalReport {
  std::string caveat;  // weak-label warning, always present
  std::size_t digit_level = 0;
  std::size_t n_codes = 0;
  std::size_t n_profiles = 0;
  std::vector<std::pair<std::size_t, double>> topk_accuracy;  // (k, accuracy)
};

EvalReport evaluate(const std::vector<BusinessProfile>& profiles,
                    const std::vector<NaicsCode>& codes,
                    const EmbeddingTable& table, const ClassifierConfig& cfg,
                    const std::vector<std::size_t>& k_list = {1, 2, 3});

struct SweepPoint {
  std::size_t n_naics_words = 0;
  std::size_t n_business_words = 0;
  std::size_t top_p = 0;
  std::vector<std::pair<std::size_t, double>> topk_accuracy;
};

std::vector<SweepPoint> sweep(const std::vector<BusinessProfile>& profiles,
                              const std::vector<NaicsCode>& codes,
                              const EmbeddingTable& table,
                              const std::vector<std::size_t>& naics_words_grid,
                              const std::vector<std::size_t>& business_words_grid,
                              const std::vector<std::size_t>& top_p_grid,
                              const std::vector<std::size_t>& k_list = {1, 2, 3});

}  // namespace textmine
