#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "textmine/corpus.hpp"
#include "textmine/mat.hpp"

namespace textmine {

struct LdaConfig {
  std::size_t topics = 2;
  double alpha = 0.0;  // 0 = default 50 / topics
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::size_t burn_in = 200;
  std::uint64_t seed = 1;
};

// Collapsed Gibbs sampler. phi/theta come from averaged post-burn-in counts
// with Dirichlet smoothing.
class LdaModel {
 public:
  static LdaModel fit(const std::vector<ProcessedDocument>& corpus,
                      const Dictionary& dict, const LdaConfig& cfg);

  std::size_t topics() const { return phi_.rows(); }
  const Mat& phi() const { return phi_; }      // Z x m
  const Mat& theta() const { return theta_; }  // n x Z
  const Dictionary& dictionary() const { return dict_; }
  const std::vector<std::vector<std::size_t>>& assignments() const {
    return assignments_;
  }

  // Descending probability, lexicographic tie-break.
  std::vector<std::pair<std::string, double>> topic_words(std::size_t topic,
                                                          std::size_t w) const;

  struct Inference {
    std::vector<double> theta;
    bool no_known_tokens = false;
  };
  // Gibbs with phi frozen; unknown-only documents get the uniform vector.
  Inference infer(const std::vector<std::string>& tokens,
                  std::size_t iterations = 100, std::size_t burn_in = 20,
                  std::uint64_t seed = 1) const;

 private:
  Mat phi_;
  Mat theta_;
  Dictionary dict_;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  std::vector<std::vector<std::size_t>> assignments_;
};

struct RakeConfig {
  std::set<std::string> stopwords;
  std::string delimiters = ".,;:!?()[]{}\"'/|";
  enum class Metric { degree, frequency, ratio } metric = Metric::ratio;
  std::size_t max_phrase_len = 8;  // longer candidate runs are discarded
};

struct Keyword {
  std::vector<std::string> phrase;
  double score = 0.0;
};

// Candidates are maximal stopword/delimiter-free token runs. Word score is
// degree, frequency, or their ratio; phrase score is the sum of word scores.
std::vector<Keyword> rake_extract(const std::string& text, const RakeConfig& cfg);

struct BusinessTopicWords {
  std::vector<std::string> terms;
  bool empty_sources = false;
};

// Union of LDA topic words over the review corpus and RAKE keyword unigrams
// from the description, scores min-max normalized per source, truncated to w.
BusinessTopicWords business_topic_words(const std::vector<ProcessedDocument>& reviews,
                                        const std::string& description,
                                        const LdaConfig& lda_cfg,
                                        const RakeConfig& rake_cfg, std::size_t w);

}  // namespace textmine
