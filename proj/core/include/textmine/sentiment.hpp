#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "textmine/corpus.hpp"

namespace textmine {

// term -> polarity in [-1, 1]
using SentimentLexicon = std::map<std::string, double>;

enum class ScoreMode {
  all_words,          // unmatched tokens count as zeros
  lexicon_words_only  // mean over matched tokens only
};

struct SentimentScore {
  double value = 0.0;
  bool no_signal = false;  // no tokens, or no lexicon match
};

SentimentScore score(const std::vector<std::string>& tokens,
                     const SentimentLexicon& lexicon, ScoreMode mode);

struct KsResult {
  double statistic = 0.0;  // D in [0, 1]
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

// Two-sample Kolmogorov-Smirnov. D is the max ECDF gap; the p-value comes
// from the asymptotic series Q(lambda) = 2 sum (-1)^(j-1) exp(-2 j^2 lambda^2)
// with lambda = sqrt(n1 n2 / (n1 + n2)) * D, truncated at |term| < 1e-12.
KsResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);

struct GroupCompareOptions {
  std::string group_key;          // meta field to group by
  std::string filter_key;         // optional meta predicate, empty = none
  std::string filter_value;
  std::size_t sample_size = 0;    // 0 = use all matching documents per group
  std::uint64_t seed = 1;
  ScoreMode mode = ScoreMode::lexicon_words_only;
};

struct GroupPairResult {
  std::string group1;
  std::string group2;
  KsResult ks;
  bool skipped = false;
  std::string warning;
};

struct GroupCompareReport {
  std::map<std::string, std::vector<double>> samples;  // group -> polarities
  std::vector<GroupPairResult> pairs;
};

GroupCompareReport compare_groups(const std::vector<RawDocument>& docs,
                                  const PipelineConfig& pipeline,
                                  const SentimentLexicon& lexicon,
                                  const GroupCompareOptions& opts);

// "term<TAB>polarity" per line.
SentimentLexicon load_lexicon(std::istream& in);
// SentiWordNet 3.x layout: POS, id, PosScore, NegScore, "term#rank ..." terms.
// Per-term polarity = mean over synsets of PosScore - NegScore.
SentimentLexicon load_sentiwordnet(std::istream& in);

}  // namespace textmine
