#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace textmine {

enum class Smoothing { mle, add_k };

// Explicit "impossible" marker instead of a raw -inf.
struct LogProb {
  double value = 0.0;
  bool impossible = false;
};

// N-gram language model with MLE or add-k estimation. Documents are padded
// with N-1 start symbols and one end symbol, which makes per-context
// normalization exact.
class NgramModel {
 public:
  static constexpr const char* kStartPad = "<s>";
  static constexpr const char* kEndPad = "</s>";

  // Optional domain weighting: multiplies the count of a specific n-gram
  // (space-joined "context term" key) at fit time.
  static NgramModel fit(const std::vector<std::vector<std::string>>& corpus,
                        std::size_t order, Smoothing smoothing = Smoothing::mle,
                        double add_k = 1.0,
                        const std::map<std::string, double>& count_multipliers = {});

  std::size_t order() const { return order_; }
  Smoothing smoothing() const { return smoothing_; }

  // context has order-1 terms (empty for unigram). Throws Error on an
  // unseen context under MLE.
  double cond_prob(const std::vector<std::string>& context,
                   const std::string& term) const;

  LogProb doc_log_prob(const std::vector<std::string>& tokens) const;

  // exp(-sum log prob / predicted tokens); +inf when any document is
  // impossible under the model.
  double perplexity(const std::vector<std::vector<std::string>>& corpus) const;

  // Samples until the end pad or max_len tokens. Deterministic given seed.
  std::vector<std::string> generate(const std::vector<std::string>& seed_context,
                                    std::size_t max_len, std::uint64_t rng_seed) const;

  double count(const std::vector<std::string>& context, const std::string& term) const;
  double context_total(const std::vector<std::string>& context) const;
  // Vocabulary used for smoothing: corpus terms plus the end pad.
  const std::set<std::string>& vocabulary() const { return vocab_; }

  // Lines "context<TAB>term<TAB>count", context space-joined.
  void dump(std::ostream& out) const;
  // Order is inferred from the longest context. Smoothing is a caller choice.
  static NgramModel load(std::istream& in, Smoothing smoothing = Smoothing::mle,
                         double add_k = 1.0);

 private:
  std::size_t order_ = 1;
  Smoothing smoothing_ = Smoothing::mle;
  double add_k_ = 1.0;
  // context (space-joined) -> term -> count
  std::map<std::string, std::map<std::string, double>> counts_;
  std::map<std::string, double> totals_;
  std::set<std::string> vocab_;

  std::vector<std::string> padded(const std::vector<std::string>& tokens) const;
  static std::string join_context(const std::vector<std::string>& context);
};

}  // namespace textmine
