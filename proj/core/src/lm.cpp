#include "textmine/lm.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "textmine/error.hpp"
#include "textmine/io.hpp"
#include "textmine/rng.hpp"

namespace textmine {

std::string NgramModel::join_context(const std::vector<std::string>& context) {
  std::string out;
  for (std::size_t i = 0; i < context.size(); ++i) {
    if (i) out.push_back(' ');
    out += context[i];
  }
  return out;
}

std::vector<std::string> NgramModel::padded(const std::vector<std::string>& tokens) const {
  std::vector<std::string> s;
  s.reserve(tokens.size() + order_);
  for (std::size_t i = 0; i + 1 < order_; ++i) s.push_back(kStartPad);
  s.insert(s.end(), tokens.begin(), tokens.end());
  s.push_back(kEndPad);
  return s;
}

NgramModel NgramModel::fit(const std::vector<std::vector<std::string>>& corpus,
                           std::size_t order, Smoothing smoothing, double add_k,
                           const std::map<std::string, double>& count_multipliers) {
  if (order < 1) throw Error("ngram fit: order must be >= 1");
  if (corpus.empty()) throw Error("ngram fit: empty corpus");
  NgramModel model;
  model.order_ = order;
  model.smoothing_ = smoothing;
  model.add_k_ = add_k;
  model.vocab_.insert(kEndPad);
  for (const auto& doc : corpus) {
    for (const auto& t : doc) model.vocab_.insert(t);
    const auto stream = model.padded(doc);
    for (std::size_t i = order - 1; i < stream.size(); ++i) {
      std::vector<std::string> context(stream.begin() + (i - (order - 1)),
                                       stream.begin() + i);
      const std::string ctx = join_context(context);
      double c = 1.0;
      if (!count_multipliers.empty()) {
        const std::string key = ctx.empty() ? stream[i] : ctx + " " + stream[i];
        auto it = count_multipliers.find(key);
        if (it != count_multipliers.end()) c = it->second;
      }
      model.counts_[ctx][stream[i]] += c;
      model.totals_[ctx] += c;
    }
  }
  return model;
}

double NgramModel::count(const std::vector<std::string>& context,
                         const std::string& term) const {
  auto it = counts_.find(join_context(context));
  if (it == counts_.end()) return 0.0;
  auto jt = it->second.find(term);
  return jt == it->second.end() ? 0.0 : jt->second;
}

double NgramModel::context_total(const std::vector<std::string>& context) const {
  auto it = totals_.find(join_context(context));
  return it == totals_.end() ? 0.0 : it->second;
}

double NgramModel::cond_prob(const std::vector<std::string>& context,
                             const std::string& term) const {
  if (context.size() != order_ - 1)
    throw Error("cond_prob: context must have order-1 terms");
  const std::string ctx = join_context(context);
  auto it = totals_.find(ctx);
  const double total = (it == totals_.end()) ? 0.0 : it->second;
  double c = 0.0;
  if (auto ct = counts_.find(ctx); ct != counts_.end()) {
    auto jt = ct->second.find(term);
    if (jt != ct->second.end()) c = jt->second;
  }
  if (smoothing_ == Smoothing::mle) {
    if (total == 0.0) throw Error("cond_prob: zero-context '" + ctx + "' under MLE");
    return c / total;
  }
  const double v = static_cast<double>(vocab_.size());
  return (c + add_k_) / (total + add_k_ * v);
}

LogProb NgramModel::doc_log_prob(const std::vector<std::string>& tokens) const {
  const auto stream = padded(tokens);
  double sum = 0.0;
  for (std::size_t i = order_ - 1; i < stream.size(); ++i) {
    std::vector<std::string> context(stream.begin() + (i - (order_ - 1)),
                                     stream.begin() + i);
    double p = 0.0;
    try {
      p = cond_prob(context, stream[i]);
    } catch (const Error&) {
      return {0.0, true};  // unseen context under MLE
    }
    if (p <= 0.0) return {0.0, true};
    sum += std::log(p);
  }
  return {sum, false};
}

double NgramModel::perplexity(const std::vector<std::vector<std::string>>& corpus) const {
  if (corpus.empty()) throw Error("perplexity: empty corpus");
  double log_sum = 0.0;
  std::size_t predicted = 0;
  for (const auto& doc : corpus) {
    const LogProb lp = doc_log_prob(doc);
    if (lp.impossible) return std::numeric_limits<double>::infinity();
    log_sum += lp.value;
    predicted += doc.size() + 1;  // tokens plus the end pad
  }
  return std::exp(-log_sum / static_cast<double>(predicted));
}

std::vector<std::string> NgramModel::generate(const std::vector<std::string>& seed_context,
                                              std::size_t max_len,
                                              std::uint64_t rng_seed) const {
  std::vector<std::string> context = seed_context;
  if (context.size() + 1 < order_)
    context.insert(context.begin(), order_ - 1 - context.size(), kStartPad);
  if (context.size() + 1 > order_)
    context.erase(context.begin(), context.begin() + (context.size() - (order_ - 1)));
  if (order_ > 1 && totals_.find(join_context(context)) == totals_.end())
    throw Error("generate: unseen seed context");

  Rng rng(rng_seed);
  std::vector<std::string> out;
  while (out.size() < max_len) {
    auto it = counts_.find(join_context(context));
    std::vector<std::string> terms;
    std::vector<double> weights;
    if (smoothing_ == Smoothing::mle) {
      if (it == counts_.end()) throw Error("generate: zero-context under MLE");
      for (const auto& [t, c] : it->second) {
        terms.push_back(t);
        weights.push_back(c);
      }
    } else {
      for (const auto& t : vocab_) {
        terms.push_back(t);
        weights.push_back(cond_prob(context, t));
      }
    }
    const std::string& next = terms[rng.weighted(weights)];
    if (next == kEndPad) break;
    out.push_back(next);
    if (order_ > 1) {
      context.erase(context.begin());
      context.push_back(next);
    }
  }
  return out;
}

void NgramModel::dump(std::ostream& out) const {
  for (const auto& [ctx, terms] : counts_)
    for (const auto& [term, c] : terms)
      out << ctx << "\t" << term << "\t" << format_double(c) << "\n";
}

NgramModel NgramModel::load(std::istream& in, Smoothing smoothing, double add_k) {
  NgramModel model;
  model.smoothing_ = smoothing;
  model.add_k_ = add_k;
  std::string line;
  std::size_t lineno = 0;
  std::size_t max_context_len = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = (tab1 == std::string::npos) ? std::string::npos
                                                  : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos)
      throw DataError("ngram load: malformed line " + std::to_string(lineno));
    const std::string ctx = line.substr(0, tab1);
    const std::string term = line.substr(tab1 + 1, tab2 - tab1 - 1);
    double c = 0.0;
    try {
      c = std::stod(line.substr(tab2 + 1));
    } catch (const std::exception&) {
      throw DataError("ngram load: bad count at line " + std::to_string(lineno));
    }
    model.counts_[ctx][term] += c;
    model.totals_[ctx] += c;
    if (term != kEndPad && term != kStartPad) model.vocab_.insert(term);
    if (!ctx.empty()) {
      std::size_t words = 1;
      for (char ch : ctx)
        if (ch == ' ') ++words;
      max_context_len = std::max(max_context_len, words);
    }
  }
  model.vocab_.insert(kEndPad);
  model.order_ = max_context_len + 1;
  return model;
}

}  // namespace textmine
