#include "textmine/topics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "textmine/error.hpp"
#include "textmine/rng.hpp"

namespace textmine {

LdaModel LdaModel::fit(const std::vector<ProcessedDocument>& corpus,
                       const Dictionary& dict, const LdaConfig& cfg) {
  if (cfg.topics < 2) throw Error("lda_fit: need at least 2 topics");
  if (corpus.empty()) throw Error("lda_fit: empty corpus");
  if (cfg.beta <= 0.0) throw Error("lda_fit: beta must be positive");
  const std::size_t z = cfg.topics;
  const std::size_t m = dict.size();
  const std::size_t n = corpus.size();
  const double alpha = (cfg.alpha > 0.0) ? cfg.alpha : 50.0 / static_cast<double>(z);
  const double beta = cfg.beta;

  // token id streams
  std::vector<std::vector<std::size_t>> docs(n);
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& t : corpus[j].tokens) docs[j].push_back(dict.id_of(t));

  std::vector<std::vector<std::size_t>> assign(n);
  std::vector<std::vector<long long>> doc_topic(n, std::vector<long long>(z, 0));
  std::vector<std::vector<long long>> topic_word(z, std::vector<long long>(m, 0));
  std::vector<long long> topic_total(z, 0);

  Rng rng(cfg.seed);
  for (std::size_t j = 0; j < n; ++j) {
    assign[j].resize(docs[j].size());
    for (std::size_t i = 0; i < docs[j].size(); ++i) {
      const std::size_t k = rng.uniform_int(z);
      assign[j][i] = k;
      ++doc_topic[j][k];
      ++topic_word[k][docs[j][i]];
      ++topic_total[k];
    }
  }

  std::vector<double> p(z);
  std::vector<double> phi_acc(z * m, 0.0);
  std::vector<double> theta_acc(n * z, 0.0);
  std::size_t samples = 0;

  for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < docs[j].size(); ++i) {
        const std::size_t w = docs[j][i];
        const std::size_t old = assign[j][i];
        --doc_topic[j][old];
        --topic_word[old][w];
        --topic_total[old];
        for (std::size_t k = 0; k < z; ++k) {
          p[k] = (static_cast<double>(topic_word[k][w]) + beta) /
                 (static_cast<double>(topic_total[k]) + beta * static_cast<double>(m)) *
                 (static_cast<double>(doc_topic[j][k]) + alpha);
        }
        const std::size_t k = rng.weighted(p);
        assign[j][i] = k;
        ++doc_topic[j][k];
        ++topic_word[k][w];
        ++topic_total[k];
      }
    }
    if (iter >= cfg.burn_in) {
      ++samples;
      for (std::size_t k = 0; k < z; ++k)
        for (std::size_t w = 0; w < m; ++w)
          phi_acc[k * m + w] += static_cast<double>(topic_word[k][w]);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < z; ++k)
          theta_acc[j * z + k] += static_cast<double>(doc_topic[j][k]);
    }
  }
  if (samples == 0) {
    // all iterations were burn-in; fall back to the final state
    ++samples;
    for (std::size_t k = 0; k < z; ++k)
      for (std::size_t w = 0; w < m; ++w)
        phi_acc[k * m + w] += static_cast<double>(topic_word[k][w]);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < z; ++k)
        theta_acc[j * z + k] += static_cast<double>(doc_topic[j][k]);
  }

  LdaModel model;
  model.dict_ = dict;
  model.alpha_ = alpha;
  model.beta_ = beta;
  model.assignments_ = std::move(assign);
  model.phi_ = Mat(z, m);
  model.theta_ = Mat(n, z);
  const double inv_samples = 1.0 / static_cast<double>(samples);
  for (std::size_t k = 0; k < z; ++k) {
    double row_sum = 0.0;
    for (std::size_t w = 0; w < m; ++w) {
      model.phi_(k, w) = phi_acc[k * m + w] * inv_samples + beta;
      row_sum += model.phi_(k, w);
    }
    for (std::size_t w = 0; w < m; ++w) model.phi_(k, w) /= row_sum;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double row_sum = 0.0;
    for (std::size_t k = 0; k < z; ++k) {
      model.theta_(j, k) = theta_acc[j * z + k] * inv_samples + alpha;
      row_sum += model.theta_(j, k);
    }
    for (std::size_t k = 0; k < z; ++k) model.theta_(j, k) /= row_sum;
  }
  return model;
}

std::vector<std::pair<std::string, double>> LdaModel::topic_words(std::size_t topic,
                                                                  std::size_t w) const {
  if (topic >= phi_.rows()) throw Error("topic_words: topic out of range");
  std::vector<std::pair<std::string, double>> out;
  out.reserve(phi_.cols());
  for (std::size_t i = 0; i < phi_.cols(); ++i)
    out.emplace_back(dict_.term_of(i), phi_(topic, i));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (out.size() > w) out.resize(w);
  return out;
}

LdaModel::Inference LdaModel::infer(const std::vector<std::string>& tokens,
                                    std::size_t iterations, std::size_t burn_in,
                                    std::uint64_t seed) const {
  const std::size_t z = phi_.rows();
  std::vector<std::size_t> ids;
  for (const auto& t : tokens)
    if (dict_.contains(t)) ids.push_back(dict_.id_of(t));
  if (ids.empty()) {
    Inference inf;
    inf.theta.assign(z, 1.0 / static_cast<double>(z));
    inf.no_known_tokens = true;
    return inf;
  }

  Rng rng(seed);
  std::vector<std::size_t> assign(ids.size());
  std::vector<long long> doc_topic(z, 0);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    assign[i] = rng.uniform_int(z);
    ++doc_topic[assign[i]];
  }
  std::vector<double> p(z);
  std::vector<double> acc(z, 0.0);
  std::size_t samples = 0;
  for (std::size_t iter = 0; iter < iterations; ++iter) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      --doc_topic[assign[i]];
      for (std::size_t k = 0; k < z; ++k)
        p[k] = phi_(k, ids[i]) * (static_cast<double>(doc_topic[k]) + alpha_);
      assign[i] = rng.weighted(p);
      ++doc_topic[assign[i]];
    }
    if (iter >= burn_in) {
      ++samples;
      for (std::size_t k = 0; k < z; ++k) acc[k] += static_cast<double>(doc_topic[k]);
    }
  }
  if (samples == 0) {
    ++samples;
    for (std::size_t k = 0; k < z; ++k) acc[k] += static_cast<double>(doc_topic[k]);
  }
  Inference inf;
  inf.theta.assign(z, 0.0);
  double row_sum = 0.0;
  for (std::size_t k = 0; k < z; ++k) {
    inf.theta[k] = acc[k] / static_cast<double>(samples) + alpha_;
    row_sum += inf.theta[k];
  }
  for (auto& x : inf.theta) x /= row_sum;
  return inf;
}

std::vector<Keyword> rake_extract(const std::string& text, const RakeConfig& cfg) {
  if (cfg.max_phrase_len < 1) throw Error("rake: max phrase length must be >= 1");

  // split into candidate phrases on delimiters and stopwords
  std::vector<std::vector<std::string>> candidates;
  std::vector<std::string> current;
  std::string word;
  auto flush_word = [&] {
    if (word.empty()) return;
    std::string lower = word;
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    word.clear();
    if (cfg.stopwords.count(lower)) {
      if (!current.empty()) candidates.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(std::move(lower));
    }
  };
  auto flush_phrase = [&] {
    flush_word();
    if (!current.empty()) candidates.push_back(std::move(current));
    current.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush_word();
    } else if (cfg.delimiters.find(c) != std::string::npos) {
      flush_phrase();
    } else {
      word.push_back(c);
    }
  }
  flush_phrase();

  candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                  [&](const auto& c) {
                                    return c.size() > cfg.max_phrase_len;
                                  }),
                   candidates.end());

  // word frequency and degree over the candidate set
  std::map<std::string, double> freq;
  std::map<std::string, double> deg;
  for (const auto& cand : candidates) {
    for (const auto& w : cand) {
      freq[w] += 1.0;
      deg[w] += static_cast<double>(cand.size());
    }
  }
  auto word_score = [&](const std::string& w) {
    switch (cfg.metric) {
      case RakeConfig::Metric::degree:
        return deg[w];
      case RakeConfig::Metric::frequency:
        return freq[w];
      case RakeConfig::Metric::ratio:
        return deg[w] / freq[w];
    }
    return 0.0;
  };

  // deduplicate phrases, keep scores
  std::map<std::vector<std::string>, double> scored;
  for (const auto& cand : candidates) {
    double s = 0.0;
    for (const auto& w : cand) s += word_score(w);
    scored[cand] = s;
  }
  std::vector<Keyword> out;
  out.reserve(scored.size());
  for (auto& [phrase, s] : scored) out.push_back({phrase, s});
  std::stable_sort(out.begin(), out.end(), [](const Keyword& a, const Keyword& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.phrase < b.phrase;
  });
  return out;
}

BusinessTopicWords business_topic_words(const std::vector<ProcessedDocument>& reviews,
                                        const std::string& description,
                                        const LdaConfig& lda_cfg,
                                        const RakeConfig& rake_cfg, std::size_t w) {
  std::map<std::string, double> lda_scores;
  std::map<std::string, double> rake_scores;

  std::vector<ProcessedDocument> nonempty;
  for (const auto& d : reviews)
    if (!d.tokens.empty()) nonempty.push_back(d);

  if (!nonempty.empty()) {
    const Dictionary dict = build_dictionary(nonempty);
    if (dict.size() >= 1) {
      const LdaModel lda = LdaModel::fit(nonempty, dict, lda_cfg);
      for (std::size_t k = 0; k < lda.topics(); ++k) {
        for (const auto& [term, prob] : lda.topic_words(k, w)) {
          auto it = lda_scores.find(term);
          if (it == lda_scores.end() || it->second < prob) lda_scores[term] = prob;
        }
      }
    }
  }
  if (!description.empty()) {
    for (const Keyword& kw : rake_extract(description, rake_cfg)) {
      for (const auto& unigram : kw.phrase) {
        auto it = rake_scores.find(unigram);
        if (it == rake_scores.end() || it->second < kw.score)
          rake_scores[unigram] = kw.score;
      }
    }
  }

  if (lda_scores.empty() && rake_scores.empty()) return {{}, true};

  // min-max normalize each source so the scores are comparable
  auto normalize = [](std::map<std::string, double>& scores) {
    if (scores.empty()) return;
    double lo = scores.begin()->second, hi = scores.begin()->second;
    for (const auto& [_, s] : scores) {
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    for (auto& [_, s] : scores) s = (hi > lo) ? (s - lo) / (hi - lo) : 1.0;
  };
  normalize(lda_scores);
  normalize(rake_scores);

  std::map<std::string, double> merged = lda_scores;
  for (const auto& [term, s] : rake_scores) {
    auto it = merged.find(term);
    if (it == merged.end() || it->second < s) merged[term] = s;
  }
  std::vector<std::pair<std::string, double>> ranked(merged.begin(), merged.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > w) ranked.resize(w);
  BusinessTopicWords out;
  for (auto& [term, _] : ranked) out.terms.push_back(term);
  return out;
}

}  // namespace textmine
