#include "textmine/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "textmine/error.hpp"
#include "textmine/rng.hpp"

namespace textmine {

SentimentScore score(const std::vector<std::string>& tokens,
                     const SentimentLexicon& lexicon, ScoreMode mode) {
  if (lexicon.empty()) throw Error("sentiment score: empty lexicon");
  if (tokens.empty()) return {0.0, true};
  double sum = 0.0;
  std::size_t matched = 0;
  for (const auto& t : tokens) {
    auto it = lexicon.find(t);
    if (it != lexicon.end()) {
      sum += it->second;
      ++matched;
    }
  }
  if (mode == ScoreMode::all_words)
    return {sum / static_cast<double>(tokens.size()), matched == 0};
  if (matched == 0) return {0.0, true};
  return {sum / static_cast<double>(matched), false};
}

KsResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw Error("ks_two_sample: empty sample");
  std::vector<double> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double n1 = static_cast<double>(sa.size());
  const double n2 = static_cast<double>(sb.size());

  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= x) ++i;
    while (j < sb.size() && sb[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }

  KsResult r;
  r.statistic = d;
  r.n1 = sa.size();
  r.n2 = sb.size();
  if (d == 0.0) {
    r.p_value = 1.0;
    return r;
  }
  const double ne = n1 * n2 / (n1 + n2);
  const double lambda = std::sqrt(ne) * d;
  double p = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    p += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  r.p_value = std::clamp(p, 0.0, 1.0);
  return r;
}

GroupCompareReport compare_groups(const std::vector<RawDocument>& docs,
                                  const PipelineConfig& pipeline,
                                  const SentimentLexicon& lexicon,
                                  const GroupCompareOptions& opts) {
  if (opts.group_key.empty()) throw Error("compare_groups: group_key required");
  GroupCompareReport report;

  // every observed group gets a sample list, even when the filter empties it,
  // so skipped pairs stay visible downstream
  std::map<std::string, std::vector<const RawDocument*>> groups;
  for (const auto& doc : docs) {
    auto git = doc.meta.find(opts.group_key);
    if (git == doc.meta.end()) continue;
    groups[git->second];
    if (!opts.filter_key.empty()) {
      auto fit = doc.meta.find(opts.filter_key);
      if (fit == doc.meta.end() || fit->second != opts.filter_value) continue;
    }
    groups[git->second].push_back(&doc);
  }

  for (auto& [group, members] : groups) {
    if (opts.sample_size > 0 && members.size() > opts.sample_size) {
      // deterministic partial Fisher-Yates on the (already id-ordered) list
      Rng rng(opts.seed);
      for (std::size_t i = 0; i < opts.sample_size; ++i) {
        const std::size_t j = i + rng.uniform_int(members.size() - i);
        std::swap(members[i], members[j]);
      }
      members.resize(opts.sample_size);
    }
    std::vector<double> polarities;
    polarities.reserve(members.size());
    for (const RawDocument* doc : members) {
      const ProcessedDocument p = preprocess(*doc, pipeline);
      polarities.push_back(score(p.tokens, lexicon, opts.mode).value);
    }
    report.samples[group] = std::move(polarities);
  }

  for (auto it1 = report.samples.begin(); it1 != report.samples.end(); ++it1) {
    for (auto it2 = std::next(it1); it2 != report.samples.end(); ++it2) {
      GroupPairResult pair;
      pair.group1 = it1->first;
      pair.group2 = it2->first;
      if (it1->second.empty() || it2->second.empty()) {
        pair.skipped = true;
        pair.warning = "group with zero scored documents";
      } else {
        pair.ks = ks_two_sample(it1->second, it2->second);
      }
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

SentimentLexicon load_lexicon(std::istream& in) {
  SentimentLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError("lexicon: missing tab at line " + std::to_string(lineno));
    double polarity = 0.0;
    try {
      polarity = std::stod(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw DataError("lexicon: bad polarity at line " + std::to_string(lineno));
    }
    if (polarity < -1.0 || polarity > 1.0)
      throw DataError("lexicon: polarity out of [-1,1] at line " + std::to_string(lineno));
    lex[line.substr(0, tab)] = polarity;
  }
  return lex;
}

SentimentLexicon load_sentiwordnet(std::istream& in) {
  // columns: POS <TAB> ID <TAB> PosScore <TAB> NegScore <TAB> SynsetTerms <TAB> Gloss
  std::map<std::string, std::pair<double, std::size_t>> sums;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (std::size_t pos = 0; (pos = line.find('\t', start)) != std::string::npos;
         start = pos + 1)
      cols.push_back(line.substr(start, pos - start));
    cols.push_back(line.substr(start));
    if (cols.size() < 5)
      throw DataError("sentiwordnet: too few columns at line " + std::to_string(lineno));
    double pos_score = 0.0, neg_score = 0.0;
    try {
      pos_score = std::stod(cols[2]);
      neg_score = std::stod(cols[3]);
    } catch (const std::exception&) {
      throw DataError("sentiwordnet: bad score at line " + std::to_string(lineno));
    }
    std::istringstream terms(cols[4]);
    std::string entry;
    while (terms >> entry) {
      const auto hash = entry.find('#');
      const std::string term = (hash == std::string::npos) ? entry : entry.substr(0, hash);
      if (term.empty()) continue;
      auto& [sum, count] = sums[term];
      sum += pos_score - neg_score;
      ++count;
    }
  }
  SentimentLexicon lex;
  for (const auto& [term, agg] : sums)
    lex[term] = std::clamp(agg.first / static_cast<double>(agg.second), -1.0, 1.0);
  return lex;
}

}  // namespace textmine
