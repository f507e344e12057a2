#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace textmine {

enum class Normalizer { none, porter_stem, lemma };

struct PipelineConfig {
  // keys stored lowercase; matching is whole-token and case-insensitive
  std::map<std::string, std::string> contraction_map;
  bool lowercase = true;
  // ECMAScript regexes, applied in declared order; matches become a space
  std::vector<std::string> noise_patterns;
  std::set<std::string> stopwords;
  Normalizer normalizer = Normalizer::none;
  std::map<std::string, std::string> lemma_exceptions;
};

// Default noise filters: HTML tags, punctuation, digits.
std::vector<std::string> default_noise_patterns();

std::string expand_contractions(const std::string& text,
                                const std::map<std::string, std::string>& map);
std::string clean(const std::string& text, const PipelineConfig& cfg);
std::vector<std::string> tokenize(const std::string& text);

// Classic Porter (1980) stemmer. Non-alphabetic input returned unchanged.
std::string stem_porter(const std::string& word);

// Exception-table lookup, then plural/-ing/-ed suffix rules. No POS tagging.
std::string lemmatize(const std::string& word,
                      const std::map<std::string, std::string>& exceptions);

}  // namespace textmine
