#include "textmine/text.hpp"

#include <cctype>
#include <regex>

namespace textmine {
namespace {

std::string to_lower_ascii(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_word_char(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '\'';
}

std::string collapse_whitespace(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> default_noise_patterns() {
  return {"<[^>]*>", R"([[:punct:]])", "[0-9]"};
}

std::string expand_contractions(const std::string& text,
                                const std::map<std::string, std::string>& map) {
  if (map.empty()) return text;
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_word_char(text[i])) {
      std::size_t j = i;
      while (j < text.size() && is_word_char(text[j])) ++j;
      const std::string word = text.substr(i, j - i);
      auto it = map.find(to_lower_ascii(word));
      out += (it == map.end()) ? word : it->second;
      i = j;
    } else {
      out.push_back(text[i]);
      ++i;
    }
  }
  return out;
}

std::string clean(const std::string& text, const PipelineConfig& cfg) {
  std::string s = expand_contractions(text, cfg.contraction_map);
  if (cfg.lowercase) s = to_lower_ascii(s);
  for (const std::string& pattern : cfg.noise_patterns) {
    const std::regex re(pattern);
    s = std::regex_replace(s, re, " ");
  }
  return collapse_whitespace(s);
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) tokens.push_back(text.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::string lemmatize(const std::string& word,
                      const std::map<std::string, std::string>& exceptions) {
  auto it = exceptions.find(word);
  if (it != exceptions.end()) return it->second;

  auto ends_with = [&](const char* suffix) {
    const std::size_t len = std::char_traits<char>::length(suffix);
    return word.size() >= len && word.compare(word.size() - len, len, suffix) == 0;
  };
  auto has_vowel = [](const std::string& s) {
    for (char c : s)
      if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return true;
    return false;
  };
  auto undouble = [](std::string s) {
    if (s.size() >= 2 && s[s.size() - 1] == s[s.size() - 2] &&
        s.back() != 'l' && s.back() != 's')
      s.pop_back();
    return s;
  };

  if (ends_with("ing") && word.size() > 4) {
    std::string stem = word.substr(0, word.size() - 3);
    if (has_vowel(stem)) return undouble(stem);
  }
  if (ends_with("ied") && word.size() > 4)
    return word.substr(0, word.size() - 3) + "y";
  if (ends_with("ed") && word.size() > 3) {
    std::string stem = word.substr(0, word.size() - 2);
    if (has_vowel(stem)) return undouble(stem);
  }
  if (ends_with("ies") && word.size() > 4)
    return word.substr(0, word.size() - 3) + "y";
  if ((ends_with("ses") || ends_with("xes") || ends_with("zes") ||
       ends_with("ches") || ends_with("shes")) &&
      word.size() > 3)
    return word.substr(0, word.size() - 2);
  if (ends_with("s") && !ends_with("ss") && !ends_with("us") && word.size() > 2)
    return word.substr(0, word.size() - 1);
  return word;
}

}  // namespace textmine
