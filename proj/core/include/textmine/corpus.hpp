#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "textmine/text.hpp"

namespace textmine {

struct RawDocument {
  std::string id;
  std::string text;
  std::map<std::string, std::string> meta;
};

struct ProcessedDocument {
  std::string id;
  std::vector<std::string> tokens;
};

// Bijective term <-> dense-id map, ids assigned in first-occurrence order.
class Dictionary {
 public:
  // Returns the id, inserting the term if unseen.
  std::size_t add(const std::string& term);
  // Throws Error for unknown terms.
  std::size_t id_of(const std::string& term) const;
  const std::string& term_of(std::size_t id) const;
  bool contains(const std::string& term) const;
  std::size_t size() const { return id_to_term_.size(); }
  const std::vector<std::string>& terms() const { return id_to_term_; }

 private:
  std::map<std::string, std::size_t> term_to_id_;
  std::vector<std::string> id_to_term_;
};

// clean -> tokenize -> stopword removal -> normalizer, in that order.
ProcessedDocument preprocess(const RawDocument& doc, const PipelineConfig& cfg);

// Throws Error on an empty corpus or one with no tokens at all.
Dictionary build_dictionary(const std::vector<ProcessedDocument>& docs);

}  // namespace textmine
