#include "textmine/corpus.hpp"

#include "textmine/error.hpp"

namespace textmine {

std::size_t Dictionary::add(const std::string& term) {
  auto it = term_to_id_.find(term);
  if (it != term_to_id_.end()) return it->second;
  const std::size_t id = id_to_term_.size();
  term_to_id_.emplace(term, id);
  id_to_term_.push_back(term);
  return id;
}

std::size_t Dictionary::id_of(const std::string& term) const {
  auto it = term_to_id_.find(term);
  if (it == term_to_id_.end()) throw Error("dictionary: unknown term '" + term + "'");
  return it->second;
}

const std::string& Dictionary::term_of(std::size_t id) const {
  if (id >= id_to_term_.size()) throw Error("dictionary: id out of range");
  return id_to_term_[id];
}

bool Dictionary::contains(const std::string& term) const {
  return term_to_id_.count(term) != 0;
}

ProcessedDocument preprocess(const RawDocument& doc, const PipelineConfig& cfg) {
  ProcessedDocument out;
  out.id = doc.id;
  auto tokens = tokenize(clean(doc.text, cfg));
  for (std::string& token : tokens) {
    if (cfg.stopwords.count(token)) continue;
    switch (cfg.normalizer) {
      case Normalizer::none:
        break;
      case Normalizer::porter_stem:
        token = stem_porter(token);
        break;
      case Normalizer::lemma:
        token = lemmatize(token, cfg.lemma_exceptions);
        break;
    }
    if (!token.empty()) out.tokens.push_back(std::move(token));
  }
  return out;
}

Dictionary build_dictionary(const std::vector<ProcessedDocument>& docs) {
  if (docs.empty()) throw Error("build_dictionary: empty corpus");
  Dictionary dict;
  for (const auto& doc : docs)
    for (const auto& token : doc.tokens) dict.add(token);
  if (dict.size() == 0) throw Error("build_dictionary: corpus has no vocabulary");
  return dict;
}

}  // namespace textmine
