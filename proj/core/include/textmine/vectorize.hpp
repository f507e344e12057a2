#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "textmine/corpus.hpp"
#include "textmine/mat.hpp"
#include "textmine/svd.hpp"

namespace textmine {

enum class Weighting { count, tfidf };

// Relative frequency N_td / N_d. Throws Error on an empty document.
double tf(const std::string& term, const ProcessedDocument& doc);

// ln(n / N_t), natural log. Throws Error if the term is absent from the
// corpus unless smooth_df is set, which adds one to every document
// frequency (and to n).
double idf(const std::string& term, const std::vector<ProcessedDocument>& corpus,
           bool smooth_df = false);

double tf_idf(const std::string& term, const ProcessedDocument& doc,
              const std::vector<ProcessedDocument>& corpus, bool smooth_df = false);

// rows = dictionary terms, cols = documents. Zero cells unstored.
SparseMatrix build_matrix(const std::vector<ProcessedDocument>& corpus,
                          const Dictionary& dict, Weighting weighting);

// Symmetric co-occurrence counts within a +-window context, diagonal excluded.
SparseMatrix build_term_term_matrix(const std::vector<ProcessedDocument>& corpus,
                                    const Dictionary& dict, std::size_t window = 2);

// Positive pointwise mutual information of a co-occurrence matrix.
SparseMatrix ppmi(const SparseMatrix& tt);

struct LsaModel {
  std::size_t k = 0;
  Mat u;                      // m x k, rows are reduced term vectors
  std::vector<double> sigma;  // descending
  Mat v;                      // n x k, rows are reduced document vectors
};

LsaModel lsa_fit(const SparseMatrix& a, std::size_t k);
Mat lsa_term_vectors(const LsaModel& model);
Mat lsa_doc_vectors(const LsaModel& model);

// Fold-in: sigma^-1 * U^T * x for a term-space vector of length m.
std::vector<double> lsa_project(const LsaModel& model, const std::vector<double>& x);

// MatrixMarket coordinate text format.
void write_matrix_market(const SparseMatrix& a, std::ostream& out);
SparseMatrix read_matrix_market(std::istream& in);

// Text serialization: dims header then row-major values.
void save_lsa(const LsaModel& model, std::ostream& out);
LsaModel load_lsa(std::istream& in);

}  // namespace textmine
