#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "textmine/mat.hpp"

namespace textmine {

struct EmbeddingTable {
  enum class Provenance { trained, loaded };
  std::size_t dim = 0;
  std::map<std::string, std::vector<double>> vectors;
  Provenance provenance = Provenance::trained;
};

struct TrainConfig {
  enum class Arch { cbow, skipgram };
  Arch arch = Arch::cbow;
  std::size_t window = 2;       // C context terms on each side
  std::size_t dim = 16;
  std::size_t negatives = 5;
  double lr_initial = 0.05;
  double lr_final = 1e-4;
  std::size_t epochs = 5;
  std::uint64_t seed = 1;
  std::size_t min_count = 1;
};

// One positive (input ids summed -> output id) plus sampled negatives.
// CBOW: inputs = context terms, output = center term.
// Skip-gram: inputs = {center term}, output = one context term.
struct NsExample {
  std::vector<std::size_t> inputs;
  std::size_t output = 0;
  std::vector<std::size_t> negatives;
};

// Negative-sampling loss and its analytic gradients, exposed separately so
// they can be checked against finite differences.
double ns_loss(const Mat& in_vecs, const Mat& out_vecs, const NsExample& ex);
void ns_gradient(const Mat& in_vecs, const Mat& out_vecs, const NsExample& ex,
                 Mat& grad_in, Mat& grad_out);

// Sequential SGD, deterministic given cfg.seed. Input vectors become the
// published table; context vectors stay internal. Per-epoch mean losses are
// appended to epoch_losses when given.
EmbeddingTable train_word2vec(const std::vector<std::vector<std::string>>& corpus,
                              const TrainConfig& cfg,
                              std::vector<double>* epoch_losses = nullptr);

// Throws Error on zero-norm input.
double cosine(std::span<const double> u, std::span<const double> v);

// Descending cosine, query excluded, lexicographic tie-break.
std::vector<std::pair<std::string, double>> nearest(const EmbeddingTable& table,
                                                    const std::string& term,
                                                    std::size_t k);

struct PcaModel {
  std::vector<double> mean;
  Mat components;  // k x dim, orthonormal rows
  std::vector<double> explained_variance;  // descending
};

PcaModel pca_fit(const Mat& rows, std::size_t k);
Mat pca_transform(const PcaModel& model, const Mat& rows);

// Text format: "<term_count> <dim>" header, then "term v1 ... vdim".
// Values round-trip at 9 significant digits.
void save_embeddings(const EmbeddingTable& table, std::ostream& out);
EmbeddingTable load_embeddings(std::istream& in);
void save_embeddings_file(const EmbeddingTable& table, const std::string& path);
EmbeddingTable load_embeddings_file(const std::string& path);

}  // namespace textmine
