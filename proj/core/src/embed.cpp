#include "textmine/embed.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "textmine/error.hpp"
#include "textmine/io.hpp"
#include "textmine/rng.hpp"
#include "textmine/svd.hpp"

namespace textmine {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// -ln sigmoid(x), stable for large |x|
double softplus_neg(double x) {
  if (x > 0.0) return std::log1p(std::exp(-x));
  return -x + std::log1p(std::exp(x));
}

std::vector<double> input_sum(const Mat& in_vecs, const NsExample& ex) {
  std::vector<double> h(in_vecs.cols(), 0.0);
  for (std::size_t id : ex.inputs) {
    const double* row = in_vecs.row(id);
    for (std::size_t d = 0; d < h.size(); ++d) h[d] += row[d];
  }
  return h;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double ns_loss(const Mat& in_vecs, const Mat& out_vecs, const NsExample& ex) {
  const std::vector<double> h = input_sum(in_vecs, ex);
  const std::size_t dim = h.size();
  double loss = softplus_neg(dot(out_vecs.row(ex.output), h.data(), dim));
  for (std::size_t neg : ex.negatives)
    loss += softplus_neg(-dot(out_vecs.row(neg), h.data(), dim));
  return loss;
}

void ns_gradient(const Mat& in_vecs, const Mat& out_vecs, const NsExample& ex,
                 Mat& grad_in, Mat& grad_out) {
  const std::vector<double> h = input_sum(in_vecs, ex);
  const std::size_t dim = h.size();
  std::vector<double> dh(dim, 0.0);

  const double g_pos = sigmoid(dot(out_vecs.row(ex.output), h.data(), dim)) - 1.0;
  {
    double* go = grad_out.row(ex.output);
    const double* uo = out_vecs.row(ex.output);
    for (std::size_t d = 0; d < dim; ++d) {
      go[d] += g_pos * h[d];
      dh[d] += g_pos * uo[d];
    }
  }
  for (std::size_t neg : ex.negatives) {
    const double g_neg = sigmoid(dot(out_vecs.row(neg), h.data(), dim));
    double* gn = grad_out.row(neg);
    const double* un = out_vecs.row(neg);
    for (std::size_t d = 0; d < dim; ++d) {
      gn[d] += g_neg * h[d];
      dh[d] += g_neg * un[d];
    }
  }
  for (std::size_t id : ex.inputs) {
    double* gi = grad_in.row(id);
    for (std::size_t d = 0; d < dim; ++d) gi[d] += dh[d];
  }
}

EmbeddingTable train_word2vec(const std::vector<std::vector<std::string>>& corpus,
                              const TrainConfig& cfg,
                              std::vector<double>* epoch_losses) {
  if (cfg.dim < 1 || cfg.window < 1 || cfg.negatives < 1 || cfg.epochs < 1)
    throw Error("word2vec: config values must be positive");
  if (cfg.lr_initial <= cfg.lr_final || cfg.lr_final < 0.0)
    throw Error("word2vec: need lr_initial > lr_final >= 0");

  // vocabulary with min-count cutoff, ids in first-occurrence order
  std::map<std::string, std::size_t> term_count;
  for (const auto& doc : corpus)
    for (const auto& t : doc) ++term_count[t];
  std::vector<std::string> id_to_term;
  std::map<std::string, std::size_t> term_to_id;
  for (const auto& doc : corpus) {
    for (const auto& t : doc) {
      if (term_count[t] < cfg.min_count) continue;
      if (term_to_id.emplace(t, id_to_term.size()).second) id_to_term.push_back(t);
    }
  }
  const std::size_t vocab = id_to_term.size();
  if (vocab < 2) throw Error("word2vec: vocabulary smaller than 2 terms");

  // id streams with out-of-vocabulary terms dropped
  std::vector<std::vector<std::size_t>> streams;
  std::size_t total_positions = 0;
  for (const auto& doc : corpus) {
    std::vector<std::size_t> s;
    for (const auto& t : doc) {
      auto it = term_to_id.find(t);
      if (it != term_to_id.end()) s.push_back(it->second);
    }
    total_positions += s.size();
    streams.push_back(std::move(s));
  }

  // negative-sampling distribution: unigram frequency ^ 0.75
  std::vector<double> neg_cdf(vocab, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < vocab; ++i) {
    acc += std::pow(static_cast<double>(term_count[id_to_term[i]]), 0.75);
    neg_cdf[i] = acc;
  }

  Rng rng(cfg.seed);
  Mat in_vecs(vocab, cfg.dim);
  Mat out_vecs(vocab, cfg.dim);
  const double init_range = 0.5 / static_cast<double>(cfg.dim);
  for (auto& x : in_vecs.data()) x = (rng.uniform01() * 2.0 - 1.0) * init_range;

  auto sample_negative = [&](std::size_t exclude) {
    for (;;) {
      const double r = rng.uniform01() * acc;
      const auto it = std::lower_bound(neg_cdf.begin(), neg_cdf.end(), r);
      const std::size_t id = static_cast<std::size_t>(it - neg_cdf.begin());
      if (id != exclude) return std::min(id, vocab - 1);
    }
  };

  const std::size_t total_updates = std::max<std::size_t>(1, cfg.epochs * total_positions);
  std::size_t update = 0;
  Mat grad_in(vocab, cfg.dim);
  Mat grad_out(vocab, cfg.dim);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    double epoch_loss = 0.0;
    std::size_t epoch_examples = 0;
    for (const auto& s : streams) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        const double progress = static_cast<double>(update) / static_cast<double>(total_updates);
        const double lr = cfg.lr_initial + (cfg.lr_final - cfg.lr_initial) * progress;
        ++update;

        std::vector<std::size_t> context;
        const std::size_t lo = (i >= cfg.window) ? i - cfg.window : 0;
        const std::size_t hi = std::min(s.size(), i + cfg.window + 1);
        for (std::size_t j = lo; j < hi; ++j)
          if (j != i) context.push_back(s[j]);
        if (context.empty()) continue;

        std::vector<NsExample> examples;
        if (cfg.arch == TrainConfig::Arch::cbow) {
          NsExample ex;
          ex.inputs = context;
          ex.output = s[i];
          for (std::size_t nn = 0; nn < cfg.negatives; ++nn)
            ex.negatives.push_back(sample_negative(s[i]));
          examples.push_back(std::move(ex));
        } else {
          for (std::size_t c : context) {
            NsExample ex;
            ex.inputs = {s[i]};
            ex.output = c;
            for (std::size_t nn = 0; nn < cfg.negatives; ++nn)
              ex.negatives.push_back(sample_negative(c));
            examples.push_back(std::move(ex));
          }
        }

        for (const NsExample& ex : examples) {
          epoch_loss += ns_loss(in_vecs, out_vecs, ex);
          ++epoch_examples;
          // sparse gradient application; only touched rows are reset
          ns_gradient(in_vecs, out_vecs, ex, grad_in, grad_out);
          for (std::size_t id : ex.inputs) {
            double* w = in_vecs.row(id);
            double* g = grad_in.row(id);
            for (std::size_t d = 0; d < cfg.dim; ++d) {
              w[d] -= lr * g[d];
              g[d] = 0.0;
            }
          }
          auto apply_out = [&](std::size_t id) {
            double* w = out_vecs.row(id);
            double* g = grad_out.row(id);
            for (std::size_t d = 0; d < cfg.dim; ++d) {
              w[d] -= lr * g[d];
              g[d] = 0.0;
            }
          };
          apply_out(ex.output);
          for (std::size_t neg : ex.negatives) apply_out(neg);
        }
      }
    }
    if (epoch_losses)
      epoch_losses->push_back(epoch_examples ? epoch_loss / static_cast<double>(epoch_examples)
                                             : 0.0);
  }

  EmbeddingTable table;
  table.dim = cfg.dim;
  table.provenance = EmbeddingTable::Provenance::trained;
  for (std::size_t i = 0; i < vocab; ++i) {
    const double* row = in_vecs.row(i);
    table.vectors[id_to_term[i]].assign(row, row + cfg.dim);
  }
  return table;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error("cosine: dimension mismatch");
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uu += u[i] * u[i];
    vv += v[i] * v[i];
    uv += u[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw Error("cosine: zero vector");
  double c = uv / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(c, -1.0, 1.0);
}

std::vector<std::pair<std::string, double>> nearest(const EmbeddingTable& table,
                                                    const std::string& term,
                                                    std::size_t k) {
  auto it = table.vectors.find(term);
  if (it == table.vectors.end()) throw Error("nearest: unknown term '" + term + "'");
  if (k < 1) throw Error("nearest: k must be >= 1");
  std::vector<std::pair<std::string, double>> scored;
  for (const auto& [t, v] : table.vectors) {
    if (t == term) continue;
    scored.emplace_back(t, cosine(it->second, v));
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

PcaModel pca_fit(const Mat& rows, std::size_t k) {
  if (rows.rows() < 2) throw Error("pca_fit: need at least 2 rows");
  if (k < 1 || k > rows.cols()) throw Error("pca_fit: k out of range");
  PcaModel model;
  model.mean.assign(rows.cols(), 0.0);
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) model.mean[j] += rows(i, j);
  for (auto& m : model.mean) m /= static_cast<double>(rows.rows());

  Mat centered(rows.rows(), rows.cols());
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j)
      centered(i, j) = rows(i, j) - model.mean[j];

  SvdResult s = svd_truncated(centered, std::min(k, std::min(rows.rows(), rows.cols())));
  const std::size_t kk = s.sigma.size();
  model.components = Mat(k, rows.cols());
  model.explained_variance.assign(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    if (c < kk) {
      for (std::size_t j = 0; j < rows.cols(); ++j)
        model.components(c, j) = s.v(j, c);
      model.explained_variance[c] =
          s.sigma[c] * s.sigma[c] / static_cast<double>(rows.rows() - 1);
    } else {
      // rank-deficient data: pad with zero-variance directions orthogonal to
      // the components already chosen
      const std::size_t dim = rows.cols();
      for (std::size_t basis = 0; basis < dim; ++basis) {
        std::vector<double> cand(dim, 0.0);
        cand[basis] = 1.0;
        for (std::size_t p = 0; p < c; ++p) {
          double d = 0.0;
          for (std::size_t j = 0; j < dim; ++j) d += cand[j] * model.components(p, j);
          for (std::size_t j = 0; j < dim; ++j) cand[j] -= d * model.components(p, j);
        }
        double norm = 0.0;
        for (double x : cand) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 1e-8) {
          for (std::size_t j = 0; j < dim; ++j) model.components(c, j) = cand[j] / norm;
          break;
        }
      }
    }
  }
  return model;
}

Mat pca_transform(const PcaModel& model, const Mat& rows) {
  if (rows.cols() != model.mean.size()) throw Error("pca_transform: dim mismatch");
  const std::size_t k = model.components.rows();
  Mat out(rows.rows(), k);
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < rows.cols(); ++j)
        s += (rows(i, j) - model.mean[j]) * model.components(c, j);
      out(i, c) = s;
    }
  }
  return out;
}

void save_embeddings(const EmbeddingTable& table, std::ostream& out) {
  out << table.vectors.size() << " " << table.dim << "\n";
  std::ostringstream buf;
  buf.precision(9);
  for (const auto& [term, vec] : table.vectors) {
    out << term;
    for (double x : vec) {
      buf.str("");
      buf << x;
      out << " " << buf.str();
    }
    out << "\n";
  }
}

EmbeddingTable load_embeddings(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.empty())
    throw DataError("embeddings: missing header");
  std::istringstream hdr(line);
  std::size_t count = 0, dim = 0;
  if (!(hdr >> count >> dim) || dim < 1)
    throw DataError("embeddings: bad header '" + line + "'");
  EmbeddingTable table;
  table.dim = dim;
  table.provenance = EmbeddingTable::Provenance::loaded;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string term;
    ls >> term;
    std::vector<double> vec;
    vec.reserve(dim);
    double x = 0.0;
    while (ls >> x) vec.push_back(x);
    if (vec.size() != dim)
      throw DataError("embeddings: row length mismatch at line " +
                      std::to_string(lineno) + " (expected " + std::to_string(dim) +
                      " values, got " + std::to_string(vec.size()) + ")");
    table.vectors[term] = std::move(vec);
  }
  if (table.vectors.size() != count)
    throw DataError("embeddings: header says " + std::to_string(count) +
                    " terms, file has " + std::to_string(table.vectors.size()));
  return table;
}

void save_embeddings_file(const EmbeddingTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  save_embeddings(table, out);
}

EmbeddingTable load_embeddings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path);
  return load_embeddings(in);
}

}  // namespace textmine
