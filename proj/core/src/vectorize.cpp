#include "textmine/vectorize.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "textmine/error.hpp"
#include "textmine/io.hpp"

namespace textmine {

double tf(const std::string& term, const ProcessedDocument& doc) {
  if (doc.tokens.empty()) throw Error("tf: empty document '" + doc.id + "'");
  std::size_t n = 0;
  for (const auto& t : doc.tokens)
    if (t == term) ++n;
  return static_cast<double>(n) / static_cast<double>(doc.tokens.size());
}

double idf(const std::string& term, const std::vector<ProcessedDocument>& corpus,
           bool smooth_df) {
  if (corpus.empty()) throw Error("idf: empty corpus");
  std::size_t df = 0;
  for (const auto& doc : corpus) {
    for (const auto& t : doc.tokens) {
      if (t == term) {
        ++df;
        break;
      }
    }
  }
  double n = static_cast<double>(corpus.size());
  double d = static_cast<double>(df);
  if (smooth_df) {
    n += 1.0;
    d += 1.0;
  } else if (df == 0) {
    throw Error("idf: term '" + term + "' absent from corpus");
  }
  return std::log(n / d);
}

double tf_idf(const std::string& term, const ProcessedDocument& doc,
              const std::vector<ProcessedDocument>& corpus, bool smooth_df) {
  return tf(term, doc) * idf(term, corpus, smooth_df);
}

SparseMatrix build_matrix(const std::vector<ProcessedDocument>& corpus,
                          const Dictionary& dict, Weighting weighting) {
  if (corpus.empty()) throw Error("build_matrix: empty corpus");
  SparseMatrix a(dict.size(), corpus.size());
  // document frequencies, needed once for tf-idf
  std::vector<std::size_t> df(dict.size(), 0);
  if (weighting == Weighting::tfidf) {
    for (const auto& doc : corpus) {
      std::vector<bool> seen(dict.size(), false);
      for (const auto& t : doc.tokens) {
        const std::size_t i = dict.id_of(t);
        if (!seen[i]) {
          seen[i] = true;
          ++df[i];
        }
      }
    }
  }
  const double n = static_cast<double>(corpus.size());
  for (std::size_t j = 0; j < corpus.size(); ++j) {
    const auto& doc = corpus[j];
    std::map<std::size_t, std::size_t> counts;
    for (const auto& t : doc.tokens) ++counts[dict.id_of(t)];
    for (const auto& [i, c] : counts) {
      double value;
      if (weighting == Weighting::count) {
        value = static_cast<double>(c);
      } else {
        const double tf_v = static_cast<double>(c) / static_cast<double>(doc.tokens.size());
        value = tf_v * std::log(n / static_cast<double>(df[i]));
      }
      if (value != 0.0) a.set(i, j, value);
    }
  }
  return a;
}

SparseMatrix build_term_term_matrix(const std::vector<ProcessedDocument>& corpus,
                                    const Dictionary& dict, std::size_t window) {
  SparseMatrix tt(dict.size(), dict.size());
  for (const auto& doc : corpus) {
    const auto& toks = doc.tokens;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      const std::size_t w = dict.id_of(toks[i]);
      const std::size_t hi = std::min(toks.size(), i + window + 1);
      for (std::size_t j = i + 1; j < hi; ++j) {
        const std::size_t c = dict.id_of(toks[j]);
        if (w == c) continue;  // diagonal excluded
        tt.add(w, c, 1.0);
        tt.add(c, w, 1.0);
      }
    }
  }
  return tt;
}

SparseMatrix ppmi(const SparseMatrix& tt) {
  double total = 0.0;
  std::vector<double> row_sum(tt.rows, 0.0);
  std::vector<double> col_sum(tt.cols, 0.0);
  for (std::size_t j = 0; j < tt.cols; ++j) {
    for (const auto& [i, v] : tt.col_entries[j]) {
      total += v;
      row_sum[i] += v;
      col_sum[j] += v;
    }
  }
  if (total <= 0.0) throw Error("ppmi: zero co-occurrence mass");
  SparseMatrix out(tt.rows, tt.cols);
  for (std::size_t j = 0; j < tt.cols; ++j) {
    for (const auto& [i, v] : tt.col_entries[j]) {
      if (v <= 0.0) continue;
      const double p_wc = v / total;
      const double p_w = row_sum[i] / total;
      const double p_c = col_sum[j] / total;
      const double value = std::log(p_wc / (p_w * p_c));
      if (value > 0.0) out.set(i, j, value);
    }
  }
  return out;
}

LsaModel lsa_fit(const SparseMatrix& a, std::size_t k) {
  if (k < 1 || k > std::min(a.rows, a.cols))
    throw Error("lsa_fit: k out of range");
  SvdResult s = svd_truncated(to_dense(a), k);
  LsaModel model;
  model.k = k;
  model.u = std::move(s.u);
  model.sigma = std::move(s.sigma);
  model.v = std::move(s.v);
  return model;
}

Mat lsa_term_vectors(const LsaModel& model) { return model.u; }
Mat lsa_doc_vectors(const LsaModel& model) { return model.v; }

std::vector<double> lsa_project(const LsaModel& model, const std::vector<double>& x) {
  if (x.size() != model.u.rows()) throw Error("lsa_project: vector length mismatch");
  std::vector<double> out(model.k, 0.0);
  for (std::size_t j = 0; j < model.k; ++j) {
    if (model.sigma[j] == 0.0) throw Error("lsa_project: zero singular value");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += model.u(i, j) * x[i];
    out[j] = s / model.sigma[j];
  }
  return out;
}

void write_matrix_market(const SparseMatrix& a, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows << " " << a.cols << " " << a.nnz() << "\n";
  for (std::size_t j = 0; j < a.cols; ++j)
    for (const auto& [i, v] : a.col_entries[j])
      out << (i + 1) << " " << (j + 1) << " " << format_double(v) << "\n";
}

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  // header / comments
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream hdr(line);
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(hdr >> rows >> cols >> nnz))
    throw DataError("matrix market: bad size line at line " + std::to_string(lineno));
  SparseMatrix a(rows, cols);
  for (std::size_t e = 0; e < nnz; ++e) {
    if (!std::getline(in, line))
      throw DataError("matrix market: truncated after " + std::to_string(e) + " entries");
    ++lineno;
    std::istringstream ls(line);
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (!(ls >> i >> j >> v) || i < 1 || j < 1 || i > rows || j > cols)
      throw DataError("matrix market: bad entry at line " + std::to_string(lineno));
    a.set(i - 1, j - 1, v);
  }
  return a;
}

void save_lsa(const LsaModel& model, std::ostream& out) {
  out << model.u.rows() << " " << model.v.rows() << " " << model.k << "\n";
  for (double s : model.sigma) out << format_double(s) << "\n";
  for (std::size_t i = 0; i < model.u.rows(); ++i) {
    for (std::size_t j = 0; j < model.k; ++j)
      out << (j ? " " : "") << format_double(model.u(i, j));
    out << "\n";
  }
  for (std::size_t i = 0; i < model.v.rows(); ++i) {
    for (std::size_t j = 0; j < model.k; ++j)
      out << (j ? " " : "") << format_double(model.v(i, j));
    out << "\n";
  }
}

LsaModel load_lsa(std::istream& in) {
  std::size_t m = 0, n = 0, k = 0;
  if (!(in >> m >> n >> k)) throw DataError("lsa model: missing dims header");
  LsaModel model;
  model.k = k;
  model.sigma.resize(k);
  for (auto& s : model.sigma)
    if (!(in >> s)) throw DataError("lsa model: truncated singular values");
  model.u = Mat(m, k);
  for (auto& x : model.u.data())
    if (!(in >> x)) throw DataError("lsa model: truncated U block");
  model.v = Mat(n, k);
  for (auto& x : model.v.data())
    if (!(in >> x)) throw DataError("lsa model: truncated V block");
  return model;
}

}  // namespace textmine
