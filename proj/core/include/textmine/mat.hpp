#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace textmine {

// Dense row-major matrix of doubles. Desk-scale linear algebra only.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Mat matmul(const Mat& a, const Mat& b);
Mat transpose(const Mat& a);
double frobenius_norm(const Mat& a);

// Sparse matrix stored column-wise: col_entries[j] maps row -> value.
// std::map keeps iteration order deterministic for serialization.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::map<std::size_t, double>> col_entries;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), col_entries(c) {}

  void add(std::size_t i, std::size_t j, double v) { col_entries[j][i] += v; }
  void set(std::size_t i, std::size_t j, double v) { col_entries[j][i] = v; }
  double get(std::size_t i, std::size_t j) const {
    auto it = col_entries[j].find(i);
    return it == col_entries[j].end() ? 0.0 : it->second;
  }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : col_entries) n += c.size();
    return n;
  }
};

Mat to_dense(const SparseMatrix& a);

}  // namespace textmine
