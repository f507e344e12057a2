#pragma once

#include <cstdint>
#include <vector>

#include "textmine/mat.hpp"

namespace textmine {

// a = u * diag(sigma) * v^T, sigma descending, u/v column-orthonormal.
struct SvdResult {
  Mat u;                      // m x r
  std::vector<double> sigma;  // r values
  Mat v;                      // n x r
};

// Full decomposition, r = min(m, n). One-sided Jacobi; accurate for the
// small dense matrices this toolkit works with. Sign convention: the
// largest-magnitude entry of each u column is positive.
SvdResult svd_full(const Mat& a);

// Top-k triplets. Falls back to svd_full for small inputs; above
// kRandomizedThreshold on min(m, n) it uses randomized subspace iteration
// with a fixed internal seed, so results stay deterministic.
SvdResult svd_truncated(const Mat& a, std::size_t k);

inline constexpr std::size_t kRandomizedThreshold = 256;

// Eigendecomposition of a symmetric matrix (cyclic Jacobi).
// Eigenvalues descending, columns of vectors are the eigenvectors.
struct SymEig {
  std::vector<double> values;
  Mat vectors;
};
SymEig sym_eig(const Mat& a);

}  // namespace textmine
