#include "textmine/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "textmine/error.hpp"
#include "textmine/rng.hpp"

namespace textmine {
namespace {

constexpr double kJacobiEps = 1e-15;
constexpr int kMaxSweeps = 100;

// Column dot products on a row-major matrix.
double col_dot(const Mat& w, std::size_t p, std::size_t q) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.rows(); ++i) s += w(i, p) * w(i, q);
  return s;
}

void rotate_cols(Mat& w, std::size_t p, std::size_t q, double c, double s) {
  for (std::size_t i = 0; i < w.rows(); ++i) {
    const double wp = w(i, p);
    const double wq = w(i, q);
    w(i, p) = c * wp - s * wq;
    w(i, q) = s * wp + c * wq;
  }
}

// Modified Gram-Schmidt, two passes. Columns with negligible norm are
// replaced by orthogonalized standard basis vectors.
void orthonormalize_cols(Mat& q) {
  const std::size_t m = q.rows();
  const std::size_t n = q.cols();
  std::size_t next_basis = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < j; ++p) {
        const double d = col_dot(q, p, j);
        for (std::size_t i = 0; i < m; ++i) q(i, j) -= d * q(i, p);
      }
    }
    double norm = std::sqrt(col_dot(q, j, j));
    while (norm < 1e-12 && next_basis < m) {
      for (std::size_t i = 0; i < m; ++i) q(i, j) = (i == next_basis) ? 1.0 : 0.0;
      ++next_basis;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t p = 0; p < j; ++p) {
          const double d = col_dot(q, p, j);
          for (std::size_t i = 0; i < m; ++i) q(i, j) -= d * q(i, p);
        }
      }
      norm = std::sqrt(col_dot(q, j, j));
    }
    if (norm > 0.0)
      for (std::size_t i = 0; i < m; ++i) q(i, j) /= norm;
  }
}

void apply_sign_convention(SvdResult& r) {
  for (std::size_t j = 0; j < r.sigma.size(); ++j) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < r.u.rows(); ++i) {
      if (std::fabs(r.u(i, j)) > best) {
        best = std::fabs(r.u(i, j));
        arg = i;
      }
    }
    if (r.u(arg, j) < 0.0) {
      for (std::size_t i = 0; i < r.u.rows(); ++i) r.u(i, j) = -r.u(i, j);
      for (std::size_t i = 0; i < r.v.rows(); ++i) r.v(i, j) = -r.v(i, j);
    }
  }
}

// One-sided Jacobi on a tall matrix (m >= n).
SvdResult svd_tall(const Mat& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Mat w = a;
  Mat v(n, n);
  for (std::size_t j = 0; j < n; ++j) v(j, j) = 1.0;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = col_dot(w, p, p);
        const double beta = col_dot(w, q, q);
        const double gamma = col_dot(w, p, q);
        if (std::fabs(gamma) <= kJacobiEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate_cols(w, p, q, c, s);
        rotate_cols(v, p, q, c, s);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(col_dot(w, j, j));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SvdResult r;
  r.u = Mat(m, n);
  r.v = Mat(n, n);
  r.sigma.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    r.sigma[j] = sigma[src];
    if (sigma[src] > 1e-300) {
      for (std::size_t i = 0; i < m; ++i) r.u(i, j) = w(i, src) / sigma[src];
    }
    for (std::size_t i = 0; i < n; ++i) r.v(i, j) = v(i, src);
  }
  // complete u columns for zero singular values so u stays orthonormal
  bool needs_fill = false;
  for (double s : r.sigma)
    if (s <= 1e-300) needs_fill = true;
  if (needs_fill) orthonormalize_cols(r.u);
  apply_sign_convention(r);
  return r;
}

SvdResult randomized_svd(const Mat& a, std::size_t k) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t l = std::min(std::min(m, n), k + 10);
  Rng rng(0x5eedf00dULL);
  Mat omega(n, l);
  for (auto& x : omega.data()) x = rng.gaussian();
  Mat y = matmul(a, omega);
  const Mat at = transpose(a);
  for (int it = 0; it < 2; ++it) {
    orthonormalize_cols(y);
    y = matmul(a, matmul(at, y));
  }
  orthonormalize_cols(y);
  Mat b = matmul(transpose(y), a);  // l x n
  SvdResult small = svd_tall(transpose(b));  // b^T = v_b sigma u_b^T
  // b = u_b sigma v_b^T with u_b = small.v, v_b = small.u
  SvdResult r;
  r.sigma.assign(small.sigma.begin(), small.sigma.begin() + std::min(k, small.sigma.size()));
  const std::size_t kk = r.sigma.size();
  Mat ub(l, kk);
  r.v = Mat(n, kk);
  for (std::size_t j = 0; j < kk; ++j) {
    for (std::size_t i = 0; i < l; ++i) ub(i, j) = small.v(i, j);
    for (std::size_t i = 0; i < n; ++i) r.v(i, j) = small.u(i, j);
  }
  r.u = matmul(y, ub);
  apply_sign_convention(r);
  return r;
}

}  // namespace

SvdResult svd_full(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) throw Error("svd: empty matrix");
  if (a.rows() >= a.cols()) return svd_tall(a);
  SvdResult t = svd_tall(transpose(a));
  SvdResult r;
  r.u = std::move(t.v);
  r.v = std::move(t.u);
  r.sigma = std::move(t.sigma);
  apply_sign_convention(r);
  return r;
}

SvdResult svd_truncated(const Mat& a, std::size_t k) {
  const std::size_t r = std::min(a.rows(), a.cols());
  if (k < 1 || k > r) throw Error("svd: rank k out of range");
  if (r <= kRandomizedThreshold || k + 10 >= r) {
    SvdResult full = svd_full(a);
    if (k == full.sigma.size()) return full;
    SvdResult out;
    out.sigma.assign(full.sigma.begin(), full.sigma.begin() + k);
    out.u = Mat(full.u.rows(), k);
    out.v = Mat(full.v.rows(), k);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < full.u.rows(); ++i) out.u(i, j) = full.u(i, j);
      for (std::size_t i = 0; i < full.v.rows(); ++i) out.v(i, j) = full.v(i, j);
    }
    return out;
  }
  return randomized_svd(a, k);
}

SymEig sym_eig(const Mat& a) {
  if (a.rows() != a.cols()) throw Error("sym_eig: matrix not square");
  const std::size_t n = a.rows();
  Mat d = a;
  Mat v(n, n);
  for (std::size_t j = 0; j < n; ++j) v(j, j) = 1.0;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += d(p, q) * d(p, q);
    if (std::sqrt(off) < 1e-14 * (1.0 + frobenius_norm(d))) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(d(p, q)) < 1e-300) continue;
        const double theta = (d(q, q) - d(p, p)) / (2.0 * d(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const double dip = d(i, p);
          const double diq = d(i, q);
          d(i, p) = c * dip - s * diq;
          d(i, q) = s * dip + c * diq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double dpi = d(p, i);
          const double dqi = d(q, i);
          d(p, i) = c * dpi - s * dqi;
          d(q, i) = s * dpi + c * dqi;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d(x, x) > d(y, y); });
  SymEig e;
  e.values.resize(n);
  e.vectors = Mat(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    e.values[j] = d(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) e.vectors(i, j) = v(i, order[j]);
  }
  return e;
}

}  // namespace textmine
