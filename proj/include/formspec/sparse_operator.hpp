#pragma once

// Symmetric nonnegative sparse operators (CSR), a Jacobi-preconditioned
// conjugate gradient solver for shifted systems (H + alpha) x = b, and
// bottom-of-spectrum estimates.

#include "formspec/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <vector>

namespace formspec {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0;
};

struct OperatorValidation {
  double nonneg_tolerance = 1e-9;  // relative to the norm bound
  int lanczos_steps = 80;
};

class SparseOperator;
double lanczos_smallest_estimate(const SparseOperator& h, int steps, unsigned seed = 7);

class SparseOperator {
 public:
  SparseOperator() = default;

  // Duplicates are summed. Symmetry must hold exactly as stored.
  static SparseOperator from_triplets(std::size_t n, std::vector<Triplet> entries,
                                      OperatorValidation validation = {}) {
    if (n == 0) throw InputError("operator dimension must be positive");
    for (const auto& t : entries) {
      if (t.row >= n || t.col >= n) throw InputError("operator entry index out of range");
      if (!std::isfinite(t.value)) throw InputError("operator entry is not finite");
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseOperator op;
    op.n_ = n;
    op.row_start_.assign(n + 1, 0);
    for (std::size_t i = 0; i < entries.size();) {
      std::size_t j = i;
      double sum = 0.0;
      while (j < entries.size() && entries[j].row == entries[i].row && entries[j].col == entries[i].col)
        sum += entries[j++].value;
      op.cols_.push_back(entries[i].col);
      op.values_.push_back(sum);
      ++op.row_start_[entries[i].row + 1];
      i = j;
    }
    std::partial_sum(op.row_start_.begin(), op.row_start_.end(), op.row_start_.begin());
    op.validate(validation);
    return op;
  }

  std::size_t dimension() const { return n_; }
  std::size_t nonzeros() const { return values_.size(); }

  double entry(std::size_t i, std::size_t j) const {
    const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[i]);
    const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_start_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    return (it != last && *it == j) ? values_[static_cast<std::size_t>(it - cols_.begin())] : 0.0;
  }
  double diagonal(std::size_t i) const { return entry(i, i); }

  // max absolute row sum; bounds the spectral norm of a symmetric matrix
  double norm_bound() const { return norm_bound_; }
  // certified lower bound on the smallest eigenvalue, clamped at 0
  double nonneg_shift() const { return nonneg_shift_; }

  template <typename T>
  void apply(std::span<const T> in, std::span<T> out) const {
    for (std::size_t i = 0; i < n_; ++i) {
      T acc{};
      for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p) acc += values_[p] * in[cols_[p]];
      out[i] = acc;
    }
  }

  template <typename T>
  std::vector<T> operator*(const std::vector<T>& v) const {
    std::vector<T> out(n_);
    apply<T>(v, out);
    return out;
  }

  std::vector<Triplet> triplets() const {
    std::vector<Triplet> out;
    out.reserve(values_.size());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p) out.push_back({i, cols_[p], values_[p]});
    return out;
  }

  // Bandwidth-one operator: sub/super diagonals only.
  bool is_tridiagonal() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p)
        if ((cols_[p] > i ? cols_[p] - i : i - cols_[p]) > 1) return false;
    return true;
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (const auto& t : triplets())
      d(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
    return d;
  }

 private:
  void validate(const OperatorValidation& validation) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p)
        if (entry(cols_[p], i) != values_[p]) throw InputError("operator is not symmetric as stored");
    double gersh = std::numeric_limits<double>::infinity();
    norm_bound_ = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double off = 0.0, diag = 0.0, row = 0.0;
      for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p) {
        row += std::abs(values_[p]);
        if (cols_[p] == i) diag = values_[p];
        else off += std::abs(values_[p]);
      }
      norm_bound_ = std::max(norm_bound_, row);
      gersh = std::min(gersh, diag - off);
    }
    const double tol = validation.nonneg_tolerance * std::max(norm_bound_, 1e-300);
    if (gersh >= -tol) {
      nonneg_shift_ = std::max(gersh, 0.0);
      return;
    }
    nonneg_shift_ = 0.0;
    const int steps = std::min<int>(validation.lanczos_steps, static_cast<int>(n_));
    if (lanczos_smallest_estimate(*this, steps) < -tol) throw InputError("operator is not nonnegative");
  }

  std::size_t n_ = 0;
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
  double norm_bound_ = 0.0;
  double nonneg_shift_ = 0.0;
};

// Lanczos with full reorthogonalization; returns the smallest Ritz value,
// which bounds the smallest eigenvalue from above.
inline double lanczos_smallest_estimate(const SparseOperator& h, int steps, unsigned seed) {
  const std::size_t n = h.dimension();
  steps = std::max(1, std::min<int>(steps, static_cast<int>(n)));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Eigen::VectorXd> basis;
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = normal(rng);
  v.normalize();
  std::vector<double> alphas, betas;
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));
  for (int j = 0; j < steps; ++j) {
    basis.push_back(v);
    h.apply<double>(std::span<const double>(v.data(), n), std::span<double>(w.data(), n));
    alphas.push_back(v.dot(w));
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b.dot(w) * b;
    const double beta = w.norm();
    if (beta < 1e-12 * std::max(1.0, h.norm_bound()) || j + 1 == steps) break;
    betas.push_back(beta);
    v = w / beta;
  }
  const auto m = static_cast<Eigen::Index>(alphas.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) t(i, i) = alphas[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < m; ++i)
    t(i, i + 1) = t(i + 1, i) = betas[static_cast<std::size_t>(i)];
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

// Number of eigenvalues of a symmetric tridiagonal operator below x.
inline std::size_t sturm_count(const SparseOperator& h, double x) {
  std::size_t count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < h.dimension(); ++i) {
    const double off = i > 0 ? h.entry(i, i - 1) : 0.0;
    d = h.diagonal(i) - x - (i > 0 ? off * off / d : 0.0);
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

// Smallest eigenvalue: Sturm bisection for tridiagonal operators, a dense
// solve for small ones, Lanczos otherwise.
inline double smallest_eigenvalue(const SparseOperator& h) {
  const std::size_t n = h.dimension();
  if (h.is_tridiagonal()) {
    double lo = -h.norm_bound(), hi = h.norm_bound();
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(h, mid) >= 1) hi = mid;
      else lo = mid;
    }
    return 0.5 * (lo + hi);
  }
  if (n <= 2500) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h.to_dense(), Eigen::EigenvaluesOnly).eigenvalues()(0);
  }
  return lanczos_smallest_estimate(h, 400);
}

struct CgOptions {
  double relative_tolerance = 1e-10;
  std::size_t max_iterations_factor = 20;  // cap = factor * N
};

struct SolveReport {
  std::size_t iterations = 0;
  double relative_residual = 0;  // true residual ||b - (H+shift)x|| / ||b||
  double residual_norm = 0;
  bool converged = false;
};

inline double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

// Conjugate-linear in the first slot.
inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Solves (H + shift) x = b with Jacobi-preconditioned CG; x is overwritten.
inline SolveReport solve_shifted(const SparseOperator& h, double shift, std::span<const Complex> b,
                                 std::span<Complex> x, CgOptions options = {}) {
  const std::size_t n = h.dimension();
  if (b.size() != n || x.size() != n) throw InputError("vector length does not match operator");
  if (!(shift > 0.0)) throw InputError("shift must be positive");
  std::vector<double> inv_diag(n);
  for (std::size_t i = 0; i < n; ++i) inv_diag[i] = 1.0 / (h.diagonal(i) + shift);

  auto apply_shifted = [&](std::span<const Complex> in, std::span<Complex> out) {
    h.apply<Complex>(in, out);
    for (std::size_t i = 0; i < n; ++i) out[i] += shift * in[i];
  };

  const double bnorm = norm(b);
  SolveReport report;
  std::fill(x.begin(), x.end(), Complex{});
  if (bnorm == 0.0) {
    report.converged = true;
    return report;
  }
  ComplexVector r(b.begin(), b.end()), z(n), p(n), q(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  Complex rz = inner(r, z);
  const std::size_t cap = options.max_iterations_factor * n;
  const double target = options.relative_tolerance * bnorm;
  for (std::size_t it = 0; it < cap; ++it) {
    apply_shifted(p, q);
    const Complex step = rz / inner(p, q);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += step * p[i];
      r[i] -= step * q[i];
    }
    report.iterations = it + 1;
    if (norm(r) <= target) break;
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const Complex rz_next = inner(r, z);
    const Complex beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  apply_shifted(std::span<const Complex>(x.data(), n), q);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
  report.residual_norm = norm(r);
  report.relative_residual = report.residual_norm / bnorm;
  report.converged = report.relative_residual <= 10.0 * options.relative_tolerance;
  return report;
}

}  // namespace formspec
