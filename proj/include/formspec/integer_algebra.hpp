#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <cstdlib>
#include <utility>
#include <vector>

namespace formspec {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

// Coefficients e_0..e_n of the characteristic polynomial of an integer matrix,
// arranged so that e_l is the l-th elementary symmetric function of the
// eigenvalues, i.e. the trace of the induced map on the l-th exterior power.
// Faddeev-LeVerrier; every division is exact for integer input.
inline std::vector<std::int64_t> exterior_traces(const IntMatrix& a) {
  const auto n = a.rows();
  std::vector<std::int64_t> c(n + 1, 0);  // det(tI - A) = sum c[j] t^j
  c[n] = 1;
  IntMatrix m = IntMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m;
    m.diagonal().array() += c[n - k + 1];
    const IntMatrix am = a * m;
    c[n - k] = -am.trace() / k;
  }
  std::vector<std::int64_t> e(n + 1);
  for (Eigen::Index l = 0; l <= n; ++l) e[l] = (l % 2 == 0 ? 1 : -1) * c[n - l];
  return e;
}

struct RowEchelon {
  IntMatrix transform;  // unimodular U
  IntMatrix echelon;    // U * A
  Eigen::Index rank = 0;
};

// Integer row echelon form via unimodular row operations (Euclid on columns).
// Rows [rank, rows) of the echelon matrix are zero.
inline RowEchelon integer_row_echelon(IntMatrix a) {
  const auto rows = a.rows();
  const auto cols = a.cols();
  IntMatrix u = IntMatrix::Identity(rows, rows);
  Eigen::Index pivot_row = 0;
  for (Eigen::Index col = 0; col < cols && pivot_row < rows; ++col) {
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index r = pivot_row; r < rows; ++r) {
        if (a(r, col) != 0 && (best < 0 || std::llabs(a(r, col)) < std::llabs(a(best, col)))) best = r;
      }
      if (best < 0) break;
      a.row(best).swap(a.row(pivot_row));
      u.row(best).swap(u.row(pivot_row));
      bool reduced = true;
      for (Eigen::Index r = pivot_row + 1; r < rows; ++r) {
        if (a(r, col) == 0) continue;
        const std::int64_t q = a(r, col) / a(pivot_row, col);
        a.row(r) -= q * a.row(pivot_row);
        u.row(r) -= q * u.row(pivot_row);
        if (a(r, col) != 0) reduced = false;
      }
      if (reduced) {
        ++pivot_row;
        break;
      }
    }
  }
  return {std::move(u), std::move(a), pivot_row};
}

}  // namespace formspec
