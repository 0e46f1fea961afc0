#pragma once

// Bottom of the k-form spectrum of K^{n-m} x R^m for a compact flat K, and
// Kuenneth composition of bottoms for products whose factors may collapse.

#include "formspec/errors.hpp"
#include "formspec/flat_manifold.hpp"
#include "formspec/flat_spectra.hpp"
#include "formspec/verdict.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace formspec {

// Nonnegative real or +infinity, kept as an explicit variant.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(v, false); }
  static ExtendedReal unbounded() { return ExtendedReal(0.0, true); }

  bool is_unbounded() const { return unbounded_; }
  double value() const {
    if (unbounded_) throw InputError("value() of an unbounded extended real");
    return value_;
  }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.unbounded_ || b.unbounded_) return unbounded();
    return finite(a.value_ + b.value_);
  }
  friend bool operator<(ExtendedReal a, ExtendedReal b) {
    if (a.unbounded_) return false;
    if (b.unbounded_) return true;
    return a.value_ < b.value_;
  }
  bool operator==(const ExtendedReal&) const = default;

 private:
  ExtendedReal(double v, bool unbounded) : value_(v), unbounded_(unbounded) {}
  double value_;
  bool unbounded_;
};

enum class AlphaBranch { EuclideanDominant, LowBand, HighBand, Minimum, Reflected };

inline std::string branch_name(AlphaBranch b) {
  switch (b) {
    case AlphaBranch::EuclideanDominant: return "m>=n/2";
    case AlphaBranch::LowBand: return "k<=m";
    case AlphaBranch::HighBand: return "k>=n-m";
    case AlphaBranch::Minimum: return "min";
    case AlphaBranch::Reflected: return "reflected";
  }
  return "?";
}

struct AlphaValue {
  double value = 0;
  AlphaBranch branch = AlphaBranch::EuclideanDominant;
  int witness_degree = -1;  // degree j with value == lambda_o(j, K), if any
};

// The alpha formula on precomputed lambda_o(j, K), j = 0..n-m.
inline AlphaValue alpha_from_lambda(std::span<const double> lambda_o_by_degree, int m, int n, int k) {
  if (m < 0 || n < 1 || m > n) throw InputError("need 0 <= m <= n and n >= 1");
  if (k < 0 || k > n) throw InputError("form degree out of range");
  if (2 * m >= n) return {0.0, AlphaBranch::EuclideanDominant, -1};
  if (static_cast<int>(lambda_o_by_degree.size()) != n - m + 1)
    throw InputError("compact factor dimension must equal n - m");
  if (k <= m) return {0.0, AlphaBranch::LowBand, -1};
  if (k >= n - m) return {0.0, AlphaBranch::HighBand, -1};
  if (2 * k <= n) {
    AlphaValue best{std::numeric_limits<double>::infinity(), AlphaBranch::Minimum, -1};
    for (int l = 0; l <= m; ++l) {
      const double v = lambda_o_by_degree[k - l];
      if (v < best.value) {
        best.value = v;
        best.witness_degree = k - l;
      }
    }
    return best;
  }
  AlphaValue reflected = alpha_from_lambda(lambda_o_by_degree, m, n, n - k);
  reflected.branch = AlphaBranch::Reflected;
  return reflected;
}

inline AlphaValue alpha(const FlatManifold& k_factor, int m, int n, int k) {
  if (k_factor.dimension() != n - m) throw InputError("compact factor dimension must equal n - m");
  if (k < 0 || k > n) throw InputError("form degree out of range");
  if (2 * m >= n) return {0.0, AlphaBranch::EuclideanDominant, -1};
  return alpha_from_lambda(lambda_o_all(k_factor), m, n, k);
}

inline std::vector<AlphaValue> alpha_table(const FlatManifold& k_factor, int m, int n) {
  if (k_factor.dimension() != n - m) throw InputError("compact factor dimension must equal n - m");
  const auto lambdas = lambda_o_all(k_factor);
  std::vector<AlphaValue> out;
  for (int k = 0; k <= n; ++k) out.push_back(alpha_from_lambda(lambdas, m, n, k));
  return out;
}

// A factor in a Kuenneth product. A divergent factor is collapsing: its
// positive eigenvalues are pushed to +infinity and only harmonic degrees
// (positive Betti number) contribute, with value 0.
struct KunnethFactor {
  FlatManifold manifold;
  bool divergent = false;
};

struct KunnethResult {
  ExtendedReal value = ExtendedReal::unbounded();
  bool degree_out_of_range = false;
  std::vector<int> decomposition;  // per-factor degrees realizing the minimum
};

inline std::vector<ExtendedReal> channel_bottoms(const KunnethFactor& f) {
  const int d = f.manifold.dimension();
  std::vector<ExtendedReal> out;
  out.reserve(d + 1);
  if (f.divergent) {
    const auto betti = betti_numbers(f.manifold);
    for (int l = 0; l <= d; ++l)
      out.push_back(betti[l] > 0 ? ExtendedReal::finite(0.0) : ExtendedReal::unbounded());
  } else {
    for (double v : lambda_o_all(f.manifold)) out.push_back(ExtendedReal::finite(v));
  }
  return out;
}

// min over l = sum l_j of sum_j bottom_j(l_j): a min-plus convolution.
inline KunnethResult kunneth_lambda_o(std::span<const KunnethFactor> factors, int degree) {
  if (factors.empty()) throw InputError("Kuenneth product needs at least one factor");
  int total = 0;
  for (const auto& f : factors) total += f.manifold.dimension();
  KunnethResult result;
  if (degree < 0 || degree > total) {
    result.degree_out_of_range = true;
    return result;
  }
  struct Cell {
    ExtendedReal value = ExtendedReal::unbounded();
    std::vector<int> split;
    bool set = false;
  };
  std::vector<Cell> acc(1);
  acc[0].value = ExtendedReal::finite(0.0);
  acc[0].set = true;
  for (const auto& f : factors) {
    const auto bottoms = channel_bottoms(f);
    std::vector<Cell> next(acc.size() + bottoms.size() - 1);
    for (std::size_t a = 0; a < acc.size(); ++a) {
      for (std::size_t b = 0; b < bottoms.size(); ++b) {
        const ExtendedReal v = acc[a].value + bottoms[b];
        Cell& cell = next[a + b];
        if (!cell.set || v < cell.value) {
          cell.set = true;
          cell.value = v;
          cell.split = acc[a].split;
          cell.split.push_back(static_cast<int>(b));
        }
      }
    }
    acc = std::move(next);
  }
  result.value = acc[degree].value;
  if (!result.value.is_unbounded()) result.decomposition = acc[degree].split;
  return result;
}

// K^{n-m} x R^m. A missing compact factor means plain Euclidean space.
struct ProductModel {
  std::optional<FlatManifold> compact_factor;
  int euclidean_rank = 0;

  int total_dimension() const {
    return euclidean_rank + (compact_factor ? compact_factor->dimension() : 0);
  }
};

inline SpectrumVerdict product_spectrum(const ProductModel& model, int k) {
  if (model.euclidean_rank < 0) throw InputError("euclidean rank must be nonnegative");
  const int n = model.total_dimension();
  if (k < 0 || k > n) throw InputError("form degree out of range");
  if (!model.compact_factor) return SpectrumVerdict::interval(0.0);
  return SpectrumVerdict::interval(alpha(*model.compact_factor, model.euclidean_rank, n, k).value);
}

}  // namespace formspec
