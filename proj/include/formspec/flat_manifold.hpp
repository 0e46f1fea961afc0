#pragma once

// Compact flat manifolds R^n / Gamma described by Bieberbach group data:
// a translation lattice, a finite holonomy group given by integer rotations in
// lattice coordinates, and fractional translations.

#include "formspec/errors.hpp"
#include "formspec/integer_algebra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace formspec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

class Lattice {
 public:
  // Columns of `basis` are the generators.
  explicit Lattice(Matrix basis) : basis_(std::move(basis)) {
    if (basis_.rows() == 0 || basis_.rows() != basis_.cols())
      throw InputError("lattice basis must be a non-empty square matrix");
    const auto n = static_cast<int>(basis_.rows());
    const double length = basis_.colwise().norm().maxCoeff();
    const double det = basis_.determinant();
    if (!std::isfinite(det) || std::abs(det) <= 1e-12 * std::pow(length, n))
      throw InputError("lattice basis is not invertible");
    gram_ = basis_.transpose() * basis_;
    dual_gram_ = gram_.inverse();
    dual_gram_ = 0.5 * (dual_gram_ + dual_gram_.transpose());
  }

  static Lattice unit(int n) { return Lattice(Matrix::Identity(n, n)); }

  int dimension() const { return static_cast<int>(basis_.rows()); }
  const Matrix& basis() const { return basis_; }
  const Matrix& gram() const { return gram_; }
  // Gram matrix of the dual basis, i.e. the inverse Gram matrix.
  const Matrix& dual_gram() const { return dual_gram_; }

  // |w|^2 for the dual vector with integer coordinates m in the dual basis.
  double dual_norm2(const IntVector& m) const {
    const Vector v = m.cast<double>();
    return v.dot(dual_gram_ * v);
  }

 private:
  Matrix basis_;
  Matrix gram_;
  Matrix dual_gram_;
};

// x -> R x + t in lattice coordinates. Translations are kept reduced to [0,1).
struct HolonomyElement {
  IntMatrix rotation;
  Vector translation;

  bool is_identity_rotation() const {
    return rotation == IntMatrix::Identity(rotation.rows(), rotation.cols());
  }
};

inline double reduce_mod_one(double x) {
  double r = x - std::floor(x);
  if (r > 1.0 - 1e-12 || r < 1e-12) r = 0.0;
  return r;
}

inline Vector reduce_mod_one(const Vector& v) {
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = reduce_mod_one(v[i]);
  return out;
}

inline bool same_mod_one(const Vector& a, const Vector& b, double tol = 1e-9) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double d = std::abs(a[i] - b[i]);
    d -= std::round(d);
    if (std::abs(d) > tol) return false;
  }
  return true;
}

inline bool same_element(const HolonomyElement& a, const HolonomyElement& b) {
  return a.rotation == b.rotation && same_mod_one(a.translation, b.translation);
}

inline HolonomyElement compose(const HolonomyElement& a, const HolonomyElement& b) {
  return {a.rotation * b.rotation,
          reduce_mod_one(a.rotation.cast<double>() * b.translation + a.translation)};
}

inline HolonomyElement identity_element(int n) {
  return {IntMatrix::Identity(n, n), Vector::Zero(n)};
}

struct FlatManifoldOptions {
  std::size_t max_group_order = 48;
};

class FlatManifold {
 public:
  // `elements` must already form a group modulo the lattice, identity included.
  FlatManifold(Lattice lattice, std::vector<HolonomyElement> elements, double scale = 1.0,
               FlatManifoldOptions options = {})
      : lattice_(std::move(lattice)), elements_(std::move(elements)), scale_(scale) {
    validate(options);
    traces_.reserve(elements_.size());
    for (const auto& g : elements_) traces_.push_back(exterior_traces(g.rotation));
  }

  // Closes the generators under composition. The identity comes first, then
  // the generators in the given order, then new products in discovery order.
  static FlatManifold generated_by(Lattice lattice, const std::vector<HolonomyElement>& generators,
                                   double scale = 1.0, FlatManifoldOptions options = {}) {
    const int n = lattice.dimension();
    std::vector<HolonomyElement> group{identity_element(n)};
    auto contains = [&](const HolonomyElement& g) {
      return std::any_of(group.begin(), group.end(),
                         [&](const HolonomyElement& h) { return same_element(g, h); });
    };
    for (const auto& g : generators) {
      check_shape(g, n);
      HolonomyElement reduced{g.rotation, reduce_mod_one(g.translation)};
      if (!contains(reduced)) group.push_back(std::move(reduced));
    }
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = 0; j < group.size(); ++j) {
        HolonomyElement product = compose(group[i], group[j]);
        if (!contains(product)) {
          if (group.size() >= options.max_group_order)
            throw InputError("holonomy group order exceeds the configured bound of " +
                             std::to_string(options.max_group_order));
          group.push_back(std::move(product));
        }
      }
    }
    return FlatManifold(std::move(lattice), std::move(group), scale, options);
  }

  int dimension() const { return lattice_.dimension(); }
  const Lattice& lattice() const { return lattice_; }
  const std::vector<HolonomyElement>& holonomy() const { return elements_; }
  std::size_t group_order() const { return elements_.size(); }
  double scale() const { return scale_; }

  // Trace of the action of element g on the l-th exterior power.
  std::int64_t exterior_trace(std::size_t g, int l) const { return traces_[g][l]; }

  bool orientable() const {
    const int n = dimension();
    return std::all_of(traces_.begin(), traces_.end(), [n](const auto& e) { return e[n] == 1; });
  }

  FlatManifold rescaled(double scale) const {
    FlatManifold copy = *this;
    if (!(scale > 0.0) || !std::isfinite(scale)) throw InputError("scale must be positive");
    copy.scale_ = scale;
    return copy;
  }

 private:
  static void check_shape(const HolonomyElement& g, int n) {
    if (g.rotation.rows() != n || g.rotation.cols() != n || g.translation.size() != n)
      throw InputError("holonomy element dimension does not match the lattice");
  }

  void validate(const FlatManifoldOptions& options) {
    const int n = dimension();
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw InputError("scale must be positive");
    if (elements_.empty()) throw InputError("holonomy must contain the identity");
    if (elements_.size() > options.max_group_order)
      throw InputError("holonomy group order exceeds the configured bound of " +
                       std::to_string(options.max_group_order));
    const Matrix& gram = lattice_.gram();
    const double gram_scale = gram.cwiseAbs().maxCoeff();
    bool has_identity = false;
    for (auto& g : elements_) {
      check_shape(g, n);
      g.translation = reduce_mod_one(g.translation);
      const Matrix r = g.rotation.cast<double>();
      if ((r.transpose() * gram * r - gram).cwiseAbs().maxCoeff() > 1e-10 * gram_scale)
        throw InputError("holonomy rotation is not orthogonal for the lattice metric");
      if (g.is_identity_rotation() && g.translation.isZero()) has_identity = true;
    }
    if (!has_identity) throw InputError("holonomy must contain the identity");
    for (std::size_t i = 0; i < elements_.size(); ++i)
      for (std::size_t j = i + 1; j < elements_.size(); ++j)
        if (same_element(elements_[i], elements_[j]))
          throw InputError("holonomy lists the same element twice");
    for (const auto& a : elements_) {
      for (const auto& b : elements_) {
        const HolonomyElement ab = compose(a, b);
        const bool closed = std::any_of(elements_.begin(), elements_.end(),
                                        [&](const HolonomyElement& h) { return same_element(ab, h); });
        if (!closed) throw InputError("holonomy elements are not closed under composition");
      }
    }
    for (const auto& g : elements_)
      if (has_fixed_point(g)) throw InputError("group is not torsion-free: an element fixes a point");
  }

  // Does some lattice translate of g fix a point, i.e. is (I - R) x = t + v
  // solvable with x real and v integer? Row-reduce I - R unimodularly; the
  // zero rows must then annihilate U (t + v), which needs U t integral there.
  static bool has_fixed_point(const HolonomyElement& g) {
    if (g.is_identity_rotation()) return false;
    const auto n = g.rotation.rows();
    const IntMatrix a = IntMatrix::Identity(n, n) - g.rotation;
    const RowEchelon re = integer_row_echelon(a);
    const Vector ut = re.transform.cast<double>() * g.translation;
    for (Eigen::Index i = re.rank; i < n; ++i)
      if (std::abs(ut[i] - std::round(ut[i])) > 1e-9) return false;
    return true;
  }

  Lattice lattice_;
  std::vector<HolonomyElement> elements_;
  double scale_;
  std::vector<std::vector<std::int64_t>> traces_;
};

// Riemannian product. Scales are folded into the block-diagonal basis.
inline FlatManifold product(const FlatManifold& a, const FlatManifold& b) {
  const int n1 = a.dimension();
  const int n2 = b.dimension();
  Matrix basis = Matrix::Zero(n1 + n2, n1 + n2);
  basis.topLeftCorner(n1, n1) = a.scale() * a.lattice().basis();
  basis.bottomRightCorner(n2, n2) = b.scale() * b.lattice().basis();
  std::vector<HolonomyElement> elements;
  elements.reserve(a.group_order() * b.group_order());
  for (const auto& g : a.holonomy()) {
    for (const auto& h : b.holonomy()) {
      HolonomyElement e{IntMatrix::Zero(n1 + n2, n1 + n2), Vector(n1 + n2)};
      e.rotation.topLeftCorner(n1, n1) = g.rotation;
      e.rotation.bottomRightCorner(n2, n2) = h.rotation;
      e.translation << g.translation, h.translation;
      elements.push_back(std::move(e));
    }
  }
  FlatManifoldOptions options;
  options.max_group_order = a.group_order() * b.group_order();
  return FlatManifold(Lattice(std::move(basis)), std::move(elements), 1.0, options);
}

inline FlatManifold power(const FlatManifold& k, int copies) {
  if (copies < 1) throw InputError("power needs at least one copy");
  FlatManifold out = k;
  for (int i = 1; i < copies; ++i) out = product(out, k);
  return out;
}

namespace catalog {

inline HolonomyElement element(const IntMatrix& rotation, const Vector& translation) {
  return {rotation, translation};
}

inline FlatManifold torus(int n) {
  if (n < 1) throw InputError("torus dimension must be positive");
  return FlatManifold(Lattice::unit(n), {identity_element(n)});
}

// Holonomy Z/2 x Z/2 generated by half-turns about the coordinate axes.
inline FlatManifold hantzsche_wendt() {
  IntMatrix a = IntMatrix::Zero(3, 3);
  a.diagonal() << 1, -1, -1;
  IntMatrix b = IntMatrix::Zero(3, 3);
  b.diagonal() << -1, 1, -1;
  Vector ta(3), tb(3);
  ta << 0.5, 0.5, 0.0;
  tb << 0.0, 0.5, 0.5;
  return FlatManifold::generated_by(Lattice::unit(3), {element(a, ta), element(b, tb)});
}

// Half-turn screw motion along the first axis; holonomy Z/2.
inline FlatManifold half_turn_space() {
  IntMatrix a = IntMatrix::Zero(3, 3);
  a.diagonal() << 1, -1, -1;
  Vector ta(3);
  ta << 0.5, 0.0, 0.0;
  return FlatManifold::generated_by(Lattice::unit(3), {element(a, ta)});
}

inline FlatManifold klein_bottle() {
  IntMatrix a = IntMatrix::Zero(2, 2);
  a.diagonal() << 1, -1;
  Vector ta(2);
  ta << 0.5, 0.0;
  return FlatManifold::generated_by(Lattice::unit(2), {element(a, ta)});
}

inline std::vector<std::string> names() {
  return {"torus-1", "torus-2", "torus-3", "torus-4", "klein-bottle", "hantzsche-wendt",
          "half-turn-space"};
}

inline std::optional<FlatManifold> lookup(std::string_view name) {
  if (name.rfind("torus-", 0) == 0 && name.size() == 7 && name[6] >= '1' && name[6] <= '4')
    return torus(name[6] - '0');
  if (name == "klein-bottle") return klein_bottle();
  if (name == "hantzsche-wendt") return hantzsche_wendt();
  if (name == "half-turn-space") return half_turn_space();
  return std::nullopt;
}

}  // namespace catalog

}  // namespace formspec
