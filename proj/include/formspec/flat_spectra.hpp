#pragma once

// Hodge-Laplacian spectra of compact flat manifolds. Eigenforms of R^n / Gamma
// are the holonomy-invariant combinations of exp(2 pi i <w, x>) xi with w in
// the dual lattice and xi a constant l-form; the eigenvalue is 4 pi^2 |w|^2.

#include "formspec/errors.hpp"
#include "formspec/flat_manifold.hpp"
#include "formspec/integer_algebra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace formspec {

struct DualVector {
  IntVector coords;  // integer coordinates in the dual basis
  double norm2 = 0;  // |w|^2 with the unscaled lattice metric
};

struct EnumerationOptions {
  std::size_t budget = 10'000'000;
};

inline double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Every dual-lattice vector w with 4 pi^2 |w|^2 <= lambda_max, exactly once,
// sorted by norm and then lexicographically. Fincke-Pohst style enumeration
// on the Cholesky factor of the dual Gram matrix.
inline std::vector<DualVector> enumerate_dual_vectors(const Lattice& lattice, double lambda_max,
                                                      EnumerationOptions options = {}) {
  if (!(lambda_max >= 0.0) || !std::isfinite(lambda_max))
    throw InputError("lambda_max must be a finite nonnegative number");
  const int n = lattice.dimension();
  const double radius2 = lambda_max / (kTwoPi * kTwoPi);
  const double accept = radius2 * (1.0 + 1e-12);

  const double estimate = unit_ball_volume(n) * std::pow(std::sqrt(radius2), n) *
                          std::sqrt(lattice.gram().determinant());
  if (estimate > 4.0 * static_cast<double>(options.budget))
    throw ResourceError("dual lattice enumeration would exceed the vector budget of " +
                        std::to_string(options.budget));

  const Eigen::LLT<Matrix> llt(lattice.dual_gram());
  const Matrix upper = llt.matrixU();

  std::vector<DualVector> out;
  IntVector m = IntVector::Zero(n);

  auto recurse = [&](auto& self, int level, double used) -> void {
    double shift = 0.0;
    for (int j = level + 1; j < n; ++j) shift += upper(level, j) * static_cast<double>(m[j]);
    const double remaining = std::max(0.0, accept - used);
    const double half = std::sqrt(remaining) / upper(level, level);
    const double centre = -shift / upper(level, level);
    const auto lo = static_cast<std::int64_t>(std::ceil(centre - half - 1e-9));
    const auto hi = static_cast<std::int64_t>(std::floor(centre + half + 1e-9));
    for (std::int64_t v = lo; v <= hi; ++v) {
      m[level] = v;
      const double term = upper(level, level) * static_cast<double>(v) + shift;
      const double total = used + term * term;
      if (total > accept * (1.0 + 1e-12) + 1e-300) continue;
      if (level == 0) {
        const double norm2 = lattice.dual_norm2(m);
        if (norm2 <= accept) {
          if (out.size() >= options.budget)
            throw ResourceError("dual lattice enumeration exceeded the vector budget of " +
                                std::to_string(options.budget));
          out.push_back({m, norm2});
        }
      } else {
        self(self, level - 1, total);
      }
    }
    m[level] = 0;
  };
  recurse(recurse, n - 1, 0.0);

  std::sort(out.begin(), out.end(), [](const DualVector& a, const DualVector& b) {
    if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
    return std::lexicographical_compare(a.coords.data(), a.coords.data() + a.coords.size(),
                                        b.coords.data(), b.coords.data() + b.coords.size());
  });
  return out;
}

using Orbit = std::vector<IntVector>;

namespace detail {

inline std::vector<std::int64_t> key(const IntVector& v) {
  return {v.data(), v.data() + v.size()};
}

// Holonomy acts on dual coordinates by m -> R^T m (pullback of exp(2 pi i <w,x>)).
inline IntVector act(const HolonomyElement& g, const IntVector& m) {
  return g.rotation.transpose() * m;
}

}  // namespace detail

// Partitions a set of dual vectors of one norm into holonomy orbits.
inline std::vector<Orbit> holonomy_orbits(const FlatManifold& k, std::span<const DualVector> shell) {
  std::map<std::vector<std::int64_t>, bool> seen;
  for (const auto& w : shell) seen.emplace(detail::key(w.coords), false);
  std::vector<Orbit> orbits;
  for (const auto& w : shell) {
    auto it = seen.find(detail::key(w.coords));
    if (it->second) continue;
    Orbit orbit;
    for (const auto& g : k.holonomy()) {
      IntVector image = detail::act(g, w.coords);
      auto jt = seen.find(detail::key(image));
      if (jt == seen.end())
        throw NumericalError("holonomy image of a dual vector left its norm shell");
      if (!jt->second) {
        jt->second = true;
        orbit.push_back(std::move(image));
      }
    }
    std::sort(orbit.begin(), orbit.end(), [](const IntVector& a, const IntVector& b) {
      return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
    });
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

// Dimension of the holonomy-invariant part of span{ e_w' xi : w' in orbit,
// xi in Lambda^l }, from the trace of the group-averaging projector.
inline std::int64_t invariant_multiplicity(const FlatManifold& k, int degree, const Orbit& orbit) {
  if (degree < 0 || degree > k.dimension()) throw InputError("form degree out of range");
  std::complex<double> sum = 0.0;
  const auto& group = k.holonomy();
  for (std::size_t gi = 0; gi < group.size(); ++gi) {
    const auto& g = group[gi];
    const double trace = static_cast<double>(k.exterior_trace(gi, degree));
    if (trace == 0.0) continue;
    for (const auto& m : orbit) {
      if (detail::act(g, m) != m) continue;
      const double phase = kTwoPi * m.cast<double>().dot(g.translation);
      sum += trace * std::polar(1.0, phase);
    }
  }
  sum /= static_cast<double>(group.size());
  const double rounded = std::round(sum.real());
  if (std::abs(sum.imag()) > 1e-6 || std::abs(sum.real() - rounded) > 1e-6 || rounded < 0)
    throw NumericalError("averaged holonomy trace is not a nonnegative integer");
  return static_cast<std::int64_t>(rounded);
}

struct SpectrumRow {
  double eigenvalue = 0;
  std::int64_t multiplicity = 0;
  bool operator==(const SpectrumRow&) const = default;
};

struct SpectrumTable {
  int degree = 0;
  std::vector<SpectrumRow> rows;  // strictly increasing eigenvalues, multiplicity >= 1
  double cutoff = 0;              // complete up to this value

  std::int64_t multiplicity_near(double eigenvalue, double rel_tol = 1e-9) const {
    for (const auto& r : rows)
      if (std::abs(r.eigenvalue - eigenvalue) <= rel_tol * std::max(1.0, std::abs(eigenvalue)))
        return r.multiplicity;
    return 0;
  }
  std::int64_t zero_multiplicity() const {
    return !rows.empty() && rows.front().eigenvalue == 0.0 ? rows.front().multiplicity : 0;
  }
  bool operator==(const SpectrumTable&) const = default;
};

// Spectra for every degree 0..n, complete up to lambda_max.
inline std::vector<SpectrumTable> form_spectra(const FlatManifold& k, double lambda_max,
                                               EnumerationOptions options = {}) {
  const int n = k.dimension();
  const double scale2 = k.scale() * k.scale();
  const auto vectors = enumerate_dual_vectors(k.lattice(), lambda_max * scale2, options);
  std::vector<SpectrumTable> tables(n + 1);
  for (int l = 0; l <= n; ++l) {
    tables[l].degree = l;
    tables[l].cutoff = lambda_max;
  }
  std::size_t begin = 0;
  while (begin < vectors.size()) {
    const double base = vectors[begin].norm2;
    std::size_t end = begin + 1;
    while (end < vectors.size() && vectors[end].norm2 <= base * (1.0 + 1e-9)) ++end;
    const std::span<const DualVector> shell(vectors.data() + begin, end - begin);
    const auto orbits = holonomy_orbits(k, shell);
    const double eigenvalue = kTwoPi * kTwoPi * base / scale2;
    for (int l = 0; l <= n; ++l) {
      std::int64_t mult = 0;
      for (const auto& orbit : orbits) mult += invariant_multiplicity(k, l, orbit);
      if (mult > 0) tables[l].rows.push_back({eigenvalue, mult});
    }
    begin = end;
  }
  return tables;
}

inline SpectrumTable form_spectrum(const FlatManifold& k, int degree, double lambda_max,
                                   EnumerationOptions options = {}) {
  if (degree < 0 || degree > k.dimension()) throw InputError("form degree out of range");
  return form_spectra(k, lambda_max, options)[degree];
}

// Multiplicities of the zero eigenvalue: averages of exterior traces.
inline std::vector<std::int64_t> betti_numbers(const FlatManifold& k) {
  const int n = k.dimension();
  const Orbit origin{IntVector::Zero(n)};
  std::vector<std::int64_t> b(n + 1);
  for (int l = 0; l <= n; ++l) b[l] = invariant_multiplicity(k, l, origin);
  return b;
}

// Smallest eigenvalue in degree l. Doubles the cutoff until a row appears;
// the first row of a table complete up to its cutoff is the true minimum.
inline double lambda_o(const FlatManifold& k, int degree, EnumerationOptions options = {}) {
  if (degree < 0 || degree > k.dimension()) throw InputError("form degree out of range");
  if (betti_numbers(k)[degree] > 0) return 0.0;
  const double length = k.scale() * k.lattice().basis().colwise().norm().maxCoeff();
  double cutoff = (kTwoPi / length) * (kTwoPi / length);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const SpectrumTable table = form_spectrum(k, degree, cutoff, options);
    if (!table.rows.empty()) return table.rows.front().eigenvalue;
    cutoff *= 2.0;
  }
  throw ResourceError("no eigenvalue found below the enumeration budget");
}

// lambda_o for every degree, sharing one enumeration per cutoff.
inline std::vector<double> lambda_o_all(const FlatManifold& k, EnumerationOptions options = {}) {
  const int n = k.dimension();
  std::vector<double> out(n + 1, -1.0);
  const auto betti = betti_numbers(k);
  int missing = 0;
  for (int l = 0; l <= n; ++l) {
    if (betti[l] > 0) out[l] = 0.0;
    else ++missing;
  }
  const double length = k.scale() * k.lattice().basis().colwise().norm().maxCoeff();
  double cutoff = (kTwoPi / length) * (kTwoPi / length);
  for (int attempt = 0; missing > 0 && attempt < 64; ++attempt) {
    const auto tables = form_spectra(k, cutoff, options);
    for (int l = 0; l <= n; ++l) {
      if (out[l] < 0.0 && !tables[l].rows.empty()) {
        out[l] = tables[l].rows.front().eigenvalue;
        --missing;
      }
    }
    cutoff *= 2.0;
  }
  if (missing > 0) throw ResourceError("no eigenvalue found below the enumeration budget");
  return out;
}

}  // namespace formspec
