#pragma once

// Warped products over a line, I x_phi K1 x_psi K2: curvature generators,
// leading-order radial channel operators, and the essential-spectrum
// classification driven by Betti numbers of collapsing fibres.

#include "formspec/errors.hpp"
#include "formspec/flat_manifold.hpp"
#include "formspec/flat_spectra.hpp"
#include "formspec/localization.hpp"
#include "formspec/sparse_operator.hpp"
#include "formspec/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace formspec {

class WarpFunction {
 public:
  enum class Kind { Constant, PowerLaw, Custom };

  static WarpFunction constant(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InputError("constant warp must be positive");
    WarpFunction w(Kind::Constant);
    w.constant_ = c;
    return w;
  }

  // |r|^p for |r| >= r0.
  static WarpFunction power_law(double exponent, double matching_radius) {
    if (!std::isfinite(exponent)) throw InputError("power-law exponent must be finite");
    if (!(matching_radius > 0.0) || !std::isfinite(matching_radius))
      throw InputError("matching radius must be positive");
    WarpFunction w(Kind::PowerLaw);
    w.exponent_ = exponent;
    w.matching_radius_ = matching_radius;
    return w;
  }

  // Samples of f, f', f'' on an increasing grid, linearly interpolated.
  static WarpFunction custom(std::vector<double> r, std::vector<double> f, std::vector<double> d1,
                             std::vector<double> d2) {
    const std::size_t n = r.size();
    if (n < 3) throw InputError("custom warp needs at least three samples");
    if (f.size() != n || d1.size() != n || d2.size() != n)
      throw InputError("custom warp sample columns differ in length");
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(r[i]) || !std::isfinite(f[i]) || !std::isfinite(d1[i]) || !std::isfinite(d2[i]))
        throw InputError("custom warp sample " + std::to_string(i) + " is not finite");
      if (!(f[i] > 0.0)) throw InputError("custom warp sample " + std::to_string(i) + " is not positive");
      if (i > 0 && !(r[i] > r[i - 1])) throw InputError("custom warp radii must increase");
    }
    auto consistent = [](double diff, double exact) {
      return std::abs(diff - exact) <= 1e-4 * (std::abs(diff) + std::abs(exact)) + 1e-12;
    };
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double span = r[i + 1] - r[i - 1];
      if (!consistent((f[i + 1] - f[i - 1]) / span, d1[i]))
        throw InputError("custom warp first derivative disagrees with samples near r=" + std::to_string(r[i]));
      if (!consistent((d1[i + 1] - d1[i - 1]) / span, d2[i]))
        throw InputError("custom warp second derivative disagrees with samples near r=" + std::to_string(r[i]));
    }
    WarpFunction w(Kind::Custom);
    w.r_ = std::move(r);
    w.f_ = std::move(f);
    w.d1_ = std::move(d1);
    w.d2_ = std::move(d2);
    return w;
  }

  Kind kind() const { return kind_; }
  double constant_value() const { return constant_; }
  double exponent() const { return exponent_; }
  double matching_radius() const { return matching_radius_; }
  const std::vector<double>& sample_radii() const { return r_; }
  const std::vector<double>& sample_values() const { return f_; }
  const std::vector<double>& sample_first() const { return d1_; }
  const std::vector<double>& sample_second() const { return d2_; }

  bool collapsing() const { return kind_ == Kind::PowerLaw && exponent_ < 0.0; }
  bool expanding() const { return kind_ == Kind::PowerLaw && exponent_ > 0.0; }
  bool bounded_scale() const { return kind_ == Kind::Constant || (kind_ == Kind::PowerLaw && exponent_ == 0.0); }
  // Value of the warp at infinity for bounded-scale warps.
  double limit_scale() const { return kind_ == Kind::Constant ? constant_ : 1.0; }

  // Start of the region where the closed form (or the samples) apply.
  double formula_start() const {
    switch (kind_) {
      case Kind::Constant: return 0.0;
      case Kind::PowerLaw: return matching_radius_;
      case Kind::Custom: return r_.front();
    }
    return 0.0;
  }
  double formula_end() const {
    return kind_ == Kind::Custom ? r_.back() : std::numeric_limits<double>::infinity();
  }

  double value(double r) const { return eval(r, 0); }
  double first(double r) const { return eval(r, 1); }
  double second(double r) const { return eval(r, 2); }

  bool operator==(const WarpFunction&) const = default;

 private:
  explicit WarpFunction(Kind kind) : kind_(kind) {}

  double eval(double r, int order) const {
    switch (kind_) {
      case Kind::Constant: return order == 0 ? constant_ : 0.0;
      case Kind::PowerLaw: {
        const double a = std::abs(r);
        if (a < matching_radius_)
          throw InputError("r=" + std::to_string(r) + " lies below the matching radius " +
                           std::to_string(matching_radius_));
        const double p = exponent_;
        const double sign = r < 0.0 && order == 1 ? -1.0 : 1.0;
        if (order == 0) return std::pow(a, p);
        if (order == 1) return sign * p * std::pow(a, p - 1.0);
        return p * (p - 1.0) * std::pow(a, p - 2.0);
      }
      case Kind::Custom: {
        if (r < r_.front() || r > r_.back())
          throw InputError("r=" + std::to_string(r) + " lies outside the sampled warp");
        const auto& col = order == 0 ? f_ : (order == 1 ? d1_ : d2_);
        const auto it = std::upper_bound(r_.begin(), r_.end(), r);
        if (it == r_.end()) return col.back();
        const std::size_t j = static_cast<std::size_t>(it - r_.begin());
        const double t = (r - r_[j - 1]) / (r_[j] - r_[j - 1]);
        return (1.0 - t) * col[j - 1] + t * col[j];
      }
    }
    return 0.0;
  }

  Kind kind_;
  double constant_ = 1.0;
  double exponent_ = 0.0;
  double matching_radius_ = 1.0;
  std::vector<double> r_, f_, d1_, d2_;
};

struct RoundSphere {
  int dimension = 2;
  bool operator==(const RoundSphere&) const = default;
};

struct WarpedFactor {
  std::string label;
  std::variant<FlatManifold, RoundSphere> manifold;
  WarpFunction warp;

  int dimension() const {
    if (const auto* k = std::get_if<FlatManifold>(&manifold)) return k->dimension();
    return std::get<RoundSphere>(manifold).dimension;
  }
  bool is_sphere() const { return std::holds_alternative<RoundSphere>(manifold); }
  const FlatManifold* flat() const { return std::get_if<FlatManifold>(&manifold); }
};

enum class WarpedBase { Line, HalfLine };

struct WarpedModel {
  std::string name;
  WarpedBase base = WarpedBase::Line;
  std::vector<WarpedFactor> factors;
  std::map<int, SpectrumVerdict> reference_verdicts;  // verdicts stated for this model, if any

  int total_dimension() const {
    int n = 1;
    for (const auto& f : factors) n += f.dimension();
    return n;
  }

  void validate() const {
    if (factors.empty() || factors.size() > 2) throw InputError("a warped model has one or two factors");
    for (const auto& f : factors) {
      if (f.dimension() < 1) throw InputError("factor '" + f.label + "' has no dimension");
      if (f.is_sphere() && f.dimension() < 1) throw InputError("sphere dimension must be positive");
    }
    for (const auto& [k, v] : reference_verdicts)
      if (k < 0 || k > total_dimension()) throw InputError("reference verdict degree out of range");
  }
};

struct CurvatureGenerator {
  std::string name;
  double value = 0;
};

struct CurvatureSample {
  double r = 0;
  std::vector<CurvatureGenerator> generators;
  double max_magnitude = 0;
};

// Sectional curvatures of the model at radius r lie in the convex hull of
// these expressions.
inline CurvatureSample curvature_generators(const WarpedModel& model, double r) {
  model.validate();
  CurvatureSample s;
  s.r = r;
  const char* names[2] = {"phi", "psi"};
  std::vector<double> value, first;
  for (std::size_t j = 0; j < model.factors.size(); ++j) {
    const auto& f = model.factors[j];
    const double u = f.warp.value(r), du = f.warp.first(r), ddu = f.warp.second(r);
    const std::string n = names[j];
    s.generators.push_back({"-" + n + "''/" + n, -ddu / u});
    if (f.is_sphere())
      s.generators.push_back({"(1-(" + n + "')^2)/" + n + "^2", (1.0 - du * du) / (u * u)});
    else
      s.generators.push_back({"-(" + n + "')^2/" + n + "^2", -(du * du) / (u * u)});
    value.push_back(u);
    first.push_back(du);
  }
  if (model.factors.size() == 2)
    s.generators.push_back({"-phi'psi'/(phi psi)", -(first[0] * first[1]) / (value[0] * value[1])});
  for (const auto& g : s.generators) s.max_magnitude = std::max(s.max_magnitude, std::abs(g.value));
  return s;
}

enum class FlatnessStatus { Flat, NotFlat, Unknown };

inline std::string flatness_name(FlatnessStatus s) {
  switch (s) {
    case FlatnessStatus::Flat: return "flat";
    case FlatnessStatus::NotFlat: return "not-flat";
    case FlatnessStatus::Unknown: return "unknown";
  }
  return "unknown";
}

struct FlatnessReport {
  FlatnessStatus status = FlatnessStatus::Unknown;
  double decay_exponent = 0;  // fitted p in max|generator| ~ r^-p over the last decade
  double tail_magnitude = 0;  // max|generator| at the last sample
  double sample_end = 0;
  std::string note;

  bool flat() const { return status == FlatnessStatus::Flat; }
};

// Samples the generators on a geometric grid (16 points per decade) up to
// 1e6, or to the end of the sampled data for custom warps, and fits the decay
// exponent on the last decade.
inline FlatnessReport is_asymptotically_flat(const WarpedModel& model) {
  model.validate();
  FlatnessReport rep;
  double lo = 1.0, hi = 1e6;
  for (const auto& f : model.factors) {
    lo = std::max(lo, f.warp.formula_start());
    hi = std::min(hi, f.warp.formula_end());
  }
  rep.sample_end = hi;
  if (!(hi >= 10.0 * lo)) {
    rep.note = "warp data cover less than one decade beyond r=" + std::to_string(lo);
    return rep;
  }
  const double fit_start = hi / 10.0;
  const int points = 16;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  bool all_zero = true;
  for (int i = 0; i <= points; ++i) {
    const double r = fit_start * std::pow(10.0, static_cast<double>(i) / points);
    const double m = curvature_generators(model, std::min(r, hi)).max_magnitude;
    if (m > 0.0) all_zero = false;
    const double x = std::log(r), y = std::log(std::max(m, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.tail_magnitude = curvature_generators(model, hi).max_magnitude;
  if (all_zero) {
    rep.status = FlatnessStatus::Flat;
    rep.decay_exponent = std::numeric_limits<double>::infinity();
    rep.note = "curvature vanishes identically on the tail";
    return rep;
  }
  const double count = points + 1;
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  rep.decay_exponent = -slope;
  rep.status = rep.decay_exponent > 0.1 ? FlatnessStatus::Flat : FlatnessStatus::NotFlat;
  return rep;
}

struct ChannelGrid {
  double r_min = 1;
  double r_max = 50;
  double spacing = 0.05;
  double spectral_cutoff = 2.0 * kTwoPi * kTwoPi;  // factor eigenvalues kept per degree
};

enum class ChannelTag { Free, Shifted, Divergent, Unknown };

inline std::string channel_tag_name(ChannelTag t) {
  switch (t) {
    case ChannelTag::Free: return "free";
    case ChannelTag::Shifted: return "shifted";
    case ChannelTag::Divergent: return "divergent";
    case ChannelTag::Unknown: return "unknown";
  }
  return "unknown";
}

// One term of the decomposition k = a + c1 (+ c2): a in {0,1} counts the dr
// factor, c_j the fibre degrees, mu_j the fibre eigenvalues.
struct ChannelLabel {
  int radial_degree = 0;
  std::vector<int> degrees;
  std::vector<double> eigenvalues;
  std::int64_t multiplicity = 1;

  std::string describe() const {
    std::string s = "a=" + std::to_string(radial_degree);
    char buf[64];
    for (std::size_t j = 0; j < degrees.size(); ++j) {
      std::snprintf(buf, sizeof buf, ";c%zu=%d;mu%zu=%.12g", j + 1, degrees[j], j + 1, eigenvalues[j]);
      s += buf;
    }
    return s;
  }
};

struct ChannelOperator {
  ChannelLabel label;
  ChannelTag tag = ChannelTag::Unknown;
  double potential_limit = 0;  // V(r) as r -> infinity
  std::vector<double> r;       // interior nodes
  std::vector<double> potential;
  std::vector<double> weight;
  SparseOperator op;
};

// Potential sum_j mu_j / phi_j(r)^2 and volume density prod_j phi_j(r)^dim_j.
inline double channel_potential(const WarpedModel& model, const ChannelLabel& label, double r) {
  double v = 0.0;
  for (std::size_t j = 0; j < model.factors.size(); ++j) {
    if (label.eigenvalues[j] == 0.0) continue;
    const double u = model.factors[j].warp.value(r);
    v += label.eigenvalues[j] / (u * u);
  }
  return v;
}

inline double channel_weight(const WarpedModel& model, double r) {
  double w = 1.0;
  for (const auto& f : model.factors) w *= std::pow(f.warp.value(r), f.dimension());
  return w;
}

inline ChannelTag channel_tag(const WarpedModel& model, const ChannelLabel& label, double* limit) {
  double v = 0.0;
  for (std::size_t j = 0; j < model.factors.size(); ++j) {
    const double mu = label.eigenvalues[j];
    if (mu == 0.0) continue;
    const auto& w = model.factors[j].warp;
    if (w.collapsing()) {
      v = std::numeric_limits<double>::infinity();
    } else if (w.expanding()) {
      continue;
    } else if (w.bounded_scale()) {
      v += mu / (w.limit_scale() * w.limit_scale());
    } else {
      *limit = std::numeric_limits<double>::quiet_NaN();
      return ChannelTag::Unknown;
    }
  }
  *limit = v;
  if (std::isinf(v)) return ChannelTag::Divergent;
  return v == 0.0 ? ChannelTag::Free : ChannelTag::Shifted;
}

// Dirichlet Sturm-Liouville operator -(1/w)(w u')' + V u on the open window
// (r_min, r_max), conjugated by sqrt(w) into a symmetric matrix.
inline ChannelOperator assemble_channel(const WarpedModel& model, const ChannelLabel& label, double r_min,
                                        double r_max, double spacing) {
  if (!(r_max > r_min) || !(spacing > 0.0)) throw InputError("channel window needs r_max > r_min, h > 0");
  for (const auto& f : model.factors)
    if (r_min < f.warp.formula_start() || r_max > f.warp.formula_end())
      throw InputError("channel window leaves the region where factor '" + f.label + "' has a warp formula");
  const auto cells = static_cast<std::size_t>(std::llround((r_max - r_min) / spacing));
  if (cells < 2) throw InputError("channel window is shorter than two cells");
  const double h = (r_max - r_min) / static_cast<double>(cells);
  const std::size_t n = cells - 1;
  ChannelOperator c;
  c.label = label;
  c.tag = channel_tag(model, label, &c.potential_limit);
  c.r.resize(n);
  c.potential.resize(n);
  c.weight.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.r[i] = r_min + static_cast<double>(i + 1) * h;
    c.potential[i] = channel_potential(model, label, c.r[i]);
    c.weight[i] = channel_weight(model, c.r[i]);
  }
  const double inv_h2 = 1.0 / (h * h);
  std::vector<Triplet> entries;
  entries.reserve(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = channel_weight(model, c.r[i] - 0.5 * h);
    const double right = channel_weight(model, c.r[i] + 0.5 * h);
    entries.push_back({i, i, (left + right) / c.weight[i] * inv_h2 + c.potential[i]});
    if (i + 1 < n) {
      const double off = -right * inv_h2 / std::sqrt(c.weight[i] * c.weight[i + 1]);
      entries.push_back({i, i + 1, off});
      entries.push_back({i + 1, i, off});
    }
  }
  c.op = SparseOperator::from_triplets(n, std::move(entries));
  return c;
}

// Builds the channel on an interval domain (for minimal_sequence_probe).
inline ChannelBuilder channel_builder(const WarpedModel& model, const ChannelLabel& label) {
  return [model, label](const DiscreteDomain& d) {
    if (!d.interval_bounds()) throw InputError("channel builder needs an interval domain");
    const auto [a, b] = *d.interval_bounds();
    return assemble_channel(model, label, a, b, d.spacing()).op;
  };
}

namespace detail {

inline void require_flat_factors(const WarpedModel& model) {
  for (const auto& f : model.factors)
    if (f.is_sphere())
      throw InputError("factor '" + f.label + "' is a sphere; only flat factors carry form spectra here");
}

// All (a, c_1, ..., c_m) with a in {0,1}, 0 <= c_j <= dim_j, summing to k.
inline std::vector<std::vector<int>> decompositions(const WarpedModel& model, int k) {
  std::vector<std::vector<int>> out;
  const int m = static_cast<int>(model.factors.size());
  std::vector<int> cur(static_cast<std::size_t>(m) + 1, 0);
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == m + 1) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const int cap = j == 0 ? 1 : model.factors[static_cast<std::size_t>(j - 1)].dimension();
    for (int c = 0; c <= std::min(cap, left); ++c) {
      cur[static_cast<std::size_t>(j)] = c;
      self(self, j + 1, left - c);
    }
  };
  rec(rec, 0, k);
  return out;
}

}  // namespace detail

// Channel labels for degree k with fibre eigenvalues up to the cutoff.
inline std::vector<ChannelLabel> channel_labels(const WarpedModel& model, int k, double spectral_cutoff) {
  model.validate();
  detail::require_flat_factors(model);
  const int n = model.total_dimension();
  if (k < 0 || k > n) throw InputError("form degree " + std::to_string(k) + " out of range");
  std::vector<std::vector<SpectrumTable>> tables;
  for (const auto& f : model.factors) tables.push_back(form_spectra(*f.flat(), spectral_cutoff));
  std::vector<ChannelLabel> out;
  for (const auto& d : detail::decompositions(model, k)) {
    std::vector<ChannelLabel> partial{ChannelLabel{d[0], {}, {}, 1}};
    for (std::size_t j = 0; j < model.factors.size(); ++j) {
      const int c = d[j + 1];
      const auto& rows = tables[j][static_cast<std::size_t>(c)].rows;
      if (rows.empty())
        throw InputError("no eigenvalue of factor '" + model.factors[j].label + "' in degree " + std::to_string(c) +
                         " below the cutoff; raise it");
      std::vector<ChannelLabel> next;
      for (const auto& p : partial)
        for (const auto& row : rows) {
          ChannelLabel l = p;
          l.degrees.push_back(c);
          l.eigenvalues.push_back(row.eigenvalue);
          l.multiplicity *= row.multiplicity;
          next.push_back(std::move(l));
        }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

inline std::vector<ChannelOperator> channel_operators(const WarpedModel& model, int k, const ChannelGrid& grid) {
  std::vector<ChannelOperator> out;
  for (const auto& label : channel_labels(model, k, grid.spectral_cutoff))
    out.push_back(assemble_channel(model, label, grid.r_min, grid.r_max, grid.spacing));
  return out;
}

struct ChannelSummary {
  int radial_degree = 0;
  std::vector<int> degrees;
  bool survives = false;
  double bottom = 0;

  std::string describe() const {
    std::string s = "a=" + std::to_string(radial_degree);
    for (std::size_t j = 0; j < degrees.size(); ++j)
      s += ";c" + std::to_string(j + 1) + "=" + std::to_string(degrees[j]);
    return s;
  }
};

struct ClassificationReport {
  int degree = 0;
  SpectrumVerdict verdict = SpectrumVerdict::unknown("not classified");
  std::vector<ChannelSummary> channels;
  std::string witness;  // minimizing surviving channel
  std::optional<SpectrumVerdict> reference;
  bool discrepancy = false;
};

namespace detail {

struct FactorData {
  std::vector<std::int64_t> betti;
  std::vector<double> lambda_o;  // empty unless the factor has a bounded scale
};

inline std::optional<std::string> classification_obstacle(const WarpedModel& model) {
  for (const auto& f : model.factors) {
    if (f.is_sphere()) return "sphere factor '" + f.label + "'";
    if (f.warp.kind() == WarpFunction::Kind::Custom) return "custom warp on factor '" + f.label + "'";
    if (f.warp.expanding()) return "expanding warp on factor '" + f.label + "'";
  }
  return std::nullopt;
}

inline ClassificationReport classify_with(const WarpedModel& model, int k, const std::vector<FactorData>& data) {
  ClassificationReport rep;
  rep.degree = k;
  const int n = model.total_dimension();
  if (k < 0 || k > n) throw InputError("form degree " + std::to_string(k) + " out of range");
  if (auto it = model.reference_verdicts.find(k); it != model.reference_verdicts.end()) rep.reference = it->second;
  if (const auto obstacle = classification_obstacle(model)) {
    rep.verdict = SpectrumVerdict::unknown(*obstacle + " is outside the classification rule");
  } else {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& d : decompositions(model, k)) {
      ChannelSummary s;
      s.radial_degree = d[0];
      s.survives = true;
      for (std::size_t j = 0; j < model.factors.size(); ++j) {
        const int c = d[j + 1];
        s.degrees.push_back(c);
        const auto& w = model.factors[j].warp;
        if (w.collapsing()) {
          if (data[j].betti[static_cast<std::size_t>(c)] == 0) s.survives = false;
        } else {
          const double scale = w.limit_scale();
          s.bottom += data[j].lambda_o[static_cast<std::size_t>(c)] / (scale * scale);
        }
      }
      if (s.survives && s.bottom < best) {
        best = s.bottom;
        rep.witness = s.describe();
      }
      rep.channels.push_back(std::move(s));
    }
    rep.verdict = std::isinf(best) ? SpectrumVerdict::empty() : SpectrumVerdict::interval(best);
  }
  rep.discrepancy = rep.reference && !rep.reference->matches(rep.verdict, 1e-9);
  return rep;
}

inline std::vector<FactorData> factor_data(const WarpedModel& model) {
  std::vector<FactorData> data;
  if (classification_obstacle(model)) return data;
  for (const auto& f : model.factors) {
    FactorData d;
    d.betti = betti_numbers(*f.flat());
    if (!f.warp.collapsing()) d.lambda_o = lambda_o_all(*f.flat());
    data.push_back(std::move(d));
  }
  return data;
}

}  // namespace detail

// A channel survives when each collapsing fibre contributes a harmonic form
// (b_c > 0); bounded-scale fibres add lambda_o(c)/C^2 to its bottom.
inline ClassificationReport classify_essential_spectrum(const WarpedModel& model, int k) {
  model.validate();
  return detail::classify_with(model, k, detail::factor_data(model));
}

inline std::vector<ClassificationReport> classify_all(const WarpedModel& model) {
  model.validate();
  const auto data = detail::factor_data(model);
  std::vector<ClassificationReport> out;
  for (int k = 0; k <= model.total_dimension(); ++k) out.push_back(detail::classify_with(model, k, data));
  return out;
}

namespace catalog {

// R x_{1/r} K, power law from |r| >= r0.
inline WarpedModel inverse_warp(const FlatManifold& k, std::string label, double r0 = 1.0) {
  WarpedModel m;
  m.name = "inverse-warp-" + label;
  m.factors.push_back({std::move(label), k, WarpFunction::power_law(-1.0, r0)});
  return m;
}

// R x_{1/r} HW with the verdicts stated for it.
inline WarpedModel inverse_warp_hantzsche_wendt(double r0 = 1.0) {
  WarpedModel m = inverse_warp(hantzsche_wendt(), "hantzsche-wendt", r0);
  for (int k : {0, 1, 3, 4}) m.reference_verdicts.emplace(k, SpectrumVerdict::interval(0.0));
  m.reference_verdicts.emplace(2, SpectrumVerdict::empty());
  return m;
}

// R x_{C0} HW x_{1/r} HW^3 (dimension 13) with the verdicts stated for it.
// The first-eigenvalue bottom in degree 2 is reported with the 1/C0^2 scale.
inline WarpedModel double_warp_hantzsche_wendt(double c0 = 1.0, double r0 = 1.0) {
  const FlatManifold hw = hantzsche_wendt();
  WarpedModel m;
  m.name = "double-warp-hantzsche-wendt";
  m.factors.push_back({"hantzsche-wendt", hw, WarpFunction::constant(c0)});
  m.factors.push_back({"hantzsche-wendt^3", power(hw, 3), WarpFunction::power_law(-1.0, r0)});
  const double alpha2 = lambda_o(hw, 1) / (c0 * c0);
  std::map<int, SpectrumVerdict> low{{0, SpectrumVerdict::interval(0.0)}, {1, SpectrumVerdict::interval(0.0)},
                                     {2, SpectrumVerdict::interval(alpha2)}, {3, SpectrumVerdict::interval(0.0)},
                                     {4, SpectrumVerdict::interval(0.0)}, {5, SpectrumVerdict::empty()},
                                     {6, SpectrumVerdict::empty()}};
  const int n = m.total_dimension();
  for (const auto& [k, v] : low) {
    m.reference_verdicts.emplace(k, v);
    m.reference_verdicts.emplace(n - k, v);
  }
  return m;
}

inline std::vector<std::string> warped_names() {
  return {"inverse-warp-hantzsche-wendt", "double-warp-hantzsche-wendt"};
}

inline std::optional<WarpedModel> lookup_warped(std::string_view name) {
  if (name == "inverse-warp-hantzsche-wendt") return inverse_warp_hantzsche_wendt();
  if (name == "double-warp-hantzsche-wendt") return double_warp_hantzsche_wendt();
  return std::nullopt;
}

}  // namespace catalog

}  // namespace formspec
