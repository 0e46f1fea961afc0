#pragma once

// Localization of bottom eigenvalues on discrete domains: Gromov coverings by
// maximal packings, squared partitions of unity, and the transfer of a
// Rayleigh quotient from a large domain to one of the small balls.

#include "formspec/errors.hpp"
#include "formspec/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace formspec {

// A connected graph with uniform edge length, carrying the Dirichlet graph
// Laplacian. `boundary_links[i]` counts edges from node i to removed
// (Dirichlet) boundary nodes.
class DiscreteDomain {
 public:
  DiscreteDomain(std::vector<std::vector<std::size_t>> adjacency, std::vector<int> boundary_links,
                 double spacing, std::vector<double> coordinates)
      : adjacency_(std::move(adjacency)),
        boundary_links_(std::move(boundary_links)),
        spacing_(spacing),
        coordinates_(std::move(coordinates)) {
    const std::size_t n = adjacency_.size();
    if (n == 0) throw InputError("domain has no nodes");
    if (!(spacing_ > 0.0)) throw InputError("domain spacing must be positive");
    if (boundary_links_.size() != n || coordinates_.size() != n)
      throw InputError("domain node data sizes disagree");
    const auto d0 = hop_distances(0);
    if (std::any_of(d0.begin(), d0.end(), [](long d) { return d < 0; }))
      throw InputError("domain is not connected");
    const double inv_h2 = 1.0 / (spacing_ * spacing_);
    std::vector<Triplet> entries;
    for (std::size_t i = 0; i < n; ++i) {
      const double degree = static_cast<double>(adjacency_[i].size() + static_cast<std::size_t>(boundary_links_[i]));
      entries.push_back({i, i, degree * inv_h2});
      for (std::size_t j : adjacency_[i]) entries.push_back({i, j, -inv_h2});
    }
    laplacian_ = SparseOperator::from_triplets(n, std::move(entries));
  }

  // Interior nodes a+h, ..., b-h of [a, b]; Dirichlet at both ends.
  static DiscreteDomain interval(double a, double b, double spacing) {
    if (!(b > a) || !(spacing > 0.0)) throw InputError("interval needs b > a and positive spacing");
    const auto cells = static_cast<std::size_t>(std::llround((b - a) / spacing));
    if (cells < 2 || std::abs(static_cast<double>(cells) * spacing - (b - a)) > 1e-9 * (b - a))
      throw InputError("interval length must be a multiple of the spacing (at least 2 cells)");
    const std::size_t n = cells - 1;
    std::vector<std::vector<std::size_t>> adj(n);
    std::vector<int> boundary(n, 0);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = a + static_cast<double>(i + 1) * spacing;
      if (i > 0) adj[i].push_back(i - 1);
      if (i + 1 < n) adj[i].push_back(i + 1);
    }
    boundary.front() += 1;
    boundary.back() += 1;
    DiscreteDomain d(std::move(adj), std::move(boundary), spacing, std::move(x));
    d.bounds_ = std::make_pair(a, b);
    return d;
  }

  // Hub plus `legs` paths of length leg_length, Dirichlet at each leaf end.
  // Coordinates record the distance from the hub.
  static DiscreteDomain star(int legs, double leg_length, double spacing) {
    if (legs < 1) throw InputError("star needs at least one leg");
    const auto per_leg = static_cast<std::size_t>(std::llround(leg_length / spacing)) - 1;
    if (per_leg < 1) throw InputError("star legs are shorter than two cells");
    const std::size_t n = 1 + static_cast<std::size_t>(legs) * per_leg;
    std::vector<std::vector<std::size_t>> adj(n);
    std::vector<int> boundary(n, 0);
    std::vector<double> x(n, 0.0);
    for (int l = 0; l < legs; ++l) {
      std::size_t prev = 0;
      for (std::size_t s = 0; s < per_leg; ++s) {
        const std::size_t node = 1 + static_cast<std::size_t>(l) * per_leg + s;
        x[node] = static_cast<double>(s + 1) * spacing;
        adj[node].push_back(prev);
        adj[prev].push_back(node);
        prev = node;
      }
      boundary[prev] += 1;
    }
    return DiscreteDomain(std::move(adj), std::move(boundary), spacing, std::move(x));
  }

  std::size_t node_count() const { return adjacency_.size(); }
  double spacing() const { return spacing_; }
  const std::vector<double>& coordinates() const { return coordinates_; }
  const std::vector<std::vector<std::size_t>>& adjacency() const { return adjacency_; }
  const SparseOperator& laplacian() const { return laplacian_; }
  const std::optional<std::pair<double, double>>& interval_bounds() const { return bounds_; }

  // BFS hop counts; -1 for unreachable.
  std::vector<long> hop_distances(std::size_t source) const {
    std::vector<long> dist(adjacency_.size(), -1);
    std::deque<std::size_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : adjacency_[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
    }
    return dist;
  }

  std::vector<double> distances_from(std::size_t source) const {
    const auto hops = hop_distances(source);
    std::vector<double> out(hops.size());
    for (std::size_t i = 0; i < hops.size(); ++i) out[i] = static_cast<double>(hops[i]) * spacing_;
    return out;
  }

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<int> boundary_links_;
  double spacing_;
  std::vector<double> coordinates_;
  std::optional<std::pair<double, double>> bounds_;
  SparseOperator laplacian_;
};

struct CoverSystem {
  std::vector<std::size_t> centers;
  double small_radius = 0;                     // R'
  std::vector<std::vector<double>> distances;  // per centre, to every node
  std::vector<std::vector<double>> weights;    // rho_j at every node, sum_j rho_j^2 = 1
  double gradient_constant = 0;                // max |grad rho_j| * R' over edges
  double gradient_sum_constant = 0;            // max over edges of sum_j |grad rho_j|^2 * R'^2
  int overlap = 0;                             // max number of doubled balls through a node
  double partition_error = 0;                  // max |sum_j rho_j^2 - 1|

  double cover_radius() const { return 2.0 * small_radius; }
};

// Maximal R'-packing built farthest-first from node 0 (ties by lowest index):
// centres stay at least 2R' apart, so the balls B(c, R') are disjoint, and the
// doubled balls cover by maximality. rho_j are normalized plateau tents.
inline CoverSystem gromov_cover(const DiscreteDomain& domain, double small_radius) {
  if (!(small_radius >= 4.0 * domain.spacing())) throw InputError("need R' >= 4h");
  const std::size_t n = domain.node_count();
  const double cover = 2.0 * small_radius;
  const double slack = 1e-9 * domain.spacing();
  CoverSystem cs;
  cs.small_radius = small_radius;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::size_t next = 0;
  while (true) {
    cs.centers.push_back(next);
    cs.distances.push_back(domain.distances_from(next));
    const auto& d = cs.distances.back();
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], d[i]);
    const auto far = std::max_element(nearest.begin(), nearest.end());
    if (*far < cover - slack) break;
    next = static_cast<std::size_t>(far - nearest.begin());
  }

  const std::size_t m = cs.centers.size();
  cs.weights.assign(m, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    int through = 0;
    for (std::size_t j = 0; j < m; ++j) {
      const double d = cs.distances[j][i];
      const double tent = std::clamp((cover - d) / small_radius, 0.0, 1.0);
      cs.weights[j][i] = tent;
      sum += tent * tent;
      if (d < cover) ++through;
    }
    cs.overlap = std::max(cs.overlap, through);
    const double scale = 1.0 / std::sqrt(sum);
    double check = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      cs.weights[j][i] *= scale;
      check += cs.weights[j][i] * cs.weights[j][i];
    }
    cs.partition_error = std::max(cs.partition_error, std::abs(check - 1.0));
  }

  const double h = domain.spacing();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v : domain.adjacency()[u]) {
      if (v < u) continue;
      double sum = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double g = (cs.weights[j][u] - cs.weights[j][v]) / h;
        cs.gradient_constant = std::max(cs.gradient_constant, std::abs(g) * small_radius);
        sum += g * g;
      }
      cs.gradient_sum_constant = std::max(cs.gradient_sum_constant, sum * small_radius * small_radius);
    }
  }
  return cs;
}

inline double quadratic_form(const SparseOperator& h, const std::vector<double>& v) {
  const auto hv = h * v;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += hv[i] * v[i];
  return s;
}

inline double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

struct LocalizationResult {
  std::size_t best_center = 0;  // index into CoverSystem::centers
  double localized_quotient = 0;
  double global_quotient = 0;   // Rayleigh quotient of omega
  double summed_quotient = 0;   // sum_j Q(rho_j omega) / sum_j ||rho_j omega||^2
  double measured_constant = 0; // R'^2 (sum_j Q(rho_j omega) - Q(omega)) / ||omega||^2
  std::vector<double> quotients;  // per centre; NaN where rho_j omega vanishes
};

inline LocalizationResult localize_eigenvalue(const DiscreteDomain& domain, const CoverSystem& cover,
                                              const std::vector<double>& omega) {
  const std::size_t n = domain.node_count();
  if (omega.size() != n) throw InputError("test vector length does not match domain");
  const double total = norm2(omega);
  if (!(total > 0.0)) throw InputError("test vector is identically zero");
  const SparseOperator& h = domain.laplacian();
  LocalizationResult out;
  out.global_quotient = quadratic_form(h, omega) / total;
  double sum_q = 0.0, sum_n = 0.0;
  std::vector<double> piece(n);
  bool found = false;
  for (std::size_t j = 0; j < cover.centers.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) piece[i] = cover.weights[j][i] * omega[i];
    const double q = quadratic_form(h, piece);
    const double nn = norm2(piece);
    sum_q += q;
    sum_n += nn;
    if (nn > 0.0) {
      const double ratio = q / nn;
      out.quotients.push_back(ratio);
      if (!found || ratio < out.localized_quotient) {
        found = true;
        out.localized_quotient = ratio;
        out.best_center = j;
      }
    } else {
      out.quotients.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  out.summed_quotient = sum_q / sum_n;
  const double r2 = cover.small_radius * cover.small_radius;
  out.measured_constant = std::max(0.0, r2 * (sum_q - quadratic_form(h, omega)) / total);
  return out;
}

using ChannelBuilder = std::function<SparseOperator(const DiscreteDomain&)>;

inline ChannelBuilder dirichlet_laplacian_builder() {
  return [](const DiscreteDomain& d) { return d.laplacian(); };
}

// Laplacian plus a multiplication potential V(x) on node coordinates.
inline ChannelBuilder schrodinger_builder(std::function<double(double)> potential) {
  return [potential = std::move(potential)](const DiscreteDomain& d) {
    auto entries = d.laplacian().triplets();
    for (std::size_t i = 0; i < d.node_count(); ++i) entries.push_back({i, i, potential(d.coordinates()[i])});
    return SparseOperator::from_triplets(d.node_count(), std::move(entries));
  };
}

enum class ProbeMode { Nested, Translated };

struct ProbeRow {
  double radius = 0;
  double center = 0;
  double bottom = 0;
};

struct ProbeResult {
  std::vector<ProbeRow> rows;
  double last_bottom = 0;
  double extrapolated_limit = 0;  // a + b / R^2 fitted through the last two rows
  bool monotone = true;           // nonincreasing bottoms (nested mode only)
};

// Bottom Dirichlet eigenvalues over a sequence of interval domains: nested
// expanding balls (domain monotonicity applies) or disjoint windows moving out.
inline ProbeResult minimal_sequence_probe(const std::vector<DiscreteDomain>& domains,
                                          const ChannelBuilder& builder, ProbeMode mode = ProbeMode::Nested) {
  if (domains.empty()) throw InputError("probe needs at least one domain");
  for (const auto& d : domains)
    if (!d.interval_bounds()) throw InputError("probe domains must be intervals");
  for (std::size_t i = 1; i < domains.size(); ++i) {
    const auto [a0, b0] = *domains[i - 1].interval_bounds();
    const auto [a1, b1] = *domains[i].interval_bounds();
    const double tol = 1e-9 * std::max(1.0, std::abs(b1));
    if (mode == ProbeMode::Nested && (a1 > a0 + tol || b1 < b0 - tol))
      throw InputError("probe domains are not nested");
    if (mode == ProbeMode::Translated && a1 < b0 - tol)
      throw InputError("probe windows overlap or move inward");
  }
  ProbeResult out;
  for (const auto& d : domains) {
    const auto [a, b] = *d.interval_bounds();
    out.rows.push_back({0.5 * (b - a), 0.5 * (a + b), smallest_eigenvalue(builder(d))});
  }
  for (std::size_t i = 1; i < out.rows.size() && mode == ProbeMode::Nested; ++i)
    if (out.rows[i].bottom > out.rows[i - 1].bottom * (1.0 + 1e-12) + 1e-14) out.monotone = false;
  if (mode == ProbeMode::Translated) out.monotone = false;
  out.last_bottom = out.rows.back().bottom;
  out.extrapolated_limit = out.last_bottom;
  if (out.rows.size() >= 2 && mode == ProbeMode::Nested) {
    const auto& p = out.rows[out.rows.size() - 2];
    const auto& q = out.rows.back();
    const double a = p.radius * p.radius, b = q.radius * q.radius;
    out.extrapolated_limit = (b * q.bottom - a * p.bottom) / (b - a);
  }
  return out;
}

}  // namespace formspec
