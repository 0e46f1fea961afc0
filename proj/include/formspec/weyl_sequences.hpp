#pragma once

// Certificates built from generalized eigenvectors on large balls: cut the
// eigenvector off near the boundary (annulus) or along a growing band of
// radii, then run the generalized Weyl criterion on the truncation.

#include "formspec/errors.hpp"
#include "formspec/sparse_operator.hpp"
#include "formspec/test_forms.hpp"
#include "formspec/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace formspec {

struct AnnulusOptions {
  double alpha = 1.0;
  double concentration_threshold = 0.1;  // (R-R')^-2 * annulus mass / inner mass
  double eigen_tolerance = 1e-8;
};

struct AnnulusCertificate {
  WeylCertificate certificate;
  double inner_mass = 0;
  double annulus_mass = 0;
  double concentration = 0;
  double measured_constant = 0;  // C in delta <= C (R-R')^-1 ||omega||_annulus / ||rho omega||
};

// `distance[i]` is the distance of node i from the ball centre.
inline AnnulusCertificate annulus_certify(const SparseOperator& h, std::span<const double> distance,
                                          std::span<const Complex> omega, double lambda, double radius,
                                          double inner_radius, AnnulusOptions options = {}) {
  const std::size_t n = h.dimension();
  if (distance.size() != n || omega.size() != n) throw InputError("node data does not match operator");
  if (!(inner_radius < radius - 3.0)) throw InputError("need R' < R - 3");

  AnnulusCertificate out;
  out.certificate.lambda = lambda;
  out.certificate.alpha = options.alpha;
  for (std::size_t i = 0; i < n; ++i) {
    if (distance[i] < inner_radius) out.inner_mass += std::norm(omega[i]);
    else if (distance[i] < radius) out.annulus_mass += std::norm(omega[i]);
  }
  const double gap = radius - inner_radius;
  out.concentration = out.inner_mass > 0.0 ? out.annulus_mass / (gap * gap * out.inner_mass)
                                           : std::numeric_limits<double>::infinity();
  if (out.concentration > options.concentration_threshold) {
    out.certificate.verdict = CertificateVerdict::Unknown;
    out.certificate.note = "concentration hypothesis violated";
    return out;
  }

  ComplexVector residual(n);
  h.apply<Complex>(omega, residual);
  double omega_max = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) omega_max = std::max(omega_max, std::abs(omega[i]));
  for (std::size_t i = 0; i < n; ++i)
    if (distance[i] < radius - 1.0) worst = std::max(worst, std::abs(residual[i] - lambda * omega[i]));
  if (worst > options.eigen_tolerance * (h.norm_bound() + lambda) * omega_max)
    throw InputError("omega does not satisfy the eigen-equation inside the ball");

  ComplexVector cut(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (radius - 1.0 - distance[i]) / (gap - 2.0);
    cut[i] = smooth_step(t) * omega[i];
  }
  out.certificate = certify(h, cut, lambda, options.alpha);
  const double annulus_norm = std::sqrt(out.annulus_mass);
  out.measured_constant = annulus_norm > 0.0 ? out.certificate.delta * gap * norm(cut) / annulus_norm : 0.0;
  return out;
}

struct GrowthOptions {
  double alpha = 1.0;
  double epsilon = 0.1;  // admissible when annulus mass <= epsilon * ball mass
  int first_index = 2;
  std::size_t max_certificates = 16;
};

struct GrowthReport {
  CertificateVerdict verdict = CertificateVerdict::Unknown;
  std::optional<WeylCertificate> best;
  int best_index = -1;
  std::vector<int> admissible;
  double log_mass_slope = 0;  // d/dn log ||omega||^2_{B(n)} over the outer half
  std::string diagnostic;
};

// Scans annuli [n, n+1]; the cutoff is 1 on B(n), 0 outside B(n+1).
inline GrowthReport growth_certify(const SparseOperator& h, std::span<const double> distance,
                                   std::span<const Complex> omega, double lambda, GrowthOptions options = {}) {
  const std::size_t n = h.dimension();
  if (distance.size() != n || omega.size() != n) throw InputError("node data does not match operator");
  const double r_max = *std::max_element(distance.begin(), distance.end());
  const int last = static_cast<int>(std::floor(r_max)) - 2;

  std::vector<double> ball(static_cast<std::size_t>(std::max(last + 2, 1)), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto shell = static_cast<std::size_t>(std::max(0.0, std::ceil(distance[i])));
    if (shell < ball.size()) ball[shell] += std::norm(omega[i]);
  }
  for (std::size_t s = 1; s < ball.size(); ++s) ball[s] += ball[s - 1];  // ball[s] = mass of r <= s

  GrowthReport report;
  for (int k = options.first_index; k <= last; ++k) {
    const double inner = ball[static_cast<std::size_t>(k)];
    const double annulus = ball[static_cast<std::size_t>(k + 1)] - inner;
    if (inner > 0.0 && annulus <= options.epsilon * inner) report.admissible.push_back(k);
  }

  // log-mass slope diagnostic by least squares over the outer half
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int k = std::max(1, last / 2); k <= last; ++k) {
      const double m = ball[static_cast<std::size_t>(k)];
      if (m <= 0.0) continue;
      const double y = std::log(m);
      sx += k;
      sy += y;
      sxx += static_cast<double>(k) * k;
      sxy += k * y;
      ++count;
    }
    if (count >= 2) report.log_mass_slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  }

  if (report.admissible.empty()) {
    report.diagnostic = "no admissible annulus below R_max; log-mass slope " + std::to_string(report.log_mass_slope);
    return report;
  }

  // Geometric ladder through the admissible indices, always including the last.
  std::vector<int> ladder;
  const auto& adm = report.admissible;
  const double ratio = std::pow(static_cast<double>(adm.size()), 1.0 / static_cast<double>(options.max_certificates));
  for (double pos = 1.0; pos <= static_cast<double>(adm.size()); pos = std::max(pos + 1.0, pos * ratio))
    ladder.push_back(adm[static_cast<std::size_t>(pos) - 1]);
  if (ladder.back() != adm.back()) ladder.push_back(adm.back());

  ComplexVector cut(n);
  for (int k : ladder) {
    for (std::size_t i = 0; i < n; ++i) cut[i] = smooth_step(static_cast<double>(k) + 1.0 - distance[i]) * omega[i];
    const WeylCertificate cert = certify(h, cut, lambda, options.alpha);
    if (!report.best || cert.distance_bound <= report.best->distance_bound) {
      report.best = cert;
      report.best_index = k;
    }
  }
  report.verdict = report.best->verdict;
  return report;
}

}  // namespace formspec
