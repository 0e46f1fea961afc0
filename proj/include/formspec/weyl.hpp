#pragma once

// Generalized Weyl criterion on finite nonnegative self-adjoint operators.
//
// With f(t) = (t+a)^-2 and g(t) = (t+a)^-1 the criterion pairs
//   q_gamma = ((H+a)^-gamma psi, (H-lambda) psi),  gamma = 1, 2,
// and the resolvent identity
//   ((H+a)^-2 (H-lambda) psi, (H-lambda) psi) = q1 - (a+lambda) q2
// turns them into the two pairings used by the distance bound:
//   f-pairing = (f(H)(H-lambda)psi, (H-lambda)psi) = q1 - (a+lambda) q2,
//   g-pairing = (g(H) psi, (H-lambda) psi)          = q1.

#include "formspec/errors.hpp"
#include "formspec/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

namespace formspec {

struct CriterionConstants {
  double c0 = 0;
  double c1 = 0;
  double c2 = 0;
  double c3 = 0;
  double lambda = 0;
  double alpha = 0;
};

// c0 = max(sup f, sup g); c1 = inf_[0,lambda] f; c3 = lambda sup_[0,lambda] g;
// c2 = min(inf_[lambda,lambda+1] g, inf_[lambda+1,inf) g(t)(t-lambda)). The
// last infimum sits at t = lambda+1 because (t-lambda)/(t+a) increases in t.
inline CriterionConstants criterion_constants(double lambda, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("alpha must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be nonnegative");
  CriterionConstants c;
  c.lambda = lambda;
  c.alpha = alpha;
  c.c0 = std::max(1.0 / (alpha * alpha), 1.0 / alpha);
  c.c1 = 1.0 / ((lambda + alpha) * (lambda + alpha));
  c.c2 = 1.0 / (lambda + 1.0 + alpha);
  c.c3 = lambda / alpha;
  return c;
}

struct CriterionValues {
  double q1 = 0;
  double q2 = 0;
  double f_pairing = 0;           // ||(H+a)^-1 (H-lambda) psi||^2, computed directly
  double classical_residual = 0;  // ||(H-lambda) psi|| for unit psi
  double identity_gap = 0;        // max disagreement between the two evaluation routes
  double imaginary_part = 0;      // largest |Im| among the pairings (real for real H)
  double solver_residual = 0;     // worst relative residual of the shifted solves
  double solver_slack = 0;        // a-posteriori bound on pairing errors from the solves
};

// psi is normalized internally.
inline CriterionValues evaluate_criterion(const SparseOperator& h, std::span<const Complex> psi,
                                          double lambda, double alpha, CgOptions cg = {}) {
  if (!(alpha > 0.0)) throw InputError("alpha must be positive");
  const std::size_t n = h.dimension();
  if (psi.size() != n) throw InputError("test vector length does not match operator");
  const double psi_norm = norm(psi);
  if (!(psi_norm > 0.0)) throw InputError("test vector is zero");
  ComplexVector u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = psi[i] / psi_norm;

  ComplexVector r(n);
  h.apply<Complex>(u, r);
  for (std::size_t i = 0; i < n; ++i) r[i] -= lambda * u[i];

  ComplexVector y1(n), y2(n), z(n);
  const auto s1 = solve_shifted(h, alpha, u, y1, cg);
  const auto s2 = solve_shifted(h, alpha, y1, y2, cg);
  const auto s3 = solve_shifted(h, alpha, r, z, cg);

  const Complex q1 = inner(y1, r);
  const Complex q2 = inner(y2, r);
  const double f_direct = inner(z, z).real();

  // identity route: (H+a)^-1 (H-lambda) = I - (a+lambda)(H+a)^-1
  const Complex psi_y1 = inner(u, y1);
  const double shifted = alpha + lambda;
  const Complex q1_alt = 1.0 - shifted * psi_y1;
  const Complex q2_alt = psi_y1 - shifted * inner(y1, y1);
  const Complex f_alt = q1 - shifted * q2;

  CriterionValues v;
  v.q1 = q1.real();
  v.q2 = q2.real();
  v.f_pairing = f_direct;
  v.classical_residual = norm(r);
  v.identity_gap = std::max({std::abs(q1 - q1_alt), std::abs(q2 - q2_alt), std::abs(f_alt - f_direct)});
  v.imaginary_part = std::max({std::abs(q1.imag()), std::abs(q2.imag()), std::abs(f_alt.imag())});
  v.solver_residual = std::max({s1.relative_residual, s2.relative_residual, s3.relative_residual});

  // ||(H+a)^-1|| <= 1/(a + shift_lower); solve errors are residual / that gap.
  const double gap = alpha + h.nonneg_shift();
  const double e1 = s1.residual_norm / gap;
  const double e2 = e1 / gap + s2.residual_norm / gap;
  const double ez = s3.residual_norm / gap;
  const double rn = v.classical_residual;
  v.solver_slack = std::max({e1 * rn, e2 * rn, 2.0 * std::sqrt(f_direct) * ez + ez * ez});
  return v;
}

struct DistanceBound {
  double value = 0;
  bool informative = true;
};

namespace detail {

// Largest eps in (0, cap) with c1 c2 eps^3 / (c1 eps^2 + c2 eps + c3) <= delta.
inline DistanceBound cubic_bound(const CriterionConstants& c, double delta) {
  const double cap = std::min(c.lambda, 1.0);
  auto lower = [&](double eps) {
    return c.c1 * c.c2 * eps * eps * eps / (c.c1 * eps * eps + c.c2 * eps + c.c3);
  };
  if (delta <= 0.0) return {0.0, true};
  if (lower(cap) <= delta) return {cap, false};
  double lo = 0.0, hi = cap;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (lower(mid) > delta) hi = mid;
    else lo = mid;
  }
  return {hi, true};
}

}  // namespace detail

// Distance bound from the criterion pairings. For lambda > 0 the f- and
// g-pairings are both bounded by delta and the cubic inequality is inverted;
// the uninformative cap min(lambda, 1) is returned flagged. For lambda = 0
// only the g-pairing enters: dist <= |q1| / c2 (informative when below 1).
inline DistanceBound certify_distance(double q1, double q2, double lambda, double alpha, double slack = 0.0) {
  const CriterionConstants c = criterion_constants(lambda, alpha);
  if (!std::isfinite(q1) || !std::isfinite(q2)) return {std::numeric_limits<double>::infinity(), false};
  if (lambda == 0.0) {
    const double bound = (std::abs(q1) + slack) / c.c2;
    return {bound, bound < 1.0};
  }
  const double f_pairing = q1 - (alpha + lambda) * q2;
  const double delta = std::max(std::abs(f_pairing), std::abs(q1)) + slack;
  return detail::cubic_bound(c, delta);
}

// Same bound, also taking the directly computed f-pairing into account.
inline DistanceBound certify_distance(const CriterionValues& v, double lambda, double alpha) {
  const CriterionConstants c = criterion_constants(lambda, alpha);
  if (lambda == 0.0) return certify_distance(v.q1, v.q2, lambda, alpha, v.solver_slack);
  const double f_pairing = std::max(std::abs(v.q1 - (alpha + lambda) * v.q2), std::abs(v.f_pairing));
  const double delta = std::max(f_pairing, std::abs(v.q1)) + v.solver_slack;
  return detail::cubic_bound(c, delta);
}

enum class CertificateVerdict { Certified, Uninformative, Unknown };

inline std::string verdict_name(CertificateVerdict v) {
  switch (v) {
    case CertificateVerdict::Certified: return "certified";
    case CertificateVerdict::Uninformative: return "uninformative";
    case CertificateVerdict::Unknown: return "unknown";
  }
  return "unknown";
}

struct WeylCertificate {
  double lambda = 0;
  double alpha = 1;
  double q1 = 0;
  double q2 = 0;
  double delta = 0;  // max(|q1|, |q2|)
  double distance_bound = 0;
  double classical_residual = 0;
  double solver_tolerance = 0;
  CertificateVerdict verdict = CertificateVerdict::Unknown;
  std::string note;
};

inline WeylCertificate certify(const SparseOperator& h, std::span<const Complex> psi, double lambda,
                               double alpha = 1.0, CgOptions cg = {}) {
  const CriterionValues v = evaluate_criterion(h, psi, lambda, alpha, cg);
  const DistanceBound bound = certify_distance(v, lambda, alpha);
  WeylCertificate cert;
  cert.lambda = lambda;
  cert.alpha = alpha;
  cert.q1 = v.q1;
  cert.q2 = v.q2;
  cert.delta = std::max(std::abs(v.q1), std::abs(v.q2));
  cert.distance_bound = bound.value;
  cert.classical_residual = v.classical_residual;
  cert.solver_tolerance = v.solver_residual;
  cert.verdict = bound.informative ? CertificateVerdict::Certified : CertificateVerdict::Uninformative;
  if (v.solver_residual > 1e-8) {
    cert.verdict = CertificateVerdict::Unknown;
    cert.note = "shifted solve did not reach tolerance";
  }
  return cert;
}

}  // namespace formspec
