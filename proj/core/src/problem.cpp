#include "smopt/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smopt {

namespace {
constexpr double kExpClamp = 700.0;  // exp(700) is near the double limit
}

HKind hkind_from_string(const std::string& s) {
  if (s == "quad") return HKind::quad;
  if (s == "quintic") return HKind::quintic;
  if (s == "exp") return HKind::exp;
  throw ParamError("unknown hkind: " + s);
}

std::string hkind_to_string(HKind h) {
  switch (h) {
    case HKind::quad:
      return "quad";
    case HKind::quintic:
      return "quintic";
    case HKind::exp:
      return "exp";
  }
  return "?";
}

double h_value(HKind k, double z) {
  switch (k) {
    case HKind::quad:
      return z * z;
    case HKind::quintic:
      return std::pow(z, 5) + std::pow(z, 3) + 1;
    case HKind::exp:
      return std::exp(std::min(z, kExpClamp)) + 10;
  }
  return 0;
}

double h_deriv(HKind k, double z) {
  switch (k) {
    case HKind::quad:
      return 2 * z;
    case HKind::quintic:
      return 5 * std::pow(z, 4) + 3 * z * z;
    case HKind::exp:
      return std::exp(std::min(z, kExpClamp));
  }
  return 0;
}

double h_second(HKind k, double z) {
  switch (k) {
    case HKind::quad:
      return 2;
    case HKind::quintic:
      return 20 * std::pow(z, 3) + 6 * z;
    case HKind::exp:
      return std::exp(std::min(z, kExpClamp));
  }
  return 0;
}

SubgradResult subgrad_robust_loss(const Vector& a, double b, HKind hkind, const Vector& x) {
  if (a.size() != x.size()) throw ParamError("subgrad_robust_loss: dimension mismatch");
  double z = a.dot(x);
  bool saturated = (hkind == HKind::exp && z > kExpClamp);
  double resid = h_value(hkind, z) - b;
  if (!std::isfinite(resid)) {
    resid = std::numeric_limits<double>::max();
    saturated = true;
  }
  double s = resid > 0 ? 1.0 : (resid < 0 ? -1.0 : 0.0);  // sign(0) := 0 at the kink
  SubgradResult r;
  r.value = std::abs(resid);
  r.subgrad = (s * h_deriv(hkind, z)) * a;
  r.saturated = saturated;
  return r;
}

double SampleLoss::value(const Vector& x) const {
  double resid = h_value(hkind, a.dot(x)) - b;
  if (!std::isfinite(resid)) return std::numeric_limits<double>::max();
  return std::abs(resid);
}

double robust_loss_modulus(const Vector& a, HKind hkind, double ball_radius) {
  double an = a.norm();
  if (hkind == HKind::quad) return 2 * an * an;
  double zmax = an * ball_radius;
  // |h''| is monotone in |z| for both remaining kinds, so the sup over the
  // interval [-zmax, zmax] is attained at an endpoint
  double h2 = std::max(std::abs(h_second(hkind, zmax)), std::abs(h_second(hkind, -zmax)));
  double rho = an * an * h2;
  if (!std::isfinite(rho)) rho = std::numeric_limits<double>::max();
  return rho;
}

double CompositeProblem::rho() const {
  int n = m();
  return pairwise_sum(n, [&](int i) { return losses[i].rho; }) / n;
}

double CompositeProblem::f_value(const Vector& x) const {
  int n = m();
  return pairwise_sum(n, [&](int i) { return losses[i].value(x); }) / n;
}

SubgradResult CompositeProblem::f_subgrad(const Vector& x) const {
  int n = m();
  bool saturated = false;
  Vector g = pairwise_sum_vec(dim, n, [&](int i) {
    SubgradResult r = losses[i].value_subgrad(x);
    if (r.saturated) saturated = true;
    return r.subgrad;
  });
  SubgradResult out;
  out.value = f_value(x);
  out.subgrad = g / n;
  out.saturated = saturated;
  return out;
}

void PiecewiseQuadratic::piece_values(const Vector& x, std::vector<double>& out) const {
  out.resize(A.size());
  for (size_t j = 0; j < A.size(); ++j)
    out[j] = 0.5 * x.dot(A[j] * x) - b[j].dot(x);
}

double PiecewiseQuadratic::value(const Vector& x) const {
  double best = -std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < A.size(); ++j)
    best = std::max(best, 0.5 * x.dot(A[j] * x) - b[j].dot(x));
  return best;
}

Vector PiecewiseQuadratic::subgrad(const Vector& x) const {
  int best = 0;
  double bestv = -std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < A.size(); ++j) {
    double v = 0.5 * x.dot(A[j] * x) - b[j].dot(x);
    if (v > bestv) {
      bestv = v;
      best = static_cast<int>(j);
    }
  }
  return A[best] * x - b[best];
}

}  // namespace smopt
