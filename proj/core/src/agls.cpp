#include "smopt/agls.hpp"

#include <cmath>

namespace smopt {

namespace {

// positive root of (Lhat+mu) a^2 + (b_prev - mu) a - b_prev = 0
double alpha_root(double Lhat, double mu, double b_prev) {
  double A = Lhat + mu, B = b_prev - mu, C = -b_prev;
  double disc = B * B - 4 * A * C;
  double r = (-B + std::sqrt(std::max(disc, 0.0))) / (2 * A);
  return r;
}

double alpha_first(double Lhat, double mu) {
  return mu == 0 ? 1.0 : std::sqrt(mu / (Lhat + mu));
}

}  // namespace

AglsResult agls(const AglsProblem& prob, const Vector& x0, const AglsConfig& cfg) {
  if (!(cfg.tau_d > 0 && cfg.tau_d < 1)) throw ParamError("agls: tau_d must be in (0,1)");
  if (!(cfg.tau_u > 1)) throw ParamError("agls: tau_u must be > 1");
  if (cfg.L0 <= 0) throw ParamError("agls: L0 must be positive");
  if (!prob.prox_step) throw CapabilityError("agls: prox_step required");

  AglsResult res;
  Vector y = x0, z = x0;
  double Lhat_prev = cfg.L0;
  double b_prev = 0;
  double stop_product = 1.0;

  for (int t = 1; t <= cfg.max_iter; ++t) {
    double Lbar = cfg.tau_d * Lhat_prev;
    int k = 0;
    double Lhat = Lbar, alpha = 0;
    Vector xt, zt, yt, gx;
    for (;; ++k) {
      if (k > cfg.ls_cap)
        throw ConvergenceError("agls: smoothness blowup (line-search cap exceeded)", y);
      Lhat = Lbar * std::pow(cfg.tau_u, k);
      alpha = (t == 1) ? alpha_first(Lhat, prob.mu) : alpha_root(Lhat, prob.mu, b_prev);
      double gamma = (Lhat + prob.mu) * alpha - prob.mu;
      double beta = gamma / (Lhat * alpha);
      xt = (1 - alpha) * y + alpha * ((1 - beta) * y + beta * z);
      gx = prob.grad_g(xt);
      zt = prob.prox_step(gx, z, gamma);
      yt = (1 - alpha) * y + alpha * zt;
      // sufficient-decrease test for the candidate smoothness constant
      double lhs = prob.g(yt);
      double rhs = prob.g(xt) + gx.dot(yt - xt) + 0.5 * Lhat * (yt - xt).squaredNorm();
      if (lhs <= rhs + 1e-12 * (1 + std::abs(rhs))) break;
    }
    y = yt;
    z = zt;
    b_prev = alpha * alpha * (Lhat + prob.mu);
    Lhat_prev = Lhat;
    res.iters.push_back({Lhat, alpha, k, prob.psi(y)});
    res.total_ls_steps += k;
    if (cfg.keep_history) {
      res.xs.push_back(xt);
      res.ys.push_back(y);
      res.zs.push_back(z);
    }

    if (cfg.grad_tol > 0) {
      // gradient mapping of psi at xt with step 1/Lhat, reusing the gradient
      // already computed there (no extra oracle call)
      Vector p = prob.prox_step(gx, xt, Lhat);
      res.grad_map_norm = Lhat * (xt - p).norm();
      if (res.grad_map_norm <= cfg.grad_tol) break;
    }
    if (cfg.early_stop && prob.mu > 0) {
      stop_product *= 1 - std::sqrt(prob.mu / (Lhat + prob.mu));
      if (stop_product <= 0.25) {
        res.early_stopped = true;
        break;
      }
    }
  }
  res.y = y;
  res.z = z;
  res.Lhat_last = Lhat_prev;
  return res;
}

Vector accelerated_fixed(const std::function<Vector(const Vector&)>& grad_g,
                         const AglsProblem& prob_pi, const Vector& x0, double mu, double L,
                         int T) {
  if (L <= 0) throw ParamError("accelerated_fixed: L must be positive");
  if (!prob_pi.prox_step) throw CapabilityError("accelerated_fixed: prox_step required");
  Vector y = x0, z = x0;
  double b_prev = 0;
  for (int t = 1; t <= T; ++t) {
    double alpha = (t == 1) ? alpha_first(L, mu) : alpha_root(L, mu, b_prev);
    double gamma = (L + mu) * alpha - mu;
    double beta = gamma / (L * alpha);
    Vector xt = (1 - alpha) * y + alpha * ((1 - beta) * y + beta * z);
    Vector gx = grad_g(xt);
    z = prob_pi.prox_step(gx, z, gamma);
    y = (1 - alpha) * y + alpha * z;
    b_prev = alpha * alpha * (L + mu);
  }
  return y;
}

}  // namespace smopt
