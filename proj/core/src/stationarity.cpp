#include "smopt/stationarity.hpp"

#include <cmath>

#include "smopt/agls.hpp"

namespace smopt {

GeneralizedGradient generalized_gradient(const SmoothedObjective& obj, const Regularizer& reg,
                                         const Vector& x, double gamma) {
  if (gamma <= 0) throw ParamError("generalized_gradient: gamma must be positive");
  GeneralizedGradient r;
  r.xhat = prox(reg, x - gamma * obj.grad(x), gamma);
  r.G = (x - r.xhat) / gamma;
  return r;
}

double moreau_measure(const SmoothedObjective& obj, const Regularizer& reg, const Vector& x,
                      double rho_hat, double inner_tol) {
  if (rho_hat <= obj.meta.rho_bar)
    throw ParamError("moreau_measure: rho_hat must exceed rho_bar");
  double mu = rho_hat - obj.meta.rho_bar;

  // subproblem: g(z) = f_eta(z) + (rho_bar/2)||z - x||^2 (convex),
  //             pi(z) = r(z) + (mu/2)||z - x||^2
  AglsProblem sub;
  double rb = obj.meta.rho_bar;
  sub.g = [&](const Vector& z) { return obj.value(z) + 0.5 * rb * (z - x).squaredNorm(); };
  sub.grad_g = [&](const Vector& z) -> Vector { return obj.grad(z) + rb * (z - x); };
  sub.mu = mu;
  sub.pi = [&](const Vector& z) { return reg.value(z) + 0.5 * mu * (z - x).squaredNorm(); };
  sub.prox_step = [&](const Vector& c, const Vector& z, double gamma) -> Vector {
    // argmin <c,u> + r(u) + (mu/2)||u - x||^2 + (gamma/2)||u - z||^2
    Vector w = (mu * x + gamma * z - c) / (mu + gamma);
    return prox(reg, w, 1.0 / (mu + gamma));
  };

  AglsConfig cfg;
  cfg.grad_tol = inner_tol;
  cfg.max_iter = 2000;
  cfg.L0 = obj.meta.has_const_L ? obj.meta.L_const_form() + rho_hat : 1.0;
  AglsResult res = agls(sub, x, cfg);
  if (cfg.grad_tol > 0 && res.grad_map_norm > inner_tol)
    throw ConvergenceError("moreau_measure: inner solver did not reach tolerance", res.y);
  return rho_hat * (x - res.y).norm();
}

Stationarity convert_stationarity(ConvertMode mode, double eps, double R_at, double rho,
                                  double rho_bar, double rho_hat, double gamma, double L_local) {
  if (R_at < 0) throw ParamError("convert_stationarity: R must be nonnegative");
  if (rho_hat <= std::max(rho, rho_bar))
    throw ParamError("convert_stationarity: rho_hat must exceed max{rho, rho_bar}");
  double root = std::sqrt(2 * R_at / (rho_hat - rho));
  if (mode == ConvertMode::generalized_gradient) {
    return {root + gamma * eps, (1 + gamma * L_local) * eps + rho_hat * root};
  }
  double beta = rho_hat;
  return {root + eps / beta, beta * root + eps};
}

double choose_eta(double eps_target) {
  if (eps_target <= 0) throw ParamError("choose_eta: eps_target must be positive");
  return eps_target * eps_target;
}

}  // namespace smopt
