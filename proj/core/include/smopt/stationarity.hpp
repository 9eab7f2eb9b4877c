#pragma once

#include "smopt/regularizer.hpp"
#include "smopt/smoothing.hpp"
#include "smopt/types.hpp"

namespace smopt {

struct StationarityReport {
  double gen_grad_norm = -1;
  double moreau_grad_norm = -1;
  double delta = -1;
  double eps = -1;
  double gamma = 0, rho_hat = 0, eta = 0;
  std::string measure;  // which measure produced delta/eps
};

struct GeneralizedGradient {
  Vector G;
  Vector xhat;
};

// G_gamma(x) = (x - prox_{gamma r}(x - gamma grad f_eta(x))) / gamma
GeneralizedGradient generalized_gradient(const SmoothedObjective& obj, const Regularizer& reg,
                                         const Vector& x, double gamma);

// rho_hat * ||x - zhat|| where zhat approximately minimizes
// phi_eta(z) + (rho_hat/2)||z - x||^2 (AGLS inner solve, mu = rho_hat - rho_bar).
double moreau_measure(const SmoothedObjective& obj, const Regularizer& reg, const Vector& x,
                      double rho_hat, double inner_tol = 1e-8);

enum class ConvertMode { generalized_gradient, moreau };

struct Stationarity {
  double delta;
  double eps_prime;
};

// (delta, eps') conversion from smoothed-problem stationarity to the original
// nonsmooth problem.
//   generalized_gradient: delta = sqrt(2R/(rho_hat - rho)) + gamma eps,
//                         eps'  = (1 + gamma L) eps + rho_hat sqrt(2R/(rho_hat - rho))
//   moreau:               delta = sqrt(2R/(beta - rho)) + eps/beta,
//                         eps'  = beta sqrt(2R/(beta - rho)) + eps
Stationarity convert_stationarity(ConvertMode mode, double eps, double R_at, double rho,
                                  double rho_bar, double rho_hat, double gamma, double L_local);

// eta = eps_target^2
double choose_eta(double eps_target);

}  // namespace smopt
