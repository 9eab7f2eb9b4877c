#pragma once

#include <functional>
#include <vector>

#include "smopt/types.hpp"

namespace smopt {

// Composite objective psi = g + pi for the accelerated solvers: g convex and
// generalized-smooth, pi convex and mu-strongly convex with an exact
// linearized-prox step available.
struct AglsProblem {
  std::function<double(const Vector&)> g;
  std::function<Vector(const Vector&)> grad_g;
  double mu = 0;
  std::function<double(const Vector&)> pi;  // may be empty (treated as 0)
  // argmin_x <c, x> + pi(x) + (gamma/2)||x - z||^2
  std::function<Vector(const Vector&, const Vector&, double)> prox_step;

  double psi(const Vector& x) const { return g(x) + (pi ? pi(x) : 0.0); }
};

struct AglsConfig {
  double L0 = 1.0;
  double tau_d = 0.5;  // in (0, 1)
  double tau_u = 2.0;  // > 1
  int max_iter = 100;
  bool early_stop = false;  // stop when prod(1 - sqrt(mu/(Lhat+mu))) <= 1/4
  double grad_tol = 0;      // stop on ||gradient mapping at y|| <= grad_tol (0 = off)
  int ls_cap = 128;         // hard cap on doublings per iteration
  bool keep_history = false;
};

struct AglsIterStat {
  double Lhat;
  double alpha;
  int ls_steps;   // extra doublings in this iteration (k_t)
  double psi_y;   // psi(y^t)
};

struct AglsResult {
  Vector y;  // returned iterate
  Vector z;
  std::vector<AglsIterStat> iters;
  int total_ls_steps = 0;  // sum of k_t
  bool early_stopped = false;
  double Lhat_last = 0;
  double grad_map_norm = -1;  // last measured, if grad_tol active
  std::vector<Vector> xs, ys, zs;  // filled when keep_history is set
};

// Accelerated gradient with doubling/shrinking line search on Lhat_t.
AglsResult agls(const AglsProblem& prob, const Vector& x0, const AglsConfig& cfg);

// Same three-sequence scheme with a fixed smoothness constant L (no line
// search) and an arbitrary (possibly stochastic) gradient oracle; runs exactly
// T steps and returns y^T.
Vector accelerated_fixed(const std::function<Vector(const Vector&)>& grad_g,
                         const AglsProblem& prob_pi, const Vector& x0, double mu, double L, int T);

}  // namespace smopt
