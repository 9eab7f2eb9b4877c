#pragma once

#include <functional>

#include "smopt/agls.hpp"
#include "smopt/problem.hpp"
#include "smopt/regularizer.hpp"
#include "smopt/rng.hpp"
#include "smopt/smoothing.hpp"
#include "smopt/trace.hpp"

namespace smopt {

enum class Algo { gm, sgm, ngd, sspg, asgd_sipp, agls, agls_sipp };
Algo algo_from_string(const std::string& s);
std::string algo_to_string(Algo a);

// Inner-loop stopping contract of the inexact proximal point method: the
// subproblem gap must shrink to lambda * (initial gap) + zeta_k.
struct InnerCriterion {
  double lambda = 0.5;  // in [0, 1)
  double zeta = 0;      // absolute slack
};

struct SolverConfig {
  double alpha0 = 0.1;
  enum class Schedule { constant, inv_sqrt } schedule = Schedule::inv_sqrt;
  int batch = 0;  // 0 = full batch (deterministic)
  double eta = 0.8;
  double rho_hat = -1;  // SIPP proximal weight; < 0 -> 2 * rho_bar
  long K = 0;           // planned iterations; 0 -> derived from budget
  long budget = 0;      // oracle budget; 0 -> 400 m
  uint64_t seed = 0;
  double feasible_radius = 1e5;  // projection ball for subgradient baselines
  double stop_threshold = -1;    // stop when f_true <= threshold; < 0 -> off

  // AGLS line-search parameters
  double L0 = 1, tau_d = 0.5, tau_u = 2;

  // theory-mode stepsizes from known problem constants instead of alpha0
  bool theory_stepsize = false;
  double sigma = 0;  // gradient noise level
  double Delta = 1;  // initial optimality gap estimate

  // SIPP
  InnerCriterion inner;
  double eps_target = -1;  // < 0 -> sqrt(eta)
  bool adapt = false;      // experiment-mode subproblem heuristics
  double inner_grad_tol = 0.75;
  int max_inner = 8;
  double gamma_decay = 0.5, gamma_floor = 10.0;
  bool eta_decay = true;  // eta <- eps^2/k on slow inner solves
  bool inner_ls = false;  // line-searched inner solver even for asgd-sipp

  void validate() const;
};

// --- baselines ---------------------------------------------------------------

// Projected (stochastic) subgradient method on the raw nonsmooth objective.
Trace subgradient_method(const CompositeProblem& p, const SolverConfig& cfg, const Vector& x0,
                         bool stochastic);

// x^{k+1} = x^k - alpha f'(x^k)/||f'(x^k)|| on an arbitrary nonsmooth oracle.
// eval_cost is the per-subgradient oracle charge (m for an averaged loss).
Trace normalized_gd(const std::function<double(const Vector&)>& f,
                    const std::function<Vector(const Vector&)>& subgrad, int dim,
                    const SolverConfig& cfg, const Vector& x0, long eval_cost = 1);

// --- smoothed solvers --------------------------------------------------------

// Smoothing (stochastic) proximal gradient: x^k = prox_{gamma r}(x^{k-1} - gamma g).
Trace sspg(const SmoothedObjective& obj, const Regularizer& reg, const SolverConfig& cfg,
           const std::function<double(const Vector&)>& f_true, const Vector& x0);

struct InnerResult {
  Vector y;
  int steps = 0;
  double grad_map_norm = -1;
  long oracle_cost = 0;
};

// Accelerated solve of min f_eta(x) + r(x) + (rho_hat/2)||x - center||^2 with
// fixed smoothness constant L = L_eta + rho_hat and mu = rho_hat - rho_bar.
// grad_tol > 0 enables early exit on the subproblem gradient mapping.
InnerResult asgd_inner(const SmoothedObjective& obj, const Regularizer& reg, const Vector& center,
                       double rho_hat, int T, int batch, RNGStream& rng, double grad_tol = 0);

// Inner iteration count of the accelerated-inner proximal point method:
// ceil(max{ 2 sqrt(2(B + L/eta + 2 rho_bar)/rho_bar), 8 sigma^2/((rho_hat-rho_bar) eps^2) }).
long sipp_inner_iterations(double B, double L, double eta, double rho_bar, double rho_hat,
                           double sigma, double eps);

enum class SippInner { asgd, agls };

// Smoothed inexact proximal point. make_obj rebuilds f_eta when the adaptive
// heuristics change eta; called once up front with cfg.eta.
Trace sipp(const std::function<SmoothedObjective(double)>& make_obj, const Regularizer& reg,
           const SolverConfig& cfg, SippInner inner,
           const std::function<double(const Vector&)>& f_true, const Vector& x0);

Trace agls_sipp(const std::function<SmoothedObjective(double)>& make_obj, const Regularizer& reg,
                const SolverConfig& cfg, const std::function<double(const Vector&)>& f_true,
                const Vector& x0);

// Experiment-mode subproblem adaptation: when the inner solve needed more than
// six iterations, gamma_{k+1} = max{decay * gamma_k, floor} and eta <- eps^2/k.
struct AdaptResult {
  double gamma;
  double eta;
  bool changed;
};
AdaptResult adapt_subproblem_heuristics(double gamma, double eta, int inner_iters_used, long k,
                                        double eps_sq, double decay = 0.5, double floor = 10.0);

}  // namespace smopt
