#pragma once

#include <functional>
#include <vector>

#include "smopt/problem.hpp"
#include "smopt/rng.hpp"
#include "smopt/types.hpp"

namespace smopt {

// Metadata of a smooth approximation f_eta of f:
//   f_eta <= f <= f_eta + R_eta(x)
//   ||grad f_eta(x) - grad f_eta(y)|| <= L_eta(x, y) ||x - y||
// R_eta is either the constant form R * eta or a point-dependent bound; L_eta
// is either the constant form B + L/eta or a two-point callback.
struct SAMeta {
  double eta = 0;
  double rho_bar = 0;  // weak-convexity modulus of f_eta

  double R_const = -1;  // R_eta = R_const * eta when >= 0
  std::function<double(const Vector&)> R_at;

  bool has_const_L = false;
  double B = 0, L = 0;  // L_eta = B + L/eta
  std::function<double(const Vector&, const Vector&)> L_at;

  double R_bound(const Vector& x) const {
    if (R_const >= 0) return R_const * eta;
    if (!R_at) throw CapabilityError("SAMeta: no R_eta descriptor");
    return R_at(x);
  }
  double L_const_form() const {
    if (!has_const_L) throw CapabilityError("SAMeta: no constant-form L_eta");
    return B + L / eta;
  }
  double L_pair(const Vector& x, const Vector& y) const {
    if (L_at) return L_at(x, y);
    return L_const_form();
  }
};

// Value/gradient oracles for f_eta, full and per-sample.
struct SmoothedObjective {
  int dim = 0;
  int num_samples = 1;
  SAMeta meta;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> grad;
  std::function<double(int, const Vector&)> sample_value;  // may be empty
  std::function<Vector(int, const Vector&)> sample_grad;
};

// --- scalar smoothing kernels -----------------------------------------------

struct HuberResult {
  double value;
  double deriv;
};

// Nesterov smoothing of |.|: z^2/(2 eta) inside [-eta, eta], |z| - eta/2 outside.
HuberResult huber(double z, double eta);

struct SoftmaxResult {
  double value;
  Vector gradient;
  Vector weights;  // simplex weights
};

// eta log sum exp(f_j / eta) with max-shift; gradient = sum w_j grad_j
SoftmaxResult softmax_smooth(const std::vector<double>& values, const std::vector<Vector>& grads,
                             double eta);

// Meta for the softmax smoother: rho_bar = max L_j, R = eta log m; the
// two-point L callback needs the piece gradients, so it is attached by
// smooth_softmax below. This overload fills the scalar parts.
SAMeta softmax_meta(const std::vector<double>& smooth_constants, double eta);

struct MoreauParams {
  double beta;
  double rho_bar;
  double L_eta;
};

// beta = rho + max{1/eta, rho}, rho_bar = 2 rho, L_eta = 2 rho + 1/eta
MoreauParams moreau_params(double rho, double eta);

struct MoreauEnvelopeResult {
  double value;
  Vector gradient;
  Vector prox_point;
};

// Envelope of f at level beta given a prox oracle y = argmin f(y) + (beta/2)||y-x||^2.
MoreauEnvelopeResult moreau_envelope(const std::function<double(const Vector&)>& f,
                                     const std::function<Vector(const Vector&)>& prox_f,
                                     double beta, const Vector& x);

// --- prox of |quadratic| -----------------------------------------------------

struct ProxAbsQuadResult {
  Vector prox_point;
  double envelope_value;
  double dual_y;
};

// argmin_y |F(y)| + (gamma/2)||y - xbar||^2 for F(y) = <a,y>^2 + <q,y> + c
// (i.e. Q = 2 a a^T). Solved through the 1-D concave dual over y in [-1, 1];
// requires gamma > lambda_max(Q) = 2||a||^2.
ProxAbsQuadResult prox_abs_quadratic(const Vector& a, const Vector& q, double c,
                                     const Vector& xbar, double gamma);

// Prox-linear iteration for h = |.| with scalar smooth F: repeatedly minimizes
// |F(x^k) + <grad F(x^k), x - x^k>| + (gamma/2)||x - xbar||^2 (closed form).
Vector prox_linear(const std::function<double(const Vector&)>& F,
                   const std::function<Vector(const Vector&)>& gradF, const Vector& xbar,
                   double gamma, double tol, int max_iter);

// --- smoothers for concrete problems ----------------------------------------

// Huberized robust regression objective (1/m) sum alpha_eta(h(<a_i,x>) - b_i).
// box_radius bounds the region used for the constant-form L descriptor.
SmoothedObjective smooth_huber(const CompositeProblem& p, double eta, double box_radius = 10);

// Per-sample Moreau envelope smoothing; quad losses use the exact dual prox,
// other kinds fall back to prox_linear (tol 1e-10, max 200 iterations).
SmoothedObjective smooth_moreau(const CompositeProblem& p, double eta);

// Softmax smoothing of a piecewise-quadratic max.
SmoothedObjective smooth_softmax(const PiecewiseQuadratic& p, double eta);

// --- combinators -------------------------------------------------------------

SmoothedObjective combine_sum(const std::vector<std::pair<SmoothedObjective, double>>& parts);

// Minibatch gradient oracle over the per-sample oracles of obj; sampling is
// i.i.d. uniform with replacement from the caller's stream.
struct MinibatchOracle {
  const SmoothedObjective* obj;
  int batch;
  Vector grad(const Vector& x, RNGStream& rng) const;
  double value(const Vector& x, RNGStream& rng) const;
};
MinibatchOracle combine_minibatch(const SmoothedObjective& obj, int batch);

// h_eta(F_eta(x)) for a coordinate-wise nondecreasing M-Lipschitz outer SA and
// a componentwise inner SA (one SmoothedObjective per component of F).
SmoothedObjective compose_convex_outer(const SmoothedObjective& outer, double M,
                                       const std::vector<SmoothedObjective>& inner);

// f_eta(x) = g_eta(A x)
SmoothedObjective precompose_linear(const SmoothedObjective& g, const Matrix& A);

}  // namespace smopt
