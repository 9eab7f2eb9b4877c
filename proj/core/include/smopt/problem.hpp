#pragma once

#include <string>
#include <vector>

#include "smopt/regularizer.hpp"
#include "smopt/types.hpp"

namespace smopt {

enum class HKind { quad, quintic, exp };

HKind hkind_from_string(const std::string& s);
std::string hkind_to_string(HKind h);

// h(z), h'(z), h''(z) for the three inner maps z^2, z^5+z^3+1, e^z+10.
double h_value(HKind k, double z);
double h_deriv(HKind k, double z);
double h_second(HKind k, double z);

struct SubgradResult {
  double value;
  Vector subgrad;
  bool saturated = false;  // exp overflow; value clamped to max finite
};

// f(x) = |h(<a,x>) - b| with subgradient sign(h-b) h'(<a,x>) a, sign(0) := 0.
SubgradResult subgrad_robust_loss(const Vector& a, double b, HKind hkind, const Vector& x);

// One nonsmooth sample loss |h(<a,x>) - b| with its weak-convexity modulus.
struct SampleLoss {
  Vector a;
  double b = 0;
  HKind hkind = HKind::quad;
  double rho = 0;  // weak-convexity modulus (2||a||^2 for quad)

  double value(const Vector& x) const;
  SubgradResult value_subgrad(const Vector& x) const { return subgrad_robust_loss(a, b, hkind, x); }
};

// Modulus estimate: 2||a||^2 for quad; for quintic/exp a sup over the ball
// ||x|| <= M of ||a||^2 |h''(z)|, z = <a,x> (interval bound, clamped finite).
double robust_loss_modulus(const Vector& a, HKind hkind, double ball_radius);

// phi = (1/m) sum_i f(x, xi_i) + r(x)
struct CompositeProblem {
  std::vector<SampleLoss> losses;
  Regularizer reg;
  int dim = 0;

  int m() const { return static_cast<int>(losses.size()); }
  double rho() const;  // (1/m) sum rho_i for the averaged objective
  double f_value(const Vector& x) const;
  // averaged subgradient; saturated set if any sample clamped
  SubgradResult f_subgrad(const Vector& x) const;
  double phi_value(const Vector& x) const { return f_value(x) + reg.value(x); }
};

// max_j { (1/2) <x, A_j x> - <b_j, x> }
struct PiecewiseQuadratic {
  std::vector<Matrix> A;
  std::vector<Vector> b;
  int dim = 0;
  double eigmin_first = 0;  // PD certificate for A[0]

  int m() const { return static_cast<int>(A.size()); }
  void piece_values(const Vector& x, std::vector<double>& out) const;
  double value(const Vector& x) const;
  Vector subgrad(const Vector& x) const;  // gradient of an active piece
};

// central differences (f(x+h e_i) - f(x-h e_i)) / (2h)
template <class F>
Vector finite_diff_gradient(F&& fvalue, const Vector& x, double h) {
  Vector g(x.size());
  Vector xp = x;
  for (int i = 0; i < x.size(); ++i) {
    double xi = x[i];
    xp[i] = xi + h;
    double fp = fvalue(xp);
    xp[i] = xi - h;
    double fm = fvalue(xp);
    xp[i] = xi;
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

}  // namespace smopt
