#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace smopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Parameter/usage errors (bad gamma, mismatched dims, ...).
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A required oracle/capability is missing (e.g. no prox available).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative routine failed to converge; carries the last iterate.
struct ConvergenceError : std::runtime_error {
  Vector last;
  ConvergenceError(const std::string& what, Vector last_iterate)
      : std::runtime_error(what), last(std::move(last_iterate)) {}
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline void require_finite(const Vector& v, const char* who) {
  if (!v.allFinite()) throw ParamError(std::string(who) + ": non-finite entries");
}

// Pairwise (tree) reduction over i in [0, m). Fixed association order, so the
// result does not depend on how work is split across threads.
template <class F>
double pairwise_sum(int m, F&& f) {
  if (m <= 0) return 0.0;
  if (m == 1) return f(0);
  // recursion on index ranges keeps the tree shape a function of m only
  struct Rec {
    F& f;
    double run(int lo, int n) {
      if (n == 1) return f(lo);
      int half = n / 2;
      return run(lo, half) + run(lo + half, n - half);
    }
  } rec{f};
  return rec.run(0, m);
}

template <class F>
Vector pairwise_sum_vec(int dim, int m, F&& f) {
  if (m <= 0) return Vector::Zero(dim);
  struct Rec {
    F& f;
    Vector run(int lo, int n) {
      if (n == 1) return f(lo);
      int half = n / 2;
      return run(lo, half) + run(lo + half, n - half);
    }
  } rec{f};
  return rec.run(0, m);
}

}  // namespace smopt
