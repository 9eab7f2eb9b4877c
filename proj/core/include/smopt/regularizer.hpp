#pragma once

#include <limits>

#include "smopt/types.hpp"

namespace smopt {

// Convex prox-friendly regularizer r with exact closed-form prox.
struct Regularizer {
  enum class Kind { Zero, BallIndicator, L1 };
  Kind kind = Kind::Zero;
  double radius = 0;  // BallIndicator
  double weight = 0;  // L1

  static Regularizer zero() { return {}; }
  static Regularizer ball(double M) {
    if (M <= 0) throw ParamError("Regularizer::ball: radius must be positive");
    return {Kind::BallIndicator, M, 0};
  }
  static Regularizer l1(double w) {
    if (w < 0) throw ParamError("Regularizer::l1: weight must be nonnegative");
    return {Kind::L1, 0, w};
  }

  double value(const Vector& x) const {
    switch (kind) {
      case Kind::Zero:
        return 0;
      case Kind::BallIndicator:
        // indicator; tolerate tiny numerical overshoot
        return x.norm() <= radius * (1 + 1e-12) ? 0
                                                : std::numeric_limits<double>::infinity();
      case Kind::L1:
        return weight * x.lpNorm<1>();
    }
    return 0;
  }
};

// argmin_y r(y) + (1/2gamma) ||y - x||^2
inline Vector prox(const Regularizer& reg, const Vector& x, double gamma) {
  if (gamma <= 0) throw ParamError("prox: gamma must be positive");
  require_finite(x, "prox");
  switch (reg.kind) {
    case Regularizer::Kind::Zero:
      return x;
    case Regularizer::Kind::BallIndicator: {
      double n = x.norm();
      if (n <= reg.radius) return x;
      return x * (reg.radius / n);
    }
    case Regularizer::Kind::L1: {
      double t = gamma * reg.weight;
      Vector y = x;
      for (int i = 0; i < y.size(); ++i) {
        double v = y[i];
        y[i] = v > t ? v - t : (v < -t ? v + t : 0.0);
      }
      return y;
    }
  }
  return x;
}

}  // namespace smopt
