#include "smopt/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace smopt {

HuberResult huber(double z, double eta) {
  if (eta <= 0) throw ParamError("huber: eta must be positive");
  if (std::abs(z) <= eta) return {z * z / (2 * eta), z / eta};
  return {std::abs(z) - eta / 2, z > 0 ? 1.0 : -1.0};
}

SoftmaxResult softmax_smooth(const std::vector<double>& values, const std::vector<Vector>& grads,
                             double eta) {
  if (eta <= 0) throw ParamError("softmax_smooth: eta must be positive");
  size_t m = values.size();
  if (m == 0 || grads.size() != m) throw ParamError("softmax_smooth: need m >= 1 matching grads");
  double vmax = *std::max_element(values.begin(), values.end());
  SoftmaxResult r;
  r.weights.resize(static_cast<int>(m));
  double denom = 0;
  for (size_t j = 0; j < m; ++j) {
    double w = std::exp((values[j] - vmax) / eta);
    r.weights[static_cast<int>(j)] = w;
    denom += w;
  }
  r.value = vmax + eta * std::log(denom);
  r.weights /= denom;
  r.gradient = Vector::Zero(grads[0].size());
  for (size_t j = 0; j < m; ++j) r.gradient += r.weights[static_cast<int>(j)] * grads[j];
  return r;
}

SAMeta softmax_meta(const std::vector<double>& smooth_constants, double eta) {
  if (eta <= 0) throw ParamError("softmax_meta: eta must be positive");
  SAMeta meta;
  meta.eta = eta;
  meta.rho_bar = 0;
  for (double L : smooth_constants) {
    if (L < 0) throw ParamError("softmax_meta: negative smoothness constant");
    meta.rho_bar = std::max(meta.rho_bar, L);
  }
  meta.R_const = std::log(static_cast<double>(smooth_constants.size()));
  return meta;
}

MoreauParams moreau_params(double rho, double eta) {
  if (eta <= 0) throw ParamError("moreau_params: eta must be positive");
  if (rho < 0) throw ParamError("moreau_params: rho must be nonnegative");
  return {rho + std::max(1.0 / eta, rho), 2 * rho, 2 * rho + 1.0 / eta};
}

MoreauEnvelopeResult moreau_envelope(const std::function<double(const Vector&)>& f,
                                     const std::function<Vector(const Vector&)>& prox_f,
                                     double beta, const Vector& x) {
  if (!prox_f) throw CapabilityError("moreau_envelope: no prox oracle");
  MoreauEnvelopeResult r;
  r.prox_point = prox_f(x);
  r.value = f(r.prox_point) + 0.5 * beta * (r.prox_point - x).squaredNorm();
  r.gradient = beta * (x - r.prox_point);
  return r;
}

// --- prox of |quadratic| -----------------------------------------------------

namespace {

// Minimizer of y F(x) + (gamma/2)||x - xbar||^2 via Sherman-Morrison on
// (2 y a a^T + gamma I); valid while gamma + 2 y ||a||^2 > 0.
Vector primal_point(const Vector& a, const Vector& q, const Vector& xbar, double gamma, double y) {
  Vector v = gamma * xbar - y * q;
  double av = a.dot(v);
  double aa = a.squaredNorm();
  return (v - (2 * y * av / (gamma + 2 * y * aa)) * a) / gamma;
}

double F_of(const Vector& a, const Vector& q, double c, const Vector& x) {
  double t = a.dot(x);
  return t * t + q.dot(x) + c;
}

double tau_of(const Vector& a, const Vector& q, double c, const Vector& xbar, double gamma,
              double y) {
  Vector x = primal_point(a, q, xbar, gamma, y);
  Vector v = gamma * xbar - y * q;
  return -0.5 * v.dot(x) + y * c + 0.5 * gamma * xbar.squaredNorm();
}

}  // namespace

ProxAbsQuadResult prox_abs_quadratic(const Vector& a, const Vector& q, double c,
                                     const Vector& xbar, double gamma) {
  if (a.size() != xbar.size() || q.size() != xbar.size())
    throw ParamError("prox_abs_quadratic: dimension mismatch");
  double lam_max = 2 * a.squaredNorm();
  if (gamma <= lam_max)
    throw ParamError("prox_abs_quadratic: gamma must exceed lambda_max(Q) = 2||a||^2");

  // tau'(y) = F(x*(y)) by the envelope theorem; tau is concave on [-1, 1]
  auto slope = [&](double y) { return F_of(a, q, c, primal_point(a, q, xbar, gamma, y)); };

  std::vector<double> candidates = {-1.0, 1.0};
  const int cells = 64;
  double prev_y = -1.0, prev_s = slope(prev_y);
  for (int i = 1; i <= cells; ++i) {
    double y = -1.0 + 2.0 * i / cells;
    double s = slope(y);
    if (prev_s == 0.0) candidates.push_back(prev_y);
    if (prev_s * s < 0) {
      double lo = prev_y, hi = y, slo = prev_s;
      while (hi - lo > 1e-15) {
        double mid = 0.5 * (lo + hi);
        double sm = slope(mid);
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        if (slo * sm < 0)
          hi = mid;
        else {
          lo = mid;
          slo = sm;
        }
      }
      candidates.push_back(0.5 * (lo + hi));
    }
    prev_y = y;
    prev_s = s;
  }

  double best_y = 0, best_tau = -std::numeric_limits<double>::infinity();
  for (double y : candidates) {
    double t = tau_of(a, q, c, xbar, gamma, y);
    // ties broken toward smaller |y|
    if (t > best_tau + 1e-15 ||
        (std::abs(t - best_tau) <= 1e-15 && std::abs(y) < std::abs(best_y))) {
      best_tau = t;
      best_y = y;
    }
  }

  ProxAbsQuadResult r;
  r.dual_y = best_y;
  r.prox_point = primal_point(a, q, xbar, gamma, best_y);
  r.envelope_value =
      std::abs(F_of(a, q, c, r.prox_point)) + 0.5 * gamma * (r.prox_point - xbar).squaredNorm();
  return r;
}

Vector prox_linear(const std::function<double(const Vector&)>& F,
                   const std::function<Vector(const Vector&)>& gradF, const Vector& xbar,
                   double gamma, double tol, int max_iter) {
  if (gamma <= 0) throw ParamError("prox_linear: gamma must be positive");
  Vector x = xbar;
  for (int k = 0; k < max_iter; ++k) {
    double Fx = F(x);
    Vector g = gradF(x);
    double gg = g.squaredNorm();
    Vector next;
    if (gg == 0) {
      next = xbar;
    } else {
      // minimize |<g, x> + beta| + (gamma/2)||x - xbar||^2 through its 1-D dual
      double beta = Fx - g.dot(x);
      double y = gamma * (g.dot(xbar) + beta) / gg;
      y = std::clamp(y, -1.0, 1.0);
      next = xbar - (y / gamma) * g;
    }
    if ((next - x).norm() <= tol) return next;
    x = next;
  }
  throw ConvergenceError("prox_linear: max_iter exceeded", x);
}

// --- smoothers ---------------------------------------------------------------

SmoothedObjective smooth_huber(const CompositeProblem& p, double eta, double box_radius) {
  if (eta <= 0) throw ParamError("smooth_huber: eta must be positive");
  int m = p.m();
  auto losses = std::make_shared<std::vector<SampleLoss>>(p.losses);

  SmoothedObjective obj;
  obj.dim = p.dim;
  obj.num_samples = m;
  obj.sample_value = [losses, eta](int i, const Vector& x) {
    const SampleLoss& s = (*losses)[i];
    return huber(h_value(s.hkind, s.a.dot(x)) - s.b, eta).value;
  };
  obj.sample_grad = [losses, eta](int i, const Vector& x) -> Vector {
    const SampleLoss& s = (*losses)[i];
    double z = s.a.dot(x);
    HuberResult h = huber(h_value(s.hkind, z) - s.b, eta);
    return (h.deriv * h_deriv(s.hkind, z)) * s.a;
  };
  obj.value = [obj_sv = obj.sample_value, m](const Vector& x) {
    return pairwise_sum(m, [&](int i) { return obj_sv(i, x); }) / m;
  };
  obj.grad = [obj_sg = obj.sample_grad, m, d = p.dim](const Vector& x) -> Vector {
    return pairwise_sum_vec(d, m, [&](int i) { return obj_sg(i, x); }) / m;
  };

  // meta: per-sample Nesterov-smoothing constants for |.| composed with the
  // smooth inner map A_i(x) = h(<a_i, x>) - b_i, averaged with weights 1/m
  double rho_bar = 0, B = 0, L = 0;
  for (const SampleLoss& s : p.losses) {
    double an = s.a.norm();
    double zmax = an * box_radius;
    double h2 = std::max(std::abs(h_second(s.hkind, zmax)), std::abs(h_second(s.hkind, -zmax)));
    double curv = an * an * h2;  // Lipschitz constant of grad A_i on the box
    double gmax = an * std::max(std::abs(h_deriv(s.hkind, zmax)), std::abs(h_deriv(s.hkind, -zmax)));
    rho_bar += curv;
    B += curv;
    L += gmax * gmax;  // sup ||grad A_i||^2 on the box
  }
  obj.meta.eta = eta;
  obj.meta.rho_bar = rho_bar / m;
  obj.meta.R_const = 0.5;  // (1/m) sum eta/2
  obj.meta.has_const_L = true;
  obj.meta.B = B / m;
  obj.meta.L = L / m;
  obj.meta.L_at = [losses, eta, m](const Vector& x, const Vector& y) {
    // 11-point grid on the segment; per-sample curvature of alpha_eta(A_i):
    // alpha''(r) (h')^2 + |alpha'(r)| |h''|, with alpha'' = 1/eta only inside
    // the kink region |r| <= eta. Far from the kinks this is much tighter than
    // the worst-case constant form B + L/eta.
    double sup = 0;
    for (int t = 0; t <= 10; ++t) {
      double th = t / 10.0;
      Vector pt = th * x + (1 - th) * y;
      double acc = 0;
      for (const SampleLoss& s : *losses) {
        double z = s.a.dot(pt);
        double r = h_value(s.hkind, z) - s.b;
        double hp = h_deriv(s.hkind, z), hpp = std::abs(h_second(s.hkind, z));
        double a2 = s.a.squaredNorm();
        double curv = std::min(std::abs(r) / eta, 1.0) * hpp;
        if (std::abs(r) <= eta) curv += hp * hp / eta;
        acc += a2 * curv;
      }
      sup = std::max(sup, acc / m);
    }
    return sup;
  };
  return obj;
}

SmoothedObjective smooth_moreau(const CompositeProblem& p, double eta) {
  if (eta <= 0) throw ParamError("smooth_moreau: eta must be positive");
  int m = p.m();
  auto losses = std::make_shared<std::vector<SampleLoss>>(p.losses);
  auto betas = std::make_shared<std::vector<double>>();
  double rho_bar = 0;
  for (const SampleLoss& s : p.losses) {
    MoreauParams mp = moreau_params(s.rho, eta);
    betas->push_back(mp.beta);
    rho_bar += mp.rho_bar;
  }

  auto prox_i = [losses, betas](int i, const Vector& x) -> Vector {
    const SampleLoss& s = (*losses)[i];
    double beta = (*betas)[i];
    if (s.hkind == HKind::quad) {
      Vector q = Vector::Zero(s.a.size());
      return prox_abs_quadratic(s.a, q, -s.b, x, beta).prox_point;
    }
    auto F = [&s](const Vector& y) { return h_value(s.hkind, s.a.dot(y)) - s.b; };
    auto gF = [&s](const Vector& y) -> Vector { return h_deriv(s.hkind, s.a.dot(y)) * s.a; };
    return prox_linear(F, gF, x, beta, 1e-10, 200);
  };

  SmoothedObjective obj;
  obj.dim = p.dim;
  obj.num_samples = m;
  obj.sample_value = [losses, betas, prox_i](int i, const Vector& x) {
    Vector y = prox_i(i, x);
    return (*losses)[i].value(y) + 0.5 * (*betas)[i] * (y - x).squaredNorm();
  };
  obj.sample_grad = [betas, prox_i](int i, const Vector& x) -> Vector {
    Vector y = prox_i(i, x);
    return (*betas)[i] * (x - y);
  };
  obj.value = [sv = obj.sample_value, m](const Vector& x) {
    return pairwise_sum(m, [&](int i) { return sv(i, x); }) / m;
  };
  obj.grad = [sg = obj.sample_grad, m, d = p.dim](const Vector& x) -> Vector {
    return pairwise_sum_vec(d, m, [&](int i) { return sg(i, x); }) / m;
  };

  obj.meta.eta = eta;
  obj.meta.rho_bar = rho_bar / m;
  obj.meta.has_const_L = true;
  obj.meta.B = rho_bar / m;  // (1/m) sum 2 rho_i
  obj.meta.L = 1.0;          // plus 1/eta each
  // point-dependent error bound using the chosen subgradient's norm
  obj.meta.R_at = [losses, eta, m](const Vector& x) {
    return pairwise_sum(m,
                        [&](int i) {
                          const SampleLoss& s = (*losses)[i];
                          double g = s.value_subgrad(x).subgrad.norm();
                          return eta / std::max(1.0, s.rho * eta) * g * g;
                        }) /
           m;
  };
  return obj;
}

SmoothedObjective smooth_softmax(const PiecewiseQuadratic& p, double eta) {
  if (eta <= 0) throw ParamError("smooth_softmax: eta must be positive");
  auto pwq = std::make_shared<PiecewiseQuadratic>(p);
  std::vector<double> Ls;
  for (const Matrix& A : p.A) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(A);
    Ls.push_back(std::max(std::abs(es.eigenvalues().minCoeff()),
                          std::abs(es.eigenvalues().maxCoeff())));
  }
  SAMeta meta = softmax_meta(Ls, eta);

  auto eval = [pwq, eta](const Vector& x) {
    std::vector<double> vals;
    pwq->piece_values(x, vals);
    std::vector<Vector> grads(pwq->m());
    for (int j = 0; j < pwq->m(); ++j) grads[j] = pwq->A[j] * x - pwq->b[j];
    return softmax_smooth(vals, grads, eta);
  };

  SmoothedObjective obj;
  obj.dim = p.dim;
  obj.num_samples = 1;
  // shift by eta log m so that f_eta <= max <= f_eta + eta log m
  obj.value = [eval, shift = eta * std::log((double)p.m())](const Vector& x) {
    return eval(x).value - shift;
  };
  obj.grad = [eval](const Vector& x) { return eval(x).gradient; };
  obj.sample_value = [v = obj.value](int, const Vector& x) { return v(x); };
  obj.sample_grad = [g = obj.grad](int, const Vector& x) { return g(x); };
  obj.meta = meta;
  obj.meta.L_at = [pwq, eta, rb = meta.rho_bar](const Vector& x, const Vector& y) {
    double sup = 0;
    for (int t = 0; t <= 10; ++t) {
      double th = t / 10.0;
      Vector z = th * x + (1 - th) * y;
      for (int j = 0; j < pwq->m(); ++j)
        sup = std::max(sup, (pwq->A[j] * z - pwq->b[j]).squaredNorm());
    }
    return rb + sup / eta;
  };
  return obj;
}

// --- combinators -------------------------------------------------------------

SmoothedObjective combine_sum(const std::vector<std::pair<SmoothedObjective, double>>& parts) {
  if (parts.empty()) throw ParamError("combine_sum: no parts");
  double eta = parts[0].first.meta.eta;
  int dim = parts[0].first.dim;
  for (const auto& [p, w] : parts) {
    if (w < 0) throw ParamError("combine_sum: negative weight");
    if (p.dim != dim) throw ParamError("combine_sum: dimension mismatch");
    if (p.meta.eta != eta) throw ParamError("combine_sum: parts must share eta");
  }
  auto ps = std::make_shared<std::vector<std::pair<SmoothedObjective, double>>>(parts);
  int n = static_cast<int>(parts.size());

  SmoothedObjective obj;
  obj.dim = dim;
  obj.num_samples = 1;
  obj.value = [ps, n](const Vector& x) {
    return pairwise_sum(n, [&](int i) { return (*ps)[i].second * (*ps)[i].first.value(x); });
  };
  obj.grad = [ps, n, dim](const Vector& x) {
    return pairwise_sum_vec(dim, n,
                            [&](int i) -> Vector { return (*ps)[i].second * (*ps)[i].first.grad(x); });
  };
  obj.meta.eta = eta;
  bool all_R_const = true, all_L_const = true;
  for (const auto& [p, w] : parts) {
    obj.meta.rho_bar += w * p.meta.rho_bar;
    if (p.meta.R_const >= 0)
      obj.meta.R_const = std::max(obj.meta.R_const, 0.0) + w * p.meta.R_const;
    else
      all_R_const = false;
    if (p.meta.has_const_L) {
      obj.meta.B += w * p.meta.B;
      obj.meta.L += w * p.meta.L;
    } else {
      all_L_const = false;
    }
  }
  if (!all_R_const) {
    obj.meta.R_const = -1;
    obj.meta.R_at = [ps, n](const Vector& x) {
      return pairwise_sum(n, [&](int i) { return (*ps)[i].second * (*ps)[i].first.meta.R_bound(x); });
    };
  }
  obj.meta.has_const_L = all_L_const;
  obj.meta.L_at = [ps, n](const Vector& x, const Vector& y) {
    return pairwise_sum(n,
                        [&](int i) { return (*ps)[i].second * (*ps)[i].first.meta.L_pair(x, y); });
  };
  return obj;
}

Vector MinibatchOracle::grad(const Vector& x, RNGStream& rng) const {
  if (batch == obj->num_samples) {
    // deterministic mode: every index exactly once
    return pairwise_sum_vec(obj->dim, batch, [&](int i) { return obj->sample_grad(i, x); }) /
           batch;
  }
  std::vector<int> idx(batch);
  for (int j = 0; j < batch; ++j) idx[j] = rng.uniform_int(obj->num_samples);
  return pairwise_sum_vec(obj->dim, batch, [&](int j) { return obj->sample_grad(idx[j], x); }) /
         batch;
}

double MinibatchOracle::value(const Vector& x, RNGStream& rng) const {
  if (batch == obj->num_samples)
    return pairwise_sum(batch, [&](int i) { return obj->sample_value(i, x); }) / batch;
  std::vector<int> idx(batch);
  for (int j = 0; j < batch; ++j) idx[j] = rng.uniform_int(obj->num_samples);
  return pairwise_sum(batch, [&](int j) { return obj->sample_value(idx[j], x); }) / batch;
}

MinibatchOracle combine_minibatch(const SmoothedObjective& obj, int batch) {
  if (batch < 1) throw ParamError("combine_minibatch: batch must be >= 1");
  if (!obj.sample_grad) throw CapabilityError("combine_minibatch: no per-sample oracle");
  return {&obj, batch};
}

SmoothedObjective compose_convex_outer(const SmoothedObjective& outer, double M,
                                       const std::vector<SmoothedObjective>& inner) {
  if (inner.empty()) throw ParamError("compose_convex_outer: empty inner map");
  int mF = static_cast<int>(inner.size());
  if (outer.dim != mF) throw ParamError("compose_convex_outer: outer dim != #components");
  int d = inner[0].dim;

  // monotonicity spot check: the outer gradient must be componentwise >= 0
  for (const Vector& probe : {Vector(Vector::Zero(mF)), Vector(Vector::Ones(mF))}) {
    Vector g = outer.grad(probe);
    if ((g.array() < -1e-12).any())
      throw CapabilityError("compose_convex_outer: outer gradient has negative components");
  }

  auto out = std::make_shared<SmoothedObjective>(outer);
  auto in = std::make_shared<std::vector<SmoothedObjective>>(inner);

  auto Fval = [in, mF](const Vector& x) {
    Vector F(mF);
    for (int j = 0; j < mF; ++j) F[j] = (*in)[j].value(x);
    return F;
  };

  SmoothedObjective obj;
  obj.dim = d;
  obj.num_samples = 1;
  obj.value = [out, Fval](const Vector& x) { return out->value(Fval(x)); };
  obj.grad = [out, in, Fval, mF, d](const Vector& x) {
    Vector gh = out->grad(Fval(x));
    Vector g = Vector::Zero(d);
    for (int j = 0; j < mF; ++j) g += gh[j] * (*in)[j].grad(x);
    return g;
  };

  double rho_F = 0, R2c = 0;
  bool inner_R_const = true;
  for (const SmoothedObjective& ij : inner) {
    rho_F = std::max(rho_F, ij.meta.rho_bar);
    if (ij.meta.R_const >= 0)
      R2c = std::max(R2c, ij.meta.R_const);
    else
      inner_R_const = false;
  }
  obj.meta.eta = outer.meta.eta;
  obj.meta.rho_bar = std::sqrt(static_cast<double>(mF)) * rho_F * M;
  double sqm = std::sqrt(static_cast<double>(mF));
  if (outer.meta.R_const >= 0 && inner_R_const) {
    obj.meta.R_const = outer.meta.R_const + sqm * M * R2c;
  } else {
    obj.meta.R_const = -1;
    obj.meta.R_at = [out, in, Fval, sqm, M](const Vector& x) {
      double R2 = 0;
      for (const SmoothedObjective& ij : *in) R2 = std::max(R2, ij.meta.R_bound(x));
      return out->meta.R_bound(Fval(x)) + sqm * M * R2;
    };
  }
  // one-sided generalized-smoothness bound: L1 at (F(x), F(y)) scaled by the
  // inner Jacobian norm at x, plus M times the worst inner modulus
  obj.meta.L_at = [out, in, Fval, M, mF](const Vector& x, const Vector& y) {
    Vector Fx = Fval(x), Fy = Fval(y);
    double jf = 0;
    for (int j = 0; j < mF; ++j) jf += (*in)[j].grad(x).squaredNorm();
    double L2 = 0;
    for (const SmoothedObjective& ij : *in) L2 = std::max(L2, ij.meta.L_pair(x, y));
    return out->meta.L_pair(Fx, Fy) * std::sqrt(jf) + M * L2;
  };
  return obj;
}

SmoothedObjective precompose_linear(const SmoothedObjective& g, const Matrix& A) {
  if (A.rows() != g.dim) throw ParamError("precompose_linear: A rows != inner dim");
  auto gp = std::make_shared<SmoothedObjective>(g);
  auto Ap = std::make_shared<Matrix>(A);
  double opn = A.jacobiSvd().singularValues()(0);

  SmoothedObjective obj;
  obj.dim = static_cast<int>(A.cols());
  obj.num_samples = 1;
  obj.value = [gp, Ap](const Vector& x) { return gp->value(*Ap * x); };
  obj.grad = [gp, Ap](const Vector& x) -> Vector { return Ap->transpose() * gp->grad(*Ap * x); };
  obj.meta.eta = g.meta.eta;
  obj.meta.rho_bar = g.meta.rho_bar * opn * opn;
  if (g.meta.R_const >= 0) {
    obj.meta.R_const = g.meta.R_const;
  } else {
    obj.meta.R_const = -1;
    obj.meta.R_at = [gp, Ap](const Vector& x) { return gp->meta.R_bound(*Ap * x); };
  }
  obj.meta.has_const_L = g.meta.has_const_L;
  obj.meta.B = opn * g.meta.B;
  obj.meta.L = opn * g.meta.L;
  obj.meta.L_at = [gp, Ap, opn](const Vector& x, const Vector& y) {
    return opn * gp->meta.L_pair(*Ap * x, *Ap * y);
  };
  return obj;
}

}  // namespace smopt
