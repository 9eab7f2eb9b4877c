#include "smopt/solvers.hpp"

#include <cmath>

#include "smopt/stationarity.hpp"

namespace smopt {

Algo algo_from_string(const std::string& s) {
  if (s == "gm") return Algo::gm;
  if (s == "sgm") return Algo::sgm;
  if (s == "ngd") return Algo::ngd;
  if (s == "sspg") return Algo::sspg;
  if (s == "asgd-sipp") return Algo::asgd_sipp;
  if (s == "agls") return Algo::agls;
  if (s == "agls-sipp") return Algo::agls_sipp;
  throw ParamError("unknown algo: " + s);
}

std::string algo_to_string(Algo a) {
  switch (a) {
    case Algo::gm: return "gm";
    case Algo::sgm: return "sgm";
    case Algo::ngd: return "ngd";
    case Algo::sspg: return "sspg";
    case Algo::asgd_sipp: return "asgd-sipp";
    case Algo::agls: return "agls";
    case Algo::agls_sipp: return "agls-sipp";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (alpha0 <= 0) throw ParamError("SolverConfig: alpha0 must be positive");
  if (eta <= 0) throw ParamError("SolverConfig: eta must be positive");
  if (batch < 0) throw ParamError("SolverConfig: batch must be >= 0");
  if (!(tau_d > 0 && tau_d < 1)) throw ParamError("SolverConfig: tau_d in (0,1)");
  if (!(tau_u > 1)) throw ParamError("SolverConfig: tau_u > 1");
  if (L0 <= 0) throw ParamError("SolverConfig: L0 must be positive");
  if (!(inner.lambda >= 0 && inner.lambda < 1)) throw ParamError("SolverConfig: lambda in [0,1)");
  if (inner.zeta < 0) throw ParamError("SolverConfig: zeta must be >= 0");
  if (feasible_radius <= 0) throw ParamError("SolverConfig: feasible_radius must be positive");
}

namespace {

constexpr long kIterCap = 2000000;  // safety net, never the intended stop

double planned_stepsize(const SolverConfig& cfg, long K) {
  return cfg.schedule == SolverConfig::Schedule::constant ? cfg.alpha0
                                                          : cfg.alpha0 / std::sqrt((double)K);
}

Vector project_ball(const Vector& x, double radius) {
  double n = x.norm();
  return n <= radius ? x : Vector(x * (radius / n));
}

double alpha_first(double L, double mu) { return mu == 0 ? 1.0 : std::sqrt(mu / (L + mu)); }

double alpha_root(double L, double mu, double b_prev) {
  double A = L + mu, B = b_prev - mu, C = -b_prev;
  return (-B + std::sqrt(std::max(B * B - 4 * A * C, 0.0))) / (2 * A);
}

}  // namespace

Trace subgradient_method(const CompositeProblem& p, const SolverConfig& cfg, const Vector& x0,
                         bool stochastic) {
  cfg.validate();
  int m = p.m();
  long budget = cfg.budget > 0 ? cfg.budget : 400L * m;
  long cost = stochastic ? std::max(cfg.batch, 1) : m;
  long K = cfg.K > 0 ? cfg.K : std::max(1L, budget / cost);
  double alpha = planned_stepsize(cfg, K);
  RNGStream rng(cfg.seed, 101);

  Trace tr;
  Vector x = x0;
  long oracle = 0;
  tr.append({0, 0, p.f_value(x), p.f_value(x), 0, 0, alpha, 0, 0, ""});
  for (long k = 1; k <= kIterCap; ++k) {
    if (oracle + cost > budget) {
      tr.reason = "budget";
      break;
    }
    Vector g;
    if (stochastic) {
      int b = std::max(cfg.batch, 1);
      g = pairwise_sum_vec(p.dim, b,
                           [&](int) { return p.losses[rng.uniform_int(m)].value_subgrad(x).subgrad; }) /
          b;
    } else {
      g = p.f_subgrad(x).subgrad;
    }
    oracle += cost;
    x = project_ball(x - alpha * g, cfg.feasible_radius);
    double f = p.f_value(x);
    tr.append({k, oracle, f, f, g.norm(), 0, alpha, 0, 0, ""});
    if (cfg.stop_threshold >= 0 && f <= cfg.stop_threshold) {
      tr.reason = "converged";
      break;
    }
  }
  if (tr.reason.empty()) tr.reason = "max_iter";
  if (!tr.rows.empty()) tr.rows.back().reason = tr.reason;
  return tr;
}

Trace normalized_gd(const std::function<double(const Vector&)>& f,
                    const std::function<Vector(const Vector&)>& subgrad, int dim,
                    const SolverConfig& cfg, const Vector& x0, long eval_cost) {
  cfg.validate();
  long budget = cfg.budget > 0 ? cfg.budget : 400L * eval_cost;
  long K = cfg.K > 0 ? cfg.K : std::max(1L, budget / eval_cost);
  double alpha = planned_stepsize(cfg, K);
  (void)dim;

  Trace tr;
  Vector x = x0;
  long oracle = 0;
  tr.append({0, 0, f(x), f(x), 0, 0, alpha, 0, 0, ""});
  for (long k = 1; k <= kIterCap; ++k) {
    if (oracle + eval_cost > budget) {
      tr.reason = "budget";
      break;
    }
    Vector g = subgrad(x);
    oracle += eval_cost;
    double gn = g.norm();
    if (gn == 0) {
      tr.append({k, oracle, f(x), f(x), 0, 0, alpha, 0, 0, ""});
      tr.reason = "stationary";
      break;
    }
    x = project_ball(x - (alpha / gn) * g, cfg.feasible_radius);
    double fv = f(x);
    tr.append({k, oracle, fv, fv, gn, 0, alpha, 0, 0, ""});
    if (cfg.stop_threshold >= 0 && fv <= cfg.stop_threshold) {
      tr.reason = "converged";
      break;
    }
  }
  if (tr.reason.empty()) tr.reason = "max_iter";
  if (!tr.rows.empty()) tr.rows.back().reason = tr.reason;
  return tr;
}

Trace sspg(const SmoothedObjective& obj, const Regularizer& reg, const SolverConfig& cfg,
           const std::function<double(const Vector&)>& f_true, const Vector& x0) {
  cfg.validate();
  int m = obj.num_samples;
  long budget = cfg.budget > 0 ? cfg.budget : 400L * m;
  long cost = cfg.batch > 0 ? cfg.batch : m;
  long K = cfg.K > 0 ? cfg.K : std::max(1L, budget / cost);

  double gamma;
  if (cfg.theory_stepsize) {
    double L = obj.meta.L_const_form();  // throws if not constant-form
    if (cfg.sigma == 0 || cfg.batch == 0) {
      gamma = 1.0 / (2 * L);
    } else {
      double rho_hat = cfg.rho_hat > 0 ? cfg.rho_hat : 2 * obj.meta.rho_bar;
      double R = obj.meta.R_const >= 0 ? obj.meta.R_const * obj.meta.eta
                                       : obj.meta.R_bound(x0);
      double c = cfg.sigma * std::sqrt(rho_hat / ((cfg.Delta + R) * cost));
      gamma = 1.0 / (c * std::sqrt((double)K) + rho_hat + L);
    }
  } else {
    gamma = planned_stepsize(cfg, K);
  }

  RNGStream rng(cfg.seed, 202);
  MinibatchOracle mb{&obj, cfg.batch > 0 ? cfg.batch : m};

  Trace tr;
  Vector x = x0;
  long oracle = 0;
  tr.append({0, 0, f_true(x), obj.value(x) + reg.value(x), 0, 0, gamma, 0, 0, ""});
  for (long k = 1; k <= kIterCap; ++k) {
    if (oracle + cost > budget) {
      tr.reason = "budget";
      break;
    }
    Vector g = mb.grad(x, rng);
    oracle += cost;
    Vector xn = prox(reg, x - gamma * g, gamma);
    double gnorm = (x - xn).norm() / gamma;  // generalized gradient at the sampled direction
    x = xn;
    double fv = f_true(x);
    tr.append({k, oracle, fv, obj.value(x) + reg.value(x), gnorm, 0, gamma, 0, 0, ""});
    if (cfg.stop_threshold >= 0 && fv <= cfg.stop_threshold) {
      tr.reason = "converged";
      break;
    }
  }
  if (tr.reason.empty()) tr.reason = "max_iter";
  if (!tr.rows.empty()) tr.rows.back().reason = tr.reason;
  return tr;
}

long sipp_inner_iterations(double B, double L, double eta, double rho_bar, double rho_hat,
                           double sigma, double eps) {
  if (rho_bar <= 0 || eta <= 0 || rho_hat <= rho_bar)
    throw ParamError("sipp_inner_iterations: need rho_bar > 0, eta > 0, rho_hat > rho_bar");
  double det = 2 * std::sqrt(2 * (B + L / eta + 2 * rho_bar) / rho_bar);
  double sto = sigma > 0 ? 8 * sigma * sigma / ((rho_hat - rho_bar) * eps * eps) : 0;
  return static_cast<long>(std::ceil(std::max(det, sto)));
}

namespace {

// subproblem pieces for min f_eta(x) + r(x) + (rho_hat/2)||x - center||^2,
// split as g = f_eta + (rho_bar/2)||.-c||^2 (convex) and pi = r + (mu/2)||.-c||^2
struct Subproblem {
  const SmoothedObjective* obj;
  const Regularizer* reg;
  Vector center;
  double rho_bar, mu;

  double g(const Vector& z) const {
    return obj->value(z) + 0.5 * rho_bar * (z - center).squaredNorm();
  }
  Vector grad_g(const Vector& z) const {
    return obj->grad(z) + rho_bar * (z - center);
  }
  double pi(const Vector& z) const {
    return reg->value(z) + 0.5 * mu * (z - center).squaredNorm();
  }
  Vector prox_step(const Vector& c, const Vector& z, double gamma) const {
    Vector w = (mu * center + gamma * z - c) / (mu + gamma);
    return prox(*reg, w, 1.0 / (mu + gamma));
  }
  AglsProblem as_agls() const {
    AglsProblem p;
    p.g = [this](const Vector& z) { return g(z); };
    p.grad_g = [this](const Vector& z) { return grad_g(z); };
    p.mu = mu;
    p.pi = [this](const Vector& z) { return pi(z); };
    p.prox_step = [this](const Vector& c, const Vector& z, double gm) {
      return prox_step(c, z, gm);
    };
    return p;
  }
};

}  // namespace

InnerResult asgd_inner(const SmoothedObjective& obj, const Regularizer& reg, const Vector& center,
                       double rho_hat, int T, int batch, RNGStream& rng, double grad_tol) {
  if (rho_hat <= 0) throw ParamError("asgd_inner: rho_hat must be positive");
  // rho_hat <= rho_bar leaves g only approximately convex (heuristic regime)
  double rho_bar = std::min(obj.meta.rho_bar, rho_hat);
  double mu = rho_hat - rho_bar;
  // theory mode (grad_tol off) keeps the certified constant-form L; the
  // heuristic mode prefers the much tighter local estimate at the center
  double L = (grad_tol > 0 && obj.meta.L_at ? obj.meta.L_pair(center, center)
                                            : obj.meta.L_const_form()) +
             rho_hat;
  int m = obj.num_samples;
  long cost = batch > 0 ? batch : m;
  MinibatchOracle mb{&obj, batch > 0 ? batch : m};

  Subproblem sub{&obj, &reg, center, rho_bar, mu};
  InnerResult res;
  Vector y = center, z = center;
  double b_prev = 0;
  for (int t = 1; t <= T; ++t) {
    double alpha = (t == 1) ? alpha_first(L, mu) : alpha_root(L, mu, b_prev);
    double gamma = (L + mu) * alpha - mu;
    double beta = gamma / (L * alpha);
    Vector xt = (1 - alpha) * y + alpha * ((1 - beta) * y + beta * z);
    Vector gx = mb.grad(xt, rng) + rho_bar * (xt - center);
    res.oracle_cost += cost;
    z = sub.prox_step(gx, z, gamma);
    y = (1 - alpha) * y + alpha * z;
    b_prev = alpha * alpha * (L + mu);
    res.steps = t;
    if (grad_tol > 0) {
      // subproblem gradient norm, reusing the gradient already computed at
      // xt (the ball constraint is virtually never active at radius 1e5, so
      // the plain gradient is the right measure, and the check is free)
      res.grad_map_norm = (gx + mu * (xt - center)).norm();
      if (res.grad_map_norm <= grad_tol) break;
    }
  }
  res.y = y;
  return res;
}

Trace sipp(const std::function<SmoothedObjective(double)>& make_obj, const Regularizer& reg,
           const SolverConfig& cfg, SippInner inner,
           const std::function<double(const Vector&)>& f_true, const Vector& x0) {
  cfg.validate();
  double eta = cfg.eta;
  SmoothedObjective obj = make_obj(eta);
  int m = obj.num_samples;
  long budget = cfg.budget > 0 ? cfg.budget : 400L * m;
  double rho_hat = cfg.rho_hat > 0 ? cfg.rho_hat : 2 * obj.meta.rho_bar;
  double eps = cfg.eps_target > 0 ? cfg.eps_target : std::sqrt(cfg.eta);
  double eps_sq = eps * eps;
  RNGStream rng(cfg.seed, 303);

  Trace tr;
  Vector x = x0;
  long oracle = 0;
  double Lhat_carry = cfg.L0;
  tr.append({0, 0, f_true(x), obj.value(x) + reg.value(x), 0, 0,
             rho_hat > 0 ? 1.0 / rho_hat : 0, 0, 0, ""});
  for (long k = 1; k <= kIterCap; ++k) {
    if (oracle >= budget) {
      tr.reason = "budget";
      break;
    }
    Vector x_prev = x;
    int inner_steps = 0;
    long ls_steps = 0;
    double Lhat = 0;
    bool use_ls = inner == SippInner::agls || cfg.inner_ls;
    if (!use_ls) {
      int T;
      if (cfg.adapt) {
        T = cfg.max_inner;
      } else {
        T = (int)sipp_inner_iterations(obj.meta.B, obj.meta.L, eta, obj.meta.rho_bar, rho_hat,
                                       cfg.sigma, eps);
      }
      InnerResult ir = asgd_inner(obj, reg, x, rho_hat, T, cfg.batch, rng,
                                  cfg.adapt ? cfg.inner_grad_tol : 0.0);
      x = ir.y;
      inner_steps = ir.steps;
      oracle += ir.oracle_cost;
      Lhat = obj.meta.L_const_form() + rho_hat;
    } else {
      double q = std::min(obj.meta.rho_bar, rho_hat);
      Subproblem sub{&obj, &reg, x, q, rho_hat - q};
      AglsProblem ap = sub.as_agls();
      AglsConfig ac;
      // restart the line search from a local smoothness estimate; carrying the
      // previous Lhat alone ratchets upward on nonconvex subproblems
      double L_loc = (obj.meta.L_at ? obj.meta.L_pair(x, x) : obj.meta.L_const_form()) + q;
      ac.L0 = std::min(Lhat_carry, L_loc);
      ac.tau_d = cfg.tau_d;
      ac.tau_u = cfg.tau_u;
      if (cfg.adapt) {
        ac.grad_tol = cfg.inner_grad_tol;
        ac.max_iter = cfg.max_inner;
      } else {
        ac.early_stop = true;
        ac.max_iter = 500;
      }
      AglsResult ar = agls(ap, x, ac);
      x = ar.y;
      inner_steps = (int)ar.iters.size();
      ls_steps = ar.total_ls_steps;
      Lhat = ar.Lhat_last;
      Lhat_carry = ar.Lhat_last;
      // one gradient per accepted or rejected line-search trial; the
      // stopping check reuses the accepted gradient, so it is free
      oracle += (long)(inner_steps + ar.total_ls_steps) * m;
    }
    double surrogate = rho_hat * (x - x_prev).norm();
    double gg = generalized_gradient(obj, reg, x, 1.0 / rho_hat).G.norm();
    double fv = f_true(x);
    tr.append({k, oracle, fv, obj.value(x) + reg.value(x), gg, surrogate, 1.0 / rho_hat, Lhat,
               ls_steps, ""});
    if (cfg.stop_threshold >= 0 && fv <= cfg.stop_threshold) {
      tr.reason = "converged";
      break;
    }
    if (cfg.adapt) {
      AdaptResult ad = adapt_subproblem_heuristics(rho_hat, eta, inner_steps, k, eps_sq,
                                                   cfg.gamma_decay, cfg.gamma_floor);
      if (cfg.eta_decay && ad.changed && ad.eta != eta) {
        eta = ad.eta;
        obj = make_obj(eta);
      }
      rho_hat = ad.gamma;
    }
  }
  if (tr.reason.empty()) tr.reason = "max_iter";
  if (!tr.rows.empty()) tr.rows.back().reason = tr.reason;
  return tr;
}

Trace agls_sipp(const std::function<SmoothedObjective(double)>& make_obj, const Regularizer& reg,
                const SolverConfig& cfg, const std::function<double(const Vector&)>& f_true,
                const Vector& x0) {
  return sipp(make_obj, reg, cfg, SippInner::agls, f_true, x0);
}

AdaptResult adapt_subproblem_heuristics(double gamma, double eta, int inner_iters_used, long k,
                                        double eps_sq, double decay, double floor) {
  if (inner_iters_used <= 6) return {gamma, eta, false};
  return {std::max(decay * gamma, floor), eps_sq / (double)k, true};
}

}  // namespace smopt
