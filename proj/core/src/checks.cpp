#include "smopt/checks.hpp"

#include <cmath>
#include <sstream>

#include "smopt/agls.hpp"
#include "smopt/experiments.hpp"
#include "smopt/problem.hpp"
#include "smopt/rng.hpp"
#include "smopt/smoothing.hpp"

namespace smopt {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Vector random_point(RNGStream& rng, int n, double scale) {
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.uniform(-scale, scale);
  return x;
}

CheckResult gradient_check(const std::string& name, const SmoothedObjective& obj,
                           const std::function<bool(const Vector&)>& skip, int points,
                           uint64_t seed) {
  RNGStream rng(seed);
  double h = 1e-6, worst = 0;
  int used = 0;
  for (int t = 0; t < points * 4 && used < points; ++t) {
    Vector x = random_point(rng, obj.dim, 2.0);
    if (skip && skip(x)) continue;
    ++used;
    Vector g = obj.grad(x);
    Vector fd = finite_diff_gradient(obj.value, x, h);
    double rel = (g - fd).norm() / std::max(1.0, g.norm());
    worst = std::max(worst, rel);
  }
  bool pass = used >= points && worst <= 1e-6;
  return {name, pass, "worst rel err " + num(worst) + " over " + num(used) + " points"};
}

CheckResult sandwich_check(const std::string& name, const SmoothedObjective& obj,
                           const std::function<double(const Vector&)>& f_true, int points,
                           uint64_t seed) {
  RNGStream rng(seed);
  double worst_low = 0, worst_high = 0;
  for (int t = 0; t < points; ++t) {
    Vector x = random_point(rng, obj.dim, 2.0);
    double fe = obj.value(x), f = f_true(x), R = obj.meta.R_bound(x);
    worst_low = std::max(worst_low, fe - f);        // need f_eta <= f
    worst_high = std::max(worst_high, f - fe - R);  // need f <= f_eta + R
  }
  bool pass = worst_low <= 1e-9 && worst_high <= 1e-9;
  return {name, pass,
          "max(f_eta - f) = " + num(worst_low) + ", max(f - f_eta - R) = " + num(worst_high)};
}

// 1-D grid minimizer of |(<a,y>)^2 - b| + (gamma/2)||y - xbar||^2 along xbar + s a/||a||
double grid_prox_arg(const Vector& a, double b, const Vector& xbar, double gamma) {
  double an = a.norm(), zbar = a.dot(xbar);
  double S = 3.0 * (1.0 + xbar.norm());
  double best_s = 0, best_v = std::numeric_limits<double>::infinity();
  for (double s = -S; s <= S; s += 1e-5) {
    double z = zbar + s * an;
    double v = std::abs(z * z - b) + 0.5 * gamma * s * s;
    if (v < best_v) {
      best_v = v;
      best_s = s;
    }
  }
  return best_s;
}

std::vector<CheckResult> suite_gradients() {
  std::vector<CheckResult> out;
  RegressionDataset ds = gen_regression(10, 5, 5, 0.2, HKind::quad, 42);
  CompositeProblem prob = make_problem(ds, 1e5);
  double eta = 0.5;

  SmoothedObjective hub = smooth_huber(prob, eta);
  auto skip_huber = [&prob, eta](const Vector& x) {
    for (const SampleLoss& s : prob.losses) {
      double resid = h_value(s.hkind, s.a.dot(x)) - s.b;
      if (std::abs(std::abs(resid) - eta) < 1e-4) return true;  // curvature jump
    }
    return false;
  };
  out.push_back(gradient_check("gradients/huber", hub, skip_huber, 100, 7));

  SmoothedObjective mor = smooth_moreau(prob, eta);
  out.push_back(gradient_check("gradients/moreau", mor, nullptr, 100, 8));

  PiecewiseQuadratic pq = gen_piecewise_quadratic(5, 8, 3);
  SmoothedObjective sm = smooth_softmax(pq, 0.8);
  out.push_back(gradient_check("gradients/softmax", sm, nullptr, 100, 9));

  // linear precomposition of a 1-D Huber against finite differences
  {
    CompositeProblem one;
    one.dim = 1;
    SampleLoss s;
    s.a = Vector::Ones(1);
    s.b = 0;
    s.hkind = HKind::quad;
    s.rho = 2;
    one.losses.push_back(s);
    SmoothedObjective g1 = smooth_huber(one, eta);
    Matrix A(1, 4);
    A << 0.3, -1.2, 0.5, 2.0;
    SmoothedObjective comp = precompose_linear(g1, A);
    out.push_back(gradient_check("gradients/precompose_linear", comp, nullptr, 50, 10));
  }
  return out;
}

std::vector<CheckResult> suite_sandwich() {
  std::vector<CheckResult> out;
  RegressionDataset ds = gen_regression(10, 5, 5, 0.2, HKind::quad, 43);
  CompositeProblem prob = make_problem(ds, 1e5);
  auto f_true = [&prob](const Vector& x) { return prob.f_value(x); };
  double eta = 0.5;
  out.push_back(sandwich_check("sandwich/huber", smooth_huber(prob, eta), f_true, 200, 11));
  out.push_back(sandwich_check("sandwich/moreau", smooth_moreau(prob, eta), f_true, 200, 12));
  PiecewiseQuadratic pq = gen_piecewise_quadratic(5, 8, 4);
  out.push_back(sandwich_check("sandwich/softmax", smooth_softmax(pq, 0.8),
                               [&pq](const Vector& x) { return pq.value(x); }, 200, 13));
  return out;
}

std::vector<CheckResult> suite_prox() {
  std::vector<CheckResult> out;
  RNGStream rng(44);
  double worst_dual = 0, worst_pl = 0;
  int fails = 0;
  const int N = 50;
  for (int t = 0; t < N; ++t) {
    int n = 4;
    Vector a(n);
    for (int i = 0; i < n; ++i) a[i] = rng.uniform(-1.0, 1.0);
    if (a.norm() < 0.2) a *= 0.5 / a.norm();
    double b = rng.uniform(-2.0, 2.0);
    Vector xbar = random_point(rng, n, 1.5);
    double gamma = 2 * a.squaredNorm() * (1.5 + rng.uniform()) + 0.5;

    double s_star = grid_prox_arg(a, b, xbar, gamma);
    Vector y_grid = xbar + s_star * a / a.norm();

    Vector q = Vector::Zero(n);
    ProxAbsQuadResult pq = prox_abs_quadratic(a, q, -b, xbar, gamma);
    worst_dual = std::max(worst_dual, (pq.prox_point - y_grid).norm());

    auto F = [&](const Vector& y) { double z = a.dot(y); return z * z - b; };
    auto gF = [&](const Vector& y) -> Vector { return 2 * a.dot(y) * a; };
    try {
      Vector pl = prox_linear(F, gF, xbar, gamma, 1e-10, 500);
      worst_pl = std::max(worst_pl, (pl - y_grid).norm());
    } catch (const ConvergenceError&) {
      ++fails;
    }
  }
  out.push_back({"prox/dual_vs_grid", worst_dual <= 1e-4, "worst gap " + num(worst_dual)});
  out.push_back({"prox/prox_linear_vs_grid", worst_pl <= 1e-4 && fails == 0,
                 "worst gap " + num(worst_pl) + ", failures " + num(fails)});
  return out;
}

std::vector<CheckResult> suite_rates() {
  std::vector<CheckResult> out;
  RNGStream rng(45);
  const int d = 50, T = 200;
  bool env_ok = true, bound_ok = true, budget_ok = true, sc_ok = true;
  double worst_margin = 0;

  for (int inst = 0; inst < 10; ++inst) {
    // random PSD Hessian with condition number up to 1e4
    Matrix G(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) G(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix V = qr.householderQ();
    double cond = std::pow(10.0, rng.uniform(1.0, 4.0));
    Vector evs(d);
    for (int i = 0; i < d; ++i) evs[i] = std::pow(cond, (double)i / (d - 1));
    Matrix H = V * evs.asDiagonal() * V.transpose();
    H = 0.5 * (H + H.transpose());
    Vector c = random_point(rng, d, 1.0);
    Vector xstar = H.ldlt().solve(c);
    double Lmax = evs.maxCoeff();

    AglsProblem prob;
    prob.g = [&H, &c](const Vector& x) { return 0.5 * x.dot(H * x) - c.dot(x); };
    prob.grad_g = [&H, &c](const Vector& x) -> Vector { return H * x - c; };
    prob.mu = 0;
    prob.prox_step = [](const Vector& cc, const Vector& z, double gm) -> Vector {
      return z - cc / gm;
    };
    Vector x0 = random_point(rng, d, 2.0);
    double psi_star = prob.g(xstar);

    AglsConfig cfg;
    cfg.max_iter = T;
    cfg.keep_history = true;
    AglsResult res = agls(prob, x0, cfg);

    double D1 = (x0 - xstar).norm();
    double L1s = 2 * Lmax;
    for (size_t t = 0; t < res.iters.size(); ++t) {
      double bound = 2 * cfg.tau_u * L1s / std::pow((double)(t + 2), 2) * D1 * D1;
      double gap = res.iters[t].psi_y - psi_star;
      if (gap > bound + 1e-9) env_ok = false;
      worst_margin = std::max(worst_margin, gap - bound);
      if (res.ys[t].size() && (res.ys[t] - xstar).norm() > D1 + 1e-8) bound_ok = false;
      if ((res.zs[t] - xstar).norm() > D1 + 1e-8) bound_ok = false;
    }
    long Tn = (long)res.iters.size();
    double budget = (1 + std::log(1 / cfg.tau_d) / std::log(cfg.tau_u)) * Tn +
                    std::log(cfg.tau_u * L1s / cfg.L0) / std::log(cfg.tau_u);
    if (Tn + res.total_ls_steps > std::ceil(budget) + 1) budget_ok = false;

    // strongly convex variant: pi = (mu/2)||x||^2
    double mu = 1.0;
    AglsProblem sp = prob;
    sp.mu = mu;
    sp.pi = [mu](const Vector& x) { return 0.5 * mu * x.squaredNorm(); };
    sp.prox_step = [mu](const Vector& cc, const Vector& z, double gm) -> Vector {
      return (gm * z - cc) / (mu + gm);
    };
    Vector xs2 = (H + mu * Matrix::Identity(d, d)).ldlt().solve(c);
    double psi2 = sp.psi(xs2);
    AglsConfig cfg2;
    cfg2.max_iter = 120;
    cfg2.keep_history = true;
    AglsResult r2 = agls(sp, x0, cfg2);
    double init = sp.psi(x0) - psi2 + 0.5 * mu * (x0 - xs2).squaredNorm();
    double prodf = 1;
    for (size_t t = 0; t < r2.iters.size(); ++t) {
      prodf *= 1 - std::sqrt(mu / (r2.iters[t].Lhat + mu));
      double lhs = r2.iters[t].psi_y - psi2 + 0.5 * mu * (r2.zs[t] - xs2).squaredNorm();
      if (lhs > prodf * init + 1e-9) sc_ok = false;
    }
  }
  out.push_back({"rates/convex_envelope", env_ok, "worst margin " + num(worst_margin)});
  out.push_back({"rates/iterate_bounded", bound_ok, ""});
  out.push_back({"rates/line_search_budget", budget_ok, ""});
  out.push_back({"rates/strongly_convex_product", sc_ok, ""});
  return out;
}

}  // namespace

std::vector<CheckResult> run_check_suite(const std::string& suite) {
  if (suite == "gradients") return suite_gradients();
  if (suite == "sandwich") return suite_sandwich();
  if (suite == "prox") return suite_prox();
  if (suite == "rates") return suite_rates();
  if (suite == "all") {
    std::vector<CheckResult> all;
    for (const char* s : {"gradients", "sandwich", "prox", "rates"}) {
      auto v = run_check_suite(s);
      all.insert(all.end(), v.begin(), v.end());
    }
    return all;
  }
  throw ParamError("unknown check suite: " + suite);
}

}  // namespace smopt
