#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "smopt/agls.hpp"
#include "smopt/experiments.hpp"
#include "smopt/problem.hpp"
#include "smopt/rng.hpp"
#include "smopt/smoothing.hpp"
#include "smopt/solvers.hpp"
#include "smopt/stationarity.hpp"
#include "smopt/trace.hpp"

using namespace smopt;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector x((long)v.size());
  int i = 0;
  for (double d : v) x[i++] = d;
  return x;
}

// golden-section minimization of a scalar function on [lo, hi]
template <class F>
double golden_min(F&& f, double lo, double hi, int iters = 120) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// brute-force 1-D prox of t -> pen(t) + (gamma/2) t^2 ||a||^2 along x + t a,
// refined by golden section around the best coarse grid cell
template <class Pen>
double grid_then_golden(Pen&& pen, double span, double step) {
  double best_t = 0, best_v = std::numeric_limits<double>::infinity();
  for (double t = -span; t <= span; t += step) {
    double v = pen(t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  return golden_min(pen, best_t - 2 * step, best_t + 2 * step);
}

}  // namespace

TEST_CASE("rng determinism and substreams") {
  RNGStream a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  RNGStream c(7);
  RNGStream s1 = c.substream(1), s2 = c.substream(2);
  CHECK(s1.next_u64() != s2.next_u64());
  // substreams do not depend on draws from the parent afterwards
  RNGStream d(7);
  (void)d.next_u64();
  CHECK(RNGStream(7).substream(5).next_u64() == RNGStream(7).substream(5).next_u64());
}

TEST_CASE("format_g17 round-trips doubles exactly") {
  RNGStream rng(1);
  for (int i = 0; i < 200; ++i) {
    double v = std::exp(rng.uniform(-30.0, 30.0)) * (rng.uniform() < 0.5 ? -1 : 1);
    double back = std::strtod(format_g17(v).c_str(), nullptr);
    CHECK(back == v);
  }
  CHECK(std::strtod(format_g17(0.1).c_str(), nullptr) == 0.1);
}

TEST_CASE("h kernels match finite differences") {
  RNGStream rng(2);
  for (HKind k : {HKind::quad, HKind::quintic, HKind::exp}) {
    for (int i = 0; i < 30; ++i) {
      double z = rng.uniform(-2.0, 2.0);
      double h = 1e-6;
      double fd1 = (h_value(k, z + h) - h_value(k, z - h)) / (2 * h);
      double fd2 = (h_deriv(k, z + h) - h_deriv(k, z - h)) / (2 * h);
      CHECK(std::abs(h_deriv(k, z) - fd1) <= 1e-5 * std::max(1.0, std::abs(fd1)));
      CHECK(std::abs(h_second(k, z) - fd2) <= 1e-5 * std::max(1.0, std::abs(fd2)));
    }
  }
  CHECK(h_value(HKind::quad, 3.0) == 9.0);
  CHECK(h_value(HKind::quintic, 1.0) == 3.0);  // 1 + 1 + 1
  CHECK(h_value(HKind::exp, 0.0) == 11.0);     // e^0 + 10
}

TEST_CASE("robust loss subgradient: value, direction, sign(0) = 0") {
  Vector a = vec({1.0, -2.0});
  Vector x = vec({0.5, 0.25});
  double z = a.dot(x);  // 0
  SubgradResult r = subgrad_robust_loss(a, 3.0, HKind::quad, x);
  CHECK(r.value == doctest::Approx(std::abs(z * z - 3.0)).epsilon(1e-15));
  CHECK((r.subgrad - (-1.0) * h_deriv(HKind::quad, z) * a).norm() <= 1e-15);
  // exact kink: h(<a,x>) = b  ->  chosen subgradient is 0
  SubgradResult k = subgrad_robust_loss(a, 0.0, HKind::quad, x);
  CHECK(k.subgrad.norm() == 0.0);
}

TEST_CASE("weak-convexity modulus dominates sampled curvature on the ball") {
  RNGStream rng(3);
  for (HKind k : {HKind::quad, HKind::quintic}) {
    Vector a = vec({0.7, -0.3, 1.1});
    double M = 2.0;
    double rho = robust_loss_modulus(a, k, M);
    if (k == HKind::quad) CHECK(rho == doctest::Approx(2 * a.squaredNorm()).epsilon(1e-15));
    for (int i = 0; i < 200; ++i) {
      Vector x(3);
      for (int j = 0; j < 3; ++j) x[j] = rng.uniform(-1.0, 1.0);
      if (x.norm() > M) x *= M / x.norm();
      double curv = a.squaredNorm() * std::abs(h_second(k, a.dot(x)));
      CHECK(rho >= curv - 1e-9);
    }
  }
}

TEST_CASE("huber kernel closed form") {
  double eta = 0.4;
  HuberResult in = huber(0.1, eta);
  CHECK(in.value == doctest::Approx(0.1 * 0.1 / (2 * eta)).epsilon(1e-15));
  CHECK(in.deriv == doctest::Approx(0.1 / eta).epsilon(1e-15));
  HuberResult out = huber(-1.3, eta);
  CHECK(out.value == doctest::Approx(1.3 - eta / 2).epsilon(1e-15));
  CHECK(out.deriv == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("softmax smoothing equals naive log-sum-exp with simplex weights") {
  std::vector<double> vals = {0.3, -1.2, 0.9};
  std::vector<Vector> grads = {vec({1.0, 0.0}), vec({0.0, 1.0}), vec({1.0, 1.0})};
  double eta = 0.7;
  SoftmaxResult r = softmax_smooth(vals, grads, eta);
  double naive = 0;
  for (double v : vals) naive += std::exp(v / eta);
  naive = eta * std::log(naive);
  CHECK(r.value == doctest::Approx(naive).epsilon(1e-14));
  CHECK(r.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
  Vector g = Vector::Zero(2);
  for (int j = 0; j < 3; ++j) g += r.weights[j] * grads[j];
  CHECK((r.gradient - g).norm() <= 1e-14);
  // max bracketing: max v <= value <= max v + eta log m
  double mx = *std::max_element(vals.begin(), vals.end());
  CHECK(r.value >= mx);
  CHECK(r.value <= mx + eta * std::log(3.0) + 1e-14);
}

TEST_CASE("moreau_params formulas") {
  MoreauParams p = moreau_params(2.0, 0.1);
  CHECK(p.beta == 2.0 + 10.0);
  CHECK(p.rho_bar == 4.0);
  CHECK(p.L_eta == 4.0 + 10.0);
  MoreauParams q = moreau_params(3.0, 1.0);
  CHECK(q.beta == 3.0 + 3.0);  // max{1/eta, rho} = rho
}

TEST_CASE("moreau envelope of |t| is the huber function") {
  // f(y) = |y|, prox = soft threshold by 1/beta; envelope = huber with eta = 1/beta
  double beta = 2.5;
  auto f = [](const Vector& y) { return std::abs(y[0]); };
  auto prox_f = [beta](const Vector& x) -> Vector {
    double t = 1.0 / beta, v = x[0];
    return vec({v > t ? v - t : (v < -t ? v + t : 0.0)});
  };
  RNGStream rng(4);
  for (int i = 0; i < 50; ++i) {
    Vector x = vec({rng.uniform(-2.0, 2.0)});
    MoreauEnvelopeResult r = moreau_envelope(f, prox_f, beta, x);
    HuberResult h = huber(x[0], 1.0 / beta);
    CHECK(r.value == doctest::Approx(h.value).epsilon(1e-13));
    CHECK(r.gradient[0] == doctest::Approx(h.deriv).epsilon(1e-12));
  }
}

TEST_CASE("prox_abs_quadratic worked instance and grid oracle") {
  // |y1^2 - 1|, xbar = 2 e1, gamma = 10: smooth-branch stationarity 12 y - 20 = 0
  Vector a = vec({1.0, 0.0});
  Vector q = Vector::Zero(2);
  Vector xbar = vec({2.0, 0.0});
  ProxAbsQuadResult r = prox_abs_quadratic(a, q, -1.0, xbar, 10.0);
  CHECK(r.prox_point[0] == doctest::Approx(5.0 / 3.0).epsilon(1e-10));
  CHECK(r.prox_point[1] == doctest::Approx(0.0).epsilon(1e-12));
  // attained objective: |25/9 - 1| + 5 (5/3 - 2)^2 = 16/9 + 5/9 = 7/3
  CHECK(r.envelope_value == doctest::Approx(7.0 / 3.0).epsilon(1e-10));
  // independent 1-D oracle
  auto pen = [&](double y1) { return std::abs(y1 * y1 - 1.0) + 5.0 * (y1 - 2.0) * (y1 - 2.0); };
  double y_ref = grid_then_golden(pen, 4.0, 1e-3);
  CHECK(r.prox_point[0] == doctest::Approx(y_ref).epsilon(1e-8));
  CHECK(r.envelope_value == doctest::Approx(pen(y_ref)).epsilon(1e-10));
}

TEST_CASE("prox_linear agrees with the dual prox on random |quad| instances") {
  RNGStream rng(5);
  for (int t = 0; t < 20; ++t) {
    int n = 3;
    Vector a(n), xbar(n);
    for (int i = 0; i < n; ++i) a[i] = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < n; ++i) xbar[i] = rng.uniform(-1.5, 1.5);
    if (a.norm() < 0.3) a *= 0.3 / a.norm();
    double b = rng.uniform(-2.0, 2.0);
    double gamma = 2 * a.squaredNorm() * 2.0 + 0.5;
    Vector q = Vector::Zero(n);
    Vector y_dual = prox_abs_quadratic(a, q, -b, xbar, gamma).prox_point;
    auto F = [&](const Vector& y) { double z = a.dot(y); return z * z - b; };
    auto gF = [&](const Vector& y) -> Vector { return 2 * a.dot(y) * a; };
    Vector y_pl = prox_linear(F, gF, xbar, gamma, 1e-12, 500);
    CHECK((y_dual - y_pl).norm() <= 1e-6);
  }
}

TEST_CASE("generalized gradient vanishes at a prox fixed point") {
  // r = ball indicator, f_eta smooth: at the unconstrained minimizer G = 0
  CompositeProblem p;
  p.dim = 2;
  SampleLoss s;
  s.a = vec({1.0, 1.0});
  s.b = 0.0;
  s.hkind = HKind::quad;
  s.rho = 2 * s.a.squaredNorm();
  p.losses.push_back(s);
  p.reg = Regularizer::ball(10.0);
  SmoothedObjective obj = smooth_huber(p, 0.5);
  GeneralizedGradient g0 = generalized_gradient(obj, p.reg, vec({0.0, 0.0}), 0.1);
  CHECK(g0.G.norm() <= 1e-12);  // grad f_eta(0) = 0, prox is identity inside the ball
  // generic point: G = (x - prox(x - gamma grad)) / gamma against a manual computation
  Vector x = vec({0.3, -0.2});
  double gamma = 0.25;
  GeneralizedGradient g1 = generalized_gradient(obj, p.reg, x, gamma);
  Vector manual = (x - prox(p.reg, x - gamma * obj.grad(x), gamma)) / gamma;
  CHECK((g1.G - manual).norm() <= 1e-14);
  CHECK((x - gamma * g1.G - g1.xhat).norm() <= 1e-14);
}

TEST_CASE("stationarity conversion formulas") {
  double eps = 0.1, R = 0.05, rho = 1.0, rho_hat = 3.0, gamma = 0.2, L = 7.0;
  Stationarity s =
      convert_stationarity(ConvertMode::generalized_gradient, eps, R, rho, 2.0, rho_hat, gamma, L);
  double d = std::sqrt(2 * R / (rho_hat - rho)) + gamma * eps;
  CHECK(s.delta == doctest::Approx(d).epsilon(1e-15));
  CHECK(s.eps_prime ==
        doctest::Approx((1 + gamma * L) * eps + rho_hat * std::sqrt(2 * R / (rho_hat - rho)))
            .epsilon(1e-15));
  Stationarity m = convert_stationarity(ConvertMode::moreau, eps, R, rho, 2.0, rho_hat, gamma, L);
  CHECK(m.delta == doctest::Approx(std::sqrt(2 * R / (rho_hat - rho)) + eps / rho_hat).epsilon(1e-15));
  CHECK(m.eps_prime ==
        doctest::Approx(rho_hat * std::sqrt(2 * R / (rho_hat - rho)) + eps).epsilon(1e-15));
  CHECK(choose_eta(0.3) == doctest::Approx(0.09).epsilon(1e-15));
}

TEST_CASE("sipp inner iteration count formula, incl. worked value 29") {
  CHECK(sipp_inner_iterations(0, 1, 0.01, 1, 2, 0, 0.1) == 29);  // ceil(2 sqrt(204))
  RNGStream rng(6);
  for (int t = 0; t < 50; ++t) {
    double B = rng.uniform(0.0, 5.0), L = rng.uniform(0.1, 4.0), eta = rng.uniform(0.01, 1.0);
    double rb = rng.uniform(0.5, 3.0), rh = rb + rng.uniform(0.1, 3.0);
    double sg = rng.uniform(0.0, 2.0), eps = rng.uniform(0.05, 0.5);
    double t1 = 2 * std::sqrt(2 * (B + L / eta + 2 * rb) / rb);
    double t2 = 8 * sg * sg / ((rh - rb) * eps * eps);
    CHECK(sipp_inner_iterations(B, L, eta, rb, rh, sg, eps) ==
          (long)std::ceil(std::max(t1, t2)));
  }
}

TEST_CASE("agls second-iteration stepsize is the golden ratio conjugate when mu = 0") {
  // quadratic with Hessian L I and L0 = 3L: the search settles at Lhat = 1.5 L
  // (strictly above L, so the descent test is never borderline), and alpha_2
  // solves a^2 + a - 1 = 0
  double L = 4.0;
  AglsProblem prob;
  prob.g = [L](const Vector& x) { return 0.5 * L * x.squaredNorm(); };
  prob.grad_g = [L](const Vector& x) -> Vector { return L * x; };
  prob.prox_step = [](const Vector& c, const Vector& z, double gm) -> Vector {
    return z - c / gm;
  };
  AglsConfig cfg;
  cfg.L0 = 3 * L;
  cfg.max_iter = 5;
  AglsResult res = agls(prob, vec({1.0, -2.0}), cfg);
  REQUIRE(res.iters.size() >= 2);
  CHECK(res.iters[0].alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.iters[1].alpha == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("agls converges on a strongly convex quadratic") {
  Matrix H(3, 3);
  H << 4, 1, 0, 1, 3, 1, 0, 1, 2;
  Vector c = vec({1.0, -1.0, 0.5});
  Vector xstar = H.ldlt().solve(c);
  AglsProblem prob;
  prob.g = [&](const Vector& x) { return 0.5 * x.dot(H * x) - c.dot(x); };
  prob.grad_g = [&](const Vector& x) -> Vector { return H * x - c; };
  prob.prox_step = [](const Vector& cc, const Vector& z, double gm) -> Vector {
    return z - cc / gm;
  };
  AglsConfig cfg;
  cfg.max_iter = 300;
  AglsResult res = agls(prob, vec({5.0, 5.0, 5.0}), cfg);
  CHECK((res.y - xstar).norm() <= 1e-6);
  // accelerated_fixed with the exact L reaches the 2L/(T+1)^2 envelope
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  double Lmax = es.eigenvalues().maxCoeff();
  AglsProblem pi_only = prob;
  Vector x0 = vec({5.0, 5.0, 5.0});
  for (int T : {10, 50, 200}) {
    Vector yT = accelerated_fixed(prob.grad_g, pi_only, x0, 0.0, Lmax, T);
    double gap = prob.g(yT) - prob.g(xstar);
    CHECK(gap <= 2 * Lmax / std::pow(T + 1.0, 2) * (x0 - xstar).squaredNorm() + 1e-12);
  }
}

TEST_CASE("adapt_subproblem_heuristics") {
  AdaptResult r = adapt_subproblem_heuristics(100.0, 0.8, 7, 4, 0.64);
  CHECK(r.changed);
  CHECK(r.gamma == 50.0);
  CHECK(r.eta == doctest::Approx(0.16).epsilon(1e-15));
  AdaptResult s = adapt_subproblem_heuristics(15.0, 0.8, 7, 2, 0.64);
  CHECK(s.gamma == 10.0);  // floor
  AdaptResult t = adapt_subproblem_heuristics(100.0, 0.8, 6, 2, 0.64);
  CHECK_FALSE(t.changed);
}

TEST_CASE("trace keeps oracle counts strictly increasing; csv header fixed") {
  Trace tr;
  tr.append({0, 5, 1.0, 1.0, 0, 0, 0, 0, 0, ""});
  tr.append({1, 5, 0.9, 0.9, 0, 0, 0, 0, 0, ""});
  CHECK(tr.rows[1].oracle_count == 6);
  std::ostringstream os;
  tr.write_csv(os);
  std::string head = os.str().substr(0, os.str().find('\n'));
  CHECK(head == "k,oracle_count,f_true,phi_eta,gen_grad_norm,moreau_surrogate,step,Lhat,ls_steps,reason");
}

TEST_CASE("regularizer prox solves its own subproblem") {
  RNGStream rng(8);
  for (int t = 0; t < 20; ++t) {
    Vector x = vec({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
    double gamma = rng.uniform(0.1, 2.0);
    Regularizer l1 = Regularizer::l1(0.7);
    Vector y = prox(l1, x, gamma);
    // subgradient optimality per coordinate
    for (int i = 0; i < 2; ++i) {
      double g = (y[i] - x[i]) / gamma;
      if (y[i] != 0) CHECK(std::abs(g + 0.7 * (y[i] > 0 ? 1 : -1)) <= 1e-12);
      else CHECK(std::abs(g) <= 0.7 + 1e-12);
    }
    Regularizer ball = Regularizer::ball(1.0);
    Vector z = prox(ball, x, gamma);
    CHECK(z.norm() <= 1.0 + 1e-12);
    if (x.norm() <= 1.0) CHECK((z - x).norm() == 0.0);
  }
}

TEST_CASE("combinators: sum, minibatch full batch, linear precomposition") {
  RegressionDataset ds = gen_regression(6, 3, 2, 0.0, HKind::quad, 21);
  CompositeProblem p = make_problem(ds);
  SmoothedObjective h1 = smooth_huber(p, 0.5), h2 = smooth_moreau(p, 0.5);
  SmoothedObjective s = combine_sum({{h1, 0.3}, {h2, 0.7}});
  Vector x = vec({0.2, -0.4, 0.1});
  CHECK(s.value(x) == doctest::Approx(0.3 * h1.value(x) + 0.7 * h2.value(x)).epsilon(1e-14));
  CHECK((s.grad(x) - (0.3 * h1.grad(x) + 0.7 * h2.grad(x))).norm() <= 1e-14);

  MinibatchOracle mb = combine_minibatch(h1, h1.num_samples);
  RNGStream rng(9);
  // full-size minibatch is an unbiased estimate; with batch == m and uniform
  // sampling it need not equal the exact gradient, but its expectation does.
  Vector acc = Vector::Zero(3);
  int reps = 4000;
  for (int i = 0; i < reps; ++i) acc += mb.grad(x, rng);
  CHECK((acc / reps - h1.grad(x)).norm() <= 0.15 * std::max(1.0, h1.grad(x).norm()));

  Matrix A(3, 2);
  A << 1, 0.5, -0.3, 1.2, 0.7, -0.1;
  SmoothedObjective pc = precompose_linear(h1, A);
  Vector u = vec({0.3, -0.6});
  CHECK(pc.value(u) == doctest::Approx(h1.value(A * u)).epsilon(1e-14));
  CHECK((pc.grad(u) - A.transpose() * h1.grad(A * u)).norm() <= 1e-13);
}

TEST_CASE("dataset save/load round-trip is exact") {
  RegressionDataset ds = gen_regression(8, 4, 3, 0.25, HKind::quintic, 33);
  std::string path = "/tmp/smopt_unit_ds.txt";
  save_dataset(ds, path);
  LoadedDataset ld = load_dataset(path);
  CHECK(ld.kind == "robust");
  CHECK(ld.regression.m == 8);
  CHECK(ld.regression.n == 4);
  CHECK(ld.regression.hkind == HKind::quintic);
  CHECK((ld.regression.A - ds.A).norm() == 0.0);
  CHECK((ld.regression.b - ds.b).norm() == 0.0);
  CHECK((ld.regression.x_star - ds.x_star).norm() == 0.0);
  CHECK(ld.regression.f_star == ds.f_star);

  PiecewiseQuadratic pq = gen_piecewise_quadratic(3, 4, 34);
  save_dataset(pq, 34, "/tmp/smopt_unit_pq.txt");
  LoadedDataset lq = load_dataset("/tmp/smopt_unit_pq.txt");
  CHECK(lq.kind == "pwq");
  for (int j = 0; j < 3; ++j) {
    CHECK((lq.pwq.A[j] - pq.A[j]).norm() == 0.0);
    CHECK((lq.pwq.b[j] - pq.b[j]).norm() == 0.0);
  }
}

TEST_CASE("generator matches its documented distribution") {
  RegressionDataset ds = gen_regression(200, 6, 4, 0.3, HKind::quad, 55);
  // column norms grow with the arithmetic D_jj on [1, kappa]
  double first = ds.A.col(0).norm(), last = ds.A.col(5).norm();
  CHECK(last > 2.5 * first);  // ratio targets kappa = 4 with sampling noise
  // f_star equals the mean corruption magnitude at the planted point
  double direct = 0;
  for (int i = 0; i < ds.m; ++i)
    direct += std::abs(h_value(HKind::quad, ds.A.row(i).dot(ds.x_star)) - ds.b[i]);
  CHECK(ds.f_star == doctest::Approx(direct / ds.m).epsilon(1e-12));
  // roughly p fraction corrupted
  int corrupted = 0;
  for (int i = 0; i < ds.m; ++i)
    if (std::abs(h_value(HKind::quad, ds.A.row(i).dot(ds.x_star)) - ds.b[i]) > 1e-9) ++corrupted;
  CHECK(corrupted >= 30);
  CHECK(corrupted <= 90);
  CHECK(initial_point(6, 3).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solvers make progress on a small convex instance") {
  RegressionDataset ds = gen_regression(20, 4, 1, 0.0, HKind::quad, 77);
  LoadedDataset ld;
  ld.kind = "robust";
  ld.regression = ds;
  SolverConfig cfg;
  cfg.seed = 1;
  for (Algo a : {Algo::gm, Algo::sgm, Algo::sspg, Algo::asgd_sipp}) {
    SolverConfig c = cfg;
    if (a == Algo::sgm) c.batch = 4;
    c.alpha0 = 1.0;
    RunResult r = run_experiment(ld, a, "huber", c);
    CHECK(r.trace.rows.front().f_true > r.summary.final_f);
    CHECK(r.summary.final_f <= 0.5 * r.trace.rows.front().f_true);
    CHECK(r.summary.oracles <= 400L * 20 + 20 * 10);  // budget plus one outer overshoot
  }
}

TEST_CASE("run_experiment rejects plain agls on nonconvex data") {
  RegressionDataset ds = gen_regression(6, 3, 1, 0.0, HKind::quad, 78);
  LoadedDataset ld;
  ld.kind = "robust";
  ld.regression = ds;
  SolverConfig cfg;
  CHECK_THROWS_AS(run_experiment(ld, Algo::agls, "huber", cfg), ParamError);
}

TEST_CASE("normalized gd steps have unit direction scale") {
  auto f = [](const Vector& x) { return std::abs(x[0]) + 2 * std::abs(x[1]); };
  auto sg = [](const Vector& x) -> Vector {
    return vec({x[0] > 0 ? 1.0 : (x[0] < 0 ? -1.0 : 0.0),
                x[1] > 0 ? 2.0 : (x[1] < 0 ? -2.0 : 0.0)});
  };
  SolverConfig cfg;
  cfg.alpha0 = 0.5;
  cfg.budget = 200;
  cfg.seed = 2;
  Trace tr = normalized_gd(f, sg, 2, cfg, vec({3.0, -2.0}));
  CHECK(tr.final_f() < f(vec({3.0, -2.0})));
}

TEST_CASE("algo and hkind string round-trips") {
  for (Algo a : {Algo::gm, Algo::sgm, Algo::ngd, Algo::sspg, Algo::asgd_sipp, Algo::agls,
                 Algo::agls_sipp})
    CHECK(algo_from_string(algo_to_string(a)) == a);
  for (HKind h : {HKind::quad, HKind::quintic, HKind::exp})
    CHECK(hkind_from_string(hkind_to_string(h)) == h);
  CHECK_THROWS_AS(algo_from_string("nope"), ParamError);
}
