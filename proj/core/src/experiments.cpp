#include "smopt/experiments.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "smopt/rng.hpp"

namespace smopt {

RegressionDataset gen_regression(int m, int n, double kappa, double p, HKind hkind,
                                 uint64_t seed) {
  if (m < 1 || n < 1) throw ParamError("gen_regression: m, n must be >= 1");
  if (kappa < 1) throw ParamError("gen_regression: kappa must be >= 1");
  if (p < 0 || p > 1) throw ParamError("gen_regression: p must be in [0,1]");

  RNGStream rng(seed);
  RegressionDataset ds;
  ds.m = m;
  ds.n = n;
  ds.kappa = kappa;
  ds.p = p;
  ds.hkind = hkind;
  ds.seed = seed;

  Matrix Q(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) Q(i, j) = rng.normal();
  ds.A = Q;
  for (int j = 0; j < n; ++j) {
    double dj = n == 1 ? 1.0 : 1.0 + j * (kappa - 1.0) / (n - 1.0);
    ds.A.col(j) *= dj;
  }

  ds.x_star.resize(n);
  for (int j = 0; j < n; ++j) ds.x_star[j] = rng.normal();

  ds.b.resize(m);
  for (int i = 0; i < m; ++i) {
    double clean = h_value(hkind, ds.A.row(i).dot(ds.x_star));
    // draw both variates unconditionally so the stream does not depend on p
    bool corrupt = rng.uniform() < p;
    double noise = rng.normal(0, 5);
    ds.b[i] = clean + (corrupt ? noise : 0.0);
  }

  ds.f_star = pairwise_sum(m,
                           [&](int i) {
                             return std::abs(h_value(hkind, ds.A.row(i).dot(ds.x_star)) - ds.b[i]);
                           }) /
              m;
  return ds;
}

namespace {

// largest eigenvalue by power iteration (A symmetric PSD)
double power_eigmax(const Matrix& A, int iters = 200) {
  RNGStream rng(12345);
  Vector v(A.rows());
  for (int i = 0; i < v.size(); ++i) v[i] = rng.normal();
  v.normalize();
  double lam = 0;
  for (int t = 0; t < iters; ++t) {
    Vector w = A * v;
    lam = v.dot(w);
    double n = w.norm();
    if (n == 0) return 0;
    v = w / n;
  }
  return lam;
}

}  // namespace

PiecewiseQuadratic gen_piecewise_quadratic(int m, int n, uint64_t seed) {
  if (m < 1 || n < 1) throw ParamError("gen_piecewise_quadratic: m, n must be >= 1");
  RNGStream rng(seed);
  PiecewiseQuadratic pq;
  pq.dim = n;
  for (int j = 0; j < m; ++j) {
    Matrix C(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) C(r, c) = rng.normal();
    Matrix Aj = C * C.transpose();
    if (j == 0) Aj += 1e-3 * Matrix::Identity(n, n);
    // symmetrize away rounding asymmetry
    pq.A.push_back(0.5 * (Aj + Aj.transpose()));
    Vector bj(n);
    for (int r = 0; r < n; ++r) bj[r] = rng.normal();
    pq.b.push_back(bj);
  }
  // smallest eigenvalue of A_1 via shifted power iteration
  double lmax = power_eigmax(pq.A[0]);
  Matrix shifted = lmax * Matrix::Identity(n, n) - pq.A[0];
  pq.eigmin_first = lmax - power_eigmax(shifted);
  return pq;
}

Vector initial_point(int n, uint64_t seed) {
  if (n < 1) throw ParamError("initial_point: n must be >= 1");
  RNGStream rng(seed, 9);
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.normal();
  return x / x.norm();
}

CompositeProblem make_problem(const RegressionDataset& ds, double ball_radius) {
  CompositeProblem p;
  p.dim = ds.n;
  p.reg = Regularizer::ball(ball_radius);
  for (int i = 0; i < ds.m; ++i) {
    SampleLoss s;
    s.a = ds.A.row(i).transpose();
    s.b = ds.b[i];
    s.hkind = ds.hkind;
    s.rho = robust_loss_modulus(s.a, ds.hkind, ball_radius);
    p.losses.push_back(std::move(s));
  }
  return p;
}

// --- file IO -----------------------------------------------------------------

namespace {

void write_vector(std::ostream& os, const Vector& v) {
  for (int i = 0; i < v.size(); ++i) os << (i ? " " : "") << format_g17(v[i]);
  os << '\n';
}

Vector read_vector(std::istream& is, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i)
    if (!(is >> v[i])) throw ParamError("dataset file: truncated vector");
  return v;
}

}  // namespace

void save_dataset(const RegressionDataset& ds, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_dataset: cannot open " + path);
  os << "SMOPT1 robust " << ds.m << ' ' << ds.n << ' ' << format_g17(ds.kappa) << ' '
     << format_g17(ds.p) << ' ' << hkind_to_string(ds.hkind) << ' ' << ds.seed << '\n';
  for (int i = 0; i < ds.m; ++i) write_vector(os, ds.A.row(i).transpose());
  write_vector(os, ds.b);
  write_vector(os, ds.x_star);
  os << format_g17(ds.f_star) << '\n';
}

void save_dataset(const PiecewiseQuadratic& pq, uint64_t seed, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_dataset: cannot open " + path);
  os << "SMOPT1 pwq " << pq.m() << ' ' << pq.dim << " 0 0 none " << seed << '\n';
  for (int j = 0; j < pq.m(); ++j) {
    for (int r = 0; r < pq.dim; ++r) write_vector(os, pq.A[j].row(r).transpose());
    write_vector(os, pq.b[j]);
  }
}

LoadedDataset load_dataset(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_dataset: cannot open " + path);
  std::string magic, kind, hk;
  int m, n;
  double kappa, p;
  uint64_t seed;
  if (!(is >> magic >> kind >> m >> n >> kappa >> p >> hk >> seed) || magic != "SMOPT1")
    throw ParamError("load_dataset: bad header in " + path);

  LoadedDataset out;
  out.kind = kind;
  out.seed = seed;
  if (kind == "robust") {
    RegressionDataset& ds = out.regression;
    ds.m = m;
    ds.n = n;
    ds.kappa = kappa;
    ds.p = p;
    ds.hkind = hkind_from_string(hk);
    ds.seed = seed;
    ds.A.resize(m, n);
    for (int i = 0; i < m; ++i) ds.A.row(i) = read_vector(is, n).transpose();
    ds.b = read_vector(is, m);
    ds.x_star = read_vector(is, n);
    if (!(is >> ds.f_star)) throw ParamError("load_dataset: missing f_star");
    double recomputed =
        pairwise_sum(m,
                     [&](int i) {
                       return std::abs(h_value(ds.hkind, ds.A.row(i).dot(ds.x_star)) - ds.b[i]);
                     }) /
        m;
    if (std::abs(recomputed - ds.f_star) > 1e-12 * std::max(1.0, std::abs(ds.f_star)))
      throw ParamError("load_dataset: stored f_star does not match recomputation");
  } else if (kind == "pwq") {
    PiecewiseQuadratic& pq = out.pwq;
    pq.dim = n;
    for (int j = 0; j < m; ++j) {
      Matrix Aj(n, n);
      for (int r = 0; r < n; ++r) Aj.row(r) = read_vector(is, n).transpose();
      pq.A.push_back(Aj);
      pq.b.push_back(read_vector(is, n));
    }
    double lmax = power_eigmax(pq.A[0]);
    pq.eigmin_first = lmax - power_eigmax(Matrix(lmax * Matrix::Identity(n, n) - pq.A[0]));
  } else {
    throw ParamError("load_dataset: unknown kind " + kind);
  }
  return out;
}

// --- runner ------------------------------------------------------------------

RunResult run_experiment(const LoadedDataset& ds, Algo algo, const std::string& smoother,
                         SolverConfig cfg) {
  RunResult out;
  if (ds.kind == "robust") {
    const RegressionDataset& reg = ds.regression;
    CompositeProblem prob = make_problem(reg, cfg.feasible_radius);
    Vector x0 = initial_point(reg.n, cfg.seed);
    if (cfg.budget == 0) cfg.budget = 400L * reg.m;
    if (cfg.stop_threshold < 0) cfg.stop_threshold = 1.5 * std::max(reg.f_star, 1e-3);
    auto f_true = [&prob](const Vector& x) { return prob.f_value(x); };

    auto make_obj = [&prob, &smoother](double eta) {
      if (smoother == "huber") return smooth_huber(prob, eta);
      if (smoother == "moreau") return smooth_moreau(prob, eta);
      throw ParamError("run_experiment: smoother must be huber or moreau for regression");
    };

    switch (algo) {
      case Algo::gm:
        out.trace = subgradient_method(prob, cfg, x0, false);
        break;
      case Algo::sgm:
        out.trace = subgradient_method(prob, cfg, x0, true);
        break;
      case Algo::ngd:
        out.trace = normalized_gd(f_true,
                                  [&prob](const Vector& x) { return prob.f_subgrad(x).subgrad; },
                                  reg.n, cfg, x0, reg.m);
        break;
      case Algo::sspg: {
        SmoothedObjective obj = make_obj(cfg.eta);
        out.trace = sspg(obj, prob.reg, cfg, f_true, x0);
        break;
      }
      case Algo::asgd_sipp: {
        if (cfg.rho_hat < 0 && !cfg.theory_stepsize) {
          // experiment convention: proximal weight gamma = sqrt(K)/alpha0
          long K = std::max(1L, cfg.budget / (cfg.max_inner * (long)reg.m));
          cfg.rho_hat = std::sqrt((double)K) / cfg.alpha0;
        }
        cfg.adapt = !cfg.theory_stepsize;
        out.trace = sipp(make_obj, prob.reg, cfg, SippInner::asgd, f_true, x0);
        break;
      }
      case Algo::agls_sipp: {
        if (cfg.rho_hat < 0 && !cfg.theory_stepsize) {
          long K = std::max(1L, cfg.budget / (cfg.max_inner * (long)reg.m));
          cfg.rho_hat = std::sqrt((double)K) / cfg.alpha0;
        }
        cfg.adapt = !cfg.theory_stepsize;
        out.trace = agls_sipp(make_obj, prob.reg, cfg, f_true, x0);
        break;
      }
      case Algo::agls:
        throw ParamError("run_experiment: agls needs a convex objective; use agls-sipp here");
    }
  } else {  // pwq
    const PiecewiseQuadratic& pq = ds.pwq;
    Vector x0 = initial_point(pq.dim, cfg.seed);
    if (cfg.budget == 0) cfg.budget = 400L;
    auto f_true = [&pq](const Vector& x) { return pq.value(x); };
    Regularizer r = Regularizer::zero();
    switch (algo) {
      case Algo::ngd:
        out.trace = normalized_gd(f_true, [&pq](const Vector& x) { return pq.subgrad(x); },
                                  pq.dim, cfg, x0, 1);
        break;
      case Algo::sspg: {
        SmoothedObjective obj = smooth_softmax(pq, cfg.eta);
        out.trace = sspg(obj, r, cfg, f_true, x0);
        break;
      }
      case Algo::agls_sipp: {
        auto make_obj = [&pq](double eta) { return smooth_softmax(pq, eta); };
        if (cfg.rho_hat < 0) {
          SmoothedObjective probe = smooth_softmax(pq, cfg.eta);
          cfg.rho_hat = 2 * probe.meta.rho_bar;
        }
        out.trace = agls_sipp(make_obj, r, cfg, f_true, x0);
        break;
      }
      default:
        throw ParamError("run_experiment: unsupported algo for pwq dataset");
    }
  }
  out.summary = {out.trace.iterations(), out.trace.oracles(), out.trace.final_f(),
                 out.trace.reason};
  return out;
}

std::vector<SweepRow> stepsize_sweep(const LoadedDataset& ds, Algo algo,
                                     const std::string& smoother, const SolverConfig& base,
                                     const std::vector<double>& grid,
                                     const std::vector<uint64_t>& seeds) {
  if (grid.empty()) throw ParamError("stepsize_sweep: empty grid");
  std::vector<SweepRow> rows;
  for (double a0 : grid) {
    for (uint64_t seed : seeds) {
      SolverConfig cfg = base;
      cfg.alpha0 = a0;
      cfg.seed = seed;
      RunResult r = run_experiment(ds, algo, smoother, cfg);
      rows.push_back({a0, seed, r.summary.iters, r.summary.oracles, r.summary.final_f,
                      r.summary.reason});
    }
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << "alpha0,seed,iters,oracles,final_f,reason\n";
  for (const SweepRow& r : rows)
    os << format_g17(r.alpha0) << ',' << r.seed << ',' << r.iters << ',' << r.oracles << ','
       << format_g17(r.final_f) << ',' << r.reason << '\n';
}

}  // namespace smopt
