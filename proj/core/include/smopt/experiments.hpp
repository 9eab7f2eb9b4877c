#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "smopt/problem.hpp"
#include "smopt/solvers.hpp"
#include "smopt/trace.hpp"

namespace smopt {

struct RegressionDataset {
  Matrix A;
  Vector b;
  HKind hkind = HKind::quad;
  Vector x_star;
  double kappa = 1;
  double p = 0;
  uint64_t seed = 0;
  double f_star = 0;
  int m = 0, n = 0;
};

// A = Q D with Q_{ij} ~ N(0,1), D_jj evenly spaced on [1, kappa];
// b_i = h(<a_i, x*>) + theta_i eps_i, theta_i ~ Bernoulli(p), eps_i ~ N(0, 25).
RegressionDataset gen_regression(int m, int n, double kappa, double p, HKind hkind, uint64_t seed);

// A_j = C C^T with C_{ij} ~ N(0,1); A_1 gets a 1e-3 I shift; b_j ~ N(0, I).
PiecewiseQuadratic gen_piecewise_quadratic(int m, int n, uint64_t seed);

// x0 = xhat/||xhat||, xhat ~ N(0, I_n)
Vector initial_point(int n, uint64_t seed);

CompositeProblem make_problem(const RegressionDataset& ds, double ball_radius = 1e5);

// Dataset file IO ("SMOPT1 <kind> <m> <n> <kappa> <p> <hkind> <seed>" header,
// 17-significant-digit floats; regression files carry f_star on a final line).
void save_dataset(const RegressionDataset& ds, const std::string& path);
void save_dataset(const PiecewiseQuadratic& pq, uint64_t seed, const std::string& path);
struct LoadedDataset {
  std::string kind;  // "robust" | "pwq"
  RegressionDataset regression;
  PiecewiseQuadratic pwq;
  uint64_t seed = 0;
};
LoadedDataset load_dataset(const std::string& path);

struct Summary {
  long iters = 0;
  long oracles = 0;
  double final_f = 0;
  std::string reason;
};

struct RunResult {
  Trace trace;
  Summary summary;
};

// Runs one algorithm on a dataset with the stopping rule
// f(x^k) <= 1.5 max{f(x*), 1e-3} and budget 400 m unless overridden.
RunResult run_experiment(const LoadedDataset& ds, Algo algo, const std::string& smoother,
                         SolverConfig cfg);

struct SweepRow {
  double alpha0;
  uint64_t seed;
  long iters;
  long oracles;
  double final_f;
  std::string reason;
};

// Grid x seed sweep; non-converged cells report the budget-capped iteration count.
std::vector<SweepRow> stepsize_sweep(const LoadedDataset& ds, Algo algo,
                                     const std::string& smoother, const SolverConfig& base,
                                     const std::vector<double>& grid,
                                     const std::vector<uint64_t>& seeds);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os);

}  // namespace smopt
