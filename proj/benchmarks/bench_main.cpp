#include <benchmark/benchmark.h>

#include "smopt/agls.hpp"
#include "smopt/experiments.hpp"
#include "smopt/smoothing.hpp"

using namespace smopt;

static void BM_HuberGrad(benchmark::State& state) {
  RegressionDataset ds = gen_regression((int)state.range(0), 20, 10, 0.2, HKind::quad, 1);
  CompositeProblem p = make_problem(ds);
  SmoothedObjective obj = smooth_huber(p, 0.8);
  Vector x = initial_point(20, 2);
  for (auto _ : state) benchmark::DoNotOptimize(obj.grad(x));
}
BENCHMARK(BM_HuberGrad)->Arg(50)->Arg(200);

static void BM_MoreauGrad(benchmark::State& state) {
  RegressionDataset ds = gen_regression((int)state.range(0), 20, 10, 0.2, HKind::quad, 1);
  CompositeProblem p = make_problem(ds);
  SmoothedObjective obj = smooth_moreau(p, 0.8);
  Vector x = initial_point(20, 2);
  for (auto _ : state) benchmark::DoNotOptimize(obj.grad(x));
}
BENCHMARK(BM_MoreauGrad)->Arg(50)->Arg(200);

static void BM_SoftmaxGrad(benchmark::State& state) {
  PiecewiseQuadratic pq = gen_piecewise_quadratic(10, (int)state.range(0), 1);
  SmoothedObjective obj = smooth_softmax(pq, 0.8);
  Vector x = initial_point((int)state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(obj.grad(x));
}
BENCHMARK(BM_SoftmaxGrad)->Arg(20)->Arg(50);

static void BM_AglsQuadratic(benchmark::State& state) {
  const int d = (int)state.range(0);
  RNGStream rng(7);
  Matrix G(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) G(i, j) = rng.normal();
  Matrix H = G * G.transpose() / d + Matrix::Identity(d, d);
  Vector c(d);
  for (int i = 0; i < d; ++i) c[i] = rng.normal();
  AglsProblem prob;
  prob.g = [&](const Vector& x) { return 0.5 * x.dot(H * x) - c.dot(x); };
  prob.grad_g = [&](const Vector& x) -> Vector { return H * x - c; };
  prob.prox_step = [](const Vector& cc, const Vector& z, double gm) -> Vector {
    return z - cc / gm;
  };
  Vector x0 = Vector::Zero(d);
  AglsConfig cfg;
  cfg.max_iter = 50;
  for (auto _ : state) benchmark::DoNotOptimize(agls(prob, x0, cfg));
}
BENCHMARK(BM_AglsQuadratic)->Arg(50)->Arg(200);

BENCHMARK_MAIN();
