#include <benchmark/benchmark.h>

#include <memory>

#include "degenlab/bundle.hpp"
#include "degenlab/degiorgi.hpp"
#include "degenlab/integral.hpp"
#include "degenlab/solver.hpp"

using namespace degenlab;
using constitutive::DegeneracyProfile;

namespace {

std::shared_ptr<const constitutive::ConstitutiveBundle> power_one() {
  static const auto b = std::make_shared<const constitutive::ConstitutiveBundle>(
      constitutive::build_bundle(DegeneracyProfile::power(1.0), 1.0));
  return b;
}

solver::SolverConfig bump(double T) {
  solver::SolverConfig c;
  c.epsilon = 1e-3;
  c.T = T;
  c.g = solver::cosine_bump(0.7, 0.1, 0.5);
  return c;
}

void BM_EvalI_ExpInverse(benchmark::State& state) {
  const auto p = DegeneracyProfile::exp_inverse(1.0);
  double s = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(constitutive::eval_I(p, s));
    s = s < 0.9 ? s * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_EvalI_ExpInverse);

void BM_BuildBundle(benchmark::State& state) {
  const auto p = state.range(0) == 0 ? DegeneracyProfile::power(2.0) : DegeneracyProfile::exp_inverse(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(constitutive::build_bundle(p, 1.0));
}
BENCHMARK(BM_BuildBundle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// One implicit step per iteration: T is a single dt.
void BM_SolverStep(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto geo = solver::Geometry::radial(3, 1.0, m);
  const auto model = solver::DiffusionModel::degenerate(power_one());
  const auto cfg = bump(1.0 / m);
  for (auto _ : state) benchmark::DoNotOptimize(solver::solve(model, geo, cfg));
  state.SetComplexityN(m);
}
BENCHMARK(BM_SolverStep)->RangeMultiplier(2)->Range(100, 1600)->Complexity(benchmark::oN);

void BM_EvaluateY(benchmark::State& state) {
  const auto traj = solver::solve(solver::DiffusionModel::degenerate(power_one()),
                                  solver::Geometry::radial(3, 1.0, 200), bump(1.0));
  const degiorgi::ExcessFields fields(traj, *power_one());
  const auto params = degiorgi::params_for_radii(3, 1.0, 0.5, 0.25, power_one()->C1());
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(degiorgi::evaluate_Y(fields, params, 0.5, n));
}
BENCHMARK(BM_EvaluateY)->Arg(0)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
