#include <benchmark/benchmark.h>

#include "covertbf/conic/solver.hpp"
#include "covertbf/covert_metrics.hpp"
#include "covertbf/experiment.hpp"
#include "covertbf/perfect_designs.hpp"
#include "covertbf/robust_designs.hpp"

using namespace covertbf;

namespace {

Scene bench_scene(int n, std::optional<EllipsoidError> err = std::nullopt) {
  SceneConfig cfg;
  cfg.n_antennas = n;
  cfg.csi_error = std::move(err);
  return experiment_scene(cfg, 42, 0);
}

void BM_MiFeasibilitySolve(benchmark::State& state) {
  const Scene s = bench_scene(static_cast<int>(state.range(0)));
  const auto p = mi_feasibility_problem(s, 0.5 * radar_sinr_bound(s), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(conic::solve(p));
}
BENCHMARK(BM_MiFeasibilitySolve)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_RobustFeasibilitySolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Scene s = bench_scene(n, EllipsoidError::identity(n, 0.005));
  const RobustCovertSpec spec{0.05, KlDirection::kP0P1, EllipsoidError::identity(n, 0.005), s.h_warden_est};
  const auto p = robust_mi_feasibility_problem(s, spec, 0.5 * radar_sinr_bound(s), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(conic::solve(p));
}
BENCHMARK(BM_RobustFeasibilitySolve)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_MaximizeMiSdr(benchmark::State& state) {
  const Scene s = bench_scene(5);
  for (auto _ : state) benchmark::DoNotOptimize(maximize_mi_sdr(s, 1.0));
}
BENCHMARK(BM_MaximizeMiSdr)->Unit(benchmark::kMillisecond);

void BM_MaximizeMiRobust(benchmark::State& state) {
  const Scene s = bench_scene(5, EllipsoidError::identity(5, 0.005));
  const RobustCovertSpec spec{0.05, KlDirection::kP0P1, EllipsoidError::identity(5, 0.005), s.h_warden_est};
  for (auto _ : state) benchmark::DoNotOptimize(maximize_mi_robust(s, spec, 10.0));
}
BENCHMARK(BM_MaximizeMiRobust)->Unit(benchmark::kMillisecond);

void BM_WorstCaseRatio(benchmark::State& state) {
  const Scene s = bench_scene(5, EllipsoidError::identity(5, 0.005));
  const RobustCovertSpec spec{0.05, KlDirection::kP0P1, EllipsoidError::identity(5, 0.005), s.h_warden_est};
  const BeamformerPair pair{s.h_target / s.h_target.norm() * 3.0, s.h_bob / s.h_bob.norm()};
  for (auto _ : state) benchmark::DoNotOptimize(worst_case_ratio(pair, spec, s.sigma2_warden));
}
BENCHMARK(BM_WorstCaseRatio);

void BM_DetectionSim(benchmark::State& state) {
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(empirical_detection_sim({1.0, 2.0}, 100000, rng));
}
BENCHMARK(BM_DetectionSim)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
