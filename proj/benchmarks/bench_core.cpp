#include <benchmark/benchmark.h>

#include <filesystem>

#include "mdi/problem_file.hpp"
#include "mdi/sampling.hpp"
#include "mdi/shapes.hpp"
#include "mdi/solver.hpp"
#include "mdi/verifier.hpp"
#include "mdi/vladimirov.hpp"

namespace {

mdi::ProblemFile problem(const char* stem) {
  return mdi::load_problem(std::filesystem::path(MDI_PROBLEMS_DIR) / (std::string(stem) + ".json"));
}

// Regular polygon with `faces` sides around the origin.
mdi::Polyhedron polygon(int faces) {
  mdi::Polyhedron p;
  for (int k = 0; k < faces; ++k) {
    const double a = 2.0 * 3.14159265358979323846 * k / faces;
    mdi::Point n(2);
    n << std::cos(a), std::sin(a);
    p.faces.push_back({-n, -1.0});  // n.x <= 1
  }
  return p;
}

void BM_DykstraProjection(benchmark::State& state) {
  const mdi::Shape shape = polygon(static_cast<int>(state.range(0)));
  mdi::Rng rng(1);
  std::vector<mdi::Point> xs;
  for (int k = 0; k < 256; ++k) xs.push_back(mdi::gaussian_point(rng, 2, 3.0));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mdi::project(shape, xs[k++ % xs.size()]));
  }
}
BENCHMARK(BM_DykstraProjection)->Arg(3)->Arg(8)->Arg(32);

void BM_SchemeLevel(benchmark::State& state, const char* stem) {
  const mdi::ProblemFile f = problem(stem);
  const double eps = std::ldexp(0.1, -static_cast<int>(state.range(0)));
  const mdi::Partition part = mdi::build_partition(f.problem->rho(), eps, f.problem->horizon());
  const mdi::AprioriConstants k = mdi::a_priori_bounds(*f.problem);
  for (auto _ : state) benchmark::DoNotOptimize(mdi::run_scheme(f.problem, part, k));
  state.counters["cells"] = static_cast<double>(part.cells());
}
BENCHMARK_CAPTURE(BM_SchemeLevel, exponential, "identity_exponential")->DenseRange(2, 8, 3);
BENCHMARK_CAPTURE(BM_SchemeLevel, polyhedron, "translating_polyhedron")->DenseRange(2, 8, 3);
BENCHMARK_CAPTURE(BM_SchemeLevel, box_sine, "box_sine")->DenseRange(2, 8, 3);

void BM_DisLowerBound(benchmark::State& state) {
  const mdi::ProblemFile f = problem("moving_ball_drift");
  const auto n = static_cast<std::size_t>(state.range(0));
  const mdi::GraphSample a = mdi::sample_graph(f.problem->family(), 0.1, n, 1);
  const mdi::GraphSample b = mdi::sample_graph(f.problem->family(), 0.9, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(mdi::dis_lower_bound(a, b));
  state.counters["pairs"] = static_cast<double>(a.pairs.size() * b.pairs.size());
}
BENCHMARK(BM_DisLowerBound)->Arg(16)->Arg(48)->Arg(128);

void BM_CheckInclusion(benchmark::State& state) {
  const mdi::ProblemFile f = problem("separable_rotation");
  const mdi::Trajectory tr = mdi::run_scheme(f.problem, 0.0125);
  const double tol = mdi::default_verification_tol(*f.problem, 0.0125);
  for (auto _ : state) benchmark::DoNotOptimize(mdi::check_inclusion(tr, *f.problem, mdi::ZSampler(1), tol));
}
BENCHMARK(BM_CheckInclusion)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
