#include <benchmark/benchmark.h>

#include <map>

#include "funcmodel/charfn.hpp"
#include "funcmodel/dilation.hpp"
#include "funcmodel/hardy.hpp"
#include "funcmodel/modelspace.hpp"
#include "funcmodel/problem.hpp"
#include "funcmodel/spectral.hpp"
#include "test_util.hpp"

using namespace funcmodel;

namespace {

const FamilyMember& matrix6() {
  static const FamilyMember m =
      build_family(load_problem(std::string(FUNCMODEL_PROBLEM_DIR) + "/matrix6_iJ.json").family);
  return m;
}

const FamilyMember& friedrichs(int nodes) {
  static std::map<int, FamilyMember> cache;
  auto it = cache.find(nodes);
  if (it == cache.end()) it = cache.emplace(nodes, fmtest::friedrichs_member(nodes)).first;
  return it->second;
}

DilationVector k_vector(const FamilyMember& m, const CVector& u) {
  return {ChannelFunction(HalfLine::Negative, m.rank()), u, ChannelFunction(HalfLine::Positive, m.rank())};
}

}  // namespace

static void BM_EvalS_Matrix(benchmark::State& state) {
  const FamilyMember& m = matrix6();
  for (auto _ : state) benchmark::DoNotOptimize(eval_charfn(m, FunctionKind::S, cplx(0.3, 0.7)));
}
BENCHMARK(BM_EvalS_Matrix);

static void BM_EvalS_FriedrichsBoundary(benchmark::State& state) {
  const FamilyMember& m = friedrichs(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_charfn_at(m, FunctionKind::S, cplx(0.2, 0.0), BoundarySide::Upper));
  }
}
BENCHMARK(BM_EvalS_FriedrichsBoundary)->Arg(128)->Arg(512);

static void BM_HardyProject(benchmark::State& state) {
  const AxisGrid g = AxisGrid::cayley(static_cast<int>(state.range(0)));
  const HardyProjector p(g);
  std::mt19937_64 rng(1);
  GridFunction f(g.n, 3);
  for (int j = 0; j < g.n; ++j) f.row(j) = (fmtest::random_vector(3, rng) / cplx(g.k(j), 1.0)).transpose();
  for (auto _ : state) benchmark::DoNotOptimize(p.project(+1, f));
}
BENCHMARK(BM_HardyProject)->Arg(1024)->Arg(2048)->Arg(8192);

static void BM_DilationResolvent(benchmark::State& state) {
  const FamilyMember m = matrix6().dissipative();
  std::mt19937_64 rng(2);
  DilationVector f = k_vector(m, fmtest::random_vector(6, rng));
  f.v_plus.add_term({cplx(-1.0, 0.3), {CVector::Zero(3), fmtest::random_vector(3, rng)}});
  for (auto _ : state) benchmark::DoNotOptimize(dilation_resolvent(m, cplx(0.1, -0.6), f));
}
BENCHMARK(BM_DilationResolvent);

static void BM_ModelSpaceBuild(benchmark::State& state) {
  const FamilyMember& m = friedrichs(128);
  for (auto _ : state) {
    ModelSpace sp(m, AxisGrid::cayley(static_cast<int>(state.range(0))));
    benchmark::DoNotOptimize(sp.min_weight_eigenvalue());
  }
}
BENCHMARK(BM_ModelSpaceBuild)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_MapPhi(benchmark::State& state) {
  const FamilyMember& m = friedrichs(128);
  const auto sp = std::make_shared<ModelSpace>(m, AxisGrid::cayley(1024));
  std::mt19937_64 rng(3);
  const DilationVector h = k_vector(m, fmtest::smooth_friedrichs_vector(m, rng));
  for (auto _ : state) benchmark::DoNotOptimize(map_Phi(sp, h));
}
BENCHMARK(BM_MapPhi)->Unit(benchmark::kMillisecond);

static void BM_ModelResolvent(benchmark::State& state) {
  const FamilyMember& m = matrix6();
  const auto sp = std::make_shared<ModelSpace>(m, AxisGrid::cayley(2048));
  std::mt19937_64 rng(4);
  const ModelVector x = map_Phi(sp, k_vector(m, fmtest::random_vector(6, rng)));
  for (auto _ : state) benchmark::DoNotOptimize(model_resolvent(m, cplx(0.2, -0.9), x));
}
BENCHMARK(BM_ModelResolvent)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
