#include <benchmark/benchmark.h>

#include <random>

#include "leonard/bslinear.hpp"
#include "leonard/scalprod.hpp"

using namespace leonard;

namespace {

ParamSet params_for(int twoS) {
  ParamSet p;
  p.q = 1.37;
  p.r0 = 0.91;
  p.b = 1.62;
  p.bStar = 0.74;
  p.bDiam = 1.18;
  p.twoS = twoS;
  return p;
}

void BM_BuildTriple(benchmark::State& state) {
  ParamSet p = params_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    TripleRealization t = build_triple(p);
    benchmark::DoNotOptimize(t.basisADiam);
  }
}
BENCHMARK(BM_BuildTriple)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_RacahEval(benchmark::State& state) {
  ParamSet p = params_for(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Cplx v = racah_eval(p, Label::A, Label::ADiam, p.twoS, p.twoS);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_RacahEval)->Arg(2)->Arg(4)->Arg(8);

void BM_ScalarTheorem(benchmark::State& state) {
  ParamSet p = params_for(static_cast<int>(state.range(0)));
  TripleRealization t = build_triple(p);
  std::vector<Cplx> us = {Cplx(0.8, 0.2), Cplx(1.3, -0.4)};
  for (auto _ : state) {
    auto v = scalar_theorem(t, -1, p.twoS, us);
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(BM_ScalarTheorem)->Arg(1)->Arg(2)->Arg(4);

void BM_SolveHom(benchmark::State& state) {
  ParamSet p = params_for(2);
  SolverOptions opt;
  for (auto _ : state) {
    BetheRootSet rs = solve_hom(p, +1, static_cast<int>(state.range(0)), opt);
    benchmark::DoNotOptimize(rs.symRoots);
  }
}
BENCHMARK(BM_SolveHom)->Arg(1)->Arg(2);

void BM_SolveInhomAll(benchmark::State& state) {
  ParamSet p = params_for(static_cast<int>(state.range(0)));
  SolverOptions opt;
  for (auto _ : state) {
    auto all = solve_inhom_all(p, -1, opt);
    benchmark::DoNotOptimize(all);
  }
}
BENCHMARK(BM_SolveInhomAll)->Arg(1)->Arg(2);

void BM_KernelRoute(benchmark::State& state) {
  ParamSet p = params_for(static_cast<int>(state.range(0)));
  TripleRealization t = build_triple(p);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0, 1);
  std::vector<Cplx> Y(static_cast<size_t>(p.dim()));
  for (auto& y : Y) y = Cplx(0.7 + 0.9 * U(rng), 0.3 * (U(rng) - 0.5));
  for (auto _ : state) {
    BSSystem sys = build_system(t, -1, 0, Y);
    KernelVector kv = nullspace_route(sys);
    benchmark::DoNotOptimize(kv.v);
  }
}
BENCHMARK(BM_KernelRoute)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
