#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "spectral/bvp.hpp"
#include "spectral/fourier.hpp"
#include "spectral/montecarlo.hpp"
#include "spectral/pde.hpp"
#include "spectral/timestep.hpp"
#include "spectral/trefftz.hpp"

using namespace spectral;

namespace {

fourier::SpectralField bump(std::size_t n) {
  return fourier::SpectralField::sample(fourier::PeriodicGrid(n, 1.0), [](double x) {
    const double c = std::cosh(10 * x);
    return 1 / (c * c);
  });
}

}  // namespace

static void BM_SpectralDerivative(benchmark::State& state) {
  const auto f = bump(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fourier::spectral_derivative(f, 1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SpectralDerivative)->RangeMultiplier(4)->Range(32, 1 << 14)->Complexity(benchmark::oNLogN);

static void BM_DealiasProduct(benchmark::State& state) {
  const auto f = fourier::dft_forward(bump(static_cast<std::size_t>(state.range(0))));
  const std::vector<fourier::cplx> c(f.coeffs().begin(), f.coeffs().end());
  for (auto _ : state) benchmark::DoNotOptimize(fourier::dealias_product(c, c));
}
BENCHMARK(BM_DealiasProduct)->RangeMultiplier(4)->Range(32, 1 << 14);

static void BM_HeatPropagate(benchmark::State& state) {
  const auto f = bump(256);
  for (auto _ : state) benchmark::DoNotOptimize(fourier::heat_propagate(f, 0.01, 5.0));
}
BENCHMARK(BM_HeatPropagate);

static void BM_SolveBvp(benchmark::State& state) {
  const auto m = static_cast<bvp::Method>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bvp::solve_bvp(m, static_cast<std::size_t>(state.range(1))));
  state.SetLabel(std::string(bvp::method_name(m)));
}
BENCHMARK(BM_SolveBvp)->ArgsProduct({{0, 1, 2}, {4, 16, 64}});

static void BM_Rk4Logistic(benchmark::State& state) {
  const auto p = timestep::logistic_problem(2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(timestep::integrate(timestep::SchemeSpec::rk4(), p, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_Rk4Logistic)->Arg(100)->Arg(6000);

static void BM_HeatMoistureRhs(benchmark::State& state) {
  const fourier::PeriodicGrid g(static_cast<std::size_t>(state.range(0)), 1.0);
  const auto f = fourier::dft_forward(bump(g.size()));
  const pde::Coeffs c(f.coeffs().begin(), f.coeffs().end());
  const auto p = pde::HeatMoistureParams::nonlinear();
  for (auto _ : state) benchmark::DoNotOptimize(pde::heat_moisture_rhs(g, {c, c}, p));
}
BENCHMARK(BM_HeatMoistureRhs)->Arg(64)->Arg(256)->Arg(1024);

static void BM_FeynmanKac(benchmark::State& state) {
  montecarlo::SdeProblem p;
  p.u0 = [](double x) { return x * x; };
  p.potential = [](double x) { return 0.1 * x * x; };
  for (auto _ : state) {
    benchmark::DoNotOptimize(montecarlo::feynman_kac(p, 1.0, static_cast<std::size_t>(state.range(0)), 10, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FeynmanKac)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_TrefftzDisk(benchmark::State& state) {
  using namespace spectral::trefftz;
  const auto n = static_cast<std::size_t>(state.range(0));
  BoundaryProblem p{BoundaryCurve::circle({0, 0}, 1.0),
                    {SegmentCondition::dirichlet([](const Point& x, const Point&) { return std::exp(x.x()) * std::cos(x.y()); })},
                    Basis::t_complete(n), 4 * n + 8};
  for (auto _ : state) benchmark::DoNotOptimize(solve_trefftz(p, Method::least_squares));
}
BENCHMARK(BM_TrefftzDisk)->Arg(8)->Arg(32);
BENCHMARK_MAIN();
