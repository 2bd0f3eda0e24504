#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "bitrial/dynamics.hpp"
#include "bitrial/fieldeq.hpp"
#include "bitrial/malgebra.hpp"
#include "bitrial/mfourier.hpp"
#include "bitrial/numcore.hpp"

using namespace bitrial;

namespace {

void BM_VrpOrbit(benchmark::State& state) {
  MapParams p;
  p.q = 20.0;
  p.phi = 1.0;
  for (auto _ : state) {
    const Orbit orbit = iterate_orbit(0.5, p, StepRule::vrp, 1000,
                                      static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(orbit.samples.data());
  }
  state.SetItemsProcessed(state.iterations() * (1000 + state.range(0)));
}
BENCHMARK(BM_VrpOrbit)->Arg(500)->Arg(5000);

void BM_LyapunovRicker(benchmark::State& state) {
  MapParams p;
  p.q = 20.0;
  p.phi = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lyapunov_exponent(0.5, p, StepRule::vrp, 5000));
  }
}
BENCHMARK(BM_LyapunovRicker);

void BM_BifurcationCell(benchmark::State& state) {
  MapParams p;
  p.phi = 1.0;
  const Tolerance tol{1e-6, 0.0};
  for (auto _ : state) {
    const ScanCell cell = bifurcation_cell(p, SweepParam::q, 12.0,
                                           StepRule::vrp, 1000, 500, tol,
                                           std::nullopt, 0);
    benchmark::DoNotOptimize(cell.branch_count);
  }
}
BENCHMARK(BM_BifurcationCell);

void BM_QuadPeriodic(benchmark::State& state) {
  const PeriodicGrid grid(static_cast<int>(state.range(0)));
  const auto integrand = [](double t) {
    return 1.0 / (std::exp(std::complex<double>(0.0, -t)) + 0.3);
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(quad_periodic(integrand, grid));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_QuadPeriodic)->Arg(256)->Arg(4096);

void BM_MExp(benchmark::State& state) {
  double theta = 0.0;
  for (auto _ : state) {
    theta += 1e-3;
    benchmark::DoNotOptimize(m_exp({theta, 0.3}).value);
  }
}
BENCHMARK(BM_MExp);

void BM_ThetaRoundTrip(benchmark::State& state) {
  double theta = 0.0;
  for (auto _ : state) {
    theta = std::fmod(theta + 1e-3, kTwoPi);
    benchmark::DoNotOptimize(theta_of({theta_prime_of(theta, 0.3), 0.3}));
  }
}
BENCHMARK(BM_ThetaRoundTrip);

void BM_GramSameSign(benchmark::State& state) {
  const PeriodicGrid grid(4096);
  const int half = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const GramMatrix gram =
        build_gram(GramConvention::same_sign, -half, half, 0.3, grid);
    benchmark::DoNotOptimize(gram.entries.data());
  }
}
BENCHMARK(BM_GramSameSign)->Arg(6)->Arg(32);

void BM_GramConjugate(benchmark::State& state) {
  const PeriodicGrid grid(4096);
  const int half = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const GramMatrix gram =
        build_gram(GramConvention::conjugate, -half, half, 0.3, grid);
    benchmark::DoNotOptimize(gram.entries.data());
  }
}
BENCHMARK(BM_GramConjugate)->Arg(6)->Arg(16);

void BM_SynthesisWeights(benchmark::State& state) {
  const PeriodicGrid grid(4096);
  const auto f = [](double t) {
    return std::complex<double>(1.0 / (2.0 - std::cos(t)));
  };
  const auto coeffs = m_fourier_coefficients(f, -16, 16, 1.0 / 137.0, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesis_weights(coeffs, grid).data());
  }
}
BENCHMARK(BM_SynthesisWeights);

void BM_PdeResidual(benchmark::State& state) {
  const FieldParams p = FieldParams::slice(std::sqrt(2.0), 1.0, 0.3);
  const std::array<double, 2> lo{-1.0, -1.0}, hi{1.0, 1.0};
  const std::array<int, 1> ladder{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    const auto report = pde_residual_2d(p, lo, hi, ladder);
    benchmark::DoNotOptimize(report.residual_norms.data());
  }
}
BENCHMARK(BM_PdeResidual)->Arg(129)->Arg(257);

void BM_AdjointDefect(benchmark::State& state) {
  const FieldParams p = FieldParams::slice(std::sqrt(2.0), 1.0, 0.3);
  const std::array<double, 2> lo{-1.5, -1.5}, hi{1.5, 1.5};
  const std::array<int, 1> ladder{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        self_adjointness_defect(p, AdjointVersion::coefficient1_weighted, 11,
                                12, lo, hi, ladder));
  }
}
BENCHMARK(BM_AdjointDefect)->Arg(65)->Arg(129);

}  // namespace

BENCHMARK_MAIN();
