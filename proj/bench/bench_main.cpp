// Serial reference vs OpenMP for the hot paths. Set OMP_NUM_THREADS to vary
// the thread count.
#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "nvphoton/density_matrix.hpp"
#include "nvphoton/gates.hpp"
#include "nvphoton/kernels.hpp"
#include "nvphoton/protocol.hpp"
#include "nvphoton/stats.hpp"

namespace {

using namespace nvphoton;

std::vector<Complex> random_amplitudes(std::size_t qubits) {
  Rng rng(qubits);
  std::vector<Complex> a(std::size_t{1} << qubits);
  for (Complex& c : a) {
    c = {rng.normal(), rng.normal()};
  }
  return a;
}

template <void (*Apply)(std::span<Complex>, std::size_t, std::size_t, const Matrix2&)>
void BM_Apply1q(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Complex> a = random_amplitudes(n);
  const Matrix2 h = gates::hadamard();
  for (auto _ : state) {
    for (std::size_t p = 0; p < n; ++p) {
      Apply(a, n, p, h);
    }
    benchmark::DoNotOptimize(a.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n << n));
}
BENCHMARK(BM_Apply1q<kernels::serial::apply_1q>)->Name("apply_1q/serial")->DenseRange(12, 20, 4);
BENCHMARK(BM_Apply1q<kernels::omp::apply_1q>)->Name("apply_1q/omp")->DenseRange(12, 20, 4);

template <void (*Apply)(std::span<Complex>, std::size_t, std::size_t, std::size_t, const Matrix4&)>
void BM_Apply2q(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Complex> a = random_amplitudes(n);
  const Matrix4 cx = gates::controlled(gates::pauli_x());
  for (auto _ : state) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      Apply(a, n, p, p + 1, cx);
    }
    benchmark::DoNotOptimize(a.data());
  }
}
BENCHMARK(BM_Apply2q<kernels::serial::apply_2q>)->Name("apply_2q/serial")->DenseRange(12, 20, 4);
BENCHMARK(BM_Apply2q<kernels::omp::apply_2q>)->Name("apply_2q/omp")->DenseRange(12, 20, 4);

template <double (*Norm)(std::span<const Complex>)>
void BM_Norm(benchmark::State& state) {
  const std::vector<Complex> a = random_amplitudes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Norm(a));
  }
}
BENCHMARK(BM_Norm<kernels::serial::norm_squared>)->Name("norm_squared/serial")->DenseRange(12, 20, 4);
BENCHMARK(BM_Norm<kernels::omp::norm_squared>)->Name("norm_squared/omp")->DenseRange(12, 20, 4);

std::vector<WeightedState> ghz_ensemble(unsigned m, std::size_t count) {
  noise::NoiseModel noise;
  noise.gate_angle_max = 10.0 * std::numbers::pi / 180.0;
  noise.bath_phase_max = noise.gate_angle_max;
  std::vector<WeightedState> out;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(i);
    out.push_back({1.0 / static_cast<double>(count), *run_protocol(ProtocolKind::Ghz, m, noise, rng).photon_state});
  }
  return out;
}

template <DensityMatrix (*Build)(std::span<const WeightedState>)>
void BM_Ensemble(benchmark::State& state) {
  const auto ensemble = ghz_ensemble(static_cast<unsigned>(state.range(0)), 200);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Build(ensemble));
  }
}
BENCHMARK(BM_Ensemble<density_from_ensemble>)->Name("density_from_ensemble/omp")->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ensemble<reference::density_from_ensemble_serial>)->Name("density_from_ensemble/serial")->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

template <bool Parallel>
void BM_FidelityCurve(benchmark::State& state) {
  noise::NoiseModel noise;
  noise.gate_angle_max = 10.0 * std::numbers::pi / 180.0;
  noise.bath_phase_max = noise.gate_angle_max;
  for (auto _ : state) {
    const FidelityCurve c = Parallel ? fidelity_curve(ProtocolKind::Ghz, 6, noise, 200, 1)
                                     : reference::fidelity_curve_serial(ProtocolKind::Ghz, 6, noise, 200, 1);
    benchmark::DoNotOptimize(c.points.data());
  }
}
BENCHMARK(BM_FidelityCurve<true>)->Name("fidelity_curve/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FidelityCurve<false>)->Name("fidelity_curve/serial")->Unit(benchmark::kMillisecond);

template <bool Parallel>
void BM_Sessions(benchmark::State& state) {
  stats::RateConfig c;
  c.repetitions = 100000;
  for (auto _ : state) {
    const auto h = Parallel ? stats::simulate_sessions(c, 1) : stats::reference::simulate_sessions_serial(c, 1);
    benchmark::DoNotOptimize(h.counts.size());
  }
}
BENCHMARK(BM_Sessions<true>)->Name("simulate_sessions/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sessions<false>)->Name("simulate_sessions/serial")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
