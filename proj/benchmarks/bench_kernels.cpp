#include <benchmark/benchmark.h>

#include "qheis/algebra_a.hpp"
#include "qheis/algebra_ahat.hpp"
#include "qheis/duality.hpp"
#include "qheis/fundamental_unitary.hpp"
#include "qheis/hilbert.hpp"
#include "qheis/field.hpp"
#include "qheis/packet.hpp"

namespace {

using namespace qheis;

QuadGrid grid_at(int nodes, TruncationBox box = {}) {
  QuadratureSpec spec;
  spec.nodes_per_axis = nodes;
  return QuadGrid::make(DeformationParams{0.5, 1}, box, spec, 0);
}

void BM_PacketEval(benchmark::State& state) {
  const Field3 f = random_packet(1, TruncationBox{}, DeformationParams{0.5, 1});
  const Point p = make_point(0.3, -0.1, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(f(p));
}
BENCHMARK(BM_PacketEval);

void BM_ProductA(benchmark::State& state) {
  const QuadGrid grid = grid_at(static_cast<int>(state.range(0)));
  const Field3 f = random_packet(2, TruncationBox{}, grid.params), g = random_packet(3, TruncationBox{}, grid.params);
  // slices are tabulated on demand, so integrate to force all of them
  for (auto _ : state) benchmark::DoNotOptimize(integrate(product_a(f, g, grid), grid));
}
BENCHMARK(BM_ProductA)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ProductAhat(benchmark::State& state) {
  const QuadGrid grid = grid_at(static_cast<int>(state.range(0)));
  const Field3 f = random_packet(4, TruncationBox{}, grid.params), g = random_packet(5, TruncationBox{}, grid.params);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(product_ahat(f, g, grid), grid));
}
BENCHMARK(BM_ProductAhat)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_UnitaryApply(benchmark::State& state) {
  const DeformationParams params{0.5, 1};
  const auto u = fundamental_unitary(params);
  const auto v = apply<2>(u, tensor<2>({random_packet(6, TruncationBox{}, params), random_packet(7, TruncationBox{}, params)}));
  const Point w = make_point(0.2, 0.1, -0.3), wp = make_point(-0.4, 0.5, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(v({w, wp}));
}
BENCHMARK(BM_UnitaryApply);

void BM_PentagonResidual(benchmark::State& state) {
  const auto u = fundamental_unitary(DeformationParams{0.5, 1});
  const auto probes = probe_points<3>(7, static_cast<int>(state.range(0)), TruncationBox{}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(pentagon_residual(u, probes));
}
BENCHMARK(BM_PentagonResidual)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_HsTrace(benchmark::State& state) {
  const QuadGrid grid = grid_at(static_cast<int>(state.range(0)), TruncationBox{6, 6, 3});
  // narrow in r, as in the trace suite; wider packets leak past the box
  const PacketFamily family{.center_xy = 0.25, .center_r = 0.2, .width_xy_min = 1.0, .width_xy_max = 1.2,
                            .width_r_min = 4.0, .width_r_max = 6.0, .max_terms = 2};
  const Field3 a = random_packet(8, grid.box, grid.params, family), b = random_packet(9, grid.box, grid.params, family);
  const KernelOp k = trace_class_kernel(a, b, grid.params);
  for (auto _ : state) benchmark::DoNotOptimize(hs_trace_of_product(k, grid));
}
BENCHMARK(BM_HsTrace)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
