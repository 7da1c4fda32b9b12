#include <gtest/gtest.h>

#include <cmath>

#include "qheis/algebra_a.hpp"
#include "qheis/algebra_ahat.hpp"
#include "qheis/duality.hpp"
#include "qheis/fundamental_unitary.hpp"
#include "qheis/hilbert.hpp"
#include "qheis/packet.hpp"
#include "qheis/phase.hpp"
#include "qheis/rng.hpp"

namespace qheis {
namespace {

QuadGrid grid_at(double lambda, int nodes, TruncationBox box = {}) {
  QuadratureSpec spec;
  spec.nodes_per_axis = nodes;
  return QuadGrid::make(DeformationParams{lambda, 1}, box, spec, 0);
}

Field3 packet(std::uint64_t seed, double lambda) {
  return random_packet(seed, TruncationBox{}, DeformationParams{lambda, 1});
}

std::vector<Point> sample_points(std::uint64_t seed, int count) {
  SplitMix64 g(seed);
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) out.push_back(make_point(g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-0.5, 0.5)));
  return out;
}

class OperatorLambdas : public ::testing::TestWithParam<double> {};
INSTANTIATE_TEST_SUITE_P(Deformations, OperatorLambdas, ::testing::Values(0.0, 0.2, 0.5, -0.5));

// U written out by hand from its defining formula.
TEST_P(OperatorLambdas, FundamentalUnitaryMatchesItsFormula) {
  const double lambda = GetParam();
  const Field3 xi = packet(1, lambda), zeta = packet(2, lambda);
  const auto moved = apply<2>(fundamental_unitary(DeformationParams{lambda, 1}), tensor<2>({xi, zeta}));
  const auto pts = sample_points(3, 8);
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    const Point& w = pts[i];
    const Point& wp = pts[i + 1];
    const double s = std::exp(-lambda * wp.r);
    const double x = s * w.x[0], y = s * w.y[0];
    const cplx m = s * e_phase_conj(eta(lambda, wp.r) * x * (wp.y[0] - y));
    const cplx expected = m * xi(make_point(x, y, w.r + wp.r)) * zeta(make_point(wp.x[0] - x, wp.y[0] - y, wp.r));
    EXPECT_NEAR(std::abs(moved({w, wp}) - expected), 0.0, 1e-14);
  }
}

TEST_P(OperatorLambdas, FundamentalUnitaryCertificateAndInverse) {
  const DeformationParams params{GetParam(), 1};
  const auto u = fundamental_unitary(params);
  const auto probes = probe_points<2>(17, 2000, TruncationBox{}, 1);
  EXPECT_LT(unitarity_defect<2>(u, probes), 1e-15);
  EXPECT_LT(operator_distance<2>(compose(u, inverse(u)), identity_op<2>(1), probes), 1e-12);
  EXPECT_NO_THROW(adjoint<2>(u, probes));
}

TEST(FundamentalUnitary, PreservesNormOnTheLatticeAtZeroDeformation) {
  // At lambda = 0 the coordinate change is a lattice shear, so the discrete norm is preserved.
  const QuadGrid grid = grid_at(0.0, 12);
  const Field3 xi = packet(4, 0.0), zeta = packet(5, 0.0);
  const auto v = tensor<2>({xi, zeta});
  const auto uv = apply<2>(fundamental_unitary(grid.params), v);
  const double before = inner<2>(v, v, grid).real();
  EXPECT_NEAR(inner<2>(uv, uv, grid).real(), before, 1e-9 * before);
}

TEST(WeightedComposition, BrokenMultiplierFailsCertificate) {
  auto u = fundamental_unitary(DeformationParams{0.2, 1});
  u.multiplier = [m = u.multiplier](const WLegPoint<2>& p) { return m(p) * WReal{1.001}; };
  const auto probes = probe_points<2>(1, 100, TruncationBox{}, 1);
  EXPECT_GT(unitarity_defect<2>(u, probes), 1e-3);
  EXPECT_THROW(adjoint<2>(u, probes), std::domain_error);
}

TEST_P(OperatorLambdas, LeftRegularRepresentationAdjoint) {
  const QuadGrid grid = grid_at(GetParam(), 16);
  const Field3 f = packet(6, GetParam()), xi = packet(7, GetParam()), zeta = packet(8, GetParam());
  const cplx lhs = inner(apply(left_rep(f, grid.params), xi, grid), zeta, grid);
  const cplx rhs = inner(xi, apply(left_rep(star_a(f, grid.params), grid.params), zeta, grid), grid);
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-10 * std::abs(lhs));
}

TEST_P(OperatorLambdas, RhoRepresentationAdjoint) {
  // the dilation e^{lambda r} reads off-lattice; the mismatch falls from 1e-4 at 32 nodes to 1e-8 or below at 64
  const QuadGrid grid = grid_at(GetParam(), 64);
  const Field3 f = packet(9, GetParam()), xi = packet(10, GetParam()), zeta = packet(11, GetParam());
  const cplx lhs = inner(apply(rho_rep(f, grid.params), xi, grid), zeta, grid);
  const cplx rhs = inner(xi, apply(rho_rep(star_ahat(f, grid.params), grid.params), zeta, grid), grid);
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-7 * std::abs(lhs));
}

TEST_P(OperatorLambdas, HaarWeightsArePositive) {
  const QuadGrid grid = grid_at(GetParam(), 16);
  const Field3 f = packet(12, GetParam());
  const cplx a = haar_a(product_a(star_a(f, grid.params), f, grid), grid);
  const cplx b = haar_ahat(product_ahat(star_ahat(f, grid.params), f, grid), grid);
  EXPECT_GT(a.real(), 0.0);
  EXPECT_NEAR(a.imag(), 0.0, 1e-12 * a.real());
  EXPECT_GT(b.real(), 0.0);
  EXPECT_NEAR(b.imag(), 0.0, 1e-12 * b.real());
}

TEST(AlgebraA, ProductIsContinuousAtZeroDeformation) {
  const double tiny = 1e-7;
  const QuadGrid g0 = grid_at(0.0, 16), g1 = grid_at(tiny, 16);
  const Field3 f = packet(13, 0.0), g = packet(14, 0.0);
  const Field3 p0 = product_a_lazy(f, g, g0), p1 = product_a_lazy(f, g, g1);
  for (const auto& p : sample_points(15, 5)) EXPECT_NEAR(std::abs(p0(p) - p1(p)), 0.0, 1e-6);
}

TEST(AlgebraA, LatticeAndPointwiseProductsAgreeOnNodes) {
  const QuadGrid grid = grid_at(0.5, 16);
  const Field3 f = packet(16, 0.5), g = packet(17, 0.5);
  const Field3 tab = product_a(f, g, grid), lazy = product_a_lazy(f, g, grid);
  for (int i : {6, 8, 11})
    for (int k : {5, 8, 10}) {
      const Point p = make_point(grid.x.nodes[static_cast<std::size_t>(i)], grid.y.nodes[7],
                                 grid.r.nodes[static_cast<std::size_t>(k)]);
      EXPECT_NEAR(std::abs(tab(p) - lazy(p)), 0.0, 1e-14);
    }
}

TEST(AlgebraA, ClassicalProductIsTwistedConvolution) {
  // lambda = 0: eta(r) = r, so the product is a plain convolution in (x, y) with phase ebar(r x~ (y - y~)).
  const QuadGrid grid = grid_at(0.0, 48);
  const Field3 f = packet(18, 0.0), g = packet(19, 0.0);
  const Field3 prod = product_a_lazy(f, g, grid);
  const Point p = make_point(0.3, -0.2, 0.4);
  cplx s{};
  const double h = 0.05;
  for (int i = -120; i <= 120; ++i)
    for (int j = -120; j <= 120; ++j) {
      const double xt = i * h, yt = j * h;
      s += f(make_point(xt, yt, p.r)) * g(make_point(p.x[0] - xt, p.y[0] - yt, p.r)) *
           e_phase_conj(p.r * xt * (p.y[0] - yt)) * h * h;
    }
  EXPECT_NEAR(std::abs(prod(p) - s), 0.0, 1e-12);
}

TEST_P(OperatorLambdas, StarIsAnInvolutionOnBothAlgebras) {
  const DeformationParams params{GetParam(), 1};
  const Field3 f = packet(20, GetParam());
  for (const auto& p : sample_points(21, 6)) {
    EXPECT_NEAR(std::abs(star_a(star_a(f, params), params)(p) - f(p)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(star_ahat(star_ahat(f, params), params)(p) - f(p)), 0.0, 1e-14);
  }
}

TEST_P(OperatorLambdas, ModularFlowIsAGroup) {
  const DeformationParams params{GetParam(), 1};
  const Field3 f = packet(22, GetParam());
  const Field3 a = modular_flow(modular_flow(f, params, 0.3), params, -0.8);
  const Field3 b = modular_flow(f, params, -0.5);
  for (const auto& p : sample_points(23, 6)) EXPECT_NEAR(std::abs(a(p) - b(p)), 0.0, 1e-14);
}

TEST_P(OperatorLambdas, KernelCompositionMatchesTwoApplications) {
  const QuadGrid grid = grid_at(GetParam(), 64);
  const Field3 a = packet(24, GetParam()), b = packet(25, GetParam()), xi = packet(26, GetParam());
  const KernelOp k = trace_class_kernel(a, b, grid.params);
  const Field3 once = apply(k, xi, grid);
  const Field3 twice = apply(rho_rep(b, grid.params), apply(left_rep(a, grid.params), xi, grid), grid);
  double scale = 0, diff = 0;
  for (const auto& p : sample_points(27, 4)) {
    scale = std::max(scale, std::abs(twice(p)));
    diff = std::max(diff, std::abs(once(p) - twice(p)));
  }
  EXPECT_LT(diff, 1e-8 * scale);
}

TEST(KernelOp, HsTraceRefusesStructuredKernels) {
  const QuadGrid grid = grid_at(0.2, 8);
  EXPECT_THROW(hs_trace_of_product(left_rep(packet(1, 0.2), grid.params), grid), std::invalid_argument);
}

TEST(KernelOp, MatrixTruncationOfASeparableKernel) {
  // K(w, w^) = g(w) g(w^) with g a unit-width Gaussian, so ||K||_HS^2 = (sum |g|^2)^2 over the midpoint grid.
  // Poisson summation gives that sum per axis: h sum exp(-2 (h (k + 1/2))^2) = sqrt(pi/2) sum_m (-1)^m exp(-pi^2 m^2 / (2 h^2)).
  KernelOp k;
  k.name = "rank one";
  k.kernel = [](const Point& w, const Point& v) {
    auto g = [](const Point& p) { return std::exp(-p.x[0] * p.x[0] - p.y[0] * p.y[0] - p.r * p.r); };
    return cplx{g(w) * g(v), 0.0};
  };
  const double h = 10.0 / 14;
  double axis = 1;
  for (int m = 1; m <= 3; ++m) axis += 2 * (m % 2 ? -1 : 1) * std::exp(-std::numbers::pi * std::numbers::pi * m * m / (2 * h * h));
  axis *= std::sqrt(std::numbers::pi / 2);
  const double expected = std::pow(axis, 6);
  EXPECT_NEAR(matrix_truncation_hs(k, TruncationBox{5, 5, 5}, 14, 14), expected, 1e-12 * expected);
  // and the aliasing is what separates it from the continuum value
  EXPECT_GT(std::abs(expected - std::pow(std::numbers::pi / 2, 3)), 1e-3);
}

}  // namespace
}  // namespace qheis
