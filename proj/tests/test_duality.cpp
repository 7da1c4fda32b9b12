#include <gtest/gtest.h>

#include <cmath>

#include "qheis/algebra_a.hpp"
#include "qheis/algebra_ahat.hpp"
#include "qheis/duality.hpp"
#include "qheis/fundamental_unitary.hpp"
#include "qheis/opcop.hpp"
#include "qheis/packet.hpp"
#include "qheis/phase.hpp"

namespace qheis {
namespace {

QuadGrid grid_at(double lambda, int nodes) {
  QuadratureSpec spec;
  spec.nodes_per_axis = nodes;
  return QuadGrid::make(DeformationParams{lambda, 1}, TruncationBox{}, spec, 0);
}

Field3 packet(std::uint64_t seed, double lambda) {
  return random_packet(seed, TruncationBox{}, DeformationParams{lambda, 1});
}

class DualityLambdas : public ::testing::TestWithParam<double> {};
INSTANTIATE_TEST_SUITE_P(Deformations, DualityLambdas, ::testing::Values(0.0, 0.2, -0.5));

TEST_P(DualityLambdas, PairingIsBilinear) {
  const QuadGrid grid = grid_at(GetParam(), 16);
  const Field3 f1 = packet(1, GetParam()), f2 = packet(2, GetParam()), g = packet(3, GetParam());
  const cplx a{0.7, -0.4};
  const cplx lhs = dual_pairing(f1 + a * f2, g, grid);
  const cplx rhs = dual_pairing(f1, g, grid) + a * dual_pairing(f2, g, grid);
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-14);
  const cplx lhs2 = dual_pairing(g, f1 + a * f2, grid);
  const cplx rhs2 = dual_pairing(g, f1, grid) + a * dual_pairing(g, f2, grid);
  EXPECT_NEAR(std::abs(lhs2 - rhs2), 0.0, 1e-14);
}

TEST(Pairing, ClassicalCaseIsAPlainIntegral) {
  // lambda = 0: <f, g> = int f(x,y,r) g(x,y,-r)
  const QuadGrid grid = grid_at(0.0, 48);
  const Field3 f = packet(4, 0.0), g = packet(5, 0.0);
  cplx s{};
  const double hx = 0.1, hr = 0.05;
  for (int i = -60; i <= 60; ++i)
    for (int j = -60; j <= 60; ++j)
      for (int k = -80; k <= 80; ++k) {
        const double x = i * hx, y = j * hx, r = k * hr;
        s += f(make_point(x, y, r)) * g(make_point(x, y, -r));
      }
  s *= hx * hx * hr;
  EXPECT_NEAR(std::abs(dual_pairing(f, g, grid) - s), 0.0, 1e-12);
}

TEST_P(DualityLambdas, PentagonHoldsForTheFundamentalUnitary) {
  const auto u = fundamental_unitary(DeformationParams{GetParam(), 1});
  const auto probes = probe_points<3>(7, 500, TruncationBox{}, 1);
  EXPECT_LT(pentagon_residual(u, probes), 1e-11);
}

TEST(Pentagon, PerturbedUnitaryFails) {
  auto u = fundamental_unitary(DeformationParams{0.2, 1});
  u.multiplier = [m = u.multiplier](const WLegPoint<2>& p) {
    return m(p) * std::polar(WReal{1}, WReal{1e-3} * std::sin(p[0].x[0]) * p[1].y[0]);
  };
  const auto probes = probe_points<3>(7, 500, TruncationBox{}, 1);
  EXPECT_GT(pentagon_residual(u, probes), 1e-6);
}

TEST_P(DualityLambdas, KacSystemVariantsSatisfyPentagon) {
  const KacSystem kac = build_kac_system(DeformationParams{GetParam(), 1});
  const auto probes = probe_points<3>(8, 300, TruncationBox{}, 1);
  for (const auto* w : {&kac.u_hat, &kac.u_tilde, &kac.u_hathat}) EXPECT_LT(pentagon_residual(*w, probes), 1e-11);
}

// j is the product of two antiunitaries, hence linear.
TEST_P(DualityLambdas, JIsAUnitaryInvolution) {
  const DeformationParams params{GetParam(), 1};
  const auto j = op_j(params);
  EXPECT_FALSE(j.antilinear);
  const auto probes = probe_points<1>(9, 1000, TruncationBox{}, 1);
  EXPECT_LT(unitarity_defect<1>(j, probes), 1e-14);
  EXPECT_LT(operator_distance<1>(compose(j, j), identity_op<1>(1), probes), 1e-12);
}

TEST(DualGroup, InverseAndAssociativity) {
  const DeformationParams params{0.5, 1};
  DualGroupElement a, b, c;
  a.p[0] = 0.3;
  a.q[0] = -1.0;
  a.r = 0.7;
  b.p[0] = -0.2;
  b.q[0] = 0.4;
  b.r = -1.1;
  c.p[0] = 1.5;
  c.q[0] = 0.1;
  c.r = 0.2;
  const auto e = dual_group_mul(a, dual_group_inverse(a, params), params);
  EXPECT_NEAR(e.p[0], 0.0, 1e-15);
  EXPECT_NEAR(e.q[0], 0.0, 1e-15);
  EXPECT_NEAR(e.r, 0.0, 1e-15);
  const auto l = dual_group_mul(dual_group_mul(a, b, params), c, params);
  const auto r = dual_group_mul(a, dual_group_mul(b, c, params), params);
  EXPECT_NEAR(l.p[0], r.p[0], 1e-14);
  EXPECT_NEAR(l.q[0], r.q[0], 1e-14);
  EXPECT_NEAR(l.r, r.r, 1e-14);
}

TEST(WkLemma, ResidualShrinksAsTheFamilyGrows) {
  const DeformationParams params{0.2, 1};
  const Field3 zeta = packet(10, 0.2);
  const std::vector<Field3> vectors{packet(11, 0.2)};
  const std::vector<int> sizes{8, 32, 64};
  WkLemmaSetup setup;
  setup.step = 0.75;  // small lattice keeps the test quick
  const auto result = wk_lemma(fundamental_unitary(params), zeta, vectors, sizes, setup);
  ASSERT_EQ(result.residuals.size(), 3u);
  EXPECT_GT(result.residuals[0], result.residuals[1]);
  EXPECT_GT(result.residuals[1], result.residuals[2]);
}

TEST(WkLemma, RejectsNonPacketVectors) {
  const Field3 lazy = Field3::lazy(1, [](const Point&) { return cplx{}; });
  const std::vector<Field3> vectors{lazy};
  const std::vector<int> sizes{4};
  EXPECT_THROW(wk_lemma(fundamental_unitary(DeformationParams{}), packet(1, 0.0), vectors, sizes),
               std::invalid_argument);
}

}  // namespace
}  // namespace qheis
