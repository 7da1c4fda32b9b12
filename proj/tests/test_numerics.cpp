#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qheis/field.hpp"
#include "qheis/packet.hpp"
#include "qheis/phase.hpp"
#include "qheis/quadrature.hpp"
#include "qheis/rng.hpp"

namespace qheis {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Eta, ZeroDeformationIsIdentity) {
  for (double r : {-3.0, -0.5, 0.0, 0.25, 2.0}) EXPECT_DOUBLE_EQ(eta(0.0, r), r);
}

TEST(Eta, MatchesClosedFormAwayFromZero) {
  for (double lambda : {0.2, 0.5, -0.5})
    for (double r : {-2.0, -0.3, 0.7, 3.0}) {
      const double expected = (std::exp(2 * lambda * r) - 1) / (2 * lambda);
      EXPECT_NEAR(eta(lambda, r), expected, 1e-14 * std::max(1.0, std::abs(expected)));
    }
}

TEST(Eta, ContinuousAcrossSeriesSwitch) {
  // The series branch takes over at |lambda r| = 1e-4; compare both sides with long double.
  const double r = 1.0;
  for (double lambda : {0.99e-4, 1.01e-4, -0.99e-4, -1.01e-4, 1e-9}) {
    const long double l = lambda;
    const long double exact = std::expm1(2.0L * l * r) / (2.0L * l);
    EXPECT_NEAR(eta(lambda, r), static_cast<double>(exact), 1e-16);
  }
}

TEST(Eta, SatisfiesCocycle) {
  // eta(r + r') = eta(r) + e^{2 lambda r} eta(r')
  const double lambda = 0.35;
  for (double r : {-1.0, 0.4})
    for (double rp : {-0.6, 1.3})
      EXPECT_NEAR(eta(lambda, r + rp), eta(lambda, r) + std::exp(2 * lambda * r) * eta(lambda, rp), 1e-13);
}

TEST(EPhase, ReducesLargeArguments) {
  EXPECT_NEAR(std::abs(e_phase(1e6 + 0.25) - cplx{0, 1}), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(e_phase(0.5) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(e_phase(0.1) * e_phase_conj(0.1) - 1.0), 0.0, 1e-15);
}

TEST(Beta, DotProductOfBlocks) {
  Vec u, v;
  u[0] = 1;
  u[1] = 2;
  v[0] = -3;
  v[1] = 0.5;
  EXPECT_DOUBLE_EQ(beta(u, v), -2.0);
}

TEST(SplitMix64, CanonicalSequence) {
  // Reference outputs of the published SplitMix64 generator for seed 0.
  SplitMix64 g(0);
  EXPECT_EQ(g.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(g.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(g.next(), 0x06C45D188009454FULL);
}

TEST(SplitMix64, UniformStaysInRange) {
  SplitMix64 g(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = g.uniform(-2.0, 3.0);
    ASSERT_GE(u, -2.0);
    ASSERT_LT(u, 3.0);
  }
}

TEST(MixSeed, DistinctTagsGiveDistinctSeeds) {
  EXPECT_NE(mix_seed(1, 0), mix_seed(1, 1));
  EXPECT_NE(mix_seed(1, 5), mix_seed(2, 5));
  EXPECT_EQ(mix_seed(3, 9), mix_seed(3, 9));
}

TEST(Quadrature, TrapezoidIntegratesGaussianSpectrally) {
  const Rule1D rule = make_rule(QuadratureRule::trapezoid, 32, 6.0);
  ASSERT_EQ(rule.size(), 33u);
  EXPECT_TRUE(rule.lattice);
  EXPECT_DOUBLE_EQ(rule.nodes[static_cast<std::size_t>(rule.center)], 0.0);
  double s = 0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::exp(-rule.nodes[i] * rule.nodes[i]);
  EXPECT_NEAR(s, std::sqrt(kPi), 1e-13);
}

TEST(Quadrature, TrapezoidRejectsOddIntervalCounts) {
  EXPECT_THROW(make_rule(QuadratureRule::trapezoid, 7, 1.0), std::invalid_argument);
}

TEST(Quadrature, GaussLegendreIsExactOnPolynomials) {
  const Rule1D rule = gauss_legendre(6, -1.0, 2.0);
  // degree 11 is the highest integrated exactly by 6 nodes
  double s = 0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 11);
  EXPECT_NEAR(s, (std::pow(2.0, 12) - 1.0) / 12.0, 1e-11);
}

TEST(Quadrature, TensorIntegralOfSeparableGaussian) {
  const Rule1D rx = make_rule(QuadratureRule::trapezoid, 40, 6.0);
  const Rule1D rr = make_rule(QuadratureRule::trapezoid, 40, 4.0);
  const Rule1D* axes[] = {&rx, &rx, &rr};
  const cplx v = integrate_nd(axes, [](std::span<const double> c) {
    return cplx{std::exp(-c[0] * c[0] - 2 * c[1] * c[1] - 3 * c[2] * c[2]), 0.0};
  });
  EXPECT_NEAR(v.real(), std::pow(kPi, 1.5) / std::sqrt(6.0), 1e-12);
}

TEST(Quadrature, WideIntegrandOverflowsTheBox) {
  const Rule1D rule = make_rule(QuadratureRule::trapezoid, 16, 2.0);
  const Rule1D* axes[] = {&rule};
  auto wide = [](std::span<const double> c) { return cplx{std::exp(-0.1 * c[0] * c[0]), 0.0}; };
  EXPECT_THROW(integrate_nd(axes, wide, 1e-8), SupportOverflow);
  EXPECT_NO_THROW(integrate_nd(axes, wide));
}

TEST(Quadrature, GridRefinementDoublesNodes) {
  QuadratureSpec spec;
  spec.nodes_per_axis = 8;
  const DeformationParams params{0.2, 1};
  const TruncationBox box;
  const QuadGrid g0 = QuadGrid::make(params, box, spec, 0);
  const QuadGrid g1 = QuadGrid::make(params, box, spec, 1);
  EXPECT_EQ(g0.x.size(), 9u);
  EXPECT_EQ(g1.x.size(), 17u);
  EXPECT_EQ(g1.axes().size(), 3u);
  EXPECT_DOUBLE_EQ(g1.x.step * 2, g0.x.step);
}

TEST(Config, ValidationRejectsBadValues) {
  EXPECT_THROW((DeformationParams{0.0, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((DeformationParams{0.0, 4}.validate()), std::invalid_argument);
  TruncationBox box;
  box.half_width_r = 0;
  EXPECT_THROW(box.validate(), std::invalid_argument);
  QuadratureSpec q;
  q.nodes_per_axis = 2;
  EXPECT_THROW(q.validate(), std::invalid_argument);
}

// Independent check of the packet convention: a single term against a hand-written Gaussian.
TEST(Packet, EvaluatesItsFormula) {
  GaussianPacket t;
  t.amplitude = {0.5, -0.2};
  t.x0[0] = 0.3;
  t.y0[0] = -0.1;
  t.r0 = 0.2;
  t.a = 1.5;
  t.b = 0.8;
  t.c = 2.5;
  t.p0[0] = 0.2;
  t.q0[0] = -0.4;
  t.s0 = 0.1;
  const Point p = make_point(0.7, -0.9, 0.45);
  const double re = -1.5 * 0.16 - 0.8 * 0.64 - 2.5 * 0.0625;
  const double im = 2 * kPi * (0.2 * 0.7 + 0.4 * 0.9 + 0.1 * 0.45);
  const cplx expected = cplx{0.5, -0.2} * std::exp(re) * cplx{std::cos(im), std::sin(im)};
  EXPECT_NEAR(std::abs(t(p) - expected), 0.0, 1e-15);
}

TEST(Packet, ClosedFormInnerMatchesQuadrature) {
  const TruncationBox box;
  const DeformationParams params{0.0, 1};
  const PacketSum f = random_packet(11, box, params), g = random_packet(12, box, params);
  // Plain loop trapezoid, independent of the library rules.
  const int m = 60;
  const double hx = 12.0 / m, hr = 8.0 / m;
  cplx s{};
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j)
      for (int k = 0; k <= m; ++k) {
        const Point p = make_point(-6 + i * hx, -6 + j * hx, -4 + k * hr);
        s += f(p) * std::conj(g(p));
      }
  s *= hx * hx * hr;
  EXPECT_NEAR(std::abs(packet_inner(f, g) - s), 0.0, 1e-10);
}

TEST(Packet, RandomPacketsAreNormalisedAndReproducible) {
  const TruncationBox box;
  const DeformationParams params{0.5, 1};
  const PacketSum f = random_packet(99, box, params);
  EXPECT_NEAR(packet_inner(f, f).real(), 1.0, 1e-13);
  const PacketSum g = random_packet(99, box, params);
  ASSERT_EQ(f.terms.size(), g.terms.size());
  const Point p = make_point(0.2, -0.3, 0.1);
  EXPECT_EQ(f(p), g(p));
}

TEST(Packet, FamilyTooWideForBoxThrows) {
  TruncationBox box;
  box.half_width_x = 2;
  EXPECT_THROW(random_packet(1, box, DeformationParams{}), SupportOverflow);
}

TEST(Packet, FourierOfGaussianAgainstDirectSum) {
  PacketSum f;
  GaussianPacket t;
  t.c = 1.7;
  t.r0 = 0.3;
  t.s0 = 0.2;
  f.terms.push_back(t);
  const PacketSum fr = fourier_packet(f, FourierAxis::r, false);
  for (double z : {-0.8, 0.0, 0.35}) {
    // forward kernel ebar(z r); x = y = 0 leaves only the r factor
    cplx s{};
    const double h = 0.01;
    for (int k = -1000; k <= 1000; ++k) {
      const double r = k * h;
      s += f(make_point(0, 0, r)) * std::polar(1.0, -2 * kPi * z * r) * h;
    }
    EXPECT_NEAR(std::abs(fr(make_point(0, 0, z)) - s), 0.0, 1e-12);
  }
}

TEST(Field, SampledGridInterpolatesAndGuardsItsEdge) {
  const DeformationParams params{0.0, 1};
  QuadratureSpec spec;
  spec.nodes_per_axis = 32;
  const QuadGrid grid = QuadGrid::make(params, TruncationBox{}, spec, 0);
  const Field3 f = random_packet(5, TruncationBox{}, params);
  const Field3 s = sample(f, grid);
  ASSERT_NE(s.grid(), nullptr);
  const Point node = make_point(grid.x.nodes[10], grid.y.nodes[20], grid.r.nodes[12]);
  EXPECT_EQ(s(node), f(node));
  // cubic interpolation: halving the step cuts the off-node error by about 16
  spec.nodes_per_axis = 64;
  const Field3 fine = sample(f, QuadGrid::make(params, TruncationBox{}, spec, 0));
  double coarse_err = 0, fine_err = 0;
  for (const Point& off : {make_point(0.1, -0.2, 0.05), make_point(-0.6, 0.33, -0.4), make_point(0.9, 0.7, 0.3)}) {
    coarse_err = std::max(coarse_err, std::abs(s(off) - f(off)));
    fine_err = std::max(fine_err, std::abs(fine(off) - f(off)));
  }
  EXPECT_LT(coarse_err, 2e-2);
  EXPECT_LT(fine_err, coarse_err / 8);
  // Negligible edges: outside reads as zero.
  EXPECT_EQ(s(make_point(9, 0, 0)), cplx{});

  const Field3 wide = Field3::lazy(1, [](const Point& p) { return cplx{std::exp(-0.05 * p.x[0] * p.x[0]), 0}; });
  const Field3 sw = sample(wide, grid);
  EXPECT_THROW(sw(make_point(9, 0, 0)), SupportOverflow);
}

TEST(Field, InnerIsConjugateLinearInSecondSlot) {
  const DeformationParams params{0.2, 1};
  QuadratureSpec spec;
  spec.nodes_per_axis = 16;
  const QuadGrid grid = QuadGrid::make(params, TruncationBox{}, spec, 0);
  const Field3 f = random_packet(1, TruncationBox{}, params), g = random_packet(2, TruncationBox{}, params);
  const cplx a{0.3, -1.2};
  EXPECT_NEAR(std::abs(inner(f, a * g, grid) - std::conj(a) * inner(f, g, grid)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(inner(f, g, grid) - std::conj(inner(g, f, grid))), 0.0, 1e-14);
}

}  // namespace
}  // namespace qheis
