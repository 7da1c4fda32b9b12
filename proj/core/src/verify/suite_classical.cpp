#include "qheis/algebra_a.hpp"
#include "qheis/algebra_ahat.hpp"
#include "qheis/duality.hpp"
#include "qheis/fourier.hpp"
#include "qheis/phase.hpp"
#include "verify/check.hpp"

namespace qheis::verify {
namespace {

PacketSum transform(const PacketSum& f, FourierAxis axis, FourierDirection dir) {
  return fourier_packet(f, axis, dir == FourierDirection::inverse);
}

// Tighter packets keep the sheared z-support of a group convolution inside the box.
PacketFamily convolution_family() {
  PacketFamily fam;
  fam.width_xy_min = 2.0;
  fam.width_xy_max = 3.0;
  return fam;
}

TruncationBox convolution_box() {
  TruncationBox box;
  box.half_width_r = 6.0;
  return box;
}

}  // namespace

Suite classical_suite() {
  Suite s;
  s.name = "classical";
  s.description = "lambda = 0 reduction to the Heisenberg group and the dual group picture";
  s.depends_on = {"core"};

  Check conv;
  conv.identity = "heisenberg_convolution";
  conv.anchor = "F_z(F * G) = F_z F x F_z G for the Heisenberg group convolution";
  conv.tolerance = 1e-6;
  conv.samples = 3;
  conv.lambdas = LambdaSet::zero;
  conv.box = convolution_box();
  conv.family = convolution_family();
  conv.residual = [](const Context& ctx) {
    const PacketSum big_f = ctx.packet(0), big_g = ctx.packet(1);
    const auto& G = ctx.grid;
    const Field3 lhs = product_a(transform(big_f, FourierAxis::r, FourierDirection::forward),
                                 transform(big_g, FourierAxis::r, FourierDirection::forward), G);
    // (F * G)(x, y, z) = int F(w~) G(w~^{-1} w), the group law adding beta(x, y') to z.
    const Field3 group_conv = Field3::lazy(1, [big_f, big_g, G](const Point& p) {
      const auto axes = G.axes();
      return integrate_nd(axes, [&](std::span<const double> v) {
        const Point t = make_point(v[0], v[1], v[2]);
        const cplx a = big_f(t);
        if (a == cplx{}) return cplx{};
        const double dx = p.x[0] - v[0], dy = p.y[0] - v[1];
        return a * big_g(make_point(dx, dy, p.r - v[2] - v[0] * dy));
      });
    });
    const Field3 rhs = partial_fourier_r(group_conv, FourierDirection::forward, G);
    return compare_at(lhs, rhs, ctx.node_probes(2, 0));
  };
  s.checks.push_back(conv);

  Check co;
  co.identity = "coproduct_pullback";
  co.anchor = "F_r^{-1}(Delta^ f)(x,y,z; x',y',z') = F(x+x', y+y', z+z'+beta(x,y'))";
  co.tolerance = 1e-6;
  co.samples = 10;
  co.lambdas = LambdaSet::zero;
  co.residual = [](const Context& ctx) {
    const PacketSum f = ctx.packet(0);
    const PacketSum big_f = transform(f, FourierAxis::r, FourierDirection::inverse);
    Discrepancy d;
    for (const auto& w : ctx.leg_probes<2>(4, 0)) {
      const Point &p = w[0], &q = w[1];
      const Rule1D* ax[] = {&ctx.grid.r};
      const cplx lhs = integrate_nd(ax, [&](std::span<const double> v) {
        const double r = v[0];
        const LegPoint<2> at{make_point(p.x[0], p.y[0], r), make_point(q.x[0], q.y[0], r)};
        return delta_ahat_density(Field3(f), ctx.params, at) * e_phase(r * (p.r + q.r));
      });
      d.add(lhs, big_f(make_point(p.x[0] + q.x[0], p.y[0] + q.y[0], p.r + q.r + p.x[0] * q.y[0])));
    }
    return d.max_relative();
  };
  s.checks.push_back(co);

  Check inv;
  inv.identity = "antipode_pullback";
  inv.anchor = "F_r^{-1}(S^ f)(x,y,z) = F(-x, -y, -z + beta(x,y)), the group inverse";
  inv.tolerance = 1e-8;
  inv.samples = 10;
  inv.lambdas = LambdaSet::zero;
  inv.residual = [](const Context& ctx) {
    const PacketSum f = ctx.packet(0);
    const PacketSum big_f = transform(f, FourierAxis::r, FourierDirection::inverse);
    const Field3 pulled = partial_fourier_r(antipode_shat(f, ctx.params), FourierDirection::inverse, ctx.grid);
    Discrepancy d;
    for (const auto& p : ctx.probes(6, 0))
      d.add(pulled(p), big_f(make_point(-p.x[0], -p.y[0], -p.r + p.x[0] * p.y[0])));
    return d.max_relative();
  };
  s.checks.push_back(inv);

  Check dual;
  dual.identity = "dual_group_convolution";
  dual.anchor = "F_xy(f x g) is the right-Haar convolution of F_xy f and F_xy g on the dual group";
  dual.samples = 2;
  dual.num = 2;  // momentum-space packets are narrow
  dual.residual = [](const Context& ctx) {
    const PacketSum f = ctx.packet(0), g = ctx.packet(1);
    auto fxy = [](const PacketSum& h) {
      return transform(transform(h, FourierAxis::x, FourierDirection::forward), FourierAxis::y,
                       FourierDirection::forward);
    };
    const PacketSum fh = fxy(f), gh = fxy(g);
    const Field3 lhs = partial_fourier_xy(product_ahat(f, g, ctx.grid), FourierDirection::forward, ctx.grid);
    Discrepancy d;
    for (const auto& p : ctx.probes(3, 0)) {
      DualGroupElement at;
      at.p = p.x;
      at.q = p.y;
      at.r = p.r;
      d.add(lhs(p), dual_convolution(fh, gh, at, ctx.grid));
    }
    return d.max_relative();
  };
  s.checks.push_back(dual);

  Check haar;
  haar.identity = "dual_group_right_haar";
  haar.anchor = "(e^{-2 lambda r})^n dp dq dr is invariant under right translation";
  haar.tolerance = 1e-8;
  haar.samples = 5;
  haar.refined = false;
  haar.residual = [](const Context& ctx) {
    const auto& P = ctx.params;
    auto element = [](const Point& p) {
      DualGroupElement e;
      e.p = p.x;
      e.q = p.y;
      e.r = p.r;
      return e;
    };
    auto coords = [](const DualGroupElement& e) { return std::array<double, 3>{e.p[0], e.q[0], e.r}; };
    auto density = [&](double r) { return std::exp(-2.0 * P.n * P.lambda * r); };
    const auto pts = ctx.probes(4, 0);
    const DualGroupElement h = element(pts[3]);
    double worst = 0;
    for (int i = 0; i < 3; ++i) {
      const DualGroupElement g = element(pts[static_cast<std::size_t>(i)]);
      const auto gh = coords(dual_group_mul(g, h, P));
      // Jacobian of g -> g h by central differences in (p, q, r).
      constexpr double step = 1e-5;
      double jac[3][3];
      for (int k = 0; k < 3; ++k) {
        DualGroupElement up = g, dn = g;
        if (k == 0) {
          up.p[0] += step;
          dn.p[0] -= step;
        } else if (k == 1) {
          up.q[0] += step;
          dn.q[0] -= step;
        } else {
          up.r += step;
          dn.r -= step;
        }
        const auto a = coords(dual_group_mul(up, h, P)), b = coords(dual_group_mul(dn, h, P));
        for (int m = 0; m < 3; ++m) jac[m][k] = (a[m] - b[m]) / (2 * step);
      }
      const double det = jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) -
                         jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0]) +
                         jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]);
      worst = std::max(worst, relative_gap(density(gh[2]) * std::abs(det), density(g.r)));
    }
    return worst;
  };
  s.checks.push_back(haar);
  return s;
}

}  // namespace qheis::verify
