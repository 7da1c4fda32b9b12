#include <numbers>

#include "qheis/fourier.hpp"
#include "verify/check.hpp"

namespace qheis::verify {

Suite core_suite() {
  Suite s;
  s.name = "core";
  s.description = "quadrature and Fourier transforms that every algebra suite relies on";

  Check gauss;
  gauss.identity = "gaussian_integral";
  gauss.anchor = "int exp(-a x^2 - b y^2 - c r^2) = pi^{3/2} / sqrt(a b c)";
  gauss.tolerance = 1e-10;
  gauss.samples = 4;
  gauss.residual = [](const Context& ctx) {
    GaussianPacket p;
    p.a = ctx.uniform(0, 1.0, 2.0);
    p.b = ctx.uniform(1, 1.0, 2.0);
    p.c = ctx.uniform(2, 2.0, 4.0);
    const double exact = std::pow(std::numbers::pi, 1.5) / std::sqrt(p.a * p.b * p.c);
    return relative_gap(integrate(Field3(PacketSum{1, {p}}), ctx.grid), exact);
  };
  s.checks.push_back(gauss);

  Check roundtrip;
  roundtrip.identity = "fourier_r_roundtrip";
  roundtrip.anchor = "inverse transform in r after the forward one is the identity";
  roundtrip.tolerance = 1e-8;
  roundtrip.samples = 4;
  roundtrip.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0);
    const Field3 back = partial_fourier_r(partial_fourier_r(f, FourierDirection::forward, ctx.grid),
                                          FourierDirection::inverse, ctx.grid);
    return compare_at(back, f, ctx.probes(6, 0));
  };
  s.checks.push_back(roundtrip);

  Check xy;
  xy.identity = "fourier_xy_closed_form";
  xy.anchor = "quadrature transform in (x, y) equals the closed-form packet transform";
  xy.tolerance = 1e-8;
  xy.samples = 4;
  xy.residual = [](const Context& ctx) {
    const PacketSum f = ctx.packet(0);
    const Field3 exact = fourier_packet(fourier_packet(f, FourierAxis::x, false), FourierAxis::y, false);
    return compare_at(partial_fourier_xy(f, FourierDirection::forward, ctx.grid), exact, ctx.probes(6, 0));
  };
  s.checks.push_back(xy);

  Check unitary;
  unitary.identity = "fourier_unitarity";
  unitary.anchor = "<F xi, F eta> = <xi, eta>";
  unitary.tolerance = 1e-8;
  unitary.samples = 4;
  unitary.num = 2;  // transformed packets are narrower in the momentum variables
  unitary.residual = [](const Context& ctx) {
    const PacketSum f = ctx.packet(0), g = ctx.packet(1);
    auto full = [](const PacketSum& p) {
      return fourier_packet(fourier_packet(fourier_packet(p, FourierAxis::x, false), FourierAxis::y, false),
                            FourierAxis::r, false);
    };
    const cplx lhs = inner(Field3(full(f)), Field3(full(g)), ctx.grid);
    const cplx rhs = inner(Field3(f), Field3(g), ctx.grid);
    return std::abs(lhs - rhs);  // unit-norm inputs
  };
  s.checks.push_back(unitary);
  return s;
}

}  // namespace qheis::verify
