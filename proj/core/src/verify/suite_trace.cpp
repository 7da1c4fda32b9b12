#include "qheis/algebra_a.hpp"
#include "qheis/algebra_ahat.hpp"
#include "qheis/duality.hpp"
#include "verify/check.hpp"

namespace qheis::verify {
namespace {

// The six-dimensional Hilbert-Schmidt integral affords 12 and then 24 nodes per axis. Packets narrow
// in r keep e^{lambda (r - r~)} near 1, which stops the kernel from smearing out in x and y.
PacketFamily trace_family() {
  PacketFamily fam;
  fam.center_xy = 0.25;
  fam.center_r = 0.2;
  fam.width_xy_min = 1.0;
  fam.width_xy_max = 1.2;
  fam.max_terms = 2;
  fam.width_r_min = 4.0;
  fam.width_r_max = 6.0;
  return fam;
}

TruncationBox trace_box() {
  TruncationBox box;
  box.half_width_x = 6.0;
  box.half_width_y = 6.0;
  box.half_width_r = 3.0;
  return box;
}

cplx weight_product(const Field3& a, const Field3& b, const QuadGrid& grid) {
  const auto& P = grid.params;
  return haar_a(product_a_lazy(star_a(a, P), a, grid), grid) *
         haar_ahat(product_ahat(star_ahat(b, P), b, grid), grid);
}

}  // namespace

Suite trace_suite() {
  Suite s;
  s.name = "trace";
  s.description = "Hilbert-Schmidt norm of rho_b L_a against the product of the two Haar weights";
  s.depends_on = {"core", "hopf_a", "haar_modular"};

  Check hs;
  hs.identity = "trace_factorization";
  hs.anchor = "||rho_b L_a||_HS^2 = phi(a* x a) phi^(b* x b)";
  hs.tolerance = 1e-3;
  hs.samples = 2;
  hs.num = 3;
  hs.den = 4;
  hs.max_levels = 2;
  hs.r_intervals = 12;  // both sides share the r lattice; the mismatch lives in x, y
  hs.box = trace_box();
  hs.family = trace_family();
  hs.residual = [](const Context& ctx) {
    const Field3 a = ctx.packet(0), b = ctx.packet(1);
    const double lhs = hs_trace_of_product(trace_class_kernel(a, b, ctx.params), ctx.grid);
    return relative_gap(lhs, weight_product(a, b, ctx.grid));
  };
  s.checks.push_back(hs);

  Check oracle;
  oracle.identity = "trace_matrix_oracle";
  oracle.anchor = "||rho_b L_a||_HS^2 from an 18 x 18 x 14 midpoint kernel matrix agrees with the quadrature value";
  oracle.tolerance = 0.05;
  oracle.refined = false;
  oracle.num = 3;
  oracle.den = 4;
  oracle.max_levels = 2;
  oracle.box = trace_box();
  oracle.family = trace_family();
  oracle.lambdas = LambdaSet::first_nonzero;
  oracle.residual = [](const Context& ctx) {
    const Field3 a = ctx.packet(0), b = ctx.packet(1);
    const auto kernel = trace_class_kernel(a, b, ctx.params);
    const QuadGrid fine = QuadGrid::make(ctx.params, ctx.box, ctx.quad, ctx.quad.finest_level());
    return relative_gap(matrix_truncation_hs(kernel, ctx.box, 18, 14), hs_trace_of_product(kernel, fine));
  };
  s.checks.push_back(oracle);
  return s;
}

}  // namespace qheis::verify
