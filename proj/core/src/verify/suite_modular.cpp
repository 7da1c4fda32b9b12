#include "qheis/algebra_ahat.hpp"
#include "verify/check.hpp"

namespace qheis::verify {

Suite modular_suite() {
  Suite s;
  s.name = "haar_modular";
  s.description = "Haar weight on the scaled convolution algebra, its GNS map and modular data";
  s.depends_on = {"core"};

  Check norm2;
  norm2.identity = "haar_square_norm";
  norm2.anchor = "phi^(f x f*) = ||f||_2^2";
  norm2.tolerance = 1e-6;
  norm2.samples = 5;
  norm2.residual = [](const Context& ctx) {
    const PacketSum f = ctx.packet(0);
    return relative_gap(haar_ahat(product_ahat(f, star_ahat(f, ctx.params), ctx.grid), ctx.grid),
                        packet_inner(f, f));
  };
  s.checks.push_back(norm2);

  Check anti;
  anti.identity = "haar_antipode";
  anti.anchor = "phi^(S^(f)) = phi^(f)";
  anti.tolerance = 1e-6;
  anti.samples = 5;
  anti.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0);
    return relative_gap(haar_ahat(antipode_shat(f, ctx.params), ctx.grid), haar_ahat(f, ctx.grid));
  };
  s.checks.push_back(anti);

  Check gns;
  gns.identity = "gns_inner_product";
  gns.anchor = "<Gamma f, Gamma g> = phi^(g* x f)";
  gns.tolerance = 1e-6;
  gns.samples = 5;
  gns.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1);
    const auto& P = ctx.params;
    return relative_gap(inner(gns_gamma(f, P), gns_gamma(g, P), ctx.grid),
                        haar_ahat(product_ahat(star_ahat(g, P), f, ctx.grid), ctx.grid));
  };
  s.checks.push_back(gns);

  Check gnsrep;
  gnsrep.identity = "gns_representation";
  gnsrep.anchor = "Gamma(f x g) = rho_f Gamma(g)";
  gnsrep.tolerance = 1e-6;
  gnsrep.samples = 5;
  gnsrep.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1);
    const auto& P = ctx.params;
    return compare_at(gns_gamma(product_ahat(f, g, ctx.grid), P), apply(rho_rep(f, P), gns_gamma(g, P), ctx.grid),
                      ctx.probes(6, 0));
  };
  s.checks.push_back(gnsrep);

  Check closure;
  closure.identity = "involution_closure";
  closure.anchor = "T^ Gamma(f) = Gamma(f*)";
  closure.tolerance = 1e-10;
  closure.samples = 5;
  closure.refined = false;
  closure.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0);
    const auto& P = ctx.params;
    return compare_at(apply(op_t_hat(P), gns_gamma(f, P)), gns_gamma(star_ahat(f, P), P), ctx.probes(8, 0));
  };
  s.checks.push_back(closure);

  Check polar;
  polar.identity = "polar_decomposition";
  polar.anchor = "T^ = J^ nabla^^{1/2}";
  polar.tolerance = 1e-10;
  polar.refined = false;
  polar.residual = [](const Context& ctx) {
    const auto& P = ctx.params;
    const auto probes = probe_points<1>(ctx.seed, 10000, ctx.box, P.n);
    return operator_distance<1>(op_t_hat(P), compose(op_j_hat(P), op_nabla_power(P, 0.5)), probes);
  };
  s.checks.push_back(polar);

  Check kms;
  kms.identity = "kms_condition";
  kms.anchor = "phi^(f* x f) = phi^(sigma_{i/2}(f) x sigma_{i/2}(f)*)";
  kms.tolerance = 1e-6;
  kms.samples = 5;
  kms.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0);
    const auto& P = ctx.params;
    const Field3 h = modular_flow(f, P, cplx{0, 0.5});
    return relative_gap(haar_ahat(product_ahat(star_ahat(f, P), f, ctx.grid), ctx.grid),
                        haar_ahat(product_ahat(h, star_ahat(h, P), ctx.grid), ctx.grid));
  };
  s.checks.push_back(kms);

  Check flow;
  flow.identity = "flow_invariance";
  flow.anchor = "phi^(sigma_t(f)) = phi^(f), t in {-1, -0.5, 0.5, 1}";
  flow.tolerance = 1e-6;
  flow.samples = 5;
  flow.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0);
    const cplx base = haar_ahat(f, ctx.grid);
    double worst = 0;
    for (double t : {-1.0, -0.5, 0.5, 1.0})
      worst = std::max(worst, relative_gap(haar_ahat(modular_flow(f, ctx.params, t), ctx.grid), base));
    return worst;
  };
  s.checks.push_back(flow);

  Check impl;
  impl.identity = "flow_implemented";
  impl.anchor = "rho_{sigma_t(f)} = nabla^^{it} rho_f nabla^^{-it}";
  impl.tolerance = 1e-8;
  impl.samples = 5;
  impl.refined = false;
  impl.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), xi = ctx.packet(1);
    const auto& P = ctx.params;
    double worst = 0;
    for (double t : {-1.0, 0.5}) {
      const cplx it{0, t};
      const Field3 lhs = apply(rho_rep(modular_flow(f, P, t), P), xi, ctx.grid);
      const Field3 rhs =
          apply(op_nabla_power(P, it), apply(rho_rep(f, P), apply(op_nabla_power(P, -it), xi), ctx.grid));
      worst = std::max(worst, compare_at(lhs, rhs, ctx.probes(4, 0)));
    }
    return worst;
  };
  s.checks.push_back(impl);
  return s;
}

}  // namespace qheis::verify
