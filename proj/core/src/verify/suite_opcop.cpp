#include "qheis/algebra_a.hpp"
#include "qheis/algebra_ahat.hpp"
#include "qheis/duality.hpp"
#include "qheis/opcop.hpp"
#include "verify/check.hpp"

namespace qheis::verify {
namespace {

// Largest pairwise discrepancy between three realisations of the same operator.
template <class A, class B, class C>
double chain_residual(const A& a, const B& b, const C& c, const std::vector<LegPoint<2>>& pts) {
  Discrepancy ab, ac;
  for (const auto& p : pts) {
    const cplx va = a(p);
    ab.add(va, b(p));
    ac.add(va, c(p));
  }
  return std::max(ab.max_relative(), ac.max_relative());
}

LegField<2> two_leg_vector(const Context& ctx, int role) {
  return tensor<2>({Field3(ctx.packet(role)), Field3(ctx.packet(role + 1))});
}

LegField<3> three_leg_vector(const Context& ctx, int role) {
  return tensor<3>({Field3(ctx.packet(role)), Field3(ctx.packet(role + 1)), Field3(ctx.packet(role + 2))});
}

}  // namespace

Suite opcop_suite() {
  Suite s;
  s.name = "opcop";
  s.description = "Kac system: the four conjugation chains, j and the opposite/co-opposite structures";
  s.depends_on = {"core"};

  Check c1;
  c1.identity = "conjugation_chain_1";
  c1.anchor = "U (L_f x 1) U* = U^* (1 x L_f) U^ = (L x L)(Delta f)";
  c1.samples = 10;
  c1.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0);
    const auto xi = two_leg_vector(ctx, 1);
    const auto k = build_kac_system(ctx.params);
    const auto& G = ctx.grid;
    const auto l = left_rep(f, ctx.params);
    const auto a = apply<2>(k.u, apply_on_leg<2>(l, 0, apply<2>(inverse(k.u), xi), G));
    const auto b = apply<2>(inverse(k.u_hat), apply_on_leg<2>(l, 1, apply<2>(k.u_hat, xi), G));
    const auto c = apply<2>(delta_a_structured(f, ctx.params), xi, G);
    return chain_residual(a, b, c, ctx.leg_probes<2>(3, 0));
  };
  s.checks.push_back(c1);

  Check c2;
  c2.identity = "conjugation_chain_2";
  c2.anchor = "U^^ (R_f x 1) U^^* = U~* (1 x R_f) U~ = (R x R)(Delta^cop f)";
  c2.samples = 10;
  c2.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0);
    const auto xi = two_leg_vector(ctx, 1);
    const auto k = build_kac_system(ctx.params);
    const auto& G = ctx.grid;
    const auto r = r_rep(f, ctx.params);
    const auto a = apply<2>(k.u_hathat, apply_on_leg<2>(r, 0, apply<2>(inverse(k.u_hathat), xi), G));
    const auto b = apply<2>(inverse(k.u_tilde), apply_on_leg<2>(r, 1, apply<2>(k.u_tilde, xi), G));
    const auto c = apply<2>(delta_cop_a_structured(f, ctx.params, LegRep::right), xi, G);
    return chain_residual(a, b, c, ctx.leg_probes<2>(3, 0));
  };
  s.checks.push_back(c2);

  Check c3;
  c3.identity = "conjugation_chain_3";
  c3.anchor = "U* (1 x rho_g) U = U~ (rho_g x 1) U~* = (rho x rho)(Delta^ g)";
  c3.samples = 10;
  c3.residual = [](const Context& ctx) {
    const Field3 g = ctx.packet(0);
    const auto xi = two_leg_vector(ctx, 1);
    const auto k = build_kac_system(ctx.params);
    const auto& G = ctx.grid;
    const auto rho = rho_rep(g, ctx.params);
    const auto a = apply<2>(inverse(k.u), apply_on_leg<2>(rho, 1, apply<2>(k.u, xi), G));
    const auto b = apply<2>(k.u_tilde, apply_on_leg<2>(rho, 0, apply<2>(inverse(k.u_tilde), xi), G));
    const auto c = apply<2>(delta_ahat_structured(g, ctx.params), xi, G);
    return chain_residual(a, b, c, ctx.leg_probes<2>(3, 0));
  };
  s.checks.push_back(c3);

  Check c4;
  c4.identity = "conjugation_chain_4";
  c4.anchor = "U^^* (1 x lambda_g) U^^ = U^ (lambda_g x 1) U^* = (lambda x lambda)(Delta^cop g)";
  c4.samples = 10;
  c4.residual = [](const Context& ctx) {
    const Field3 g = ctx.packet(0);
    const auto xi = two_leg_vector(ctx, 1);
    const auto k = build_kac_system(ctx.params);
    const auto& G = ctx.grid;
    const auto lam = lambda_rep(g, ctx.params);
    const auto a = apply<2>(inverse(k.u_hathat), apply_on_leg<2>(lam, 1, apply<2>(k.u_hathat, xi), G));
    const auto b = apply<2>(k.u_hat, apply_on_leg<2>(lam, 0, apply<2>(inverse(k.u_hat), xi), G));
    const auto c = apply<2>(delta_cop_ahat_structured(g, ctx.params), xi, G);
    return chain_residual(a, b, c, ctx.leg_probes<2>(3, 0));
  };
  s.checks.push_back(c4);

  struct JForm {
    const char* id;
    const char* anchor;
    int which;
  };
  for (const JForm jf : {JForm{"j_squared", "j^2 = 1", 0}, JForm{"j_factor_hat_first", "j = J^ J", 1},
                         JForm{"j_factor_hat_last", "j = J J^", 2}}) {
    Check c;
    c.identity = jf.id;
    c.anchor = jf.anchor;
    c.tolerance = 1e-12;
    c.refined = false;
    c.residual = [which = jf.which](const Context& ctx) {
      const auto& P = ctx.params;
      const auto probes = probe_points<1>(ctx.seed, 10000, ctx.box, P.n);
      const auto j = op_j(P);
      if (which == 0) return operator_distance<1>(compose(j, j), identity_op<1>(P.n), probes);
      const auto jh = op_j_hat(P), ja = op_j_antipode(P);
      return operator_distance<1>(j, which == 1 ? compose(jh, ja) : compose(ja, jh), probes);
    };
    s.checks.push_back(c);
  }

  Check rl;
  rl.identity = "commutation_r_l";
  rl.anchor = "R_f L_g = L_g R_f";
  rl.samples = 10;
  rl.box = TruncationBox{8.0, 8.0, 4.0};  // lattice products spread in x, y
  rl.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1), xi = ctx.packet(2);
    const auto& G = ctx.grid;
    const Field3 lhs = apply(r_rep(f, ctx.params), product_a(g, xi, G), G);
    const Field3 rhs = apply(left_rep(g, ctx.params), product_a(xi, f, G), G);
    return compare_at(lhs, rhs, ctx.node_probes(6, 0));
  };
  s.checks.push_back(rl);

  Check lr;
  lr.identity = "commutation_lambda_rho";
  lr.anchor = "lambda_f rho_g = rho_g lambda_f";
  lr.samples = 10;
  lr.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1), xi = ctx.packet(2);
    const auto& G = ctx.grid;
    const auto& P = ctx.params;
    return compare_at(apply(lambda_rep(f, P), apply(rho_rep(g, P), xi, G), G),
                      apply(rho_rep(g, P), apply(lambda_rep(f, P), xi, G), G), ctx.probes(6, 0));
  };
  s.checks.push_back(lr);

  Check rop;
  rop.identity = "r_opposite_representation";
  rop.anchor = "R_{g x f} = R_f R_g";
  rop.samples = 10;
  rop.box = TruncationBox{8.0, 8.0, 4.0};  // lattice products spread in x, y
  rop.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1), xi = ctx.packet(2);
    const auto& G = ctx.grid;
    const Field3 lhs = apply(r_rep(product_a(g, f, G), ctx.params), xi, G);
    const Field3 rhs = apply(r_rep(f, ctx.params), product_a(xi, g, G), G);
    return compare_at(lhs, rhs, ctx.node_probes(6, 0));
  };
  s.checks.push_back(rop);

  Check lop;
  lop.identity = "lambda_opposite_representation";
  lop.anchor = "lambda_{g x f} = lambda_f lambda_g";
  lop.samples = 10;
  lop.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1), xi = ctx.packet(2);
    const auto& G = ctx.grid;
    const auto& P = ctx.params;
    return compare_at(apply(lambda_rep(product_ahat(g, f, G), P), xi, G),
                      apply(lambda_rep(f, P), apply(lambda_rep(g, P), xi, G), G), ctx.probes(6, 0));
  };
  s.checks.push_back(lop);

  Check opassoc;
  opassoc.identity = "opposite_associativity";
  opassoc.anchor = "(f x^op g) x^op h = f x^op (g x^op h), with f x^op g = g x f";
  opassoc.samples = 10;
  opassoc.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1), h = ctx.packet(2);
    const auto& G = ctx.grid;
    auto op = [&G](const Field3& a, const Field3& b) { return product_ahat(b, a, G); };
    return compare_at(op(op(f, g), h), op(f, op(g, h)), ctx.probes(6, 0));
  };
  s.checks.push_back(opassoc);

  Check opstar;
  opstar.identity = "opposite_star";
  opstar.anchor = "(f x^op g)* = g* x^op f*";
  opstar.samples = 10;
  opstar.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1);
    const auto& G = ctx.grid;
    const auto& P = ctx.params;
    return compare_at(star_ahat(product_ahat(g, f, G), P), product_ahat(star_ahat(f, P), star_ahat(g, P), G),
                      ctx.probes(6, 0));
  };
  s.checks.push_back(opstar);

  Check flipc;
  flipc.identity = "coopposite_flip";
  flipc.anchor = "(L x L)(Delta^cop f) = Sigma (L x L)(Delta f) Sigma";
  flipc.samples = 10;
  flipc.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0);
    const auto xi = two_leg_vector(ctx, 1);
    const auto sigma = flip(ctx.params.n);
    const auto a = apply<2>(delta_cop_a_structured(f, ctx.params, LegRep::left), xi, ctx.grid);
    const auto b = apply<2>(sigma, apply<2>(delta_a_structured(f, ctx.params), apply<2>(sigma, xi), ctx.grid));
    return compare_legs<2>(a, b, ctx.leg_probes<2>(4, 0));
  };
  s.checks.push_back(flipc);

  Check coa;
  coa.identity = "coopposite_coassociativity";
  coa.anchor = "Delta^cop coassociative on R_f, with Delta^cop(x) = U~* (1 x x) U~";
  coa.samples = 10;
  coa.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0);
    const auto xi = three_leg_vector(ctx, 1);
    const auto w = build_kac_system(ctx.params).u_tilde;
    const auto wi = inverse(w);
    const auto x = delta_cop_a_structured(f, ctx.params, LegRep::right);
    const auto lhs = apply<3>(tensor_embed(wi, LegPair::l12),
                              apply<3>(lift_legs<3>(x, 1, 2), apply<3>(tensor_embed(w, LegPair::l12), xi), ctx.grid));
    const auto rhs = apply<3>(tensor_embed(wi, LegPair::l23),
                              apply<3>(lift_legs<3>(x, 0, 2), apply<3>(tensor_embed(w, LegPair::l23), xi), ctx.grid));
    return compare_legs<3>(lhs, rhs, ctx.leg_probes<3>(4, 0));
  };
  s.checks.push_back(coa);

  Check coh;
  coh.identity = "coopposite_coassociativity_hat";
  coh.anchor = "Delta^cop coassociative on lambda_g, with Delta^cop(x) = U^ (x x 1) U^*";
  coh.samples = 10;
  coh.residual = [](const Context& ctx) {
    const Field3 g = ctx.packet(0);
    const auto xi = three_leg_vector(ctx, 1);
    const auto w = build_kac_system(ctx.params).u_hat;
    const auto wi = inverse(w);
    const auto x = delta_cop_ahat_structured(g, ctx.params);
    const auto lhs = apply<3>(tensor_embed(w, LegPair::l12),
                              apply<3>(lift_legs<3>(x, 0, 2), apply<3>(tensor_embed(wi, LegPair::l12), xi), ctx.grid));
    const auto rhs = apply<3>(tensor_embed(w, LegPair::l23),
                              apply<3>(lift_legs<3>(x, 0, 1), apply<3>(tensor_embed(wi, LegPair::l23), xi), ctx.grid));
    return compare_legs<3>(lhs, rhs, ctx.leg_probes<3>(4, 0));
  };
  s.checks.push_back(coh);

  Check det;
  det.identity = "left_slices_of_u_hat";
  det.anchor = "(omega (x) id)(U^) = lambda_{S^(f)} where rho_f = (id (x) omega)(U)";
  det.samples = 3;
  det.residual = [](const Context& ctx) {
    const VectorState om{Field3(ctx.packet(0)), Field3(ctx.packet(1))};
    const Field3 alpha = ctx.packet(2);
    const auto& G = ctx.grid;
    const auto& P = ctx.params;
    const Field3 lhs = left_slice_apply(build_kac_system(P).u_hat, om, alpha, G);
    const Field3 rhs = apply(lambda_rep(antipode_shat(right_slice_function(om, G), P), P), alpha, G);
    return compare_at(lhs, rhs, ctx.probes(2, 0));
  };
  s.checks.push_back(det);
  return s;
}

}  // namespace qheis::verify
