#include "qheis/algebra_ahat.hpp"
#include "qheis/fundamental_unitary.hpp"
#include "verify/check.hpp"

namespace qheis::verify {

Suite hopf_ahat_suite() {
  Suite s;
  s.name = "hopf_ahat";
  s.description = "Hopf *-algebra axioms for the scaled convolution algebra and its comultiplication";
  s.depends_on = {"core"};

  Check assoc;
  assoc.identity = "associativity";
  assoc.anchor = "(f x g) x h = f x (g x h)";
  assoc.samples = 20;
  assoc.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1), h = ctx.packet(2);
    const auto& G = ctx.grid;
    return compare_at(product_ahat(product_ahat(f, g, G), h, G), product_ahat(f, product_ahat(g, h, G), G),
                      ctx.probes(6, 0));
  };
  s.checks.push_back(assoc);

  Check inv;
  inv.identity = "star_involution";
  inv.anchor = "f** = f";
  inv.tolerance = 1e-12;
  inv.samples = 20;
  inv.refined = false;
  inv.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0);
    return compare_at(star_ahat(star_ahat(f, ctx.params), ctx.params), f, ctx.probes(8, 0));
  };
  s.checks.push_back(inv);

  Check anti;
  anti.identity = "star_antimultiplicative";
  anti.anchor = "(f x g)* = g* x f*";
  anti.samples = 20;
  anti.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1);
    const auto& P = ctx.params;
    return compare_at(star_ahat(product_ahat(f, g, ctx.grid), P),
                      product_ahat(star_ahat(g, P), star_ahat(f, P), ctx.grid), ctx.probes(6, 0));
  };
  s.checks.push_back(anti);

  Check rep;
  rep.identity = "rho_representation";
  rep.anchor = "rho_{f x g} = rho_f rho_g";
  rep.samples = 10;
  rep.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1), xi = ctx.packet(2);
    const auto& P = ctx.params;
    const auto& G = ctx.grid;
    return compare_at(apply(rho_rep(product_ahat(f, g, G), P), xi, G),
                      apply(rho_rep(f, P), apply(rho_rep(g, P), xi, G), G), ctx.probes(6, 0));
  };
  s.checks.push_back(rep);

  Check forms;
  forms.identity = "delta_two_forms";
  forms.anchor = "(rho x rho)(Delta^ g) = U* (1 x rho_g) U";
  forms.samples = 10;
  forms.residual = [](const Context& ctx) {
    const Field3 g = ctx.packet(0);
    const auto xi = tensor<2>({Field3(ctx.packet(1)), Field3(ctx.packet(2))});
    return compare_legs<2>(apply<2>(delta_ahat_structured(g, ctx.params), xi, ctx.grid),
                           delta_ahat_conjugated(g, xi, ctx.grid), ctx.leg_probes<2>(4, 0));
  };
  s.checks.push_back(forms);

  Check hom;
  hom.identity = "delta_homomorphism";
  hom.anchor = "Delta^(f x g) = Delta^(f) Delta^(g) acting through rho (x) rho";
  hom.tolerance = 1e-6;
  hom.samples = 20;
  hom.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1);
    const auto xi = tensor<2>({Field3(ctx.packet(2)), Field3(ctx.packet(3))});
    const auto& P = ctx.params;
    const auto& G = ctx.grid;
    const auto lhs = apply<2>(delta_ahat_structured(product_ahat(f, g, G), P), xi, G);
    const auto rhs = apply<2>(delta_ahat_structured(f, P), apply<2>(delta_ahat_structured(g, P), xi, G), G);
    return compare_legs<2>(lhs, rhs, ctx.leg_probes<2>(4, 0));
  };
  s.checks.push_back(hom);

  Check coassoc;
  coassoc.identity = "coassociativity";
  coassoc.anchor = "(Delta^ x id) Delta^(rho_b) = (id x Delta^) Delta^(rho_b), with Delta^(x) = U* (1 x x) U";
  coassoc.samples = 20;
  coassoc.residual = [](const Context& ctx) {
    const Field3 b = ctx.packet(0);
    const auto xi = tensor<3>({Field3(ctx.packet(1)), Field3(ctx.packet(2)), Field3(ctx.packet(3))});
    const auto u = fundamental_unitary(ctx.params);
    const auto ui = inverse(u);
    const auto delta = delta_ahat_structured(b, ctx.params);
    const auto lhs = apply<3>(tensor_embed(ui, LegPair::l12),
                              apply<3>(lift_legs<3>(delta, 1, 2), apply<3>(tensor_embed(u, LegPair::l12), xi), ctx.grid));
    const auto rhs = apply<3>(tensor_embed(ui, LegPair::l23),
                              apply<3>(lift_legs<3>(delta, 0, 2), apply<3>(tensor_embed(u, LegPair::l23), xi), ctx.grid));
    return compare_legs<3>(lhs, rhs, ctx.leg_probes<3>(4, 0));
  };
  s.checks.push_back(coassoc);

  Check s2;
  s2.identity = "antipode_involution";
  s2.anchor = "S^(S^(b)) = b";
  s2.tolerance = 1e-10;
  s2.samples = 20;
  s2.refined = false;
  s2.residual = [](const Context& ctx) {
    const Field3 b = ctx.packet(0);
    return compare_at(antipode_shat(antipode_shat(b, ctx.params), ctx.params), b, ctx.probes(8, 0));
  };
  s.checks.push_back(s2);

  Check sstar;
  sstar.identity = "star_antipode";
  sstar.anchor = "S^(S^(b)*)* = b";
  sstar.tolerance = 1e-10;
  sstar.samples = 20;
  sstar.refined = false;
  sstar.residual = [](const Context& ctx) {
    const Field3 b = ctx.packet(0);
    const auto& P = ctx.params;
    return compare_at(star_ahat(antipode_shat(star_ahat(antipode_shat(b, P), P), P), P), b, ctx.probes(8, 0));
  };
  s.checks.push_back(sstar);

  Check santi;
  santi.identity = "antipode_antimultiplicative";
  santi.anchor = "S^(f x g) = S^(g) x S^(f)";
  santi.tolerance = 1e-8;
  santi.samples = 10;
  santi.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1);
    const auto& P = ctx.params;
    return compare_at(antipode_shat(product_ahat(f, g, ctx.grid), P),
                      product_ahat(antipode_shat(g, P), antipode_shat(f, P), ctx.grid), ctx.probes(6, 0));
  };
  s.checks.push_back(santi);

  Check flip_check;
  flip_check.identity = "antipode_coproduct_flip";
  flip_check.anchor = "(S^ x S^) Delta^ = chi Delta^ S^, as (J x J)(rho x rho)(Delta^(b*))(J x J) = Sigma (rho x rho)(Delta^(S^ b)) Sigma";
  flip_check.samples = 20;
  flip_check.residual = [](const Context& ctx) {
    const Field3 b = ctx.packet(0);
    const auto xi = tensor<2>({Field3(ctx.packet(1)), Field3(ctx.packet(2))});
    const auto& P = ctx.params;
    const auto j = op_j_antipode(P);
    const auto jj = kron(j, j);
    const auto sigma = flip(P.n);
    const auto lhs = apply<2>(jj, apply<2>(delta_ahat_structured(star_ahat(b, P), P), apply<2>(jj, xi), ctx.grid));
    const auto rhs =
        apply<2>(sigma, apply<2>(delta_ahat_structured(antipode_shat(b, P), P), apply<2>(sigma, xi), ctx.grid));
    return compare_legs<2>(lhs, rhs, ctx.leg_probes<2>(4, 0));
  };
  s.checks.push_back(flip_check);

  Check contract;
  contract.identity = "antipode_implemented";
  contract.anchor = "rho_{S^(f)} = J rho_{f*} J";
  contract.samples = 10;
  contract.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), xi = ctx.packet(1);
    const auto& P = ctx.params;
    const auto j = op_j_antipode(P);
    return compare_at(apply(rho_rep(antipode_shat(f, P), P), xi, ctx.grid),
                      apply(j, apply(rho_rep(star_ahat(f, P), P), apply(j, xi), ctx.grid)), ctx.probes(4, 0));
  };
  s.checks.push_back(contract);
  return s;
}

}  // namespace qheis::verify
