#include "qheis/algebra_a.hpp"
#include "qheis/algebra_ahat.hpp"
#include "qheis/fundamental_unitary.hpp"
#include "verify/check.hpp"

namespace qheis::verify {
namespace {

// Products are compared on a window of coarse lattice nodes at one random r (a discrete L2 ratio).
constexpr double kWindow = 3.0;

}  // namespace

Suite hopf_a_suite() {
  Suite s;
  s.name = "hopf_a";
  s.description = "Hopf *-algebra axioms for the twisted convolution algebra and its comultiplication";
  s.depends_on = {"core"};

  Check assoc;
  assoc.identity = "associativity";
  assoc.anchor = "(f x g) x h = f x (g x h)";
  assoc.samples = 20;
  assoc.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1), h = ctx.packet(2);
    const Field3 lhs = product_a(product_a(f, g, ctx.grid), h, ctx.grid);
    const Field3 rhs = product_a(f, product_a(g, h, ctx.grid), ctx.grid);
    Discrepancy d;
    for (const auto& p : ctx.node_window(kWindow, ctx.uniform(0, -0.6, 0.6))) d.add(lhs(p), rhs(p));
    return d.l2_relative();
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
    return compare_at(star_a(star_a(f, ctx.params), ctx.params), f, ctx.probes(8, 0));
  };
  s.checks.push_back(inv);

  Check anti;
  anti.identity = "star_antimultiplicative";
  anti.anchor = "(f x g)* = g* x f*";
  anti.samples = 20;
  anti.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1);
    const Field3 lhs = star_a(product_a(f, g, ctx.grid), ctx.params);
    const Field3 rhs = product_a(star_a(g, ctx.params), star_a(f, ctx.params), ctx.grid);
    Discrepancy d;
    for (const auto& p : ctx.node_window(kWindow, ctx.uniform(0, -0.6, 0.6))) d.add(lhs(p), rhs(p));
    return d.l2_relative();
  };
  s.checks.push_back(anti);

  Check rep;
  rep.identity = "left_regular_representation";
  rep.anchor = "L_{f x g} = L_f L_g";
  rep.samples = 10;
  rep.box = TruncationBox{8.0, 8.0, 4.0};  // g x xi spreads in x, y and is read off-lattice
  rep.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1), xi = ctx.packet(2);
    const Field3 lhs = apply(left_rep(product_a(f, g, ctx.grid), ctx.params), xi, ctx.grid);
    const Field3 rhs = apply(left_rep(f, ctx.params), product_a(g, xi, ctx.grid), ctx.grid);
    return compare_at(lhs, rhs, ctx.node_probes(6, 0));
  };
  s.checks.push_back(rep);

  Check hom;
  hom.identity = "delta_homomorphism";
  hom.anchor = "Delta(f x g) = Delta(f) Delta(g) acting through L (x) L";
  hom.samples = 6;
  hom.den = 2;
  hom.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1);
    const auto xi = tensor<2>({Field3(ctx.packet(2)), Field3(ctx.packet(3))});
    const auto lhs = apply<2>(delta_a_structured(product_a(f, g, ctx.grid), ctx.params), xi, ctx.grid);
    const auto rhs = apply<2>(delta_a_structured(f, ctx.params),
                              apply<2>(delta_a_structured(g, ctx.params), xi, ctx.grid), ctx.grid);
    return compare_legs<2>(lhs, rhs, ctx.leg_probes<2>(2, 0));
  };
  s.checks.push_back(hom);

  Check coassoc;
  coassoc.identity = "coassociativity";
  coassoc.anchor = "(Delta x id) Delta(L_f) = (id x Delta) Delta(L_f), with Delta(x) = U (x x 1) U*";
  coassoc.samples = 20;
  coassoc.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0);
    const auto xi = tensor<3>({Field3(ctx.packet(1)), Field3(ctx.packet(2)), Field3(ctx.packet(3))});
    const auto u = fundamental_unitary(ctx.params);
    const auto ui = inverse(u);
    const auto delta = delta_a_structured(f, ctx.params);
    const auto lhs = apply<3>(tensor_embed(u, LegPair::l12),
                              apply<3>(lift_legs<3>(delta, 0, 2), apply<3>(tensor_embed(ui, LegPair::l12), xi), ctx.grid));
    const auto rhs = apply<3>(tensor_embed(u, LegPair::l23),
                              apply<3>(lift_legs<3>(delta, 0, 1), apply<3>(tensor_embed(ui, LegPair::l23), xi), ctx.grid));
    return compare_legs<3>(lhs, rhs, ctx.leg_probes<3>(4, 0));
  };
  s.checks.push_back(coassoc);

  Check s2;
  s2.identity = "antipode_involution";
  s2.anchor = "S(S(f)) = f";
  s2.tolerance = 1e-10;
  s2.samples = 20;
  s2.refined = false;
  s2.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0);
    return compare_at(antipode_s(antipode_s(f, ctx.params), ctx.params), f, ctx.probes(8, 0));
  };
  s.checks.push_back(s2);

  Check contract;
  contract.identity = "antipode_implemented";
  contract.anchor = "L_{S(f)} = J^ L_{f*} J^";
  contract.samples = 10;
  contract.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), xi = ctx.packet(1);
    const auto jh = op_j_hat(ctx.params);
    const Field3 lhs = apply(left_rep(antipode_s(f, ctx.params), ctx.params), xi, ctx.grid);
    const Field3 rhs = apply(jh, apply(left_rep(star_a(f, ctx.params), ctx.params), apply(jh, xi), ctx.grid));
    return compare_at(lhs, rhs, ctx.probes(4, 0));
  };
  s.checks.push_back(contract);

  Check santi;
  santi.identity = "antipode_antimultiplicative";
  santi.anchor = "S(f x g) = S(g) x S(f)";
  santi.samples = 10;
  santi.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1);
    const Field3 lhs = antipode_s(product_a_lazy(f, g, ctx.grid), ctx.params);
    const Field3 rhs = product_a_lazy(antipode_s(g, ctx.params), antipode_s(f, ctx.params), ctx.grid);
    return compare_at(lhs, rhs, ctx.probes(4, 0));
  };
  s.checks.push_back(santi);

  Check trace;
  trace.identity = "haar_trace";
  trace.anchor = "phi(f x g) = phi(g x f)";
  trace.tolerance = 1e-6;
  trace.samples = 5;
  trace.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1);
    return relative_gap(haar_a(product_a_lazy(f, g, ctx.grid), ctx.grid),
                        haar_a(product_a_lazy(g, f, ctx.grid), ctx.grid));
  };
  s.checks.push_back(trace);

  Check norm2;
  norm2.identity = "haar_square_norm";
  norm2.anchor = "phi(f* x f) = ||f||_2^2";
  norm2.tolerance = 1e-6;
  norm2.samples = 5;
  norm2.residual = [](const Context& ctx) {
    const PacketSum f = ctx.packet(0);
    return relative_gap(haar_a(product_a_lazy(star_a(f, ctx.params), f, ctx.grid), ctx.grid), packet_inner(f, f));
  };
  s.checks.push_back(norm2);
  return s;
}

}  // namespace qheis::verify
