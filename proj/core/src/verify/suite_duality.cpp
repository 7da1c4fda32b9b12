#include "qheis/algebra_a.hpp"
#include "qheis/algebra_ahat.hpp"
#include "qheis/duality.hpp"
#include "qheis/fundamental_unitary.hpp"
#include "verify/check.hpp"

namespace qheis::verify {

Suite duality_suite() {
  Suite s;
  s.name = "duality";
  s.description = "dual pairing compatibilities, slices of U and the truncated Parseval lemma";
  s.depends_on = {"core"};

  Check p1;
  p1.identity = "pairing_product_coproduct";
  p1.anchor = "<f1 x f2, g> = <f1 (x) f2, Delta^ g>";
  p1.tolerance = 1e-6;
  p1.samples = 5;
  p1.residual = [](const Context& ctx) {
    const Field3 f1 = ctx.packet(0), f2 = ctx.packet(1), g = ctx.packet(2);
    return relative_gap(dual_pairing(product_a(f1, f2, ctx.grid), g, ctx.grid),
                        pairing_tensor_delta_ahat(f1, f2, g, ctx.grid));
  };
  s.checks.push_back(p1);

  Check p2;
  p2.identity = "pairing_coproduct_product";
  p2.anchor = "<f, g1 x g2> = <Delta f, g1 (x) g2>";
  p2.tolerance = 1e-6;
  p2.samples = 3;
  p2.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g1 = ctx.packet(1), g2 = ctx.packet(2);
    return relative_gap(dual_pairing(f, product_ahat(g1, g2, ctx.grid), ctx.grid),
                        pairing_delta_a_tensor(f, g1, g2, ctx.grid));
  };
  s.checks.push_back(p2);

  Check p3;
  p3.identity = "pairing_antipodes";
  p3.anchor = "<S(f), g> = <f, S^(g)>";
  p3.tolerance = 1e-6;
  p3.samples = 5;
  p3.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1);
    return relative_gap(dual_pairing(antipode_s(f, ctx.params), g, ctx.grid),
                        dual_pairing(f, antipode_shat(g, ctx.params), ctx.grid));
  };
  s.checks.push_back(p3);

  Check p4;
  p4.identity = "pairing_involutions";
  p4.anchor = "<f, g*> = conj <S(f)*, g>";
  p4.tolerance = 1e-6;
  p4.samples = 5;
  p4.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), g = ctx.packet(1);
    const auto& P = ctx.params;
    return relative_gap(dual_pairing(f, star_ahat(g, P), ctx.grid),
                        std::conj(dual_pairing(star_a(antipode_s(f, P), P), g, ctx.grid)));
  };
  s.checks.push_back(p4);

  Check rs;
  rs.identity = "right_slice";
  rs.anchor = "(id (x) omega)(U) = rho_f with f the closed-form right slice";
  rs.samples = 5;
  rs.residual = [](const Context& ctx) {
    const VectorState om{Field3(ctx.packet(0)), Field3(ctx.packet(1))};
    const Field3 alpha = ctx.packet(2);
    const auto u = fundamental_unitary(ctx.params);
    return compare_at(apply(rho_rep(right_slice_function(om, ctx.grid), ctx.params), alpha, ctx.grid),
                      right_slice_apply(u, om, alpha, ctx.grid), ctx.probes(2, 0));
  };
  s.checks.push_back(rs);

  Check ls;
  ls.identity = "left_slice";
  ls.anchor = "(omega (x) id)(U) = L_f with f the closed-form left slice";
  ls.samples = 5;
  ls.residual = [](const Context& ctx) {
    const VectorState om{Field3(ctx.packet(0)), Field3(ctx.packet(1))};
    const Field3 alpha = ctx.packet(2);
    const auto u = fundamental_unitary(ctx.params);
    return compare_at(apply(left_rep(left_slice_function(om, ctx.grid), ctx.params), alpha, ctx.grid),
                      left_slice_apply(u, om, alpha, ctx.grid), ctx.probes(2, 0));
  };
  s.checks.push_back(ls);

  Check si;
  si.identity = "slice_identity";
  si.anchor = "omega(rho(omega')) = omega'(L(omega))";
  si.tolerance = 1e-6;
  si.samples = 2;
  // The mismatch is set by the x, y lattice (the eta(r) x y chirp); both sides share the r sums.
  si.num = 3;
  si.den = 4;
  si.r_intervals = 12;
  si.box = TruncationBox{6.0, 6.0, 3.0};
  si.family = PacketFamily{.width_r_min = 4.0, .width_r_max = 6.0};
  si.residual = [](const Context& ctx) {
    const VectorState om{Field3(ctx.packet(0)), Field3(ctx.packet(1))};
    const VectorState omp{Field3(ctx.packet(2)), Field3(ctx.packet(3))};
    const auto& G = ctx.grid;
    // Both slice functions are read only at lattice nodes, so tabulating them first is exact.
    const Field3 rho_part = sample(right_slice_function(omp, G), G);
    const Field3 left_part = sample(left_slice_function(om, G), G);
    const cplx lhs = inner(apply(rho_rep(rho_part, ctx.params), om.xi, G), om.eta, G);
    const cplx rhs = inner(apply(left_rep(left_part, ctx.params), omp.xi, G), omp.eta, G);
    return relative_gap(lhs, rhs);
  };
  s.checks.push_back(si);

  Check wk;
  wk.identity = "wk_parseval";
  wk.anchor = "sum_k <w_k xi_l, w_k xi_j> -> <zeta, zeta> <xi_l, xi_j> as the orthonormal family grows";
  wk.tolerance = 1.0;
  wk.refined = false;
  wk.sweep_labels = {32, 64, 128, 256};
  wk.sweep = [labels = wk.sweep_labels](const Context& ctx) {
    const Field3 zeta = ctx.packet(0);
    const std::vector<Field3> vectors{Field3(ctx.packet(1)), Field3(ctx.packet(2))};
    return wk_lemma(fundamental_unitary(ctx.params), zeta, vectors, labels).residuals;
  };
  s.checks.push_back(wk);
  return s;
}

}  // namespace qheis::verify
