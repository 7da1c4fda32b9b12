#pragma once

#include <cstdint>
#include <vector>

#include "qheis/hilbert.hpp"

namespace qheis {

// max distance between X_12 X_13 X_23 and X_23 X_12 over the probes.
double pentagon_residual(const WeightedCompositionOp<2>& u, std::span<const WLegPoint<3>> probes);

// (omega_{xi,eta} (x) id)(U) = L_f with
//   f(x~,y~,r') = (e^{lambda r'})^n int conj eta(e^{lambda r'} x~, e^{lambda r'} y~, r) xi(x~, y~, r + r') dr
Field3 left_slice_function(const VectorState& omega, const QuadGrid& grid);
// Direct slice of U on the first leg: alpha -> int conj eta(w) U(xi (x) alpha)(w, .) dw
Field3 left_slice_apply(const WeightedCompositionOp<2>& u, const VectorState& omega, const Field3& alpha,
                        const QuadGrid& grid);

// (id (x) omega_{xi,eta})(U) = rho_f with
//   f(x,y,r~) = int ebar[eta(r~) beta(x, y - e^{-lambda r~} y~)] xi(x~ - e^{lambda r~} x, y~ - e^{lambda r~} y, -r~)
//               conj eta(x~, y~, -r~) dx~ dy~
Field3 right_slice_function(const VectorState& omega, const QuadGrid& grid);
// Direct slice of U on the second leg: alpha -> int U(alpha (x) xi)(., w') conj eta(w') dw'
Field3 right_slice_apply(const WeightedCompositionOp<2>& u, const VectorState& omega, const Field3& alpha,
                         const QuadGrid& grid);

// <f, g> = int f(x,y,r) g(e^{lambda r} x, e^{lambda r} y, -r) dx dy dr
cplx dual_pairing(const Field3& f, const Field3& g, const QuadGrid& grid);

// <f1 (x) f2, Delta^ g> through the Dirac-surface form of Delta^ g (the r = r' collapse):
//   int f1(x,y,r~) f2(x',y',r~) [Delta^ g](e^{lambda r~}(x,y), -r~; e^{lambda r~}(x',y'), -r~)
// Packet inputs with n = 1 use a factorised evaluation of the same tensor trapezoid sum.
cplx pairing_tensor_delta_ahat(const Field3& f1, const Field3& f2, const Field3& g, const QuadGrid& grid);
// <Delta f, g1 (x) g2> through the Dirac-surface form of Delta f:
//   int f(x',y',r+r') g1(e^{lambda(r+r')}(x',y'), -r) g2(e^{lambda r'}(x',y'), -r') dx' dy' dr dr'
cplx pairing_delta_a_tensor(const Field3& f, const Field3& g1, const Field3& g2, const QuadGrid& grid);

// Kernel of rho_b L_a as a plain function of (w, w^):
//   (e^{lambda s})^n b(x,y,s) a(e^{lambda s} x - x^, e^{lambda s} y - y^, r^) ebar[eta(r^) beta(e^{lambda s} x - x^, y^)],
//   s = r - r^
KernelOp trace_class_kernel(const Field3& a, const Field3& b, const DeformationParams& params);
// ||K||_HS^2 as the squared Frobenius norm of the kernel matrix on a midpoint grid of the box,
// m_xy x m_xy x m_r points per leg. Rows are generated one at a time.
double matrix_truncation_hs(const KernelOp& k, const TruncationBox& box, int points_xy, int points_r);

// Dual group G: (p,q,r)(p',q',r') = (e^{lambda r'} p + p', e^{lambda r'} q + q', r + r').
struct DualGroupElement {
  Vec p, q;
  double r = 0;
};
DualGroupElement dual_group_mul(const DualGroupElement& a, const DualGroupElement& b, const DeformationParams& params);
DualGroupElement dual_group_inverse(const DualGroupElement& a, const DeformationParams& params);

// Right-Haar weighted convolution on G of the (x,y) -> (p,q) transforms of f and g:
//   int (e^{-2 lambda r~})^n F(p~,q~,r~) G((p,q,r)(p~,q~,r~)^{-1}) dp~ dq~ dr~
// with F, G given as packet sums already in (p,q,r) variables.
cplx dual_convolution(const PacketSum& fhat, const PacketSum& ghat, const DualGroupElement& at, const QuadGrid& grid);

// Truncated Parseval check for w_k = (omega_{zeta,xi_k} (x) id)(U) over a Hermite-type family.
struct WkLemmaResult {
  std::vector<int> family_sizes;
  std::vector<double> residuals;  // || S_K - <zeta,zeta> G ||_F / || <zeta,zeta> G ||_F per family size
};
struct WkLemmaSetup {
  double half_x = 4, half_y = 4, half_r = 3;  // family and quadrature box
  double step = 0.5;
  double hermite_scale = 1.0;                 // exp(-scale u^2 / 2) envelope
};
WkLemmaResult wk_lemma(const WeightedCompositionOp<2>& u, const Field3& zeta, std::span<const Field3> vectors,
                       std::span<const int> family_sizes, const WkLemmaSetup& setup = {});

}  // namespace qheis
