#pragma once

#include "qheis/hilbert.hpp"

namespace qheis {

// (f x g)(x,y,r) = int f(x,y,r~) g(e^{lambda r~} x, e^{lambda r~} y, r - r~) dr~
Field3 product_ahat(const Field3& f, const Field3& g, const QuadGrid& grid);

// f*(x,y,r) = conj f(e^{lambda r} x, e^{lambda r} y, -r)
Field3 star_ahat(const Field3& f, const DeformationParams& params);

// (rho_f zeta)(x,y,r) = int (e^{lambda r~})^n f(x,y,r~) zeta(e^{lambda r~} x, e^{lambda r~} y, r - r~) dr~
KernelOp rho_rep(const Field3& f, const DeformationParams& params);

// Two-leg kernel of the comultiplication of g, living on {r = r'}:
//   g(x + x', y + y', r) e[eta(r) beta(x, y')]
cplx delta_ahat_density(const Field3& g, const DeformationParams& params, const LegPoint<2>& w);
// (rho (x) rho) of that kernel, one fibre variable r~.
LegKernelOp<2> delta_ahat_structured(const Field3& g, const DeformationParams& params);
// The same operator realised as U* (1 (x) rho_g) U.
LegField<2> delta_ahat_conjugated(const Field3& g, const LegField<2>& xi, const QuadGrid& grid);

// S^(f)(x,y,r) = ebar[eta(r) beta(x,y)] f(-e^{lambda r} x, -e^{lambda r} y, -r)
Field3 antipode_shat(const Field3& f, const DeformationParams& params);

// Anti-unitaries and the modular operator, all as weighted compositions on one leg.
//   J xi    = ebar[eta(r) beta(x,y)] conj xi(-x, -y, r)
//   J^ xi   = (e^{lambda r})^n conj xi(e^{lambda r} x, e^{lambda r} y, -r)
//   T^ xi   = (e^{2 lambda r})^n conj xi(e^{lambda r} x, e^{lambda r} y, -r)
//   nabla^z = multiplication by (e^{-2 lambda r})^{n z}
WeightedCompositionOp<1> op_j_antipode(const DeformationParams& params);
WeightedCompositionOp<1> op_j_hat(const DeformationParams& params);
WeightedCompositionOp<1> op_t_hat(const DeformationParams& params);
WeightedCompositionOp<1> op_nabla_power(const DeformationParams& params, cplx exponent);

// phi^(f) = int f(x,y,0) dx dy
cplx haar_ahat(const Field3& f, const QuadGrid& grid);

// Gamma(f) = (e^{lambda r})^n f
Field3 gns_gamma(const Field3& f, const DeformationParams& params);

// sigma_t(f) = (e^{-2 lambda r i t})^n f; complex t gives the analytic continuation (t = i/2 etc.).
Field3 modular_flow(const Field3& f, const DeformationParams& params, cplx t);

// g with rho_g = (omega_{zeta,zeta} (x) id)(Delta^ rho_b):
//   g(x',y',r~) = int (e^{lambda r~})^n conj zeta(x,y,r) b(x+x', y+y', r~) e[eta(r~) beta(x,y')]
//                      zeta(e^{lambda r~} x, e^{lambda r~} y, r - r~) dx dy dr
Field3 slice_to_ahat_function(const Field3& b, const Field3& zeta, const QuadGrid& grid);

}  // namespace qheis
