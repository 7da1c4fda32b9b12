#pragma once

#include "qheis/hilbert.hpp"

namespace qheis {

// j xi(x,y,r) = (e^{lambda r})^n ebar[eta(r) beta(x,y)] xi(-e^{lambda r} x, -e^{lambda r} y, -r)
WeightedCompositionOp<1> op_j(const DeformationParams& params);

// The four multiplicative unitaries, composed from U, the flip and j.
struct KacSystem {
  WeightedCompositionOp<2> u;         // U
  WeightedCompositionOp<2> u_hat;     // Sigma (j x 1) U (j x 1) Sigma
  WeightedCompositionOp<2> u_tilde;   // (j x 1) (Sigma U Sigma) (j x 1)
  WeightedCompositionOp<2> u_hathat;  // (j x j) U (j x j)
  WeightedCompositionOp<1> j;
  WeightedCompositionOp<2> sigma;
};
KacSystem build_kac_system(const DeformationParams& params);

// Sigma X* Sigma
WeightedCompositionOp<2> flipped_adjoint(const WeightedCompositionOp<2>& x);

// (R_f xi)(x,y,r) = int f(x~,y~,r) xi(x - x~, y - y~, r) ebar[eta(r) beta(x - x~, y~)] dx~ dy~
KernelOp r_rep(const Field3& f, const DeformationParams& params);
// (lambda_f zeta)(x,y,r) = int f(e^{lambda r~} x, e^{lambda r~} y, r - r~) zeta(x,y,r~) dr~
KernelOp lambda_rep(const Field3& f, const DeformationParams& params);

// Co-opposite comultiplication of f, carried on {x' = e^{lambda r} x, y' = e^{lambda r} y} with value
// f(x, y, r + r'). The representation acting on each leg is chosen by `rep`.
enum class LegRep { left, right };
LegKernelOp<2> delta_cop_a_structured(const Field3& f, const DeformationParams& params, LegRep rep);

// Co-opposite comultiplication of g on {r = r'}: g(x + x', y + y', r) e[eta(r) beta(x', y)].
cplx delta_cop_ahat_density(const Field3& g, const DeformationParams& params, const LegPoint<2>& w);
// (lambda (x) lambda) of that kernel; one fibre variable.
LegKernelOp<2> delta_cop_ahat_structured(const Field3& g, const DeformationParams& params);

}  // namespace qheis
