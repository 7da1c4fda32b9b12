#pragma once

#include "qheis/hilbert.hpp"

namespace qheis {

// Twisted product on the dense algebra of the quantum Heisenberg group algebra:
//   (f x g)(x,y,r) = int f(x~,y~,r) g(x-x~, y-y~, r) ebar[eta(r) beta(x~, y-y~)] dx~ dy~
// For n = 1 on a trapezoid lattice each r-slice is tabulated on the (x, y) lattice when first needed;
// otherwise the product is evaluated pointwise.
Field3 product_a(const Field3& f, const Field3& g, const QuadGrid& grid);
// Same product evaluated pointwise (2n-dimensional quadrature per evaluation).
Field3 product_a_lazy(const Field3& f, const Field3& g, const QuadGrid& grid);

// f*(x,y,r) = ebar[eta(r) beta(x,y)] conj f(-x,-y,r)
Field3 star_a(const Field3& f, const DeformationParams& params);

// Regular representation f -> L_f, a delta_in_r kernel operator.
KernelOp left_rep(const Field3& f, const DeformationParams& params);

// Image of f under the comultiplication, carried on the surface {x = e^{lambda r'} x', y = e^{lambda r'} y'}
// with value f(x', y', r + r'), acting through L (x) L.
LegKernelOp<2> delta_a_structured(const Field3& f, const DeformationParams& params);
// The same operator realised as U (L_f (x) 1) U*.
LegField<2> delta_a_conjugated(const Field3& f, const LegField<2>& xi, const QuadGrid& grid);

// S(f)(u,v,r) = (e^{2 lambda r})^n ebar[eta(r) beta(u,v)] f(-e^{lambda r} u, -e^{lambda r} v, -r)
Field3 antipode_s(const Field3& f, const DeformationParams& params);

// phi(f) = int f(0,0,r) dr
cplx haar_a(const Field3& f, const QuadGrid& grid);

}  // namespace qheis
