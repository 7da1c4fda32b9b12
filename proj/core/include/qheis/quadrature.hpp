#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "qheis/types.hpp"

namespace qheis {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  // Uniform symmetric lattice with node 0 at index `center` (trapezoid only).
  bool lattice = false;
  double step = 0;
  int center = 0;

  std::size_t size() const { return nodes.size(); }
};

// Trapezoid: `intervals` cells (intervals + 1 nodes, even counts put a node at 0).
// Gauss-Legendre: `intervals` nodes.
Rule1D make_rule(QuadratureRule rule, int intervals, double half_width);
Rule1D gauss_legendre(int count, double lo, double hi);

// Tensor-product quadrature setup for functions of (x, y, r) with x, y in R^n.
struct QuadGrid {
  DeformationParams params;
  TruncationBox box;
  Rule1D x, y, r;
  int level = 0;
  // Relative magnitude allowed on the outermost nodes before SupportOverflow.
  double support_floor = 1e-8;

  static QuadGrid make(const DeformationParams& params, const TruncationBox& box, const QuadratureSpec& spec,
                       int level);
  // Rules for all 2n+1 axes in (x_1..x_n, y_1..y_n, r) order.
  std::vector<const Rule1D*> axes() const;
};

// Integrates f over the tensor grid of `rules`; the callback receives one coordinate per axis.
// Throws SupportOverflow when |f| on the outermost nodes exceeds support_floor * max|f|.
cplx integrate_nd(std::span<const Rule1D* const> rules, const std::function<cplx(std::span<const double>)>& f,
                  double support_floor = std::numeric_limits<double>::infinity());

}  // namespace qheis
