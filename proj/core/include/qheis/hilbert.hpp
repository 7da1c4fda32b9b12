#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qheis/field.hpp"

namespace qheis {

// Weighted compositions are evaluated in extended precision: the phases they carry reach 1e6
// at the edge of the box, and double rounding would swamp pointwise identity checks.
using WReal = long double;
using WCplx = std::complex<WReal>;
using WPoint = BasicPoint<WReal>;
template <int K>
using WLegPoint = std::array<WPoint, K>;

// (Op xi)(w) = m(w) * C(xi(sigma(w))), with C complex conjugation when `antilinear`.
template <int K>
struct WeightedCompositionOp {
  using P = WLegPoint<K>;
  std::string name;
  int n = 1;
  bool antilinear = false;
  std::function<P(const P&)> sigma;
  std::function<P(const P&)> sigma_inv;
  std::function<WCplx(const P&)> multiplier;
  std::function<WReal(const P&)> jacobian;  // |det D sigma|
};

template <int K>
WeightedCompositionOp<K> identity_op(int n) {
  using P = WLegPoint<K>;
  return {"id", n, false, [](const P& p) { return p; }, [](const P& p) { return p; },
          [](const P&) { return WCplx{1}; }, [](const P&) { return WReal{1}; }};
}

// op1 after op2: (op1 op2) xi = op1(op2 xi).
template <int K>
WeightedCompositionOp<K> compose(const WeightedCompositionOp<K>& op1, const WeightedCompositionOp<K>& op2) {
  using P = WLegPoint<K>;
  if (op1.n != op2.n) throw std::invalid_argument("compose: dimension mismatch");
  WeightedCompositionOp<K> out;
  out.name = op1.name + "*" + op2.name;
  out.n = op1.n;
  out.antilinear = op1.antilinear != op2.antilinear;
  out.sigma = [s1 = op1.sigma, s2 = op2.sigma](const P& w) { return s2(s1(w)); };
  out.sigma_inv = [i1 = op1.sigma_inv, i2 = op2.sigma_inv](const P& w) { return i1(i2(w)); };
  out.multiplier = [m1 = op1.multiplier, m2 = op2.multiplier, s1 = op1.sigma, c = op1.antilinear](const P& w) {
    const WCplx inner = m2(s1(w));
    return m1(w) * (c ? std::conj(inner) : inner);
  };
  out.jacobian = [j1 = op1.jacobian, j2 = op2.jacobian, s1 = op1.sigma](const P& w) { return j1(w) * j2(s1(w)); };
  return out;
}

template <int K>
WeightedCompositionOp<K> inverse(const WeightedCompositionOp<K>& op) {
  using P = WLegPoint<K>;
  WeightedCompositionOp<K> out;
  out.name = op.name + "^-1";
  out.n = op.n;
  out.antilinear = op.antilinear;
  out.sigma = op.sigma_inv;
  out.sigma_inv = op.sigma;
  out.multiplier = [m = op.multiplier, si = op.sigma_inv, c = op.antilinear](const P& u) {
    const WCplx v = WCplx{1} / m(si(u));
    return c ? std::conj(v) : v;
  };
  out.jacobian = [j = op.jacobian, si = op.sigma_inv](const P& u) { return WReal{1} / j(si(u)); };
  return out;
}

// Points drawn uniformly from the box for every leg.
template <int K>
std::vector<WLegPoint<K>> probe_points(std::uint64_t seed, std::size_t count, const TruncationBox& box, int n);

// max over probes of | |m|^2 - |det D sigma| | / |det D sigma|
template <int K>
double unitarity_defect(const WeightedCompositionOp<K>& op, std::span<const WLegPoint<K>> probes);

// Adjoint of a (anti)unitary weighted composition: its inverse, after checking the certificate.
template <int K>
WeightedCompositionOp<K> adjoint(const WeightedCompositionOp<K>& op, std::span<const WLegPoint<K>> probes,
                                 double tol = 1e-12) {
  if (unitarity_defect<K>(op, probes) > tol)
    throw std::domain_error("adjoint: unitarity certificate fails for " + op.name);
  auto out = inverse(op);
  out.name = op.name + "*";
  return out;
}

// Pointwise distance between two weighted compositions: relative multiplier mismatch, coordinate
// mismatch scaled by max(1, |coordinate|), and conjugation-flag mismatch (reported as 1).
template <int K>
double operator_distance(const WeightedCompositionOp<K>& a, const WeightedCompositionOp<K>& b,
                         std::span<const WLegPoint<K>> probes);

template <int K>
LegField<K> apply(const WeightedCompositionOp<K>& op, const LegField<K>& xi);
Field3 apply(const WeightedCompositionOp<1>& op, const Field3& xi);

enum class LegPair { l12, l13, l23 };
// Acts as `op` on the named pair of legs of a three-fold tensor product, identity elsewhere.
WeightedCompositionOp<3> tensor_embed(const WeightedCompositionOp<2>& op, LegPair legs);
// op1 (x) op2 on two legs. Mixed linear/antilinear factors are rejected.
WeightedCompositionOp<2> kron(const WeightedCompositionOp<1>& op1, const WeightedCompositionOp<1>& op2);
WeightedCompositionOp<2> flip(int n);

// Integral operators. Delta-structured kernels integrate only over their fibre variables:
//   delta_in_r:  fibre (x~, y~) in R^{2n}, the output r is kept;
//   delta_in_xy: fibre r~, the source (x, y) is a function of (x, y, r~);
//   none:        fibre is a full point w^ with an ordinary kernel K(w, w^).
enum class DeltaStructure { delta_in_r, delta_in_xy, none };

struct FiberTerm {
  cplx weight;
  Point source;
};

struct KernelOp {
  std::string name;
  DeltaStructure structure = DeltaStructure::none;
  std::function<FiberTerm(const Point& w, std::span<const double> fibre)> fibre_term;
  // Only for structure == none.
  std::function<cplx(const Point& w, const Point& w_hat)> kernel;
};

std::vector<const Rule1D*> fibre_axes(DeltaStructure s, const QuadGrid& grid);

Field3 apply(const KernelOp& op, const Field3& xi, const QuadGrid& grid);
// Applies a one-leg kernel operator on leg `leg` of a K-leg vector.
template <int K>
LegField<K> apply_on_leg(const KernelOp& op, int leg, const LegField<K>& xi, const QuadGrid& grid);

// Operator on K legs given by a fibre integral over `axes` (structured kernels such as images of
// comultiplications that are supported on a coordinate surface).
template <int K>
struct LegKernelOp {
  std::string name;
  std::vector<char> fibre_kinds;  // 'x', 'y' or 'r' per fibre axis
  std::function<cplx(const LegPoint<K>& w, std::span<const double> fibre, LegPoint<K>& source)> fibre_term;
};

template <int K>
LegField<K> apply(const LegKernelOp<K>& op, const LegField<K>& xi, const QuadGrid& grid);

// A two-leg structured operator placed on legs (a, b) of a K-leg vector.
template <int K>
LegKernelOp<K> lift_legs(const LegKernelOp<2>& op, int a, int b) {
  if (a == b || a < 0 || b < 0 || a >= K || b >= K) throw std::invalid_argument("lift_legs: bad legs");
  LegKernelOp<K> out;
  out.name = op.name + "_" + std::to_string(a + 1) + std::to_string(b + 1);
  out.fibre_kinds = op.fibre_kinds;
  out.fibre_term = [f = op.fibre_term, a, b](const LegPoint<K>& w, std::span<const double> v, LegPoint<K>& src) {
    LegPoint<2> s2;
    const cplx weight = f(LegPoint<2>{w[a], w[b]}, v, s2);
    src = w;
    src[a] = s2[0];
    src[b] = s2[1];
    return weight;
  };
  return out;
}

// Kernel operator with plain function kernel built by composing a delta_in_xy operator after a
// delta_in_r one. The caller supplies the explicit composite kernel; this only validates structure.
KernelOp compose_kernels(const KernelOp& outer, const KernelOp& inner,
                         std::function<cplx(const Point&, const Point&)> composite_kernel);

// Hilbert-Schmidt norm squared of a plain-kernel operator, by tensor quadrature over both points.
double hs_trace_of_product(const KernelOp& op, const QuadGrid& grid);

// omega_{xi,eta}(T) = <T xi, eta>
struct VectorState {
  Field3 xi;
  Field3 eta;
};

}  // namespace qheis
