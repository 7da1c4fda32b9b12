#include "qheis/opcop.hpp"

#include <cmath>

#include "qheis/fundamental_unitary.hpp"
#include "qheis/phase.hpp"

namespace qheis {

WeightedCompositionOp<1> op_j(const DeformationParams& params) {
  params.validate();
  using P1 = WLegPoint<1>;
  const WReal lambda = params.lambda;
  const int n = params.n;
  WeightedCompositionOp<1> op;
  op.name = "j";
  op.n = n;
  op.sigma = [lambda](const P1& w) {
    const WReal s = std::exp(lambda * w[0].r);
    P1 out;
    out[0].x = -s * w[0].x;
    out[0].y = -s * w[0].y;
    out[0].r = -w[0].r;
    return out;
  };
  op.sigma_inv = op.sigma;
  op.multiplier = [lambda, n](const P1& w) {
    return std::exp(n * lambda * w[0].r) * e_phase_conj(eta(lambda, w[0].r) * beta(w[0].x, w[0].y));
  };
  op.jacobian = [lambda, n](const P1& w) { return std::exp(2 * n * lambda * w[0].r); };
  return op;
}

KacSystem build_kac_system(const DeformationParams& params) {
  KacSystem k;
  k.u = fundamental_unitary(params);
  k.j = op_j(params);
  k.sigma = flip(params.n);
  const auto j1 = kron(k.j, identity_op<1>(params.n));
  const auto jj = kron(k.j, k.j);
  k.u_hat = compose(k.sigma, compose(j1, compose(k.u, compose(j1, k.sigma))));
  k.u_hat.name = "U^";
  k.u_tilde = compose(j1, compose(k.sigma, compose(k.u, compose(k.sigma, j1))));
  k.u_tilde.name = "U~";
  k.u_hathat = compose(jj, compose(k.u, jj));
  k.u_hathat.name = "U^^";
  return k;
}

WeightedCompositionOp<2> flipped_adjoint(const WeightedCompositionOp<2>& x) {
  const auto s = flip(x.n);
  auto out = compose(s, compose(inverse(x), s));
  out.name = "Sigma " + x.name + "* Sigma";
  return out;
}

KernelOp r_rep(const Field3& f, const DeformationParams& params) {
  const double lambda = params.lambda;
  const int n = params.n;
  KernelOp op;
  op.name = "R";
  op.structure = DeltaStructure::delta_in_r;
  op.fibre_term = [f, lambda, n](const Point& w, std::span<const double> v) {
    Point a;
    for (int i = 0; i < n; ++i) {
      a.x[i] = v[i];
      a.y[i] = v[n + i];
    }
    a.r = w.r;
    const cplx fa = f(a);
    const Point src{w.x - a.x, w.y - a.y, w.r};
    if (fa == cplx{}) return FiberTerm{cplx{}, src};
    return FiberTerm{fa * e_phase_conj(eta(lambda, w.r) * beta(src.x, a.y)), src};
  };
  return op;
}

KernelOp lambda_rep(const Field3& f, const DeformationParams& params) {
  const double lambda = params.lambda;
  KernelOp op;
  op.name = "lambda";
  op.structure = DeltaStructure::delta_in_xy;
  op.fibre_term = [f, lambda](const Point& w, std::span<const double> v) {
    const double rt = v[0];
    const double s = std::exp(lambda * rt);
    return FiberTerm{f(Point{s * w.x, s * w.y, w.r - rt}), Point{w.x, w.y, rt}};
  };
  return op;
}

LegKernelOp<2> delta_cop_a_structured(const Field3& f, const DeformationParams& params, LegRep rep) {
  const double lambda = params.lambda;
  const int n = params.n;
  LegKernelOp<2> op;
  op.name = rep == LegRep::right ? "(RxR)_Delta^cop" : "(LxL)_Delta^cop";
  op.fibre_kinds = {'x', 'y'};
  op.fibre_term = [f, lambda, n, rep](const LegPoint<2>& w, std::span<const double> v, LegPoint<2>& src) {
    const Point& p = w[0];
    const Point& q = w[1];
    Point t;  // (x~, y~) on the first leg
    for (int i = 0; i < n; ++i) {
      t.x[i] = v[i];
      t.y[i] = v[n + i];
    }
    t.r = p.r + q.r;
    const cplx ft = f(t);
    if (ft == cplx{}) return cplx{};
    const double s = std::exp(lambda * p.r);
    const Vec tx = s * t.x, ty = s * t.y;  // second-leg shift on the surface
    src[0] = Point{p.x - t.x, p.y - t.y, p.r};
    src[1] = Point{q.x - tx, q.y - ty, q.r};
    const double e0 = eta(lambda, p.r), e1 = eta(lambda, q.r);
    const double phase = rep == LegRep::right ? e0 * beta(src[0].x, t.y) + e1 * beta(src[1].x, ty)
                                              : e0 * beta(t.x, src[0].y) + e1 * beta(tx, src[1].y);
    return ft * e_phase_conj(phase);
  };
  return op;
}

cplx delta_cop_ahat_density(const Field3& g, const DeformationParams& params, const LegPoint<2>& w) {
  const Point& p = w[0];
  const Point& q = w[1];
  return g(Point{p.x + q.x, p.y + q.y, p.r}) * e_phase(eta(params, p.r) * beta(q.x, p.y));
}

LegKernelOp<2> delta_cop_ahat_structured(const Field3& g, const DeformationParams& params) {
  LegKernelOp<2> op;
  op.name = "(lambda x lambda)_Delta^cop";
  op.fibre_kinds = {'r'};
  op.fibre_term = [g, params](const LegPoint<2>& w, std::span<const double> v, LegPoint<2>& src) {
    const double rt = v[0];
    const double rtp = w[1].r - w[0].r + rt;  // the delta in r - r~ = r' - r~'
    const double s = std::exp(params.lambda * rt), sp = std::exp(params.lambda * rtp);
    const double level = w[0].r - rt;
    src[0] = Point{w[0].x, w[0].y, rt};
    src[1] = Point{w[1].x, w[1].y, rtp};
    return delta_cop_ahat_density(g, params, {Point{s * w[0].x, s * w[0].y, level}, Point{sp * w[1].x, sp * w[1].y, level}});
  };
  return op;
}

}  // namespace qheis
