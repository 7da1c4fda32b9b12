#include "qheis/algebra_ahat.hpp"

#include <cmath>

#include "qheis/fundamental_unitary.hpp"
#include "qheis/phase.hpp"

namespace qheis {
namespace {

using P1 = WLegPoint<1>;

// (x, y, r) -> (e^{lambda r} x, e^{lambda r} y, -r); its own inverse.
std::function<P1(const P1&)> scaled_reflection(WReal lambda) {
  return [lambda](const P1& w) {
    const WReal s = std::exp(lambda * w[0].r);
    P1 out;
    out[0].x = s * w[0].x;
    out[0].y = s * w[0].y;
    out[0].r = -w[0].r;
    return out;
  };
}

WeightedCompositionOp<1> scaled_reflection_op(const DeformationParams& params, std::string name, int weight_power) {
  params.validate();
  const WReal lambda = params.lambda;
  const int n = params.n;
  WeightedCompositionOp<1> op;
  op.name = std::move(name);
  op.n = n;
  op.antilinear = true;
  op.sigma = scaled_reflection(lambda);
  op.sigma_inv = op.sigma;
  op.multiplier = [lambda, n, weight_power](const P1& w) {
    return WCplx{std::exp(weight_power * n * lambda * w[0].r)};
  };
  op.jacobian = [lambda, n](const P1& w) { return std::exp(2 * n * lambda * w[0].r); };
  return op;
}

}  // namespace

Field3 product_ahat(const Field3& f, const Field3& g, const QuadGrid& grid) {
  const double lambda = grid.params.lambda;
  return Field3::lazy(f.n(), [f, g, lambda, rule = grid.r](const Point& p) {
    const Rule1D* ax[] = {&rule};
    return integrate_nd(ax, [&](std::span<const double> v) {
      const double rt = v[0];
      const cplx a = f(Point{p.x, p.y, rt});
      if (a == cplx{}) return cplx{};
      const double s = std::exp(lambda * rt);
      return a * g(Point{s * p.x, s * p.y, p.r - rt});
    });
  });
}

Field3 star_ahat(const Field3& f, const DeformationParams& params) {
  const double lambda = params.lambda;
  return Field3::lazy(f.n(), [f, lambda](const Point& p) {
    const double s = std::exp(lambda * p.r);
    return std::conj(f(Point{s * p.x, s * p.y, -p.r}));
  });
}

KernelOp rho_rep(const Field3& f, const DeformationParams& params) {
  const double lambda = params.lambda;
  const int n = params.n;
  KernelOp op;
  op.name = "rho";
  op.structure = DeltaStructure::delta_in_xy;
  op.fibre_term = [f, lambda, n](const Point& w, std::span<const double> v) {
    const double rt = v[0];
    const double s = std::exp(lambda * rt);
    return FiberTerm{std::pow(s, n) * f(Point{w.x, w.y, rt}), Point{s * w.x, s * w.y, w.r - rt}};
  };
  return op;
}

cplx delta_ahat_density(const Field3& g, const DeformationParams& params, const LegPoint<2>& w) {
  const Point& p = w[0];
  const Point& q = w[1];
  return g(Point{p.x + q.x, p.y + q.y, p.r}) * e_phase(eta(params, p.r) * beta(p.x, q.y));
}

LegKernelOp<2> delta_ahat_structured(const Field3& g, const DeformationParams& params) {
  LegKernelOp<2> op;
  op.name = "(rho x rho)_Delta^";
  op.fibre_kinds = {'r'};
  op.fibre_term = [g, params](const LegPoint<2>& w, std::span<const double> v, LegPoint<2>& src) {
    const double rt = v[0];
    const double s = std::exp(params.lambda * rt);
    const cplx k = delta_ahat_density(g, params, {Point{w[0].x, w[0].y, rt}, Point{w[1].x, w[1].y, rt}});
    if (k == cplx{}) return cplx{};
    src[0] = Point{s * w[0].x, s * w[0].y, w[0].r - rt};
    src[1] = Point{s * w[1].x, s * w[1].y, w[1].r - rt};
    return std::pow(s, 2 * params.n) * k;
  };
  return op;
}

LegField<2> delta_ahat_conjugated(const Field3& g, const LegField<2>& xi, const QuadGrid& grid) {
  const auto u = fundamental_unitary(grid.params);
  return apply<2>(inverse(u), apply_on_leg<2>(rho_rep(g, grid.params), 1, apply<2>(u, xi), grid));
}

Field3 antipode_shat(const Field3& f, const DeformationParams& params) {
  const double lambda = params.lambda;
  return Field3::lazy(f.n(), [f, lambda](const Point& p) {
    const double s = std::exp(lambda * p.r);
    return e_phase_conj(eta(lambda, p.r) * beta(p.x, p.y)) * f(Point{-s * p.x, -s * p.y, -p.r});
  });
}

WeightedCompositionOp<1> op_j_antipode(const DeformationParams& params) {
  params.validate();
  const WReal lambda = params.lambda;
  WeightedCompositionOp<1> op;
  op.name = "J";
  op.n = params.n;
  op.antilinear = true;
  op.sigma = [](const P1& w) {
    P1 out = w;
    out[0].x = -w[0].x;
    out[0].y = -w[0].y;
    return out;
  };
  op.sigma_inv = op.sigma;
  op.multiplier = [lambda](const P1& w) { return e_phase_conj(eta(lambda, w[0].r) * beta(w[0].x, w[0].y)); };
  op.jacobian = [](const P1&) { return WReal{1}; };
  return op;
}

WeightedCompositionOp<1> op_j_hat(const DeformationParams& params) {
  return scaled_reflection_op(params, "J^", 1);
}

WeightedCompositionOp<1> op_t_hat(const DeformationParams& params) {
  return scaled_reflection_op(params, "T^", 2);
}

WeightedCompositionOp<1> op_nabla_power(const DeformationParams& params, cplx exponent) {
  params.validate();
  const WReal lambda = params.lambda;
  const int n = params.n;
  const WCplx z{exponent.real(), exponent.imag()};
  WeightedCompositionOp<1> op = identity_op<1>(n);
  op.name = "nabla^z";
  op.multiplier = [lambda, n, z](const P1& w) { return std::exp(WReal(-2 * n) * lambda * w[0].r * z); };
  return op;
}

cplx haar_ahat(const Field3& f, const QuadGrid& grid) {
  const auto axes = fibre_axes(DeltaStructure::delta_in_r, grid);
  const int n = grid.params.n;
  return integrate_nd(
      axes,
      [&](std::span<const double> v) {
        Point p;
        for (int i = 0; i < n; ++i) {
          p.x[i] = v[i];
          p.y[i] = v[n + i];
        }
        return f(p);
      },
      grid.support_floor);
}

Field3 gns_gamma(const Field3& f, const DeformationParams& params) {
  const double lambda = params.lambda;
  const int n = params.n;
  return Field3::lazy(f.n(), [f, lambda, n](const Point& p) { return std::exp(n * lambda * p.r) * f(p); });
}

Field3 modular_flow(const Field3& f, const DeformationParams& params, cplx t) {
  const double lambda = params.lambda;
  const int n = params.n;
  const cplx it = cplx{0, 1} * t;
  return Field3::lazy(f.n(), [f, lambda, n, it](const Point& p) {
    return std::exp(-2.0 * n * lambda * p.r * it) * f(p);
  });
}

Field3 slice_to_ahat_function(const Field3& b, const Field3& zeta, const QuadGrid& grid) {
  const double lambda = grid.params.lambda;
  const int n = grid.params.n;
  return Field3::lazy(b.n(), [b, zeta, lambda, n, grid](const Point& p) {
    const double s = std::exp(lambda * p.r);
    const double et = eta(lambda, p.r);
    const auto axes = grid.axes();
    return std::pow(s, n) * integrate_nd(axes, [&](std::span<const double> v) {
             const Point w = unflatten<1>(v, n)[0];
             const cplx z = zeta(w);
             if (z == cplx{}) return cplx{};
             return std::conj(z) * b(Point{w.x + p.x, w.y + p.y, p.r}) * e_phase(et * beta(w.x, p.y)) *
                    zeta(Point{s * w.x, s * w.y, w.r - p.r});
           });
  });
}

}  // namespace qheis
