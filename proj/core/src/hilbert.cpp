#include "qheis/hilbert.hpp"

#include <algorithm>
#include <cmath>

#include "qheis/rng.hpp"

namespace qheis {
namespace {

WPoint widen(const Point& p) { return point_cast<WReal>(p); }
Point narrow(const WPoint& p) { return point_cast<double>(p); }

template <int K>
WLegPoint<K> widen(const LegPoint<K>& p) {
  WLegPoint<K> q;
  for (int k = 0; k < K; ++k) q[k] = widen(p[k]);
  return q;
}

template <int K>
LegPoint<K> narrow(const WLegPoint<K>& p) {
  LegPoint<K> q;
  for (int k = 0; k < K; ++k) q[k] = narrow(p[k]);
  return q;
}

WReal coord_gap(WReal a, WReal b) { return std::abs(a - b) / std::max<WReal>(1, std::abs(a)); }

}  // namespace

template <int K>
std::vector<WLegPoint<K>> probe_points(std::uint64_t seed, std::size_t count, const TruncationBox& box, int n) {
  SplitMix64 rng(seed);
  std::vector<WLegPoint<K>> out(count);
  for (auto& p : out)
    for (int k = 0; k < K; ++k) {
      for (int i = 0; i < n; ++i) {
        p[k].x[i] = rng.uniform(-box.half_width_x, box.half_width_x);
        p[k].y[i] = rng.uniform(-box.half_width_y, box.half_width_y);
      }
      p[k].r = rng.uniform(-box.half_width_r, box.half_width_r);
    }
  return out;
}

template <int K>
double unitarity_defect(const WeightedCompositionOp<K>& op, std::span<const WLegPoint<K>> probes) {
  WReal worst = 0;
  for (const auto& w : probes) {
    const WReal jac = op.jacobian(w);
    worst = std::max(worst, std::abs(std::norm(op.multiplier(w)) - jac) / jac);
  }
  return static_cast<double>(worst);
}

template <int K>
double operator_distance(const WeightedCompositionOp<K>& a, const WeightedCompositionOp<K>& b,
                         std::span<const WLegPoint<K>> probes) {
  if (a.antilinear != b.antilinear) return 1.0;
  WReal worst = 0;
  const int n = a.n;
  for (const auto& w : probes) {
    const auto sa = a.sigma(w), sb = b.sigma(w);
    for (int k = 0; k < K; ++k) {
      for (int i = 0; i < n; ++i) {
        worst = std::max(worst, coord_gap(sa[k].x[i], sb[k].x[i]));
        worst = std::max(worst, coord_gap(sa[k].y[i], sb[k].y[i]));
      }
      worst = std::max(worst, coord_gap(sa[k].r, sb[k].r));
    }
    const WCplx ma = a.multiplier(w), mb = b.multiplier(w);
    const WReal scale = std::max({std::abs(ma), std::abs(mb), WReal(1e-300)});
    worst = std::max(worst, std::abs(ma - mb) / scale);
  }
  return static_cast<double>(worst);
}

template <int K>
LegField<K> apply(const WeightedCompositionOp<K>& op, const LegField<K>& xi) {
  return LegField<K>(xi.n(), [op, xi](const LegPoint<K>& p) {
    const auto w = widen<K>(p);
    const cplx inner = xi(narrow<K>(op.sigma(w)));
    const WCplx m = op.multiplier(w);
    return cplx(static_cast<double>(m.real()), static_cast<double>(m.imag())) *
           (op.antilinear ? std::conj(inner) : inner);
  });
}

Field3 apply(const WeightedCompositionOp<1>& op, const Field3& xi) {
  const auto lifted = apply<1>(op, LegField<1>(xi.n(), [xi](const LegPoint<1>& p) { return xi(p[0]); }));
  return Field3::lazy(xi.n(), [lifted](const Point& p) { return lifted(LegPoint<1>{p}); });
}

WeightedCompositionOp<3> tensor_embed(const WeightedCompositionOp<2>& op, LegPair legs) {
  using P3 = WLegPoint<3>;
  int i = 0, j = 1;
  switch (legs) {
    case LegPair::l12:
      i = 0, j = 1;
      break;
    case LegPair::l13:
      i = 0, j = 2;
      break;
    case LegPair::l23:
      i = 1, j = 2;
      break;
    default:
      throw std::invalid_argument("tensor_embed: bad leg tag");
  }
  auto lift = [i, j](const std::function<WLegPoint<2>(const WLegPoint<2>&)>& f) {
    return [f, i, j](const P3& w) {
      const auto s = f(WLegPoint<2>{w[i], w[j]});
      P3 out = w;
      out[i] = s[0];
      out[j] = s[1];
      return out;
    };
  };
  WeightedCompositionOp<3> out;
  static const char* tags[] = {"12", "13", "23"};
  out.name = op.name + "_" + tags[static_cast<int>(legs)];
  out.n = op.n;
  out.antilinear = op.antilinear;
  out.sigma = lift(op.sigma);
  out.sigma_inv = lift(op.sigma_inv);
  out.multiplier = [m = op.multiplier, i, j](const P3& w) { return m(WLegPoint<2>{w[i], w[j]}); };
  out.jacobian = [jac = op.jacobian, i, j](const P3& w) { return jac(WLegPoint<2>{w[i], w[j]}); };
  return out;
}

WeightedCompositionOp<2> kron(const WeightedCompositionOp<1>& op1, const WeightedCompositionOp<1>& op2) {
  using P2 = WLegPoint<2>;
  if (op1.antilinear != op2.antilinear)
    throw std::invalid_argument("kron: cannot tensor a linear with an antilinear operator");
  WeightedCompositionOp<2> out;
  out.name = "(" + op1.name + "(x)" + op2.name + ")";
  out.n = op1.n;
  out.antilinear = op1.antilinear;
  out.sigma = [a = op1.sigma, b = op2.sigma](const P2& w) {
    return P2{a(WLegPoint<1>{w[0]})[0], b(WLegPoint<1>{w[1]})[0]};
  };
  out.sigma_inv = [a = op1.sigma_inv, b = op2.sigma_inv](const P2& w) {
    return P2{a(WLegPoint<1>{w[0]})[0], b(WLegPoint<1>{w[1]})[0]};
  };
  out.multiplier = [a = op1.multiplier, b = op2.multiplier](const P2& w) {
    return a(WLegPoint<1>{w[0]}) * b(WLegPoint<1>{w[1]});
  };
  out.jacobian = [a = op1.jacobian, b = op2.jacobian](const P2& w) {
    return a(WLegPoint<1>{w[0]}) * b(WLegPoint<1>{w[1]});
  };
  return out;
}

WeightedCompositionOp<2> flip(int n) {
  using P2 = WLegPoint<2>;
  auto swap = [](const P2& w) { return P2{w[1], w[0]}; };
  return {"Sigma", n, false, swap, swap, [](const P2&) { return WCplx{1}; }, [](const P2&) { return WReal{1}; }};
}

std::vector<const Rule1D*> fibre_axes(DeltaStructure s, const QuadGrid& grid) {
  std::vector<const Rule1D*> axes;
  const int n = grid.params.n;
  switch (s) {
    case DeltaStructure::delta_in_r:
      for (int i = 0; i < n; ++i) axes.push_back(&grid.x);
      for (int i = 0; i < n; ++i) axes.push_back(&grid.y);
      break;
    case DeltaStructure::delta_in_xy:
      axes.push_back(&grid.r);
      break;
    case DeltaStructure::none:
      axes = grid.axes();
      break;
  }
  return axes;
}

Field3 apply(const KernelOp& op, const Field3& xi, const QuadGrid& grid) {
  const auto axes = fibre_axes(op.structure, grid);
  const int n = grid.params.n;
  return Field3::lazy(xi.n(), [op, xi, axes, n](const Point& w) {
    if (op.structure == DeltaStructure::none) {
      return integrate_nd(axes, [&](std::span<const double> v) {
        const Point src = unflatten<1>(v, n)[0];
        return op.kernel(w, src) * xi(src);
      });
    }
    return integrate_nd(axes, [&](std::span<const double> v) {
      const FiberTerm t = op.fibre_term(w, v);
      return t.weight == cplx{} ? cplx{} : t.weight * xi(t.source);
    });
  });
}

template <int K>
LegField<K> apply_on_leg(const KernelOp& op, int leg, const LegField<K>& xi, const QuadGrid& grid) {
  if (leg < 0 || leg >= K) throw std::invalid_argument("apply_on_leg: bad leg");
  const auto axes = fibre_axes(op.structure, grid);
  const int n = grid.params.n;
  return LegField<K>(xi.n(), [op, leg, xi, axes, n](const LegPoint<K>& w) {
    LegPoint<K> src = w;
    if (op.structure == DeltaStructure::none) {
      return integrate_nd(axes, [&](std::span<const double> v) {
        src[leg] = unflatten<1>(v, n)[0];
        return op.kernel(w[leg], src[leg]) * xi(src);
      });
    }
    return integrate_nd(axes, [&](std::span<const double> v) {
      const FiberTerm t = op.fibre_term(w[leg], v);
      if (t.weight == cplx{}) return cplx{};
      src[leg] = t.source;
      return t.weight * xi(src);
    });
  });
}

template <int K>
LegField<K> apply(const LegKernelOp<K>& op, const LegField<K>& xi, const QuadGrid& grid) {
  std::vector<const Rule1D*> axes;
  const int n = grid.params.n;
  for (char kind : op.fibre_kinds) {
    switch (kind) {
      case 'x':
        for (int i = 0; i < n; ++i) axes.push_back(&grid.x);
        break;
      case 'y':
        for (int i = 0; i < n; ++i) axes.push_back(&grid.y);
        break;
      case 'r':
        axes.push_back(&grid.r);
        break;
      default:
        throw std::invalid_argument("LegKernelOp: unknown fibre kind");
    }
  }
  return LegField<K>(xi.n(), [op, xi, axes](const LegPoint<K>& w) {
    LegPoint<K> src;
    return integrate_nd(axes, [&](std::span<const double> v) {
      const cplx weight = op.fibre_term(w, v, src);
      return weight == cplx{} ? cplx{} : weight * xi(src);
    });
  });
}

KernelOp compose_kernels(const KernelOp& outer, const KernelOp& inner,
                         std::function<cplx(const Point&, const Point&)> composite_kernel) {
  if (outer.structure != DeltaStructure::delta_in_xy || inner.structure != DeltaStructure::delta_in_r)
    throw std::invalid_argument("compose_kernels: need complementary delta structures (xy after r)");
  KernelOp out;
  out.name = outer.name + "." + inner.name;
  out.structure = DeltaStructure::none;
  out.kernel = std::move(composite_kernel);
  return out;
}

double hs_trace_of_product(const KernelOp& op, const QuadGrid& grid) {
  if (op.structure != DeltaStructure::none || !op.kernel)
    throw std::invalid_argument("hs_trace_of_product: kernel still carries delta structure");
  std::vector<const Rule1D*> axes = grid.axes();
  const auto half = axes;
  axes.insert(axes.end(), half.begin(), half.end());
  const int n = grid.params.n;
  const cplx v = integrate_nd(
      axes,
      [&](std::span<const double> c) {
        const auto p = unflatten<2>(c, n);
        return cplx{std::norm(op.kernel(p[0], p[1])), 0.0};
      },
      grid.support_floor);
  return v.real();
}

template std::vector<WLegPoint<1>> probe_points<1>(std::uint64_t, std::size_t, const TruncationBox&, int);
template std::vector<WLegPoint<2>> probe_points<2>(std::uint64_t, std::size_t, const TruncationBox&, int);
template std::vector<WLegPoint<3>> probe_points<3>(std::uint64_t, std::size_t, const TruncationBox&, int);
template double unitarity_defect<1>(const WeightedCompositionOp<1>&, std::span<const WLegPoint<1>>);
template double unitarity_defect<2>(const WeightedCompositionOp<2>&, std::span<const WLegPoint<2>>);
template double unitarity_defect<3>(const WeightedCompositionOp<3>&, std::span<const WLegPoint<3>>);
template double operator_distance<1>(const WeightedCompositionOp<1>&, const WeightedCompositionOp<1>&,
                                     std::span<const WLegPoint<1>>);
template double operator_distance<2>(const WeightedCompositionOp<2>&, const WeightedCompositionOp<2>&,
                                     std::span<const WLegPoint<2>>);
template double operator_distance<3>(const WeightedCompositionOp<3>&, const WeightedCompositionOp<3>&,
                                     std::span<const WLegPoint<3>>);
template LegField<1> apply<1>(const WeightedCompositionOp<1>&, const LegField<1>&);
template LegField<2> apply<2>(const WeightedCompositionOp<2>&, const LegField<2>&);
template LegField<3> apply<3>(const WeightedCompositionOp<3>&, const LegField<3>&);
template LegField<2> apply_on_leg<2>(const KernelOp&, int, const LegField<2>&, const QuadGrid&);
template LegField<3> apply_on_leg<3>(const KernelOp&, int, const LegField<3>&, const QuadGrid&);
template LegField<2> apply<2>(const LegKernelOp<2>&, const LegField<2>&, const QuadGrid&);
template LegField<3> apply<3>(const LegKernelOp<3>&, const LegField<3>&, const QuadGrid&);

}  // namespace qheis
