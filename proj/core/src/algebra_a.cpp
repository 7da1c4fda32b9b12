#include "qheis/algebra_a.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "qheis/fundamental_unitary.hpp"
#include "qheis/phase.hpp"

namespace qheis {
namespace {

using Table = std::vector<cplx>;

// Twisted convolution of one r-slice on the lattice when g is a packet sum. O(N^3) per term.
void slice_packet_right(const Field3& f, const PacketSum& g, double lambda, double r, const QuadGrid& grid,
                        Table& out) {
  const auto& gx = grid.x;
  const auto& gy = grid.y;
  const std::size_t nx = gx.size(), ny = gy.size();
  const double et = eta(lambda, r);

  Table F(nx * ny);
  for (std::size_t k = 0; k < nx; ++k)
    for (std::size_t l = 0; l < ny; ++l) F[k * ny + l] = f(make_point(gx.nodes[k], gy.nodes[l], r));
  // ebar[eta x_k (y_j - y_l)], indexed by k and the lattice offset d = j - l
  const std::size_t nd = 2 * ny - 1;
  Table E(nx * nd);
  for (std::size_t k = 0; k < nx; ++k)
    for (std::size_t d = 0; d < nd; ++d) {
      const double dy = (static_cast<long>(d) - static_cast<long>(ny - 1)) * gy.step;
      E[k * nd + d] = e_phase_conj(et * gx.nodes[k] * dy);
    }

  for (const auto& t : g.terms) {
    const std::size_t ndx = 2 * nx - 1;
    Table Gx(ndx), Gy(nd);
    for (std::size_t d = 0; d < ndx; ++d) {
      Vec v;
      v[0] = (static_cast<long>(d) - static_cast<long>(nx - 1)) * gx.step;
      Gx[d] = t.factor_x(v);
    }
    for (std::size_t d = 0; d < nd; ++d) {
      Vec v;
      v[0] = (static_cast<long>(d) - static_cast<long>(ny - 1)) * gy.step;
      Gy[d] = t.factor_y(v);
    }
    const cplx scale = t.amplitude * t.factor_r(r);
    // Q[k][j] = sum_l w_l F[k][l] Gy[j-l] E[k][j-l]
    Table Q(nx * ny, cplx{});
    for (std::size_t k = 0; k < nx; ++k)
      for (std::size_t j = 0; j < ny; ++j) {
        cplx acc{};
        for (std::size_t l = 0; l < ny; ++l) {
          const std::size_t d = j + ny - 1 - l;
          acc += gy.weights[l] * F[k * ny + l] * Gy[d] * E[k * nd + d];
        }
        Q[k * ny + j] = acc;
      }
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j) {
        cplx acc{};
        for (std::size_t k = 0; k < nx; ++k) acc += gx.weights[k] * Gx[i + nx - 1 - k] * Q[k * ny + j];
        out[i * ny + j] += scale * acc;
      }
  }
}

// Same slice when f is a packet sum: substitute x' = x - x~ and sum over g's lattice support.
void slice_packet_left(const PacketSum& f, const Field3& g, double lambda, double r, const QuadGrid& grid,
                       Table& out) {
  const auto& gx = grid.x;
  const auto& gy = grid.y;
  const std::size_t nx = gx.size(), ny = gy.size();
  const double et = eta(lambda, r);

  // G~[k'][l'] = g(x_k', y_l') e[eta x_k' y_l']
  Table G(nx * ny);
  for (std::size_t k = 0; k < nx; ++k)
    for (std::size_t l = 0; l < ny; ++l)
      G[k * ny + l] = g(make_point(gx.nodes[k], gy.nodes[l], r)) * e_phase(et * gx.nodes[k] * gy.nodes[l]);

  for (const auto& t : f.terms) {
    const std::size_t ndx = 2 * nx - 1, ndy = 2 * ny - 1;
    Table Fx(ndx), Fy(ndy);
    for (std::size_t d = 0; d < ndx; ++d) {
      Vec v;
      v[0] = (static_cast<long>(d) - static_cast<long>(nx - 1)) * gx.step;
      Fx[d] = t.factor_x(v);
    }
    for (std::size_t d = 0; d < ndy; ++d) {
      Vec v;
      v[0] = (static_cast<long>(d) - static_cast<long>(ny - 1)) * gy.step;
      Fy[d] = t.factor_y(v);
    }
    const cplx scale = t.amplitude * t.factor_r(r);
    // T[i][l'] = sum_k' w_k' Fx[i-k'] G~[k'][l']
    Table T(nx * ny, cplx{});
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t l = 0; l < ny; ++l) {
        cplx acc{};
        for (std::size_t k = 0; k < nx; ++k) acc += gx.weights[k] * Fx[i + nx - 1 - k] * G[k * ny + l];
        T[i * ny + l] = acc;
      }
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j) {
        cplx acc{};
        for (std::size_t l = 0; l < ny; ++l)
          acc += gy.weights[l] * Fy[j + ny - 1 - l] * e_phase_conj(et * gx.nodes[i] * gy.nodes[l]) * T[i * ny + l];
        out[i * ny + j] += scale * acc;
      }
  }
}

// General slice, O(N^4): g is read on the doubled lattice.
void slice_general(const Field3& f, const Field3& g, double lambda, double r, const QuadGrid& grid, Table& out) {
  const auto& gx = grid.x;
  const auto& gy = grid.y;
  const std::size_t nx = gx.size(), ny = gy.size();
  const std::size_t ndx = 2 * nx - 1, ndy = 2 * ny - 1;
  const double et = eta(lambda, r);
  Table F(nx * ny), G(ndx * ndy);
  for (std::size_t k = 0; k < nx; ++k)
    for (std::size_t l = 0; l < ny; ++l) F[k * ny + l] = f(make_point(gx.nodes[k], gy.nodes[l], r));
  for (std::size_t a = 0; a < ndx; ++a)
    for (std::size_t b = 0; b < ndy; ++b) {
      const double x = (static_cast<long>(a) - static_cast<long>(nx - 1)) * gx.step;
      const double y = (static_cast<long>(b) - static_cast<long>(ny - 1)) * gy.step;
      G[a * ndy + b] = g(make_point(x, y, r));
    }
  // phase[k][dj] = ebar[eta x_k dy]; weights folded into F
  Table phase(nx * ndy);
  for (std::size_t k = 0; k < nx; ++k)
    for (std::size_t b = 0; b < ndy; ++b) {
      const double dy = (static_cast<long>(b) - static_cast<long>(ny - 1)) * gy.step;
      phase[k * ndy + b] = e_phase_conj(et * gx.nodes[k] * dy);
    }
  for (std::size_t k = 0; k < nx; ++k)
    for (std::size_t l = 0; l < ny; ++l) F[k * ny + l] *= gx.weights[k] * gy.weights[l];
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < nx; ++k) {
        const cplx* grow = &G[(i + nx - 1 - k) * ndy + j + ny - 1];
        const cplx* prow = &phase[k * ndy + j + ny - 1];
        const cplx* frow = &F[k * ny];
        for (std::size_t l = 0; l < ny; ++l) acc += frow[l] * grow[-static_cast<long>(l)] * prow[-static_cast<long>(l)];
      }
      out[i * ny + j] = acc;
    }
}

}  // namespace

Field3 product_a_lazy(const Field3& f, const Field3& g, const QuadGrid& grid) {
  const int n = grid.params.n;
  const double lambda = grid.params.lambda;
  const auto axes = fibre_axes(DeltaStructure::delta_in_r, grid);
  return Field3::lazy(n, [f, g, n, lambda, axes](const Point& p) {
    const double et = eta(lambda, p.r);
    return integrate_nd(axes, [&](std::span<const double> v) {
      Point a, b;
      for (int i = 0; i < n; ++i) {
        a.x[i] = v[i];
        a.y[i] = v[n + i];
      }
      a.r = b.r = p.r;
      b.x = p.x - a.x;
      b.y = p.y - a.y;
      return f(a) * g(b) * e_phase_conj(et * beta(a.x, b.y));
    });
  });
}

namespace {

// Lattice slices of f x g, computed on first request for each r. The product is pointwise in r,
// so every slice is exact up to the (x, y) quadrature; only off-lattice (x, y) queries interpolate.
class ProductSlices {
 public:
  ProductSlices(Field3 f, Field3 g, const QuadGrid& grid) : f_(std::move(f)), g_(std::move(g)), grid_(grid) {}

  cplx operator()(const Point& p) const { return (*slice(p.r))(p); }

 private:
  static constexpr std::size_t kMaxSlices = 4096;

  std::shared_ptr<const SampledGrid> slice(double r) const {
    {
      std::lock_guard lock(mu_);
      if (auto it = cache_.find(r); it != cache_.end()) return it->second;
    }
    auto s = std::make_shared<const SampledGrid>(build(r));
    std::lock_guard lock(mu_);
    if (cache_.size() >= kMaxSlices) cache_.clear();
    cache_.emplace(r, s);
    return s;
  }

  SampledGrid build(double r) const {
    SampledGrid s;
    s.x = grid_.x;
    s.y = grid_.y;
    s.r.nodes = {r};
    s.r.weights = {1.0};
    s.r.lattice = true;
    s.r.step = 1.0;
    s.floor = grid_.support_floor;
    const std::size_t nx = s.x.size(), ny = s.y.size();
    s.values.assign(nx * ny, cplx{});
    const double lambda = grid_.params.lambda;
    if (const auto* gp = g_.packets())
      slice_packet_right(f_, *gp, lambda, r, grid_, s.values);
    else if (const auto* fp = f_.packets())
      slice_packet_left(*fp, g_, lambda, r, grid_, s.values);
    else
      slice_general(f_, g_, lambda, r, grid_, s.values);
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < ny; ++j) {
        const double m = std::abs(s.values[i * ny + j]);
        s.peak = std::max(s.peak, m);
        if (i == 0 || j == 0 || i + 1 == nx || j + 1 == ny) s.edge = std::max(s.edge, m);
      }
    return s;
  }

  Field3 f_, g_;
  QuadGrid grid_;
  mutable std::mutex mu_;
  mutable std::map<double, std::shared_ptr<const SampledGrid>> cache_;
};

}  // namespace

Field3 product_a(const Field3& f, const Field3& g, const QuadGrid& grid) {
  if (grid.params.n != 1 || !grid.x.lattice || !grid.y.lattice) return product_a_lazy(f, g, grid);
  auto slices = std::make_shared<const ProductSlices>(f, g, grid);
  return Field3::lazy(1, [slices](const Point& p) { return (*slices)(p); });
}

Field3 star_a(const Field3& f, const DeformationParams& params) {
  const double lambda = params.lambda;
  return Field3::lazy(f.n(), [f, lambda](const Point& p) {
    Point q = p;
    q.x = -p.x;
    q.y = -p.y;
    return e_phase_conj(eta(lambda, p.r) * beta(p.x, p.y)) * std::conj(f(q));
  });
}

KernelOp left_rep(const Field3& f, const DeformationParams& params) {
  const double lambda = params.lambda;
  const int n = params.n;
  KernelOp op;
  op.name = "L";
  op.structure = DeltaStructure::delta_in_r;
  op.fibre_term = [f, lambda, n](const Point& w, std::span<const double> v) {
    Point a;
    for (int i = 0; i < n; ++i) {
      a.x[i] = v[i];
      a.y[i] = v[n + i];
    }
    a.r = w.r;
    const cplx fa = f(a);
    if (fa == cplx{}) return FiberTerm{cplx{}, w};
    Point src;
    src.x = w.x - a.x;
    src.y = w.y - a.y;
    src.r = w.r;
    return FiberTerm{fa * e_phase_conj(eta(lambda, w.r) * beta(a.x, src.y)), src};
  };
  return op;
}

LegKernelOp<2> delta_a_structured(const Field3& f, const DeformationParams& params) {
  const double lambda = params.lambda;
  const int n = params.n;
  LegKernelOp<2> op;
  op.name = "(LxL)_Delta";
  op.fibre_kinds = {'x', 'y'};
  op.fibre_term = [f, lambda, n](const LegPoint<2>& w, std::span<const double> v, LegPoint<2>& src) {
    const Point& p = w[0];
    const Point& q = w[1];
    Point t;  // (x~', y~') on the second leg
    for (int i = 0; i < n; ++i) {
      t.x[i] = v[i];
      t.y[i] = v[n + i];
    }
    t.r = p.r + q.r;
    const cplx ft = f(t);
    if (ft == cplx{}) return cplx{};
    const double s = std::exp(lambda * q.r);
    const Vec tx = s * t.x, ty = s * t.y;  // first-leg shift on the surface
    src[0].x = p.x - tx;
    src[0].y = p.y - ty;
    src[0].r = p.r;
    src[1].x = q.x - t.x;
    src[1].y = q.y - t.y;
    src[1].r = q.r;
    const double phase = eta(lambda, p.r) * beta(tx, src[0].y) + eta(lambda, q.r) * beta(t.x, src[1].y);
    return ft * e_phase_conj(phase);
  };
  return op;
}

LegField<2> delta_a_conjugated(const Field3& f, const LegField<2>& xi, const QuadGrid& grid) {
  const auto u = fundamental_unitary(grid.params);
  const auto inner = apply<2>(inverse(u), xi);
  return apply<2>(u, apply_on_leg<2>(left_rep(f, grid.params), 0, inner, grid));
}

Field3 antipode_s(const Field3& f, const DeformationParams& params) {
  const double lambda = params.lambda;
  const int n = params.n;
  return Field3::lazy(f.n(), [f, lambda, n](const Point& p) {
    const double s = std::exp(lambda * p.r);
    Point q;
    q.x = -s * p.x;
    q.y = -s * p.y;
    q.r = -p.r;
    return std::pow(s, 2 * n) * e_phase_conj(eta(lambda, p.r) * beta(p.x, p.y)) * f(q);
  });
}

cplx haar_a(const Field3& f, const QuadGrid& grid) {
  const Rule1D* axes[] = {&grid.r};
  return integrate_nd(
      axes, [&](std::span<const double> v) { return f(make_point(0, 0, v[0])); }, grid.support_floor);
}

}  // namespace qheis
