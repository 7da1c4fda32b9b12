#include "qheis/duality.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "qheis/algebra_a.hpp"
#include "qheis/algebra_ahat.hpp"
#include "qheis/phase.hpp"

namespace qheis {

double pentagon_residual(const WeightedCompositionOp<2>& u, std::span<const WLegPoint<3>> probes) {
  const auto u12 = tensor_embed(u, LegPair::l12);
  const auto u13 = tensor_embed(u, LegPair::l13);
  const auto u23 = tensor_embed(u, LegPair::l23);
  return operator_distance<3>(compose(u12, compose(u13, u23)), compose(u23, u12), probes);
}

Field3 left_slice_function(const VectorState& omega, const QuadGrid& grid) {
  const double lambda = grid.params.lambda;
  const int n = grid.params.n;
  return Field3::lazy(n, [omega, lambda, n, rule = grid.r](const Point& p) {
    const double s = std::exp(lambda * p.r);
    const Rule1D* ax[] = {&rule};
    return std::pow(s, n) * integrate_nd(ax, [&](std::span<const double> v) {
             const cplx xi = omega.xi(Point{p.x, p.y, v[0] + p.r});
             if (xi == cplx{}) return cplx{};
             return std::conj(omega.eta(Point{s * p.x, s * p.y, v[0]})) * xi;
           });
  });
}

Field3 left_slice_apply(const WeightedCompositionOp<2>& u, const VectorState& omega, const Field3& alpha,
                        const QuadGrid& grid) {
  const auto moved = apply<2>(u, tensor<2>({omega.xi, alpha}));
  const int n = grid.params.n;
  return Field3::lazy(n, [moved, eta = omega.eta, n, grid](const Point& wp) {
    const auto axes = grid.axes();
    return integrate_nd(axes, [&](std::span<const double> v) {
      const Point w = unflatten<1>(v, n)[0];
      const cplx e = eta(w);
      return e == cplx{} ? cplx{} : std::conj(e) * moved({w, wp});
    });
  });
}

Field3 right_slice_function(const VectorState& omega, const QuadGrid& grid) {
  const double lambda = grid.params.lambda;
  const int n = grid.params.n;
  const auto axes = fibre_axes(DeltaStructure::delta_in_r, grid);
  return Field3::lazy(n, [omega, lambda, n, axes](const Point& p) {
    const double s = std::exp(lambda * p.r);
    const double et = eta(lambda, p.r);
    return integrate_nd(axes, [&](std::span<const double> v) {
      Point t;
      for (int i = 0; i < n; ++i) {
        t.x[i] = v[i];
        t.y[i] = v[n + i];
      }
      t.r = -p.r;
      const cplx e = omega.eta(t);
      if (e == cplx{}) return cplx{};
      return e_phase_conj(et * beta(p.x, p.y - (1 / s) * t.y)) * omega.xi(Point{t.x - s * p.x, t.y - s * p.y, -p.r}) *
             std::conj(e);
    });
  });
}

Field3 right_slice_apply(const WeightedCompositionOp<2>& u, const VectorState& omega, const Field3& alpha,
                         const QuadGrid& grid) {
  const auto moved = apply<2>(u, tensor<2>({alpha, omega.xi}));
  const int n = grid.params.n;
  return Field3::lazy(n, [moved, eta = omega.eta, n, grid](const Point& w) {
    const auto axes = grid.axes();
    return integrate_nd(axes, [&](std::span<const double> v) {
      const Point wp = unflatten<1>(v, n)[0];
      const cplx e = eta(wp);
      return e == cplx{} ? cplx{} : moved({w, wp}) * std::conj(e);
    });
  });
}

cplx dual_pairing(const Field3& f, const Field3& g, const QuadGrid& grid) {
  const double lambda = grid.params.lambda;
  const int n = grid.params.n;
  const auto axes = grid.axes();
  return integrate_nd(
      axes,
      [&](std::span<const double> v) {
        const Point p = unflatten<1>(v, n)[0];
        const cplx a = f(p);
        if (a == cplx{}) return cplx{};
        const double s = std::exp(lambda * p.r);
        return a * g(Point{s * p.x, s * p.y, -p.r});
      },
      grid.support_floor);
}

namespace {

bool factorisable(std::initializer_list<const Field3*> fields, const QuadGrid& grid) {
  if (grid.params.n != 1) return false;
  return std::all_of(fields.begin(), fields.end(), [](const Field3* f) { return f->packets() != nullptr; });
}

cplx fx(const GaussianPacket& t, double x) {
  Vec v;
  v[0] = x;
  return t.factor_x(v);
}
cplx fy(const GaussianPacket& t, double y) {
  Vec v;
  v[0] = y;
  return t.factor_y(v);
}

// Same tensor trapezoid sum as the generic path, organised so each r~ costs O(N^2) per term triple.
cplx tensor_delta_ahat_factorised(const PacketSum& f1, const PacketSum& f2, const PacketSum& g, const QuadGrid& grid) {
  const auto& X = grid.x;
  const auto& Y = grid.y;
  const std::size_t nx = X.size(), ny = Y.size();
  const double lambda = grid.params.lambda;
  std::vector<cplx> m(ny), kx(nx), ix(nx);
  cplx total{};
  for (std::size_t ir = 0; ir < grid.r.size(); ++ir) {
    const double rt = grid.r.nodes[ir];
    const double s = std::exp(lambda * rt);
    const double c = eta(lambda, -rt) * s * s;
    cplx slice{};
    for (const auto& t1 : f1.terms)
      for (const auto& t2 : f2.terms)
        for (const auto& t3 : g.terms) {
          const cplx amp =
              t1.amplitude * t2.amplitude * t3.amplitude * t1.factor_r(rt) * t2.factor_r(rt) * t3.factor_r(-rt);
          if (std::abs(amp) < 1e-300) continue;
          for (std::size_t jp = 0; jp < ny; ++jp) {
            cplx acc{};
            for (std::size_t j = 0; j < ny; ++j) acc += Y.weights[j] * fy(t1, Y.nodes[j]) * fy(t3, s * (Y.nodes[j] + Y.nodes[jp]));
            m[jp] = acc;
          }
          for (std::size_t i = 0; i < nx; ++i) {
            cplx acc_k{}, acc_i{};
            for (std::size_t ip = 0; ip < nx; ++ip) acc_k += X.weights[ip] * fx(t2, X.nodes[ip]) * fx(t3, s * (X.nodes[i] + X.nodes[ip]));
            for (std::size_t jp = 0; jp < ny; ++jp)
              acc_i += Y.weights[jp] * fy(t2, Y.nodes[jp]) * m[jp] * e_phase(c * X.nodes[i] * Y.nodes[jp]);
            kx[i] = acc_k;
            ix[i] = acc_i;
          }
          cplx acc{};
          for (std::size_t i = 0; i < nx; ++i) acc += X.weights[i] * fx(t1, X.nodes[i]) * kx[i] * ix[i];
          slice += amp * acc;
        }
    total += grid.r.weights[ir] * slice;
  }
  return total;
}

cplx delta_a_tensor_factorised(const PacketSum& f, const PacketSum& g1, const PacketSum& g2, const QuadGrid& grid) {
  const auto& X = grid.x;
  const auto& Y = grid.y;
  const auto& R = grid.r;
  const double lambda = grid.params.lambda;
  cplx total{};
  for (std::size_t a = 0; a < R.size(); ++a)
    for (std::size_t b = 0; b < R.size(); ++b) {
      const double r = R.nodes[a], rp = R.nodes[b];
      const double s1 = std::exp(lambda * (r + rp)), s2 = std::exp(lambda * rp);
      cplx cell{};
      for (const auto& t : f.terms)
        for (const auto& u1 : g1.terms)
          for (const auto& u2 : g2.terms) {
            const cplx amp = t.amplitude * u1.amplitude * u2.amplitude * t.factor_r(r + rp) * u1.factor_r(-r) *
                             u2.factor_r(-rp);
            if (std::abs(amp) < 1e-300) continue;
            cplx sx{}, sy{};
            for (std::size_t i = 0; i < X.size(); ++i) {
              const double x = X.nodes[i];
              sx += X.weights[i] * fx(t, x) * fx(u1, s1 * x) * fx(u2, s2 * x);
            }
            for (std::size_t j = 0; j < Y.size(); ++j) {
              const double y = Y.nodes[j];
              sy += Y.weights[j] * fy(t, y) * fy(u1, s1 * y) * fy(u2, s2 * y);
            }
            cell += amp * sx * sy;
          }
      total += R.weights[a] * R.weights[b] * cell;
    }
  return total;
}

}  // namespace

cplx pairing_tensor_delta_ahat(const Field3& f1, const Field3& f2, const Field3& g, const QuadGrid& grid) {
  if (factorisable({&f1, &f2, &g}, grid))
    return tensor_delta_ahat_factorised(*f1.packets(), *f2.packets(), *g.packets(), grid);
  const int n = grid.params.n;
  const double lambda = grid.params.lambda;
  std::vector<const Rule1D*> axes;
  for (int leg = 0; leg < 2; ++leg) {
    for (int i = 0; i < n; ++i) axes.push_back(&grid.x);
    for (int i = 0; i < n; ++i) axes.push_back(&grid.y);
  }
  axes.push_back(&grid.r);
  return integrate_nd(axes, [&](std::span<const double> v) {
    Point p, q;
    for (int i = 0; i < n; ++i) {
      p.x[i] = v[i];
      p.y[i] = v[n + i];
      q.x[i] = v[2 * n + i];
      q.y[i] = v[3 * n + i];
    }
    p.r = q.r = v[4 * n];
    const cplx a = f1(p) * f2(q);
    if (a == cplx{}) return cplx{};
    const double s = std::exp(lambda * p.r);
    const LegPoint<2> image{Point{s * p.x, s * p.y, -p.r}, Point{s * q.x, s * q.y, -p.r}};
    return a * delta_ahat_density(g, grid.params, image);
  });
}

cplx pairing_delta_a_tensor(const Field3& f, const Field3& g1, const Field3& g2, const QuadGrid& grid) {
  if (factorisable({&f, &g1, &g2}, grid))
    return delta_a_tensor_factorised(*f.packets(), *g1.packets(), *g2.packets(), grid);
  const int n = grid.params.n;
  const double lambda = grid.params.lambda;
  std::vector<const Rule1D*> axes;
  for (int i = 0; i < n; ++i) axes.push_back(&grid.x);
  for (int i = 0; i < n; ++i) axes.push_back(&grid.y);
  axes.push_back(&grid.r);
  axes.push_back(&grid.r);
  return integrate_nd(axes, [&](std::span<const double> v) {
    Point p;
    for (int i = 0; i < n; ++i) {
      p.x[i] = v[i];
      p.y[i] = v[n + i];
    }
    const double r = v[2 * n], rp = v[2 * n + 1];
    p.r = r + rp;
    const cplx a = f(p);
    if (a == cplx{}) return cplx{};
    const double s1 = std::exp(lambda * (r + rp)), s2 = std::exp(lambda * rp);
    return a * g1(Point{s1 * p.x, s1 * p.y, -r}) * g2(Point{s2 * p.x, s2 * p.y, -rp});
  });
}

KernelOp trace_class_kernel(const Field3& a, const Field3& b, const DeformationParams& params) {
  const double lambda = params.lambda;
  const int n = params.n;
  return compose_kernels(rho_rep(b, params), left_rep(a, params), [a, b, lambda, n](const Point& w, const Point& wh) {
    const double sr = w.r - wh.r;
    const double s = std::exp(lambda * sr);
    const cplx bv = b(Point{w.x, w.y, sr});
    if (bv == cplx{}) return cplx{};
    const Vec u = s * w.x - wh.x, v = s * w.y - wh.y;
    return std::pow(s, n) * bv * a(Point{u, v, wh.r}) * e_phase_conj(eta(lambda, wh.r) * beta(u, wh.y));
  });
}

double matrix_truncation_hs(const KernelOp& k, const TruncationBox& box, int points_xy, int points_r) {
  if (k.structure != DeltaStructure::none || !k.kernel)
    throw std::invalid_argument("matrix_truncation_hs: needs a plain function kernel");
  if (points_xy < 1 || points_r < 1) throw std::invalid_argument("matrix_truncation_hs: empty grid");
  auto mid = [](double half, int m, int i) { return -half + (i + 0.5) * (2 * half / m); };
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(points_xy) * points_xy * points_r);
  for (int i = 0; i < points_xy; ++i)
    for (int j = 0; j < points_xy; ++j)
      for (int l = 0; l < points_r; ++l)
        pts.push_back(make_point(mid(box.half_width_x, points_xy, i), mid(box.half_width_y, points_xy, j),
                                 mid(box.half_width_r, points_r, l)));
  const double cell =
      (2 * box.half_width_x / points_xy) * (2 * box.half_width_y / points_xy) * (2 * box.half_width_r / points_r);
  const auto size = static_cast<Eigen::Index>(pts.size());
  Eigen::VectorXcd row(size);
  double total = 0;  // Tr(M* M) = sum of |M_ij|^2
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) row(j) = k.kernel(pts[i], pts[j]) * cell;
    total += row.squaredNorm();
  }
  return total;
}

DualGroupElement dual_group_mul(const DualGroupElement& a, const DualGroupElement& b, const DeformationParams& params) {
  const double s = std::exp(params.lambda * b.r);
  return {s * a.p + b.p, s * a.q + b.q, a.r + b.r};
}

DualGroupElement dual_group_inverse(const DualGroupElement& a, const DeformationParams& params) {
  const double s = std::exp(-params.lambda * a.r);
  return {-(s * a.p), -(s * a.q), -a.r};
}

cplx dual_convolution(const PacketSum& fhat, const PacketSum& ghat, const DualGroupElement& at, const QuadGrid& grid) {
  const int n = grid.params.n;
  const double lambda = grid.params.lambda;
  const auto axes = grid.axes();
  return integrate_nd(axes, [&](std::span<const double> v) {
    const Point t = unflatten<1>(v, n)[0];
    const cplx a = fhat(t);
    if (a == cplx{}) return cplx{};
    const auto h = dual_group_mul(at, dual_group_inverse({t.x, t.y, t.r}, grid.params), grid.params);
    return std::exp(-2.0 * n * lambda * t.r) * a * ghat(Point{h.p, h.q, h.r});
  });
}

namespace {

// Orthonormal Hermite functions psi_0..psi_{k-1} at u.
std::vector<double> hermite_functions(int k, double u) {
  std::vector<double> h(static_cast<std::size_t>(k));
  h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * u * u);
  if (k > 1) h[1] = std::sqrt(2.0) * u * h[0];
  for (int j = 1; j + 1 < k; ++j)
    h[j + 1] = std::sqrt(2.0 / (j + 1)) * u * h[j] - std::sqrt(static_cast<double>(j) / (j + 1)) * h[j - 1];
  return h;
}

struct Lattice3 {
  std::vector<Point> pts;
  double cell = 0;
};

Lattice3 lattice(double hx, double hy, double hr, double step) {
  Lattice3 l;
  auto axis = [step](double half) {
    std::vector<double> v;
    const int m = static_cast<int>(std::floor(half / step + 1e-9));
    for (int i = -m; i <= m; ++i) v.push_back(i * step);
    return v;
  };
  for (double x : axis(hx))
    for (double y : axis(hy))
      for (double r : axis(hr)) l.pts.push_back(make_point(x, y, r));
  l.cell = step * step * step;
  return l;
}

}  // namespace

WkLemmaResult wk_lemma(const WeightedCompositionOp<2>& u, const Field3& zeta, std::span<const Field3> vectors,
                       std::span<const int> family_sizes, const WkLemmaSetup& setup) {
  if (family_sizes.empty()) return {};
  if (!zeta.packets() || std::any_of(vectors.begin(), vectors.end(), [](const Field3& v) { return !v.packets(); }))
    throw std::invalid_argument("wk_lemma: vectors must be packet sums");
  const int kmax = *std::max_element(family_sizes.begin(), family_sizes.end());
  const Lattice3 w = lattice(setup.half_x, setup.half_y, setup.half_r, setup.step);
  const auto nw = static_cast<Eigen::Index>(w.pts.size());
  if (kmax > nw) throw std::invalid_argument("wk_lemma: family larger than the lattice");

  // Family ordered by total degree, orthonormalised on the lattice.
  std::vector<std::array<int, 3>> degrees;
  for (int d = 0; static_cast<int>(degrees.size()) < kmax; ++d)
    for (int a = d; a >= 0 && static_cast<int>(degrees.size()) < kmax; --a)
      for (int b = d - a; b >= 0 && static_cast<int>(degrees.size()) < kmax; --b) degrees.push_back({a, b, d - a - b});
  int top = 0;
  for (const auto& d : degrees) top = std::max({top, d[0], d[1], d[2]});
  const double sc = std::sqrt(setup.hermite_scale);
  Eigen::MatrixXcd fam(nw, kmax);
  const double sw = std::sqrt(w.cell);
  for (Eigen::Index i = 0; i < nw; ++i) {
    const auto hx = hermite_functions(top + 1, sc * w.pts[i].x[0]);
    const auto hy = hermite_functions(top + 1, sc * w.pts[i].y[0]);
    const auto hr = hermite_functions(top + 1, sc * w.pts[i].r);
    for (int k = 0; k < kmax; ++k) fam(i, k) = sw * hx[degrees[k][0]] * hy[degrees[k][1]] * hr[degrees[k][2]];
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(fam);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(nw, kmax);

  // S_K[l][j] = sum_{k<K} sum_{w'} C_l[k,w'] conj C_j[k,w'],  C_l = Q^H (sqrt(dw) U(zeta (x) xi_l)(., w') sqrt(dw'))
  const std::size_t nl = vectors.size();
  std::vector<LegField<2>> moved;
  for (const auto& v : vectors) moved.push_back(apply<2>(u, tensor<2>({zeta, v})));
  std::vector<Eigen::VectorXcd> acc(nl * nl);
  for (auto& a : acc) a = Eigen::VectorXcd::Zero(kmax);
  constexpr Eigen::Index kChunk = 256;
  for (Eigen::Index c0 = 0; c0 < nw; c0 += kChunk) {
    const Eigen::Index cols = std::min(kChunk, nw - c0);
    std::vector<Eigen::MatrixXcd> coef;
    for (std::size_t l = 0; l < nl; ++l) {
      Eigen::MatrixXcd vals(nw, cols);
      for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < nw; ++i) vals(i, j) = w.cell * moved[l]({w.pts[i], w.pts[c0 + j]});
      coef.push_back(q.adjoint() * vals);
    }
    for (std::size_t l = 0; l < nl; ++l)
      for (std::size_t j = 0; j < nl; ++j)
        acc[l * nl + j] += coef[l].cwiseProduct(coef[j].conjugate()).rowwise().sum();
  }

  Eigen::MatrixXcd target(nl, nl);
  const cplx zz = packet_inner(*zeta.packets(), *zeta.packets());
  for (std::size_t l = 0; l < nl; ++l)
    for (std::size_t j = 0; j < nl; ++j)
      target(l, j) = zz * packet_inner(*vectors[l].packets(), *vectors[j].packets());

  WkLemmaResult out;
  for (int k : family_sizes) {
    Eigen::MatrixXcd s(nl, nl);
    for (std::size_t l = 0; l < nl; ++l)
      for (std::size_t j = 0; j < nl; ++j) s(l, j) = acc[l * nl + j].head(k).sum();
    out.family_sizes.push_back(k);
    out.residuals.push_back((s - target).norm() / target.norm());
  }
  return out;
}

}  // namespace qheis
