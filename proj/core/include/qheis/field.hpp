#pragma once

#include <array>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "qheis/packet.hpp"
#include "qheis/quadrature.hpp"

namespace qheis {

// Values on a uniform (x, y, r) lattice, n = 1 only, with separable cubic interpolation off the nodes.
struct SampledGrid {
  Rule1D x, y, r;
  std::vector<cplx> values;  // index (ix * ny + iy) * nr + ir
  double peak = 0;           // max |value|
  double edge = 0;           // max |value| on the outermost nodes
  double floor = 1e-8;       // outside the lattice the field reads as 0 iff edge <= floor * peak

  cplx at(std::size_t ix, std::size_t iy, std::size_t ir) const {
    return values[(ix * y.size() + iy) * r.size() + ir];
  }
  cplx operator()(const Point& p) const;
};

// Complex function of (x, y, r): an element of either algebra or a vector of the Hilbert space.
class Field3 {
 public:
  using Fn = std::function<cplx(const Point&)>;

  Field3() : Field3(PacketSum{}) {}
  Field3(PacketSum packets);  // NOLINT(google-explicit-constructor): packets are fields
  static Field3 lazy(int n, Fn fn);
  static Field3 sampled(SampledGrid grid);

  cplx operator()(const Point& p) const;
  int n() const { return n_; }

  const PacketSum* packets() const { return std::get_if<PacketSum>(rep_.get()); }
  const SampledGrid* grid() const { return std::get_if<SampledGrid>(rep_.get()); }
  bool is_lazy() const { return std::holds_alternative<Fn>(*rep_); }

 private:
  using Rep = std::variant<PacketSum, Fn, SampledGrid>;
  Field3(int n, std::shared_ptr<const Rep> rep) : n_(n), rep_(std::move(rep)) {}

  int n_ = 1;
  std::shared_ptr<const Rep> rep_;
};

Field3 operator+(const Field3& f, const Field3& g);
Field3 operator-(const Field3& f, const Field3& g);
Field3 operator*(cplx s, const Field3& f);

// Evaluates f at every lattice node of the grid (trapezoid rule, n = 1).
Field3 sample(const Field3& f, const QuadGrid& grid);

cplx integrate(const Field3& f, const QuadGrid& grid);
// <f, g> = int f conj(g), conjugate-linear in the second slot.
cplx inner(const Field3& f, const Field3& g, const QuadGrid& grid);
double norm(const Field3& f, const QuadGrid& grid);

// Function of K copies of (x, y, r): vectors of the K-fold tensor product.
template <int K>
using LegPoint = std::array<Point, K>;

template <int K>
class LegField {
 public:
  using Fn = std::function<cplx(const LegPoint<K>&)>;

  LegField() : fn_([](const LegPoint<K>&) { return cplx{}; }) {}
  LegField(int n, Fn fn) : n_(n), fn_(std::move(fn)) {}

  cplx operator()(const LegPoint<K>& p) const { return fn_(p); }
  int n() const { return n_; }

 private:
  int n_ = 1;
  Fn fn_;
};

using ScalarField3 = Field3;
using ScalarField6 = LegField<2>;

// Sum of elementary tensors, e.g. xi_1 (x) xi_2 (x) xi_3.
template <int K>
LegField<K> tensor(const std::array<Field3, K>& legs) {
  return LegField<K>(legs[0].n(), [legs](const LegPoint<K>& p) {
    cplx v{1.0, 0.0};
    for (int k = 0; k < K; ++k) v *= legs[k](p[k]);
    return v;
  });
}

template <int K>
LegField<K> operator+(const LegField<K>& f, const LegField<K>& g) {
  return LegField<K>(f.n(), [f, g](const LegPoint<K>& p) { return f(p) + g(p); });
}

// Flattens a K-leg point into the (x, y, r) axis order used by QuadGrid::axes, repeated per leg.
template <int K>
LegPoint<K> unflatten(std::span<const double> v, int n) {
  LegPoint<K> p{};
  std::size_t j = 0;
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < n; ++i) p[k].x[i] = v[j++];
    for (int i = 0; i < n; ++i) p[k].y[i] = v[j++];
    p[k].r = v[j++];
  }
  return p;
}

template <int K>
cplx integrate(const LegField<K>& f, const QuadGrid& grid) {
  std::vector<const Rule1D*> axes;
  for (int k = 0; k < K; ++k)
    for (const auto* a : grid.axes()) axes.push_back(a);
  const int n = grid.params.n;
  return integrate_nd(axes, [&](std::span<const double> v) { return f(unflatten<K>(v, n)); },
                      grid.support_floor);
}

template <int K>
cplx inner(const LegField<K>& f, const LegField<K>& g, const QuadGrid& grid) {
  return integrate(LegField<K>(f.n(), [&](const LegPoint<K>& p) { return f(p) * std::conj(g(p)); }), grid);
}

}  // namespace qheis
