#include "qheis/field.hpp"

#include <algorithm>
#include <cmath>

namespace qheis {
namespace {

struct Stencil {
  std::size_t start = 0;
  int count = 0;
  std::array<double, 4> w{};
};

// Returns false if t lies outside the lattice.
bool make_stencil(const Rule1D& rule, double t, Stencil& s) {
  const double u = (t - rule.nodes.front()) / rule.step;
  const double last = static_cast<double>(rule.size() - 1);
  constexpr double kSnap = 1e-9;
  if (u < -kSnap || u > last + kSnap) return false;
  const double nearest = std::nearbyint(u);
  if (std::abs(u - nearest) < kSnap) {
    s.start = static_cast<std::size_t>(std::clamp(nearest, 0.0, last));
    s.count = 1;
    s.w[0] = 1;
    return true;
  }
  const auto base = static_cast<long>(std::floor(u)) - 1;
  const long start = std::clamp<long>(base, 0, static_cast<long>(rule.size()) - 4);
  s.start = static_cast<std::size_t>(start);
  s.count = 4;
  for (int i = 0; i < 4; ++i) {
    double w = 1;
    for (int j = 0; j < 4; ++j)
      if (j != i) w *= (u - static_cast<double>(start + j)) / static_cast<double>(i - j);
    s.w[i] = w;
  }
  return true;
}

}  // namespace

cplx SampledGrid::operator()(const Point& p) const {
  Stencil sx, sy, sr;
  if (!make_stencil(x, p.x[0], sx) || !make_stencil(y, p.y[0], sy) || !make_stencil(r, p.r, sr)) {
    if (edge <= floor * peak) return {};
    throw SupportOverflow("sampled field queried outside its lattice while its edge values are significant");
  }
  cplx v{};
  for (int i = 0; i < sx.count; ++i)
    for (int j = 0; j < sy.count; ++j)
      for (int k = 0; k < sr.count; ++k)
        v += sx.w[i] * sy.w[j] * sr.w[k] * at(sx.start + i, sy.start + j, sr.start + k);
  return v;
}

Field3::Field3(PacketSum packets)
    : n_(packets.n), rep_(std::make_shared<const Rep>(std::move(packets))) {}

Field3 Field3::lazy(int n, Fn fn) { return Field3(n, std::make_shared<const Rep>(std::move(fn))); }

Field3 Field3::sampled(SampledGrid grid) { return Field3(1, std::make_shared<const Rep>(std::move(grid))); }

cplx Field3::operator()(const Point& p) const {
  return std::visit([&](const auto& rep) -> cplx { return rep(p); }, *rep_);
}

Field3 operator+(const Field3& f, const Field3& g) {
  if (f.packets() && g.packets()) return *f.packets() + *g.packets();
  return Field3::lazy(f.n(), [f, g](const Point& p) { return f(p) + g(p); });
}

Field3 operator-(const Field3& f, const Field3& g) { return f + cplx{-1.0, 0.0} * g; }

Field3 operator*(cplx s, const Field3& f) {
  if (f.packets()) return scaled(*f.packets(), s);
  return Field3::lazy(f.n(), [s, f](const Point& p) { return s * f(p); });
}

Field3 sample(const Field3& f, const QuadGrid& grid) {
  if (grid.params.n != 1) throw std::invalid_argument("sample: lattice sampling supports n = 1 only");
  if (!grid.x.lattice || !grid.y.lattice || !grid.r.lattice)
    throw std::invalid_argument("sample: requires the trapezoid lattice");
  SampledGrid s;
  s.x = grid.x;
  s.y = grid.y;
  s.r = grid.r;
  s.floor = grid.support_floor;
  s.values.resize(s.x.size() * s.y.size() * s.r.size());
  for (std::size_t i = 0; i < s.x.size(); ++i)
    for (std::size_t j = 0; j < s.y.size(); ++j)
      for (std::size_t k = 0; k < s.r.size(); ++k) {
        const cplx v = f(make_point(s.x.nodes[i], s.y.nodes[j], s.r.nodes[k]));
        s.values[(i * s.y.size() + j) * s.r.size() + k] = v;
        const double m = std::abs(v);
        s.peak = std::max(s.peak, m);
        const bool on_edge = i == 0 || j == 0 || k == 0 || i + 1 == s.x.size() || j + 1 == s.y.size() ||
                             k + 1 == s.r.size();
        if (on_edge) s.edge = std::max(s.edge, m);
      }
  return Field3::sampled(std::move(s));
}

cplx integrate(const Field3& f, const QuadGrid& grid) {
  const int n = grid.params.n;
  const auto axes = grid.axes();
  return integrate_nd(
      axes, [&](std::span<const double> v) { return f(unflatten<1>(v, n)[0]); }, grid.support_floor);
}

cplx inner(const Field3& f, const Field3& g, const QuadGrid& grid) {
  return integrate(Field3::lazy(f.n(), [&](const Point& p) { return f(p) * std::conj(g(p)); }), grid);
}

double norm(const Field3& f, const QuadGrid& grid) { return std::sqrt(std::max(0.0, inner(f, f, grid).real())); }

}  // namespace qheis
