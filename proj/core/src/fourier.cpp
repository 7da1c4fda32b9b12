#include "qheis/fourier.hpp"

#include "qheis/phase.hpp"

namespace qheis {
namespace {

double sign_of(FourierDirection dir) { return dir == FourierDirection::forward ? -1.0 : 1.0; }

}  // namespace

Field3 partial_fourier_r(const Field3& f, FourierDirection dir, const QuadGrid& grid) {
  const double s = sign_of(dir);
  return Field3::lazy(f.n(), [f, s, rule = grid.r](const Point& p) {
    const Rule1D* ax[] = {&rule};
    return integrate_nd(ax, [&](std::span<const double> v) {
      Point q = p;
      q.r = v[0];
      return f(q) * e_phase(s * v[0] * p.r);
    });
  });
}

Field3 partial_fourier_xy(const Field3& f, FourierDirection dir, const QuadGrid& grid) {
  const double s = sign_of(dir);
  const int n = grid.params.n;
  return Field3::lazy(f.n(), [f, s, n, gx = grid.x, gy = grid.y](const Point& p) {
    std::vector<const Rule1D*> ax;
    for (int i = 0; i < n; ++i) ax.push_back(&gx);
    for (int i = 0; i < n; ++i) ax.push_back(&gy);
    return integrate_nd(ax, [&](std::span<const double> v) {
      Point q = p;
      for (int i = 0; i < n; ++i) {
        q.x[i] = v[i];
        q.y[i] = v[n + i];
      }
      return f(q) * e_phase(s * (beta(p.x, q.x) + beta(p.y, q.y)));
    });
  });
}

Field3 full_fourier(const Field3& f, FourierDirection dir, const QuadGrid& grid) {
  const double s = sign_of(dir);
  const int n = grid.params.n;
  return Field3::lazy(f.n(), [f, s, n, grid](const Point& p) {
    const auto ax = grid.axes();
    return integrate_nd(ax, [&](std::span<const double> v) {
      const Point q = unflatten<1>(v, n)[0];
      return f(q) * e_phase(s * (beta(p.x, q.x) + beta(p.y, q.y) + p.r * q.r));
    });
  });
}

}  // namespace qheis
