#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qheis {

using cplx = std::complex<double>;

// x and y live in R^n with n <= kMaxDim; unused components stay zero.
inline constexpr int kMaxDim = 3;

template <class T>
struct BasicVec {
  std::array<T, kMaxDim> c{};

  constexpr T& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  constexpr const T& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  friend constexpr BasicVec operator+(BasicVec a, const BasicVec& b) {
    for (int i = 0; i < kMaxDim; ++i) a[i] += b[i];
    return a;
  }
  friend constexpr BasicVec operator-(BasicVec a, const BasicVec& b) {
    for (int i = 0; i < kMaxDim; ++i) a[i] -= b[i];
    return a;
  }
  friend constexpr BasicVec operator*(T s, BasicVec a) {
    for (auto& v : a.c) v *= s;
    return a;
  }
  constexpr BasicVec operator-() const { return T(-1) * *this; }
  friend constexpr bool operator==(const BasicVec&, const BasicVec&) = default;
};

template <class T>
struct BasicPoint {
  BasicVec<T> x, y;
  T r{};
  friend constexpr bool operator==(const BasicPoint&, const BasicPoint&) = default;
};

using Vec = BasicVec<double>;
using Point = BasicPoint<double>;

template <class U, class T>
constexpr BasicPoint<U> point_cast(const BasicPoint<T>& p) {
  BasicPoint<U> q;
  for (int i = 0; i < kMaxDim; ++i) {
    q.x[i] = static_cast<U>(p.x[i]);
    q.y[i] = static_cast<U>(p.y[i]);
  }
  q.r = static_cast<U>(p.r);
  return q;
}

inline Point make_point(double x, double y, double r) {
  Point p;
  p.x[0] = x;
  p.y[0] = y;
  p.r = r;
  return p;
}

struct DeformationParams {
  double lambda = 0.0;
  int n = 1;

  void validate() const {
    if (n < 1 || n > kMaxDim)
      throw std::invalid_argument("block dimension n must lie in [1, " + std::to_string(kMaxDim) + "]");
  }
};

struct TruncationBox {
  double half_width_x = 6.0;
  double half_width_y = 6.0;
  double half_width_r = 4.0;
  double support_inflation = 1.0;

  void validate() const {
    if (!(half_width_x > 0 && half_width_y > 0 && half_width_r > 0))
      throw std::invalid_argument("box half widths must be positive");
    if (!(support_inflation >= 1.0)) throw std::invalid_argument("support_inflation must be >= 1");
  }
};

enum class QuadratureRule { trapezoid, gauss_legendre };

struct QuadratureSpec {
  int nodes_per_axis = 16;
  QuadratureRule rule = QuadratureRule::trapezoid;
  int refinement_levels = 3;

  // Refinement doubles the node count per level.
  int nodes_at(int level) const { return nodes_per_axis << level; }
  int finest_level() const { return refinement_levels - 1; }

  void validate() const {
    if (nodes_per_axis < 4) throw std::invalid_argument("nodes_per_axis must be >= 4");
    if (refinement_levels < 1) throw std::invalid_argument("refinement_levels must be >= 1");
  }
};

// A field was queried or integrated where its declared support does not fit.
class SupportOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qheis
