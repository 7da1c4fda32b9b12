#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>

#include "qheis/types.hpp"

namespace qheis {

// (e^{2 lambda r} - 1) / (2 lambda), continuous through lambda = 0.
template <class T>
T eta(T lambda, T r) {
  const T t = lambda * r;
  if (std::abs(t) < T(1e-4)) {
    return r * (T(1) + t * (T(1) + t * (T(2) / 3 + t * (T(1) / 3 + t * (T(2) / 15)))));
  }
  return std::expm1(T(2) * t) / (T(2) * lambda);
}

inline double eta(const DeformationParams& params, double r) { return eta<double>(params.lambda, r); }

// e(t) = exp(2 pi i t). The argument is reduced mod 1 first so large phases keep full precision.
template <class T>
std::complex<T> e_phase(T t) {
  const T frac = t - std::nearbyint(t);
  return std::polar(T(1), T(2) * std::numbers::pi_v<T> * frac);
}

template <class T>
std::complex<T> e_phase_conj(T t) {
  return e_phase(-t);
}

template <class T>
constexpr T beta(const BasicVec<T>& u, const BasicVec<T>& v) {
  T s{};
  for (int i = 0; i < kMaxDim; ++i) s += u[i] * v[i];
  return s;
}

inline double beta(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("beta: dimension mismatch");
  double s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

// (e^{lambda r})^n
template <class T>
T scale_power(T lambda, T r, int n) {
  return std::exp(T(n) * lambda * r);
}

}  // namespace qheis
