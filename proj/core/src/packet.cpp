#include "qheis/packet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qheis/phase.hpp"
#include "qheis/rng.hpp"

namespace qheis {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double norm2(const Vec& v) { return beta(v, v); }

cplx gaussian_factor(double a, const Vec& v, const Vec& v0, const Vec& mom) {
  const double re = -a * norm2(v - v0);
  const double im = kTwoPi * beta(mom, v);
  return std::exp(cplx{re, im});
}

// int exp(-a1 (t-c1)^2 - a2 (t-c2)^2 + 2 pi i k t) dt
cplx gauss_overlap_1d(double a1, double c1, double a2, double c2, double k) {
  const double A = a1 + a2;
  const cplx B{2 * a1 * c1 + 2 * a2 * c2, kTwoPi * k};
  const double C = -a1 * c1 * c1 - a2 * c2 * c2;
  return std::sqrt(std::numbers::pi / A) * std::exp(B * B / (4 * A) + C);
}

}  // namespace

cplx GaussianPacket::factor_x(const Vec& x) const { return gaussian_factor(a, x, x0, p0); }
cplx GaussianPacket::factor_y(const Vec& y) const { return gaussian_factor(b, y, y0, q0); }
cplx GaussianPacket::factor_r(double r) const {
  const double d = r - r0;
  return std::exp(cplx{-c * d * d, kTwoPi * s0 * r});
}

cplx GaussianPacket::operator()(const Point& p) const {
  const double dr = p.r - r0;
  const double re = -a * norm2(p.x - x0) - b * norm2(p.y - y0) - c * dr * dr;
  if (re < -60.0) return {};  // below 1e-26 of the amplitude; skips the exp in far tails
  const double im = kTwoPi * (beta(p0, p.x) + beta(q0, p.y) + s0 * p.r);
  return amplitude * std::exp(cplx{re, im});
}

PacketSum conj(const PacketSum& f) {
  PacketSum g = f;
  for (auto& t : g.terms) {
    t.amplitude = std::conj(t.amplitude);
    t.p0 = -t.p0;
    t.q0 = -t.q0;
    t.s0 = -t.s0;
  }
  return g;
}

PacketSum reflect(const PacketSum& f, bool x, bool y, bool r) {
  PacketSum g = f;
  for (auto& t : g.terms) {
    if (x) {
      t.x0 = -t.x0;
      t.p0 = -t.p0;
    }
    if (y) {
      t.y0 = -t.y0;
      t.q0 = -t.q0;
    }
    if (r) {
      t.r0 = -t.r0;
      t.s0 = -t.s0;
    }
  }
  return g;
}

PacketSum scale_arguments(const PacketSum& f, double sx, double sy, double sr) {
  if (sx == 0 || sy == 0 || sr == 0) throw std::invalid_argument("scale_arguments: zero scale");
  PacketSum g = f;
  for (auto& t : g.terms) {
    t.a *= sx * sx;
    t.x0 = (1.0 / sx) * t.x0;
    t.p0 = sx * t.p0;
    t.b *= sy * sy;
    t.y0 = (1.0 / sy) * t.y0;
    t.q0 = sy * t.q0;
    t.c *= sr * sr;
    t.r0 /= sr;
    t.s0 *= sr;
  }
  return g;
}

PacketSum scaled(const PacketSum& f, cplx s) {
  PacketSum g = f;
  for (auto& t : g.terms) t.amplitude *= s;
  return g;
}

PacketSum operator+(const PacketSum& f, const PacketSum& g) {
  if (f.n != g.n) throw std::invalid_argument("packet sum: dimension mismatch");
  PacketSum h = f;
  h.terms.insert(h.terms.end(), g.terms.begin(), g.terms.end());
  return h;
}

PacketSum fourier_packet(const PacketSum& f, FourierAxis axis, bool inverse) {
  PacketSum g = f;
  const double sign = inverse ? -1.0 : 1.0;
  for (auto& t : g.terms) {
    double* width = nullptr;
    Vec center, momentum;
    int dims = f.n;
    switch (axis) {
      case FourierAxis::x:
        width = &t.a;
        center = t.x0;
        momentum = t.p0;
        break;
      case FourierAxis::y:
        width = &t.b;
        center = t.y0;
        momentum = t.q0;
        break;
      case FourierAxis::r:
        width = &t.c;
        center[0] = t.r0;
        momentum[0] = t.s0;
        dims = 1;
        break;
    }
    const double w = *width;
    t.amplitude *= std::pow(std::numbers::pi / w, 0.5 * dims) * e_phase(beta(momentum, center));
    *width = std::numbers::pi * std::numbers::pi / w;
    const Vec new_center = sign * momentum;
    const Vec new_momentum = -sign * center;
    switch (axis) {
      case FourierAxis::x:
        t.x0 = new_center;
        t.p0 = new_momentum;
        break;
      case FourierAxis::y:
        t.y0 = new_center;
        t.q0 = new_momentum;
        break;
      case FourierAxis::r:
        t.r0 = new_center[0];
        t.s0 = new_momentum[0];
        break;
    }
  }
  return g;
}

cplx packet_inner(const PacketSum& f, const PacketSum& g) {
  if (f.n != g.n) throw std::invalid_argument("packet_inner: dimension mismatch");
  cplx total{};
  for (const auto& s : f.terms) {
    for (const auto& t : g.terms) {
      cplx v = s.amplitude * std::conj(t.amplitude);
      for (int i = 0; i < f.n; ++i) {
        v *= gauss_overlap_1d(s.a, s.x0[i], t.a, t.x0[i], s.p0[i] - t.p0[i]);
        v *= gauss_overlap_1d(s.b, s.y0[i], t.b, t.y0[i], s.q0[i] - t.q0[i]);
      }
      v *= gauss_overlap_1d(s.c, s.r0, t.c, t.r0, s.s0 - t.s0);
      total += v;
    }
  }
  return total;
}

SupportRadii effective_support(const PacketSum& f, double floor) {
  const double depth = std::log(1.0 / floor);
  SupportRadii out{0, 0, 0};
  for (const auto& t : f.terms) {
    double cx = 0, cy = 0;
    for (int i = 0; i < f.n; ++i) {
      cx = std::max(cx, std::abs(t.x0[i]));
      cy = std::max(cy, std::abs(t.y0[i]));
    }
    out.x = std::max(out.x, cx + std::sqrt(depth / t.a));
    out.y = std::max(out.y, cy + std::sqrt(depth / t.b));
    out.r = std::max(out.r, std::abs(t.r0) + std::sqrt(depth / t.c));
  }
  return out;
}

PacketSum random_packet(std::uint64_t seed, const TruncationBox& box, const DeformationParams& params,
                        const PacketFamily& family) {
  params.validate();
  SplitMix64 rng(seed);
  PacketSum f;
  f.n = params.n;
  const int terms = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(family.max_terms));
  for (int k = 0; k < terms; ++k) {
    GaussianPacket t;
    t.amplitude = std::polar(rng.uniform(0.5, 1.0), kTwoPi * rng.uniform(0.0, 1.0));
    for (int i = 0; i < params.n; ++i) {
      t.x0[i] = rng.uniform(-family.center_xy, family.center_xy);
      t.y0[i] = rng.uniform(-family.center_xy, family.center_xy);
      t.p0[i] = rng.uniform(-family.momentum, family.momentum);
      t.q0[i] = rng.uniform(-family.momentum, family.momentum);
    }
    t.r0 = rng.uniform(-family.center_r, family.center_r);
    t.s0 = rng.uniform(-family.momentum, family.momentum);
    t.a = rng.uniform(family.width_xy_min, family.width_xy_max);
    t.b = rng.uniform(family.width_xy_min, family.width_xy_max);
    t.c = rng.uniform(family.width_r_min, family.width_r_max);
    f.terms.push_back(t);
  }
  const double norm = std::sqrt(packet_inner(f, f).real());
  f = scaled(f, 1.0 / norm);

  const auto radii = effective_support(f, 1e-12);
  if (radii.x * box.support_inflation > box.half_width_x || radii.y * box.support_inflation > box.half_width_y ||
      radii.r > box.half_width_r)
    throw SupportOverflow("random_packet: packet family does not fit the truncation box");
  return f;
}

}  // namespace qheis
