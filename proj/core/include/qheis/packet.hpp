#pragma once

#include <cstdint>
#include <vector>

#include "qheis/types.hpp"

namespace qheis {

// amplitude * exp(-a|x-x0|^2 - b|y-y0|^2 - c(r-r0)^2) * e(p0.x + q0.y + s0 r)
struct GaussianPacket {
  cplx amplitude{1.0, 0.0};
  Vec x0, y0;
  double r0 = 0;
  double a = 1, b = 1, c = 1;
  Vec p0, q0;
  double s0 = 0;

  cplx operator()(const Point& p) const;
  // 1-d factors; the packet is amplitude * fx(x) * fy(y) * fr(r).
  cplx factor_x(const Vec& x) const;
  cplx factor_y(const Vec& y) const;
  cplx factor_r(double r) const;
};

struct PacketSum {
  int n = 1;
  std::vector<GaussianPacket> terms;

  cplx operator()(const Point& p) const {
    cplx s{};
    for (const auto& t : terms) s += t(p);
    return s;
  }
};

// Closure operations that stay inside the packet family.
PacketSum conj(const PacketSum& f);
PacketSum reflect(const PacketSum& f, bool x, bool y, bool r);            // argument sign flips
PacketSum scale_arguments(const PacketSum& f, double sx, double sy, double sr);  // f(sx x, sy y, sr r)
PacketSum scaled(const PacketSum& f, cplx s);
PacketSum operator+(const PacketSum& f, const PacketSum& g);

enum class FourierAxis { x, y, r };
// Exact 1-d Fourier transform along one block of variables, kernel ebar(k.v) (forward) or e(k.v) (inverse).
PacketSum fourier_packet(const PacketSum& f, FourierAxis axis, bool inverse);

// Closed-form L^2 inner product <f, g> = int f conj(g).
cplx packet_inner(const PacketSum& f, const PacketSum& g);

struct PacketFamily {
  double center_xy = 0.5;
  double center_r = 0.25;
  double width_xy_min = 1.0, width_xy_max = 2.0;  // inverse variances a, b
  double width_r_min = 2.0, width_r_max = 4.0;    // inverse variance c
  double momentum = 0.3;
  int max_terms = 3;
};

// Deterministic random packet sum with unit L^2 norm; throws SupportOverflow if the family does not fit the box.
PacketSum random_packet(std::uint64_t seed, const TruncationBox& box, const DeformationParams& params,
                        const PacketFamily& family = {});

// Radius beyond which |term| < floor * |amplitude| along each block.
struct SupportRadii {
  double x, y, r;
};
SupportRadii effective_support(const PacketSum& f, double floor);

}  // namespace qheis
