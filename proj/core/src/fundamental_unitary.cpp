#include "qheis/fundamental_unitary.hpp"

#include <cmath>

#include "qheis/phase.hpp"

namespace qheis {

WeightedCompositionOp<2> fundamental_unitary(const DeformationParams& params) {
  params.validate();
  using P = WLegPoint<2>;
  const WReal lambda = params.lambda;
  const int n = params.n;
  WeightedCompositionOp<2> u;
  u.name = "U";
  u.n = n;
  u.sigma = [lambda](const P& w) {
    const WReal s = std::exp(-lambda * w[1].r);
    P out;
    out[0].x = s * w[0].x;
    out[0].y = s * w[0].y;
    out[0].r = w[0].r + w[1].r;
    out[1].x = w[1].x - s * w[0].x;
    out[1].y = w[1].y - s * w[0].y;
    out[1].r = w[1].r;
    return out;
  };
  u.sigma_inv = [lambda](const P& w) {
    const WReal s = std::exp(-lambda * w[1].r);
    P out;
    out[0].x = (1 / s) * w[0].x;
    out[0].y = (1 / s) * w[0].y;
    out[0].r = w[0].r - w[1].r;
    out[1].x = w[1].x + w[0].x;
    out[1].y = w[1].y + w[0].y;
    out[1].r = w[1].r;
    return out;
  };
  u.multiplier = [lambda, n](const P& w) {
    const WReal rp = w[1].r;
    const WReal s = std::exp(-lambda * rp);
    const WReal phase = eta(lambda, rp) * beta(s * w[0].x, w[1].y - s * w[0].y);
    return std::pow(s, static_cast<WReal>(n)) * e_phase_conj(phase);
  };
  u.jacobian = [lambda, n](const P& w) { return std::exp(-2 * n * lambda * w[1].r); };
  return u;
}

}  // namespace qheis
