#include "qheis/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qheis {

Rule1D gauss_legendre(int count, double lo, double hi) {
  if (count < 1) throw std::invalid_argument("gauss_legendre: count must be positive");
  Rule1D rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = 0;
      for (int k = 1; k <= count; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = count * (z * p0 - p1) / (z * z - 1);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1, p1 = 0;
    for (int k = 1; k <= count; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = count * (z * p0 - p1) / (z * z - 1);
    const double w = 2.0 / ((1 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[count - 1 - i] = mid + half * z;
    rule.weights[i] = rule.weights[count - 1 - i] = half * w;
  }
  return rule;
}

Rule1D make_rule(QuadratureRule kind, int intervals, double half_width) {
  if (intervals < 1) throw std::invalid_argument("make_rule: intervals must be positive");
  if (kind == QuadratureRule::gauss_legendre) return gauss_legendre(intervals, -half_width, half_width);
  if (intervals % 2 != 0) throw std::invalid_argument("trapezoid rule needs an even interval count");
  Rule1D rule;
  rule.lattice = true;
  rule.step = 2 * half_width / intervals;
  rule.center = intervals / 2;
  for (int i = 0; i <= intervals; ++i) {
    rule.nodes.push_back((i - rule.center) * rule.step);
    rule.weights.push_back((i == 0 || i == intervals) ? 0.5 * rule.step : rule.step);
  }
  return rule;
}

QuadGrid QuadGrid::make(const DeformationParams& params, const TruncationBox& box, const QuadratureSpec& spec,
                        int level) {
  params.validate();
  box.validate();
  spec.validate();
  QuadGrid g;
  g.params = params;
  g.box = box;
  g.level = level;
  const int count = spec.nodes_at(level);
  g.x = make_rule(spec.rule, count, box.half_width_x);
  g.y = make_rule(spec.rule, count, box.half_width_y);
  g.r = make_rule(spec.rule, count, box.half_width_r);
  return g;
}

std::vector<const Rule1D*> QuadGrid::axes() const {
  std::vector<const Rule1D*> out;
  for (int i = 0; i < params.n; ++i) out.push_back(&x);
  for (int i = 0; i < params.n; ++i) out.push_back(&y);
  out.push_back(&r);
  return out;
}

cplx integrate_nd(std::span<const Rule1D* const> rules, const std::function<cplx(std::span<const double>)>& f,
                  double support_floor) {
  const std::size_t d = rules.size();
  if (d == 0) return f({});
  for (const auto* rule : rules)
    if (rule->size() == 0) return {};
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> coord(d);
  for (std::size_t k = 0; k < d; ++k) coord[k] = rules[k]->nodes[0];

  const bool check = std::isfinite(support_floor);
  cplx total{};
  double peak = 0, edge = 0;
  while (true) {
    double w = 1;
    bool on_edge = false;
    for (std::size_t k = 0; k < d; ++k) {
      w *= rules[k]->weights[idx[k]];
      on_edge = on_edge || idx[k] == 0 || idx[k] + 1 == rules[k]->size();
    }
    const cplx v = f(coord);
    total += w * v;
    if (check) {
      const double m = std::abs(v);
      peak = std::max(peak, m);
      if (on_edge) edge = std::max(edge, m);
    }
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (++idx[k] < rules[k]->size()) {
        coord[k] = rules[k]->nodes[idx[k]];
        break;
      }
      idx[k] = 0;
      coord[k] = rules[k]->nodes[0];
      if (k == 0) {
        if (check && edge > support_floor * peak)
          throw SupportOverflow("integrand is not negligible on the truncation box boundary");
        return total;
      }
    }
  }
}

}  // namespace qheis
