#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qheis/field.hpp"
#include "qheis/hilbert.hpp"
#include "qheis/packet.hpp"
#include "qheis/rng.hpp"
#include "qheis/verification.hpp"

namespace qheis::verify {

// Everything a check needs for one (lambda, sample, level).
struct Context {
  DeformationParams params;
  TruncationBox box;
  QuadratureSpec quad;  // already scaled for the check
  int level = 0;
  QuadGrid grid;
  std::uint64_t seed = 0;  // per sample, identical across levels
  PacketFamily family;

  PacketSum packet(int role) const { return random_packet(mix_seed(seed, role), box, params, family); }

  // (x, y) on nodes of the coarsest lattice near the origin, one shared r: every level keeps these
  // nodes, so lattice-tabulated products are read without interpolation.
  std::vector<Point> node_probes(int count, int role) const {
    SplitMix64 g(mix_seed(seed, 1000 + role));
    const double hx = 2 * box.half_width_x / quad.nodes_at(0);
    const double hy = 2 * box.half_width_y / quad.nodes_at(0);
    const int kx = std::max(1, static_cast<int>(1.6 / hx)), ky = std::max(1, static_cast<int>(1.6 / hy));
    const double r = g.uniform(-0.6, 0.6);
    std::vector<Point> out;
    for (int i = 0; i < count; ++i) {
      const int ix = static_cast<int>(g.next() % (2 * kx + 1)) - kx;
      const int iy = static_cast<int>(g.next() % (2 * ky + 1)) - ky;
      out.push_back(make_point(ix * hx, iy * hy, r));
    }
    return out;
  }

  // All coarsest-lattice (x, y) nodes within `radius`, at one r.
  std::vector<Point> node_window(double radius, double r) const {
    const double hx = 2 * box.half_width_x / quad.nodes_at(0);
    const double hy = 2 * box.half_width_y / quad.nodes_at(0);
    std::vector<Point> out;
    const int kx = static_cast<int>(radius / hx + 1e-9), ky = static_cast<int>(radius / hy + 1e-9);
    for (int i = -kx; i <= kx; ++i)
      for (int j = -ky; j <= ky; ++j) out.push_back(make_point(i * hx, j * hy, r));
    return out;
  }

  std::vector<Point> probes(int count, int role) const {
    SplitMix64 g(mix_seed(seed, 2000 + role));
    std::vector<Point> out;
    for (int i = 0; i < count; ++i) {
      Point p;
      for (int k = 0; k < params.n; ++k) {
        p.x[k] = g.uniform(-1.2, 1.2);
        p.y[k] = g.uniform(-1.2, 1.2);
      }
      p.r = g.uniform(-0.6, 0.6);
      out.push_back(p);
    }
    return out;
  }

  template <int K>
  std::vector<LegPoint<K>> leg_probes(int count, int role) const {
    const auto flat = probes(K * count, role);
    std::vector<LegPoint<K>> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
      for (int k = 0; k < K; ++k) out[i][k] = flat[static_cast<std::size_t>(K * i + k)];
    return out;
  }

  double uniform(int role, double lo, double hi) const {
    SplitMix64 g(mix_seed(seed, 3000 + role));
    return g.uniform(lo, hi);
  }
};

// Largest pointwise mismatch relative to the largest value seen, or a discrete L2 ratio.
class Discrepancy {
 public:
  void add(cplx a, cplx b) {
    const double d = std::abs(a - b);
    diff_ = std::max(diff_, d);
    scale_ = std::max({scale_, std::abs(a), std::abs(b)});
    diff2_ += d * d;
    ref2_ += std::norm(b);
  }
  double max_relative() const { return scale_ > 0 ? diff_ / scale_ : diff_; }
  double l2_relative() const { return ref2_ > 0 ? std::sqrt(diff2_ / ref2_) : std::sqrt(diff2_); }

 private:
  double diff_ = 0, scale_ = 0, diff2_ = 0, ref2_ = 0;
};

inline double relative_gap(cplx a, cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0 ? std::abs(a - b) / s : 0.0;
}

template <class A, class B>
double compare_at(const A& a, const B& b, const std::vector<Point>& pts) {
  Discrepancy d;
  for (const auto& p : pts) d.add(a(p), b(p));
  return d.max_relative();
}

template <int K, class A, class B>
double compare_legs(const A& a, const B& b, const std::vector<LegPoint<K>>& pts) {
  Discrepancy d;
  for (const auto& p : pts) d.add(a(p), b(p));
  return d.max_relative();
}

enum class LambdaSet { all, zero, nonzero, first_nonzero };

struct Check {
  std::string identity;
  std::string anchor;
  double tolerance = 1e-5;
  int samples = 1;
  bool refined = true;  // false: quadrature-free or exact per node, evaluated once at level 0
  // Nodes per axis are scaled by num/den for this check; an adapted box replaces the default one.
  int num = 1, den = 1;
  std::optional<TruncationBox> box;
  std::optional<int> max_levels;   // caps the refinement depth for the costliest integrals
  std::optional<int> r_intervals;  // r resolution held fixed while x, y refine
  std::optional<PacketFamily> family;
  LambdaSet lambdas = LambdaSet::all;
  bool negative_control = false;  // passes iff the residual exceeds the tolerance
  std::function<double(const Context&)> residual;
  // Self-refining checks return their whole trend at once, labelled by `sweep_labels`.
  std::function<std::vector<double>(const Context&)> sweep;
  std::vector<int> sweep_labels;
};

struct Suite {
  std::string name;
  std::string description;
  std::vector<std::string> depends_on;
  std::vector<Check> checks;
};

Suite core_suite();
Suite pentagon_suite();
Suite hopf_a_suite();
Suite hopf_ahat_suite();
Suite modular_suite();
Suite duality_suite();
Suite classical_suite();
Suite opcop_suite();
Suite invariance_suite();
Suite trace_suite();

}  // namespace qheis::verify
