#include <bit>
#include <mutex>
#include <unordered_map>

#include "qheis/algebra_ahat.hpp"
#include "verify/check.hpp"

namespace qheis::verify {
namespace {

// Remembers values of an expensive field by exact point; the nested invariance sums revisit the
// same lattice sums of coordinates many times.
Field3 remembered(const Field3& f) {
  struct Key {
    std::uint64_t x, y, r;
    bool operator==(const Key&) const = default;
  };
  struct Hash {
    std::size_t operator()(const Key& k) const {
      return static_cast<std::size_t>(mix_seed(k.x ^ mix_seed(k.y, 1), k.r));
    }
  };
  struct Memo {
    std::mutex mu;
    std::unordered_map<Key, cplx, Hash> values;
  };
  auto memo = std::make_shared<Memo>();
  return Field3::lazy(f.n(), [f, memo](const Point& p) {
    const Key k{std::bit_cast<std::uint64_t>(p.x[0]), std::bit_cast<std::uint64_t>(p.y[0]),
                std::bit_cast<std::uint64_t>(p.r)};
    {
      std::lock_guard lock(memo->mu);
      if (auto it = memo->values.find(k); it != memo->values.end()) return it->second;
    }
    const cplx v = f(p);
    std::lock_guard lock(memo->mu);
    memo->values.emplace(k, v);
    return v;
  });
}

TruncationBox invariance_box() {
  TruncationBox box;
  box.half_width_x = 7.0;
  box.half_width_y = 7.0;
  return box;
}

}  // namespace

Suite invariance_suite() {
  Suite s;
  s.name = "invariance";
  s.description = "left invariance of the Haar weight on the scaled convolution algebra";
  s.depends_on = {"core", "haar_modular"};

  Check inv;
  inv.identity = "left_invariance";
  inv.anchor = "phi^((omega_{zeta,zeta} (x) id) Delta^(f* x f)) = <zeta, zeta> phi^(f* x f)";
  inv.tolerance = 1e-4;
  inv.samples = 5;
  inv.num = 3;
  inv.den = 8;
  inv.box = invariance_box();
  inv.residual = [](const Context& ctx) {
    const Field3 f = ctx.packet(0), zeta = ctx.packet(1);
    const auto& G = ctx.grid;
    const Field3 b = remembered(product_ahat(star_ahat(f, ctx.params), f, G));
    const cplx lhs = haar_ahat(slice_to_ahat_function(b, zeta, G), G);
    const cplx rhs = inner(zeta, zeta, G) * haar_ahat(b, G);
    return relative_gap(lhs, rhs);
  };
  s.checks.push_back(inv);

  Check slice;
  slice.identity = "invariance_slice";
  slice.anchor = "(omega_{zeta,zeta} (x) id)((rho x rho)(Delta^ b)) = rho_g for the sliced function g";
  slice.tolerance = 1e-4;
  slice.samples = 2;
  slice.den = 2;
  slice.residual = [](const Context& ctx) {
    const Field3 b = ctx.packet(0), zeta = ctx.packet(1), alpha = ctx.packet(2);
    const auto& G = ctx.grid;
    const Field3 g = slice_to_ahat_function(b, zeta, G);
    const auto moved = apply<2>(delta_ahat_structured(b, ctx.params), tensor<2>({zeta, alpha}), G);
    const Field3 direct = Field3::lazy(1, [moved, zeta, G](const Point& q) {
      return integrate(Field3::lazy(1, [&](const Point& p) { return std::conj(zeta(p)) * moved({p, q}); }), G);
    });
    return compare_at(apply(rho_rep(g, ctx.params), alpha, G), direct, ctx.probes(1, 0));
  };
  s.checks.push_back(slice);
  return s;
}

}  // namespace qheis::verify
