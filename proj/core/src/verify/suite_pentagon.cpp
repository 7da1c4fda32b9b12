#include "qheis/duality.hpp"
#include "qheis/opcop.hpp"
#include "qheis/phase.hpp"
#include "verify/check.hpp"

namespace qheis::verify {
namespace {

constexpr std::size_t kProbeCount = 10000;

struct Variant {
  const char* id;
  const char* formula;
  WeightedCompositionOp<2> KacSystem::*member;
};

constexpr Variant kVariants[] = {
    {"U", "U", &KacSystem::u},
    {"U_hat", "Sigma (j x 1) U (j x 1) Sigma", &KacSystem::u_hat},
    {"U_tilde", "(j x 1) Sigma U Sigma (j x 1)", &KacSystem::u_tilde},
    {"U_hat_hat", "(j x j) U (j x j)", &KacSystem::u_hathat},
};

std::vector<WLegPoint<3>> pentagon_probes(const Context& ctx) {
  return probe_points<3>(ctx.seed, kProbeCount, ctx.box, ctx.params.n);
}

}  // namespace

Suite pentagon_suite() {
  Suite s;
  s.name = "pentagon";
  s.description = "pentagon equation and unitarity certificates for U and its Kac-system variants";

  for (const auto& v : kVariants) {
    const auto member = v.member;
    Check c;
    c.identity = std::string("pentagon_") + v.id;
    c.anchor = std::string("X12 X13 X23 = X23 X12 for X = ") + v.formula;
    c.tolerance = 1e-11;
    c.refined = false;
    c.residual = [member](const Context& ctx) {
      const auto probes = pentagon_probes(ctx);
      return pentagon_residual(build_kac_system(ctx.params).*member, probes);
    };
    s.checks.push_back(c);

    Check a = c;
    a.identity = std::string("pentagon_flipped_adjoint_") + v.id;
    a.anchor = std::string("X12 X13 X23 = X23 X12 for X = Sigma Y* Sigma, Y = ") + v.formula;
    a.residual = [member](const Context& ctx) {
      const auto probes = pentagon_probes(ctx);
      return pentagon_residual(flipped_adjoint(build_kac_system(ctx.params).*member), probes);
    };
    s.checks.push_back(a);

    Check u;
    u.identity = std::string("unitarity_certificate_") + v.id;
    u.anchor = std::string("|m|^2 = |det D sigma| for ") + v.formula;
    u.tolerance = 1e-12;
    u.refined = false;
    u.residual = [member](const Context& ctx) {
      const auto probes = probe_points<2>(ctx.seed, kProbeCount, ctx.box, ctx.params.n);
      return unitarity_defect<2>(build_kac_system(ctx.params).*member, probes);
    };
    s.checks.push_back(u);
  }

  Check neg;
  neg.identity = "negative_control";
  neg.anchor = "a perturbed multiplier on U must violate X12 X13 X23 = X23 X12";
  neg.tolerance = 1e-11;
  neg.refined = false;
  neg.negative_control = true;
  neg.residual = [](const Context& ctx) {
    auto mutated = build_kac_system(ctx.params).u;
    mutated.multiplier = [m = mutated.multiplier](const WLegPoint<2>& w) {
      return m(w) * e_phase(WReal(1e-3) * std::sin(w[0].x[0]) * w[1].y[0]);
    };
    const auto probes = pentagon_probes(ctx);
    return pentagon_residual(mutated, probes);
  };
  s.checks.push_back(neg);
  return s;
}

}  // namespace qheis::verify
