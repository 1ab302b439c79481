#include "qschur/factor_check.hpp"

#include <algorithm>
#include <cmath>

#include "qschur/errors.hpp"

namespace qschur {

QMatrix FactorizationCase::eval_lazy(const Quaternion& p) const {
  const auto& bi = b0_inverse.rational();
  const auto& s0r = s0;
  return star_eval([&bi](const Quaternion& x) { return eval_left(bi, x); },
                   [&s0r](const Quaternion& x) { return eval_left(s0r, x); }, p);
}

SchurFunction FactorizationCase::s_function() const {
  SchurFunction f = SchurFunction::from_rational(domain, s);
  const FactorizationCase copy = *this;
  f.add_source([copy](const Quaternion& p) { return copy.eval_lazy(p); });
  return f;
}

SchurFunction FactorizationCase::s0_function() const { return SchurFunction::from_rational(domain, s0); }

FactorizationCase synthesize_generalized_schur(const ZeroSet& b0_spec, const S0Spec& s0_spec, std::uint64_t seed) {
  FactoredProduct b0 = build_product(b0_spec);
  FactoredProduct b0i = product_inverse(b0);
  SliceRational s0;
  if (const auto* z = std::get_if<ZeroSet>(&s0_spec)) {
    if (z->domain != b0_spec.domain) throw DomainError("synthesize_generalized_schur: B0 and S0 domains differ");
    s0 = build_product(*z).rational();
  } else {
    const Quaternion c = std::get<Quaternion>(s0_spec);
    if (!is_finite(c) || modulus(c) > 1.0) throw DomainError("synthesize_generalized_schur: constant S0 needs |c| <= 1");
    s0 = SliceRational(StarPoly::scalar({c}));
  }
  SliceRational s = star_mul(b0i.rational(), s0);
  FactorizationCase fc{b0_spec.domain, std::move(b0), std::move(b0i), std::move(s0), std::move(s), 0};
  fc.expected_kappa = product_degree(fc.b0);

  Rng rng(seed);
  for (int i = 0; i < 20; ++i) {
    const Quaternion p = fc.domain == Domain::ball ? sample_ball(rng, 0.9) : sample_halfspace(rng, 0.05, 3.0, 3.0);
    try {
      const QMatrix direct = eval_left(fc.s, p);
      const QMatrix lazy = fc.eval_lazy(p);
      if ((direct - lazy).norm() > 1e-9 * std::max(1.0, direct.norm()))
        throw NumericError("synthesize_generalized_schur: rational S disagrees with the factored product");
    } catch (const PoleError&) {
    }
  }
  return fc;
}

KreinLangerReport krein_langer_check(const FactorizationCase& c, const NegSquaresOptions& budget,
                                     std::optional<int> expected, const KernelIdentityOptions& identity) {
  KreinLangerReport rep;
  rep.budget = budget;
  rep.deg_b0 = product_degree(c.b0);
  rep.expected_kappa = expected.value_or(rep.deg_b0);

  rep.negsq = estimate_neg_squares(c.s_function(), budget);
  rep.kappa_hat = rep.negsq.kappa_hat;

  SliceRational s = c.s;
  SliceRational b = c.b0_inverse.rational();
  SliceRational s0 = c.s0;
  if (c.domain == Domain::halfspace) {
    const MoebiusMap psi = cayley_from_ball(budget.cayley_x0);
    s = compose_moebius(s, psi);
    b = compose_moebius(b, psi);
    s0 = compose_moebius(s0, psi);
  }
  rep.identity = kernel_identity_check(s, b, s0, identity);

  if (rep.identity.status == CheckStatus::inconclusive) {
    rep.verdict = CheckStatus::inconclusive;
    rep.message = "kernel identity inconclusive: " + rep.identity.message;
  } else if (rep.kappa_hat != rep.expected_kappa) {
    rep.verdict = CheckStatus::fail;
    rep.message = "kappa_hat " + std::to_string(rep.kappa_hat) + " differs from expected " +
                  std::to_string(rep.expected_kappa);
  } else if (rep.identity.status == CheckStatus::fail) {
    rep.verdict = CheckStatus::fail;
    rep.message = "kernel identity failed: " + rep.identity.message;
  } else {
    rep.verdict = CheckStatus::pass;
  }
  return rep;
}

MoebiusMap cayley_from_ball(double x0) {
  if (!(x0 > 0.0)) throw DomainError("cayley map: x0 must be positive");
  return {x0, x0, -1.0, 1.0};
}

MoebiusMap cayley_to_ball_map(double x0) {
  if (!(x0 > 0.0)) throw DomainError("cayley map: x0 must be positive");
  return {1.0, -x0, 1.0, x0};
}

SchurFunction cayley_transport(const SchurFunction& s, double x0, TransportDirection dir) {
  if (dir == TransportDirection::halfspace_to_ball) {
    if (s.domain() != Domain::halfspace) throw PreconditionError("cayley_transport: source is not on the half-space");
    return compose(s, cayley_from_ball(x0), Domain::ball);
  }
  if (s.domain() != Domain::ball) throw PreconditionError("cayley_transport: source is not on the ball");
  return compose(s, cayley_to_ball_map(x0), Domain::halfspace);
}

}  // namespace qschur
