#pragma once

#include <optional>
#include <string>
#include <variant>

#include "qschur/blaschke.hpp"
#include "qschur/kernels.hpp"
#include "qschur/star_algebra.hpp"

namespace qschur {

/// S0 given either as a Blaschke product or as a constant with |c| <= 1.
using S0Spec = std::variant<ZeroSet, Quaternion>;

struct FactorizationCase {
  Domain domain = Domain::ball;
  FactoredProduct b0;
  FactoredProduct b0_inverse;
  SliceRational s0;
  SliceRational s;  ///< product_inverse(B0) * S0 as one rational
  int expected_kappa = 0;

  /// (B0^{-*} * S0)(p) from the two factors (pointwise product formula).
  QMatrix eval_lazy(const Quaternion& p) const;
  SchurFunction s_function() const;
  SchurFunction s0_function() const;
};

/// Builds B0 and S0, forms S, and spot-checks S against the lazy product at 20 points.
FactorizationCase synthesize_generalized_schur(const ZeroSet& b0_spec, const S0Spec& s0_spec,
                                               std::uint64_t seed = 0x5C05);

struct KreinLangerReport {
  CheckStatus verdict = CheckStatus::inconclusive;
  int kappa_hat = 0;
  int deg_b0 = 0;
  int expected_kappa = 0;
  NegSquaresReport negsq;
  KernelIdentityReport identity;
  NegSquaresOptions budget;
  std::string message;
};

/// kappa_hat from sampling plus the kernel identity; PASS iff kappa_hat equals the expected
/// index and the identity holds. expected defaults to deg B0.
KreinLangerReport krein_langer_check(const FactorizationCase& c, const NegSquaresOptions& budget = {},
                                     std::optional<int> expected = std::nullopt,
                                     const KernelIdentityOptions& identity = {});

enum class TransportDirection { halfspace_to_ball, ball_to_halfspace };

/// z -> x0 (1 + z)(1 - z)^{-1}: ball onto half-space.
MoebiusMap cayley_from_ball(double x0);
/// p -> (p - x0)(p + x0)^{-1}: half-space onto ball.
MoebiusMap cayley_to_ball_map(double x0);

SchurFunction cayley_transport(const SchurFunction& s, double x0, TransportDirection dir);

}  // namespace qschur
