#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qschur/qmatrix.hpp"
#include "qschur/quaternion.hpp"
#include "qschur/star_algebra.hpp"

namespace qschur {

enum class Domain { ball, halfspace };
enum class FactorKind { point, sphere };

std::string to_string(Domain d);

struct ZeroPoint {
  Quaternion a;
  int n = 1;
};

struct ZeroSphere {
  Quaternion c;
  int m = 1;
};

struct ZeroSet {
  Domain domain = Domain::ball;
  std::vector<ZeroPoint> points;
  std::vector<ZeroSphere> spheres;
};

/// Throws DomainError naming the first violated ZeroSet invariant.
void validate(const ZeroSet& z);

/// Scalar Blaschke factor as a slice rational. Ball point with a = 0 returns p.
SliceRational blaschke_factor(Domain domain, FactorKind kind, const Quaternion& a);

struct PotapovParams {
  int kind = 1;          ///< 1, 2 or 3
  Quaternion a;          ///< kinds 1 and 2: the point; kind 3: w0
  QMatrix P;             ///< kinds 1 and 2: projection
  SignatureMatrix J;     ///< signature (r x r)
  QMatrix u;             ///< kind 3: r x 1, J-neutral
  double k = 1.0;        ///< kind 3 gain
};

/// One factor of a FactoredProduct. Point and sphere factors are scalar and
/// lifted to b(p) I_r inside matrix products.
struct Factor {
  enum class Type { point, sphere, potapov } type = Type::point;
  Quaternion a;                          ///< alpha, sphere representative, or Potapov point
  std::optional<PotapovParams> potapov;  ///< set for Type::potapov
  bool origin_inverse = false;           ///< inverse of a factor centered at a = 0 (ball)

  int degree() const;
};

class FactoredProduct {
 public:
  FactoredProduct(Domain domain, std::size_t dim, std::vector<Factor> factors);

  Domain domain() const { return domain_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Factor>& factors() const { return factors_; }
  const SliceRational& rational() const { return rational_; }

  QMatrix operator()(const Quaternion& p) const { return eval_left(rational_, p); }

 private:
  Domain domain_;
  std::size_t dim_;
  std::vector<Factor> factors_;
  SliceRational rational_;
};

/// Rational of a single factor in dimension dim (scalar factors become b(p) I_dim).
SliceRational factor_rational(Domain domain, const Factor& f, std::size_t dim);

/// Single-factor product after checking every payload invariant.
FactoredProduct potapov_factor(Domain domain, const PotapovParams& params);

/// Zero-prescription builder; sphere factors first, then conjugated point factors.
FactoredProduct build_product(const ZeroSet& zeros);

/// Reversed list of factor inverses.
FactoredProduct product_inverse(const FactoredProduct& b);

/// Point: 1, sphere: 2, Potapov kinds 1/2: rank P, kind 3: 1.
int product_degree(const FactoredProduct& b);

}  // namespace qschur
