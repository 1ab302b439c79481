#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qschur/blaschke.hpp"
#include "qschur/qmatrix.hpp"
#include "qschur/quaternion.hpp"
#include "qschur/star_algebra.hpp"

namespace qschur {

/// A matrix-valued slice function with its signature pair; r x s with J2 r x r and J1 s x s.
class SchurFunction {
 public:
  SchurFunction(Domain domain, std::size_t rows, std::size_t cols, SliceFunction eval);
  SchurFunction(Domain domain, std::size_t rows, std::size_t cols, SliceFunction eval, SignatureMatrix j1,
                SignatureMatrix j2);

  static SchurFunction from_rational(Domain domain, const SliceRational& r);
  static SchurFunction from_product(const FactoredProduct& b);

  Domain domain() const { return domain_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SignatureMatrix& j1() const { return j1_; }
  const SignatureMatrix& j2() const { return j2_; }
  const std::optional<SliceRational>& rational() const { return rational_; }

  QMatrix operator()(const Quaternion& p) const;

  SchurFunction with_signatures(SignatureMatrix j1, SignatureMatrix j2) const;

  /// Additional evaluators for the same function (rational, product, realization...).
  void add_source(SliceFunction f) { extra_.push_back(std::move(f)); }
  std::size_t source_count() const { return 1 + extra_.size(); }
  /// Largest deviation between the primary and any extra source at `samples`
  /// random points of radius <= radius (ball) or the transported region (halfspace).
  double max_source_disagreement(std::uint64_t seed, int samples = 20, double radius = 0.9) const;

 private:
  Domain domain_;
  std::size_t rows_;
  std::size_t cols_;
  SliceFunction eval_;
  SignatureMatrix j1_;
  SignatureMatrix j2_;
  std::optional<SliceRational> rational_;
  std::vector<SliceFunction> extra_;
};

/// S o psi for a real Moebius map psi; the rational form is composed as well when present.
SchurFunction compose(const SchurFunction& s, const MoebiusMap& psi, Domain result_domain);

/// Half-space S to the ball through z -> x0 (1 + z)(1 - z)^{-1}.
SchurFunction cayley_to_ball(const SchurFunction& s, double x0 = 1.0);

/// Ball: (1 - 2Re(q)p + |q|^2 p^2)^{-1}(1 - pq). Half-space: (conj p + conj q)(|p|^2 + 2Re(p) conj q + conj(q)^2)^{-1}.
Quaternion base_kernel(Domain domain, const Quaternion& p, const Quaternion& q);

/// Exact value of sum_n p^n M conj(q)^n for |p||q| < 1.
QMatrix geometric_kernel(const QMatrix& m, const Quaternion& p, const Quaternion& q);

inline constexpr double kKernelTol = 1e-13;

/// Truncated sum_{n<=N} p^n (J2 - S(p) J1 S(q)^*) conj(q)^n, N from the geometric tail bound.
QMatrix schur_kernel_eval(const SchurFunction& s, const Quaternion& p, const Quaternion& q, double tol = kKernelTol);

/// Number of terms schur_kernel_eval uses for a given ||M|| and rho.
int kernel_truncation(double m_norm, double rho, double tol);

/// Scalar Gram (l, j) -> c_l^* K_S(w_l, w_j) c_j. Vectors are s x 1 ... r x 1 columns.
QMatrix gram(const SchurFunction& s, const std::vector<Quaternion>& points, const std::vector<QMatrix>& vectors);

/// Block Gram [K_S(w_l, w_j)] of size (n r) x (n r).
QMatrix block_gram(const SchurFunction& s, const std::vector<Quaternion>& points);

struct NegSquaresOptions {
  int trials = 200;
  int batch = 40;
  std::uint64_t seed = 0x5C05;
  double radius = 0.9;
  double cutoff = kNegativityCutoff;
  int threads = 1;
  double cayley_x0 = 1.0;  ///< used when the function lives on the half-space
};

struct NegSquaresWitness {
  std::vector<Quaternion> points;
  std::vector<QMatrix> vectors;
  std::vector<double> eigenvalues;
  int trial = -1;
};

struct NegSquaresReport {
  int kappa_hat = 0;
  int trials = 0;
  int batch = 0;
  std::uint64_t seed = 0;
  double cutoff = kNegativityCutoff;
  std::vector<int> per_trial;
  NegSquaresWitness witness;
};

/// Sampling lower bound for the number of negative squares of K_S.
NegSquaresReport estimate_neg_squares(const SchurFunction& s, const NegSquaresOptions& opts = {});

/// Negatives of the Gram at the witness configuration.
int reevaluate_witness(const SchurFunction& s, const NegSquaresReport& report);

struct DimHBReport {
  int rank = 0;
  int points = 0;
  std::vector<double> eigenvalues;  ///< descending
  double gap = 0.0;                 ///< smallest kept / largest dropped eigenvalue
  std::string warning;
};

/// Numerical rank of the block Gram of K_B. points = 0 picks 3 deg + 4.
DimHBReport estimate_dim_HB(const FactoredProduct& b, int points = 0, double cutoff = 1e-8,
                            std::uint64_t seed = 0x5C05);

/// sum_{n,m<=N} p^n C_{nm} conj(q)^m.
class DoubleSeriesKernel {
 public:
  DoubleSeriesKernel(int n, std::size_t rows);

  int order() const { return n_; }
  std::size_t rows() const { return rows_; }
  QMatrix& at(int n, int m) { return c_[idx(n, m)]; }
  const QMatrix& at(int n, int m) const { return c_[idx(n, m)]; }

  QMatrix operator()(const Quaternion& p, const Quaternion& q) const;
  /// max ||C_nm - C_mn^*|| w^{n+m}.
  double hermitian_residual(double weight = 1.0) const;
  /// max ||C_nm|| w^{n+m}.
  double weighted_max(double weight = 1.0) const;

 private:
  std::size_t idx(int n, int m) const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(m); }
  int n_;
  std::size_t rows_;
  std::vector<QMatrix> c_;
};

/// Coefficients of K_S from Taylor coefficients s_0..s_N: J2 delta - sum_k s_{n-k} J1 s_{m-k}^*.
DoubleSeriesKernel schur_double_series(const std::vector<QMatrix>& s, const QMatrix& j1, const QMatrix& j2, int n);

/// B * K *_r B^*: left convolution on the n index, adjointed right convolution on the m index.
DoubleSeriesKernel sandwich(const std::vector<QMatrix>& b, const DoubleSeriesKernel& k);

enum class CheckStatus { pass, fail, inconclusive };
std::string to_string(CheckStatus s);

struct KernelIdentityOptions {
  int order = 60;
  int gram_points = 12;
  std::uint64_t seed = 0x5C05;
  double coeff_tol = 1e-9;
  double hermitian_tol = 1e-10;
  double positivity_tol = 1e-8;
  double tail_tol = 1e-10;
  double min_radius = 0.6;  ///< shift by a Moebius map when the convergence radius is below this
};

struct KernelIdentityReport {
  CheckStatus status = CheckStatus::inconclusive;
  int order = 0;
  double x0 = 0.0;      ///< Moebius shift applied (0 = none)
  double radius = 0.0;  ///< convergence radius of the Taylor expansions after the shift
  double coeff_deviation = 0.0;
  double hermitian_residual = 0.0;
  double min_gram_eigenvalue = 0.0;  ///< normalized by max(1, spectral radius)
  double tail_estimate = 0.0;
  std::string message;
};

/// K_S - K_B = B * K_{S0} *_r B^* with B = B0^{-*}, checked on truncated double series.
KernelIdentityReport kernel_identity_check(const SliceRational& s, const FactoredProduct& b0, const SliceRational& s0,
                                           const KernelIdentityOptions& opts = {});
/// Same check from rationals: S, B (already B0^{-*}) and S0, all on the ball.
KernelIdentityReport kernel_identity_check(const SliceRational& s, const SliceRational& b, const SliceRational& s0,
                                           const KernelIdentityOptions& opts = {});

/// Smallest modulus among the complex roots of the denominators (1 when none lie below 1).
double convergence_radius(const std::vector<const RealPoly*>& dens);

/// || K_{S o b}(p,q) - (1 - x0^2)(1 + p x0)^{-1} K_S(b(p), b(q)) (1 + conj(q) x0)^{-1} ||, b(p) = (p + x0)(1 + p x0)^{-1}.
double moebius_identity_check(const SchurFunction& s, double x0, const Quaternion& p, const Quaternion& q);

}  // namespace qschur
