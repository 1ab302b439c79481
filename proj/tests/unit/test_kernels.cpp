#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "qschur/errors.hpp"
#include "qschur/factor_check.hpp"
#include "qschur/kernels.hpp"

using namespace qschur;

namespace {
const Quaternion I{0, 1, 0, 0}, J{0, 0, 1, 0};

SchurFunction point_factor(const Quaternion& a) {
  return SchurFunction::from_product(build_product(ZeroSet{Domain::ball, {{a, 1}}, {}}));
}

SchurFunction constant(const Quaternion& c) {
  return SchurFunction(Domain::ball, 1, 1, [c](const Quaternion&) { return QMatrix::scalar(c); });
}
}  // namespace

TEST(Kernels, BaseKernelExamples) {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    const Quaternion p = sample_ball(rng, 0.9);
    EXPECT_LE(oracle::dist(base_kernel(Domain::ball, p, Quaternion{}), Quaternion(1.0)), 1e-15);
  }
  EXPECT_NEAR(base_kernel(Domain::ball, Quaternion(0.5), Quaternion(0.4)).x0, 1.0 / 0.8, 1e-15);
  EXPECT_NEAR(base_kernel(Domain::halfspace, Quaternion(0.7), Quaternion(0.7)).x0, 1.0 / 1.4, 1e-15);
}

TEST(Kernels, BaseKernelAgainstSeries) {
  Rng rng(32);
  for (int t = 0; t < 200; ++t) {
    const Quaternion p = sample_ball(rng, 0.89), q = sample_ball(rng, 0.89);
    const double rho = modulus(p) * modulus(q);
    const int n = 60;
    const QMatrix series = oracle::series_kernel(QMatrix::scalar(1.0), p, q, n);
    const double tail = std::pow(rho, n + 1) / (1 - rho);
    EXPECT_LE(oracle::dist(base_kernel(Domain::ball, p, q), series(0, 0)), tail + 1e-14);
  }
}

TEST(Kernels, GeometricKernelAgainstSeries) {
  Rng rng(33);
  QMatrix m(2, 2);
  for (int t = 0; t < 50; ++t) {
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) m(r, c) = sample_box(rng);
    const Quaternion p = sample_ball(rng, 0.8), q = sample_ball(rng, 0.8);
    EXPECT_LE((geometric_kernel(m, p, q) - oracle::series_kernel(m, p, q, 400)).norm(), 1e-12);
  }
}

TEST(Kernels, SchurKernelEval) {
  const SchurFunction zero = constant(Quaternion{});
  const SchurFunction unimod = constant(Quaternion{0.6, 0, 0.8, 0});
  Rng rng(34);
  for (int t = 0; t < 20; ++t) {
    const Quaternion p = sample_ball(rng, 0.9), q = sample_ball(rng, 0.9);
    EXPECT_LE(oracle::dist(schur_kernel_eval(zero, p, q)(0, 0), base_kernel(Domain::ball, p, q)), 1e-12);
    EXPECT_LE(schur_kernel_eval(unimod, p, q).norm(), 1e-12);
  }
  const SchurFunction b = point_factor({0.1, 0.4, -0.2, 0.3});
  for (int t = 0; t < 20; ++t) {
    const Quaternion w = sample_ball(rng, 0.9);
    const QMatrix k = schur_kernel_eval(b, w, w);
    EXPECT_GE(k(0, 0).x0, 0.0);
    EXPECT_LE(k(0, 0).imag_abs(), 1e-12);
  }
}

TEST(Kernels, TruncationTermsFollowTailBound) {
  for (double rho : {0.1, 0.5, 0.8}) {
    const int n = kernel_truncation(2.0, rho, 1e-13);
    // rho = max(|p|, |q|), so the ratio of the series is at most rho^2
    EXPECT_LT(2.0 * std::pow(rho * rho, n + 1) / (1 - rho * rho), 1e-13);
    if (n > 0) {
      EXPECT_GE(2.0 * std::pow(rho * rho, n) / (1 - rho * rho), 1e-13);
    }
  }
}

TEST(Kernels, GramIsHermitianAndPositiveForSchurFunction) {
  const SchurFunction b = point_factor({0.3, 0, 0.2, -0.5});
  Rng rng(35);
  std::vector<Quaternion> pts;
  std::vector<QMatrix> vecs;
  for (int t = 0; t < 3; ++t) {
    pts.push_back(sample_ball(rng, 0.9));
    vecs.push_back(QMatrix::scalar(sample_normal(rng)));
  }
  const QMatrix g = gram(b, pts, vecs);
  EXPECT_LT(hermitian_residual(g), 1e-10);
  for (double ev : oracle::hermitian_eigenvalues(hermitian_part(g))) EXPECT_GE(ev, -1e-10);

  const SchurFunction z = constant(Quaternion{});
  const QMatrix g1 = gram(z, {Quaternion{0.2, 0.3, 0, 0}}, {QMatrix::scalar(1.0)});
  EXPECT_GT(g1(0, 0).x0, 0.0);
  EXPECT_LE(oracle::dist(g1(0, 0), base_kernel(Domain::ball, {0.2, 0.3, 0, 0}, {0.2, 0.3, 0, 0})), 1e-12);

  for (int t = 0; t < 5; ++t) {
    std::vector<Quaternion> many;
    for (int s = 0; s < 30; ++s) many.push_back(sample_ball(rng, 0.9));
    EXPECT_LT(hermitian_residual(block_gram(b, many)), 1e-10);
  }
}

TEST(Kernels, NegativeSquares) {
  NegSquaresOptions opts;
  opts.trials = 40;
  opts.batch = 20;
  EXPECT_EQ(estimate_neg_squares(point_factor({0.1, 0.4, 0, 0.2}), opts).kappa_hat, 0);
  const FactoredProduct inv = product_inverse(build_product(ZeroSet{Domain::ball, {{0.5 * I, 1}}, {}}));
  const NegSquaresReport r1 = estimate_neg_squares(SchurFunction::from_product(inv), opts);
  EXPECT_EQ(r1.kappa_hat, 1);
  EXPECT_EQ(reevaluate_witness(SchurFunction::from_product(inv), r1), 1);
  EXPECT_EQ(static_cast<int>(r1.per_trial.size()), 40);

  const FactorizationCase c = synthesize_generalized_schur(
      ZeroSet{Domain::ball, {{{0.2, 0.5, 0, 0}, 1}, {{-0.4, 0, 0.1, 0.3}, 1}}, {}},
      ZeroSet{Domain::ball, {{0.3 * J, 1}}, {}});
  EXPECT_EQ(estimate_neg_squares(c.s_function(), opts).kappa_hat, 2);
}

TEST(Kernels, NegativeSquaresDeterministicAcrossThreads) {
  const FactoredProduct inv = product_inverse(build_product(ZeroSet{Domain::ball, {{0.5 * I, 2}}, {}}));
  NegSquaresOptions a;
  a.trials = 24;
  a.batch = 12;
  NegSquaresOptions b = a;
  b.threads = 3;
  const NegSquaresReport ra = estimate_neg_squares(SchurFunction::from_product(inv), a);
  const NegSquaresReport rb = estimate_neg_squares(SchurFunction::from_product(inv), b);
  EXPECT_EQ(ra.per_trial, rb.per_trial);
  EXPECT_EQ(ra.witness.eigenvalues, rb.witness.eigenvalues);
  EXPECT_EQ(ra.kappa_hat, 2);
}

TEST(Kernels, DimensionOfHB) {
  EXPECT_EQ(estimate_dim_HB(build_product(ZeroSet{Domain::ball, {{{0.2, 0.3, 0, 0.1}, 1}}, {}})).rank, 1);
  EXPECT_EQ(estimate_dim_HB(build_product(ZeroSet{Domain::ball, {}, {{{0.1, 0, 0.5, 0}, 1}}})).rank, 2);
  // three point factors with parameters on one sphere
  const FactoredProduct three(Domain::ball, 1,
                              {Factor{Factor::Type::point, 0.5 * I, std::nullopt, false},
                               Factor{Factor::Type::point, 0.5 * J, std::nullopt, false},
                               Factor{Factor::Type::point, Quaternion(0, 0.3, 0, 0.4), std::nullopt, false}});
  EXPECT_EQ(product_degree(three), 3);
  EXPECT_EQ(estimate_dim_HB(three).rank, 3);
}

TEST(Kernels, DoubleSeriesHermitian) {
  const FactoredProduct b = build_product(ZeroSet{Domain::ball, {{{0.2, 0.3, 0, 0.1}, 1}}, {{0.4 * J, 1}}});
  const StarPoly t = taylor_coeffs(b.rational(), 30);
  const DoubleSeriesKernel k = schur_double_series(t.coeffs(), QMatrix::identity(1), QMatrix::identity(1), 30);
  EXPECT_LT(k.hermitian_residual(), 1e-12);
  Rng rng(36);
  for (int s = 0; s < 5; ++s) {
    const Quaternion p = sample_ball(rng, 0.4), q = sample_ball(rng, 0.4);
    EXPECT_LE((k(p, q) - schur_kernel_eval(SchurFunction::from_product(b), p, q)).norm(), 1e-10);
  }
}

TEST(Kernels, KernelIdentity) {
  // empty B0, S0 = S
  const FactoredProduct s0 = build_product(ZeroSet{Domain::ball, {{{0.1, 0.2, 0.3, 0}, 1}}, {}});
  KernelIdentityReport r = kernel_identity_check(s0.rational(), FactoredProduct(Domain::ball, 1, {}), s0.rational());
  EXPECT_EQ(r.status, CheckStatus::pass);
  EXPECT_LT(r.coeff_deviation, 1e-14);

  // S = B_a^{-*}, S0 = 1
  const FactoredProduct ba = build_product(ZeroSet{Domain::ball, {{{0.2, 0, 0.5, 0}, 1}}, {}});
  const SliceRational s = product_inverse(ba).rational();
  r = kernel_identity_check(s, ba, SliceRational::identity(1));
  EXPECT_EQ(r.status, CheckStatus::pass) << r.message;
  EXPECT_GE(r.min_gram_eigenvalue, -1e-8);
  EXPECT_LT(r.hermitian_residual, 1e-10);

  // wrong S0 breaks the identity
  r = kernel_identity_check(s, ba, SliceRational(StarPoly::scalar({0.5})));
  EXPECT_EQ(r.status, CheckStatus::fail);
}

TEST(Kernels, MoebiusIdentity) {
  Rng rng(37);
  const SchurFunction b = point_factor({0.2, -0.3, 0.1, 0.4});
  const SchurFunction z = constant(Quaternion{});
  for (int t = 0; t < 20; ++t) {
    const Quaternion p = sample_ball(rng, 0.8), q = sample_ball(rng, 0.8);
    EXPECT_LT(moebius_identity_check(b, 0.0, p, q), 1e-12);
    EXPECT_LT(moebius_identity_check(z, -0.6, p, q), 1e-10);
    EXPECT_LT(moebius_identity_check(b, 0.3, p, q), 1e-9);
  }
}

TEST(Kernels, CayleyTransportOfHalfspaceFactor) {
  const SchurFunction h = SchurFunction::from_product(build_product(ZeroSet{Domain::halfspace, {{{0.7, 0.4, 0, 0.2}, 1}}, {}}));
  const SchurFunction b = cayley_to_ball(h);
  EXPECT_EQ(b.domain(), Domain::ball);
  NegSquaresOptions opts;
  opts.trials = 30;
  opts.batch = 15;
  EXPECT_EQ(estimate_neg_squares(b, opts).kappa_hat, 0);
  EXPECT_EQ(estimate_neg_squares(h, opts).kappa_hat, 0);
}
