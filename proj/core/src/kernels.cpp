#include "qschur/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "qschur/errors.hpp"

namespace qschur {

// ---------------------------------------------------------------- SchurFunction

SchurFunction::SchurFunction(Domain domain, std::size_t rows, std::size_t cols, SliceFunction eval)
    : SchurFunction(domain, rows, cols, std::move(eval), SignatureMatrix::identity(cols),
                    SignatureMatrix::identity(rows)) {}

SchurFunction::SchurFunction(Domain domain, std::size_t rows, std::size_t cols, SliceFunction eval,
                             SignatureMatrix j1, SignatureMatrix j2)
    : domain_(domain), rows_(rows), cols_(cols), eval_(std::move(eval)), j1_(std::move(j1)), j2_(std::move(j2)) {
  if (j1_.dim() != cols_ || j2_.dim() != rows_)
    throw ShapeError("SchurFunction: signature sizes must match the output shape");
  if (!eval_) throw PreconditionError("SchurFunction: empty evaluator");
}

SchurFunction SchurFunction::from_rational(Domain domain, const SliceRational& r) {
  SchurFunction f(domain, r.rows(), r.cols(), [r](const Quaternion& p) { return eval_left(r, p); });
  f.rational_ = r;
  return f;
}

SchurFunction SchurFunction::from_product(const FactoredProduct& b) {
  return from_rational(b.domain(), b.rational());
}

QMatrix SchurFunction::operator()(const Quaternion& p) const {
  QMatrix v = eval_(p);
  if (v.rows() != rows_ || v.cols() != cols_) throw ShapeError("SchurFunction: evaluator returned a wrong shape");
  return v;
}

SchurFunction SchurFunction::with_signatures(SignatureMatrix j1, SignatureMatrix j2) const {
  SchurFunction f(domain_, rows_, cols_, eval_, std::move(j1), std::move(j2));
  f.rational_ = rational_;
  f.extra_ = extra_;
  return f;
}

double SchurFunction::max_source_disagreement(std::uint64_t seed, int samples, double radius) const {
  double worst = 0.0;
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const Quaternion p = domain_ == Domain::ball ? sample_ball(rng, radius) : sample_halfspace(rng, 0.05, 3.0, 3.0);
    QMatrix ref;
    try {
      ref = (*this)(p);
    } catch (const PoleError&) {
      continue;
    } catch (const SpectrumError&) {
      continue;
    }
    for (const auto& f : extra_) {
      try {
        worst = std::max(worst, (f(p) - ref).norm());
      } catch (const PoleError&) {
      } catch (const SpectrumError&) {
      }
    }
  }
  return worst;
}

SchurFunction compose(const SchurFunction& s, const MoebiusMap& psi, Domain result_domain) {
  if (s.rational())
    return SchurFunction::from_rational(result_domain, compose_moebius(*s.rational(), psi))
        .with_signatures(s.j1(), s.j2());
  return SchurFunction(result_domain, s.rows(), s.cols(), [s, psi](const Quaternion& p) { return s(psi(p)); },
                       s.j1(), s.j2());
}

SchurFunction cayley_to_ball(const SchurFunction& s, double x0) {
  if (s.domain() != Domain::halfspace) throw PreconditionError("cayley_to_ball: function is not on the half-space");
  if (!(x0 > 0.0)) throw DomainError("cayley_to_ball: x0 must be positive");
  return compose(s, MoebiusMap{x0, x0, -1.0, 1.0}, Domain::ball);
}

// ---------------------------------------------------------------- pointwise kernels

Quaternion base_kernel(Domain domain, const Quaternion& p, const Quaternion& q) {
  if (domain == Domain::ball) {
    if (!(modulus(p) * modulus(q) < 1.0)) throw DivergenceError("base_kernel: |p||q| >= 1");
    const Quaternion d = RealPoly({1.0, -2.0 * q.x0, norm2(q)})(p);
    return inverse(d) * (Quaternion{1.0} - p * q);
  }
  const Quaternion qb = conj(q);
  const Quaternion d = Quaternion{norm2(p)} + 2.0 * p.x0 * qb + qb * qb;
  if (modulus(d) <= 1e-300 || modulus(d) <= 1e-14 * (norm2(p) + norm2(q))) {
    const SphereRep r = decompose(q);
    throw PoleError("base_kernel: half-space denominator vanishes", r.x, r.y);
  }
  return (conj(p) + qb) * inverse(d);
}

QMatrix geometric_kernel(const QMatrix& m, const Quaternion& p, const Quaternion& q) {
  if (!(modulus(p) * modulus(q) < 1.0)) throw DivergenceError("geometric_kernel: |p||q| >= 1");
  const Quaternion d = RealPoly({1.0, -2.0 * q.x0, norm2(q)})(p);
  return inverse(d) * (m - p * m * q);
}

int kernel_truncation(double m_norm, double rho, double tol) {
  if (!(rho < 1.0)) throw DivergenceError("kernel_truncation: rho >= 1");
  if (m_norm == 0.0 || rho == 0.0) return 0;
  const double one_minus = 1.0 - rho * rho;
  int n = 0;
  double t = m_norm * rho * rho / one_minus;
  while (!(t < tol)) {
    t *= rho * rho;
    ++n;
    if (n > 1000000) throw DivergenceError("kernel_truncation: too many terms");
  }
  return n;
}

namespace {

QMatrix middle(const SchurFunction& s, const QMatrix& sp, const QMatrix& sq) {
  return s.j2().matrix() - sp * s.j1().matrix() * sq.adjoint();
}

std::vector<QMatrix> values_at(const SchurFunction& s, const std::vector<Quaternion>& points) {
  std::vector<QMatrix> v;
  v.reserve(points.size());
  for (const auto& w : points) v.push_back(s(w));
  return v;
}

QMatrix gram_from_values(const SchurFunction& s, const std::vector<Quaternion>& points,
                         const std::vector<QMatrix>& values, const std::vector<QMatrix>& vectors) {
  const std::size_t n = points.size();
  QMatrix g(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    const QMatrix cl = vectors[l].adjoint();
    for (std::size_t j = 0; j < n; ++j) {
      const QMatrix k = geometric_kernel(middle(s, values[l], values[j]), points[l], points[j]);
      g(l, j) = (cl * k * vectors[j])(0, 0);
    }
  }
  return g;
}

Quaternion sample_point(Domain domain, Rng& rng, double radius) {
  return domain == Domain::ball ? sample_ball(rng, radius) : sample_halfspace(rng, 0.05, 3.0, 3.0);
}

QMatrix sample_vector(Rng& rng, std::size_t r) {
  QMatrix v(r, 1);
  double n2 = 0.0;
  while (n2 == 0.0) {
    for (std::size_t i = 0; i < r; ++i) v(i, 0) = sample_normal(rng);
    n2 = v.norm();
  }
  return v * (1.0 / n2);
}

}  // namespace

QMatrix schur_kernel_eval(const SchurFunction& s, const Quaternion& p, const Quaternion& q, double tol) {
  if (s.domain() != Domain::ball)
    throw PreconditionError("schur_kernel_eval: transport half-space functions to the ball first");
  const double rho = std::max(modulus(p), modulus(q));
  if (!(rho < 1.0)) throw DivergenceError("schur_kernel_eval: max(|p|, |q|) >= 1");
  const QMatrix m = middle(s, s(p), s(q));
  const int n = kernel_truncation(m.norm(), rho, tol);
  const Quaternion qb = conj(q);
  QMatrix term = m;
  QMatrix acc = m;
  for (int k = 1; k <= n; ++k) {
    term = p * term * qb;
    acc += term;
  }
  return acc;
}

QMatrix gram(const SchurFunction& s, const std::vector<Quaternion>& points, const std::vector<QMatrix>& vectors) {
  if (points.size() != vectors.size()) throw ShapeError("gram: points and vectors differ in count");
  for (const auto& v : vectors)
    if (v.rows() != s.rows() || v.cols() != 1) throw ShapeError("gram: vectors must be r x 1");
  if (s.domain() != Domain::ball) throw PreconditionError("gram: transport half-space functions to the ball first");
  return gram_from_values(s, points, values_at(s, points), vectors);
}

QMatrix block_gram(const SchurFunction& s, const std::vector<Quaternion>& points) {
  if (s.domain() != Domain::ball) throw PreconditionError("block_gram: transport half-space functions to the ball first");
  const std::size_t r = s.rows();
  const std::vector<QMatrix> v = values_at(s, points);
  QMatrix g(points.size() * r, points.size() * r);
  for (std::size_t l = 0; l < points.size(); ++l)
    for (std::size_t j = 0; j < points.size(); ++j)
      g.set_block(l * r, j * r, geometric_kernel(middle(s, v[l], v[j]), points[l], points[j]));
  return g;
}

// ---------------------------------------------------------------- negative squares

namespace {

struct TrialResult {
  int negatives = 0;
  std::vector<Quaternion> points;
  std::vector<QMatrix> vectors;
  std::vector<double> eigenvalues;
};

TrialResult run_trial(const SchurFunction& f, const NegSquaresOptions& o, int trial) {
  Rng rng(o.seed, static_cast<std::uint64_t>(trial));
  TrialResult t;
  std::vector<QMatrix> values;
  for (int i = 0; i < o.batch; ++i) {
    for (int attempt = 0;; ++attempt) {
      const Quaternion p = sample_point(Domain::ball, rng, o.radius);
      try {
        values.push_back(f(p));
        t.points.push_back(p);
        break;
      } catch (const PoleError&) {
        if (attempt >= 100) throw;
      }
    }
    t.vectors.push_back(sample_vector(rng, f.rows()));
  }
  const QMatrix g = gram_from_values(f, t.points, values, t.vectors);
  const HermitianSpectrum spec = herm_eigen_neg(hermitian_part(g), o.cutoff);
  t.negatives = spec.negatives;
  t.eigenvalues = spec.eigenvalues;
  return t;
}

}  // namespace

NegSquaresReport estimate_neg_squares(const SchurFunction& s, const NegSquaresOptions& opts) {
  if (opts.trials < 1) throw PreconditionError("estimate_neg_squares: trials must be >= 1");
  if (opts.batch < 1) throw PreconditionError("estimate_neg_squares: batch must be >= 1");
  if (!(opts.radius > 0.0 && opts.radius < 1.0)) throw DomainError("estimate_neg_squares: radius must lie in (0, 1)");
  const SchurFunction f = s.domain() == Domain::halfspace ? cayley_to_ball(s, opts.cayley_x0) : s;

  std::vector<TrialResult> results(static_cast<std::size_t>(opts.trials));
  const int workers = std::max(1, std::min(opts.threads, opts.trials));
  if (workers == 1) {
    for (int t = 0; t < opts.trials; ++t) results[static_cast<std::size_t>(t)] = run_trial(f, opts, t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int t = next++; t < opts.trials; t = next++) results[static_cast<std::size_t>(t)] = run_trial(f, opts, t);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  NegSquaresReport rep;
  rep.trials = opts.trials;
  rep.batch = opts.batch;
  rep.seed = opts.seed;
  rep.cutoff = opts.cutoff;
  int best = -1;
  for (int t = 0; t < opts.trials; ++t) {
    const auto& r = results[static_cast<std::size_t>(t)];
    rep.per_trial.push_back(r.negatives);
    if (r.negatives > best) {
      best = r.negatives;
      rep.witness = {r.points, r.vectors, r.eigenvalues, t};
    }
  }
  rep.kappa_hat = best;
  return rep;
}

int reevaluate_witness(const SchurFunction& s, const NegSquaresReport& report) {
  const SchurFunction f = s.domain() == Domain::halfspace ? cayley_to_ball(s) : s;
  const QMatrix g = gram(f, report.witness.points, report.witness.vectors);
  return herm_eigen_neg(hermitian_part(g), report.cutoff).negatives;
}

DimHBReport estimate_dim_HB(const FactoredProduct& b, int points, double cutoff, std::uint64_t seed) {
  for (const auto& f : b.factors()) {
    if (f.origin_inverse) throw PreconditionError("estimate_dim_HB: product contains an inverted factor");
    if (f.type == Factor::Type::potapov && f.potapov->kind != 1)
      throw PreconditionError("estimate_dim_HB: only kind-1 Potapov factors are allowed");
    if (f.type == Factor::Type::potapov && f.potapov->k < 0.0)
      throw PreconditionError("estimate_dim_HB: product contains an inverted factor");
    const bool inside = b.domain() == Domain::ball ? modulus(f.a) < 1.0 : f.a.x0 > 0.0;
    if (f.type != Factor::Type::potapov && !inside)
      throw PreconditionError("estimate_dim_HB: factor parameter outside the domain (not a Blaschke product)");
  }
  const int deg = product_degree(b);
  DimHBReport rep;
  rep.points = points > 0 ? points : 3 * deg + 4;
  if (rep.points < 3 * deg)
    rep.warning = "fewer than 3 deg(B) points; rank estimate may be unstable";

  SchurFunction s = SchurFunction::from_product(b);
  if (s.domain() == Domain::halfspace) s = cayley_to_ball(s);
  Rng rng(seed);
  std::vector<Quaternion> pts;
  for (int i = 0; i < rep.points; ++i) pts.push_back(sample_ball(rng, 0.8));
  const HermitianSpectrum spec = herm_eigen_neg(hermitian_part(block_gram(s, pts)));
  rep.eigenvalues = spec.eigenvalues;
  std::sort(rep.eigenvalues.rbegin(), rep.eigenvalues.rend());
  const double top = rep.eigenvalues.empty() ? 0.0 : rep.eigenvalues.front();
  double kept_min = 0.0;
  double dropped_max = 0.0;
  for (double ev : rep.eigenvalues) {
    if (top > 0.0 && ev > cutoff * top) {
      ++rep.rank;
      kept_min = ev;
    } else {
      dropped_max = std::max(dropped_max, std::abs(ev));
    }
  }
  rep.gap = dropped_max > 0.0 ? kept_min / dropped_max : std::numeric_limits<double>::infinity();
  return rep;
}

// ---------------------------------------------------------------- double series

DoubleSeriesKernel::DoubleSeriesKernel(int n, std::size_t rows)
    : n_(n), rows_(rows), c_(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1), QMatrix(rows, rows)) {
  if (n < 0) throw DomainError("DoubleSeriesKernel: negative order");
}

QMatrix DoubleSeriesKernel::operator()(const Quaternion& p, const Quaternion& q) const {
  std::vector<Quaternion> pp{1.0};
  std::vector<Quaternion> qq{1.0};
  for (int k = 1; k <= n_; ++k) {
    pp.push_back(pp.back() * p);
    qq.push_back(qq.back() * conj(q));
  }
  QMatrix acc(rows_, rows_);
  for (int n = 0; n <= n_; ++n) {
    QMatrix row(rows_, rows_);
    for (int m = 0; m <= n_; ++m) row += at(n, m) * qq[static_cast<std::size_t>(m)];
    acc += pp[static_cast<std::size_t>(n)] * row;
  }
  return acc;
}

double DoubleSeriesKernel::hermitian_residual(double weight) const {
  double worst = 0.0;
  for (int n = 0; n <= n_; ++n)
    for (int m = n; m <= n_; ++m)
      worst = std::max(worst, (at(n, m) - at(m, n).adjoint()).norm() * std::pow(weight, n + m));
  return worst;
}

double DoubleSeriesKernel::weighted_max(double weight) const {
  double worst = 0.0;
  for (int n = 0; n <= n_; ++n)
    for (int m = 0; m <= n_; ++m) worst = std::max(worst, at(n, m).norm() * std::pow(weight, n + m));
  return worst;
}

DoubleSeriesKernel schur_double_series(const std::vector<QMatrix>& s, const QMatrix& j1, const QMatrix& j2, int n) {
  if (s.empty()) throw ShapeError("schur_double_series: no coefficients");
  const std::size_t r = j2.rows();
  const QMatrix zero(s.front().rows(), s.front().cols());
  auto coeff = [&](int k) -> const QMatrix& { return static_cast<std::size_t>(k) < s.size() ? s[static_cast<std::size_t>(k)] : zero; };
  std::vector<QMatrix> sj;
  std::vector<QMatrix> sa;
  for (int k = 0; k <= n; ++k) {
    sj.push_back(coeff(k) * j1);
    sa.push_back(coeff(k).adjoint());
  }
  DoubleSeriesKernel out(n, r);
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      QMatrix acc = a == b ? j2 : QMatrix(r, r);
      for (int k = 0; k <= std::min(a, b); ++k)
        acc -= sj[static_cast<std::size_t>(a - k)] * sa[static_cast<std::size_t>(b - k)];
      out.at(a, b) = std::move(acc);
    }
  return out;
}

DoubleSeriesKernel sandwich(const std::vector<QMatrix>& b, const DoubleSeriesKernel& k) {
  const int n = k.order();
  const std::size_t r = k.rows();
  const QMatrix zero(r, r);
  auto coeff = [&](int i) -> const QMatrix& { return static_cast<std::size_t>(i) < b.size() ? b[static_cast<std::size_t>(i)] : zero; };
  DoubleSeriesKernel t(n, r);
  for (int a = 0; a <= n; ++a)
    for (int c = 0; c <= n; ++c) {
      QMatrix acc(r, r);
      for (int i = 0; i <= a; ++i) acc += coeff(i) * k.at(a - i, c);
      t.at(a, c) = std::move(acc);
    }
  std::vector<QMatrix> badj;
  for (int j = 0; j <= n; ++j) badj.push_back(coeff(j).adjoint());
  DoubleSeriesKernel out(n, r);
  for (int a = 0; a <= n; ++a)
    for (int c = 0; c <= n; ++c) {
      QMatrix acc(r, r);
      for (int j = 0; j <= c; ++j) acc += t.at(a, c - j) * badj[static_cast<std::size_t>(j)];
      out.at(a, c) = std::move(acc);
    }
  return out;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "PASS";
    case CheckStatus::fail:
      return "FAIL";
    case CheckStatus::inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

double convergence_radius(const std::vector<const RealPoly*>& dens) {
  double r = 1.0;
  for (const RealPoly* d : dens) {
    if (std::abs(d->coeffs()[0]) == 0.0) return 0.0;
    for (const auto& z : d->roots()) r = std::min(r, std::abs(z));
  }
  return r;
}

KernelIdentityReport kernel_identity_check(const SliceRational& s, const FactoredProduct& b0, const SliceRational& s0,
                                           const KernelIdentityOptions& opts) {
  if (b0.domain() != Domain::ball) throw PreconditionError("kernel_identity_check: ball domain only");
  return kernel_identity_check(s, product_inverse(b0).rational(), s0, opts);
}

KernelIdentityReport kernel_identity_check(const SliceRational& s, const SliceRational& b, const SliceRational& s0,
                                           const KernelIdentityOptions& opts) {
  const std::size_t r = b.rows();
  if (b.cols() != r || s.rows() != r || s0.rows() != r || s.cols() != s0.cols())
    throw ShapeError("kernel_identity_check: S, B and S0 shapes are inconsistent");
  const std::size_t cols = s.cols();

  KernelIdentityReport rep;
  rep.order = opts.order;
  SliceRational bs = b;
  SliceRational ss = s;
  SliceRational s0s = s0;

  double radius = convergence_radius({&ss.den, &bs.den, &s0s.den});
  if (radius < opts.min_radius) {
    double best_x0 = 0.0;
    double best_r = radius;
    for (int k = -9; k <= 9; ++k) {
      if (k == 0) continue;
      const MoebiusMap shift{1.0, 0.1 * k, 0.1 * k, 1.0};
      const SliceRational a1 = compose_moebius(ss, shift);
      const SliceRational a2 = compose_moebius(bs, shift);
      const SliceRational a3 = compose_moebius(s0s, shift);
      const double rr = convergence_radius({&a1.den, &a2.den, &a3.den});
      if (rr > best_r + 1e-12) {
        best_r = rr;
        best_x0 = 0.1 * k;
      }
    }
    if (best_x0 != 0.0) {
      const MoebiusMap shift{1.0, best_x0, best_x0, 1.0};
      ss = compose_moebius(ss, shift);
      bs = compose_moebius(bs, shift);
      s0s = compose_moebius(s0s, shift);
      radius = best_r;
      rep.x0 = best_x0;
    }
  }
  rep.radius = radius;
  if (!(radius > 1e-6)) {
    rep.message = "a denominator vanishes at the origin for every Moebius shift tried";
    return rep;
  }

  const int n = opts.order;
  const auto sc = taylor_coeffs(ss, n).coeffs();
  const auto bc = taylor_coeffs(bs, n).coeffs();
  const auto s0c = taylor_coeffs(s0s, n).coeffs();
  const QMatrix ir = QMatrix::identity(r);
  const QMatrix is = QMatrix::identity(cols);

  const DoubleSeriesKernel ks = schur_double_series(sc, is, ir, n);
  const DoubleSeriesKernel kb = schur_double_series(bc, ir, ir, n);
  DoubleSeriesKernel lhs(n, r);
  for (int a = 0; a <= n; ++a)
    for (int c = 0; c <= n; ++c) lhs.at(a, c) = ks.at(a, c) - kb.at(a, c);
  const DoubleSeriesKernel rhs = sandwich(bc, schur_double_series(s0c, is, ir, n));

  const double w = 0.5 * radius;
  const double scale = std::max({lhs.weighted_max(w), rhs.weighted_max(w), 1e-300});
  double dev = 0.0;
  double tail = 0.0;
  for (int a = 0; a <= n; ++a)
    for (int c = 0; c <= n; ++c) {
      const double wt = std::pow(w, a + c);
      dev = std::max(dev, (lhs.at(a, c) - rhs.at(a, c)).norm() * wt);
      if (a == n || c == n) tail = std::max(tail, std::max(lhs.at(a, c).norm(), rhs.at(a, c).norm()) * wt);
    }
  rep.coeff_deviation = dev / scale;
  rep.hermitian_residual = std::max(lhs.hermitian_residual(w), rhs.hermitian_residual(w)) / scale;
  // terms decay at least like 2^{-(n+m)} at the evaluation radius
  rep.tail_estimate = 4.0 * tail / scale;

  Rng rng(opts.seed);
  std::vector<Quaternion> pts;
  for (int i = 0; i < opts.gram_points; ++i) pts.push_back(sample_ball(rng, w));
  QMatrix g(pts.size() * r, pts.size() * r);
  for (std::size_t l = 0; l < pts.size(); ++l)
    for (std::size_t j = 0; j < pts.size(); ++j) g.set_block(l * r, j * r, lhs(pts[l], pts[j]));
  const HermitianSpectrum spec = herm_eigen_neg(hermitian_part(g));
  const double lo = spec.eigenvalues.empty() ? 0.0 : *std::min_element(spec.eigenvalues.begin(), spec.eigenvalues.end());
  rep.min_gram_eigenvalue = lo / std::max(1.0, spec.spectral_radius);

  if (rep.tail_estimate > opts.tail_tol) {
    rep.status = CheckStatus::inconclusive;
    rep.message = "truncation tail exceeds tolerance; increase the order";
    return rep;
  }
  const bool ok = rep.coeff_deviation <= opts.coeff_tol && rep.hermitian_residual <= opts.hermitian_tol &&
                  rep.min_gram_eigenvalue >= -opts.positivity_tol;
  rep.status = ok ? CheckStatus::pass : CheckStatus::fail;
  if (!ok) {
    if (rep.coeff_deviation > opts.coeff_tol) rep.message = "coefficient deviation above tolerance";
    else if (rep.hermitian_residual > opts.hermitian_tol) rep.message = "Hermitian symmetry residual above tolerance";
    else rep.message = "difference kernel has a negative Gram eigenvalue";
  }
  return rep;
}

double moebius_identity_check(const SchurFunction& s, double x0, const Quaternion& p, const Quaternion& q) {
  if (s.domain() != Domain::ball) throw PreconditionError("moebius_identity_check: ball domain only");
  if (!(std::abs(x0) < 1.0)) throw DomainError("moebius_identity_check: x0 must lie in (-1, 1)");
  const MoebiusMap b{1.0, x0, x0, 1.0};
  const SchurFunction sb = compose(s, b, Domain::ball);
  const QMatrix lhs = schur_kernel_eval(sb, p, q);
  const Quaternion bp = b(p);
  const Quaternion bq = b(q);
  const QMatrix k = schur_kernel_eval(s, bp, bq);
  const QMatrix rhs = (1.0 - x0 * x0) * (inverse(Quaternion{1.0} + p * x0) * k * inverse(Quaternion{1.0} + conj(q) * x0));
  return (lhs - rhs).norm();
}

}  // namespace qschur
