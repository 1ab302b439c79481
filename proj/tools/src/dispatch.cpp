#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "qschur/cli.hpp"

namespace qschur::cli {

namespace fs = std::filesystem;

namespace {

SchurFunction make_function(const FunctionSpec& f, std::uint64_t seed) {
  switch (f.type) {
    case FunctionSpec::Type::product: {
      FactoredProduct b = build_product(*f.zeros);
      if (f.inverse) b = product_inverse(b);
      return SchurFunction::from_product(b);
    }
    case FunctionSpec::Type::quotient:
      return synthesize_generalized_schur(*f.b0, *f.s0, seed).s_function();
    case FunctionSpec::Type::rational:
      return SchurFunction::from_rational(f.domain, *f.rational);
    case FunctionSpec::Type::colligation:
      return as_schur_function(*f.colligation);
  }
  throw PreconditionError("unknown function type");
}

std::string eigen_csv(const std::vector<double>& ev) {
  std::ostringstream os;
  os << "index,eigenvalue\n";
  char buf[40];
  for (std::size_t i = 0; i < ev.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", ev[i]);
    os << i << "," << buf << "\n";
  }
  return os.str();
}

Quaternion sample_in(Domain d, Rng& rng) {
  return d == Domain::ball ? sample_ball(rng, 0.9) : sample_halfspace(rng, 0.05, 3.0, 3.0);
}

Json verdict_fields(Json body, CheckStatus st, int& code) {
  code = st == CheckStatus::pass ? kPass : st == CheckStatus::fail ? kFail : kInconclusive;
  Json j;
  j["verdict"] = to_string(st);
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

RunResult run_blaschke_build(const RunConfig& cfg) {
  const ZeroSet& z = *cfg.zeros;
  const FactoredProduct b = build_product(z);
  const StarPoly& num = b.rational().num;
  bool ok = true;
  double worst = 0.0;

  auto shares_sphere = [&](const Quaternion& a, std::size_t self) {
    for (std::size_t k = 0; k < z.points.size(); ++k)
      if (k != self && same_sphere(z.points[k].a, a, 1e-12)) return true;
    for (const auto& s : z.spheres)
      if (same_sphere(s.c, a, 1e-12)) return true;
    return false;
  };

  Json pts = Json::array();
  for (std::size_t i = 0; i < z.points.size(); ++i) {
    const auto& p = z.points[i];
    const double v = b(p.a).norm();
    worst = std::max(worst, v);
    const ZeroMultiplicity m = zero_multiplicity(num, p.a);
    const bool shared = shares_sphere(p.a, i);
    const bool match = shared || (m.kind == ZeroKind::point && m.count == p.n);
    ok = ok && match && v < 1e-10;
    Json e;
    e["a"] = to_json(p.a);
    e["n"] = p.n;
    e["found_kind"] = m.kind == ZeroKind::point ? "point" : "spherical";
    e["found"] = m.count;
    e["value"] = v;
    if (shared) e["note"] = "sphere shared with another prescribed zero; the count is not compared";
    pts.push_back(std::move(e));
  }
  Json sph = Json::array();
  for (const auto& s : z.spheres) {
    double v = 0.0;
    for (const auto& axis : probe_axes()) v = std::max(v, b(point_on_sphere(s.c, axis)).norm());
    worst = std::max(worst, v);
    const ZeroMultiplicity m = zero_multiplicity(num, s.c);
    bool shared = false;
    for (const auto& p : z.points) shared = shared || same_sphere(p.a, s.c, 1e-12);
    const bool match = shared || (m.kind == ZeroKind::spherical && m.count == s.m);
    ok = ok && match && v < 1e-10;
    Json e;
    e["c"] = to_json(s.c);
    e["m"] = s.m;
    e["found_kind"] = m.kind == ZeroKind::point ? "point" : "spherical";
    e["found"] = m.count;
    e["max_value"] = v;
    sph.push_back(std::move(e));
  }
  Json body;
  body["degree"] = product_degree(b);
  body["max_zero_value"] = worst;
  body["points"] = std::move(pts);
  body["spheres"] = std::move(sph);
  body["product"] = to_json(b);
  RunResult r;
  r.report = verdict_fields(std::move(body), ok ? CheckStatus::pass : CheckStatus::fail, r.exit_code);
  return r;
}

RunResult run_negsq(const RunConfig& cfg) {
  const SchurFunction s = make_function(*cfg.function, cfg.seed);
  const NegSquaresReport rep = estimate_neg_squares(s, cfg.budget);
  RunResult r;
  Json body = to_json(rep);
  if (cfg.expected_kappa) {
    body["expected_kappa"] = *cfg.expected_kappa;
    r.report = verdict_fields(std::move(body),
                              rep.kappa_hat == *cfg.expected_kappa ? CheckStatus::pass : CheckStatus::fail, r.exit_code);
  } else {
    r.report = verdict_fields(std::move(body), CheckStatus::pass, r.exit_code);
  }
  r.csv = eigen_csv(rep.witness.eigenvalues);
  return r;
}

RunResult run_dim_hb(const RunConfig& cfg) {
  const FactoredProduct b = build_product(*cfg.zeros);
  const DimHBReport rep = estimate_dim_HB(b, cfg.points, cfg.cutoff, cfg.seed);
  Json body = to_json(rep);
  body["degree"] = product_degree(b);
  RunResult r;
  r.report = verdict_fields(std::move(body), rep.rank == product_degree(b) ? CheckStatus::pass : CheckStatus::fail,
                            r.exit_code);
  r.csv = eigen_csv(rep.eigenvalues);
  return r;
}

RunResult run_realize(const RunConfig& cfg) {
  const FunctionSpec& f = *cfg.function;
  Colligation c;
  std::optional<SliceRational> direct;
  bool need_coisometry = true;
  switch (f.type) {
    case FunctionSpec::Type::product: {
      FactoredProduct b = build_product(*f.zeros);
      if (f.inverse) throw PreconditionError("realize: the star-inverse of a product has no contractive realization");
      c = colligation_from_product(b);
      direct = b.rational();
      break;
    }
    case FunctionSpec::Type::rational:
      if (f.domain != Domain::ball) throw PreconditionError("realize: backward-shift realizations are ball only");
      c = backward_shift_colligation(*f.rational, cfg.order);
      direct = *f.rational;
      need_coisometry = false;
      break;
    case FunctionSpec::Type::colligation:
      c = *f.colligation;
      break;
    case FunctionSpec::Type::quotient:
      throw PreconditionError("realize: quotients are not supported; give a product, rational or colligation");
  }
  const double res = coisometry_residual(c);
  Json body;
  body["state_dim"] = c.state_dim();
  body["coisometry_residual"] = res;
  if (c.domain == Domain::ball) body["contraction_margin"] = contraction_margin(c);
  double dev = 0.0;
  int evaluated = 0;
  if (direct) {
    Rng rng(cfg.seed);
    for (int i = 0; i < cfg.samples; ++i) {
      const Quaternion p = sample_in(c.domain, rng);
      try {
        const QMatrix want = eval_left(*direct, p);
        dev = std::max(dev, (realize_eval(c, p) - want).norm() / std::max(1.0, want.norm()));
        ++evaluated;
      } catch (const PoleError&) {
      } catch (const SpectrumError&) {
      }
    }
    body["max_eval_deviation"] = dev;
    body["evaluated_points"] = evaluated;
  }
  body["colligation"] = to_json(c);
  const bool ok = (!need_coisometry || res <= cfg.tolerance) && (!direct || dev <= cfg.tolerance);
  RunResult r;
  r.report = verdict_fields(std::move(body), ok ? CheckStatus::pass : CheckStatus::fail, r.exit_code);
  return r;
}

RunResult run_stein(const RunConfig& cfg) {
  const QMatrix& a = *cfg.stein_a;
  const QMatrix& c = *cfg.stein_c;
  const QMatrix p = solve_stein(a, c);
  const double res = stein_residual(a, c, p);
  const double scale = std::max(1.0, (c.adjoint() * c).norm());
  const HermitianSpectrum spec = herm_eigen_neg(p);
  const double top = spec.eigenvalues.empty() ? 0.0 : spec.eigenvalues.back();
  Json body;
  body["residual"] = res;
  body["max_eigenvalue"] = top;
  body["negative_semidefinite"] = top <= 1e-12 * std::max(1.0, spec.spectral_radius);
  body["eigenvalues"] = spec.eigenvalues;
  body["P"] = to_json(p);
  RunResult r;
  r.report = verdict_fields(std::move(body), res <= cfg.tolerance * scale ? CheckStatus::pass : CheckStatus::fail,
                            r.exit_code);
  r.csv = eigen_csv(spec.eigenvalues);
  return r;
}

RunResult run_kl_check(const RunConfig& cfg) {
  const FactorizationCase fc = synthesize_generalized_schur(*cfg.b0, *cfg.s0, cfg.seed);
  const KreinLangerReport rep = krein_langer_check(fc, cfg.budget, cfg.expected_kappa, cfg.identity);
  RunResult r;
  r.report = to_json(rep);
  r.exit_code = rep.verdict == CheckStatus::pass ? kPass : rep.verdict == CheckStatus::fail ? kFail : kInconclusive;
  r.csv = eigen_csv(rep.negsq.witness.eigenvalues);
  return r;
}

RunResult run_transport(const RunConfig& cfg) {
  const SchurFunction s = make_function(*cfg.function, cfg.seed);
  const SchurFunction t = cayley_transport(s, cfg.x0, cfg.direction);
  const bool to_ball = cfg.direction == TransportDirection::halfspace_to_ball;
  // the point of the source domain that lands on the distinguished point of the target
  const MoebiusMap back = to_ball ? cayley_to_ball_map(cfg.x0) : cayley_from_ball(cfg.x0);
  const Quaternion anchor = to_ball ? Quaternion(cfg.x0) : Quaternion(0.0);
  const Quaternion image = back(anchor);

  NegSquaresOptions opts = cfg.budget;
  opts.cayley_x0 = cfg.x0;
  const NegSquaresReport src = estimate_neg_squares(s, opts);
  const NegSquaresReport dst = estimate_neg_squares(t, opts);

  Json body;
  body["from"] = to_string(s.domain());
  body["to"] = to_string(t.domain());
  body["x0"] = cfg.x0;
  body["anchor"] = to_json(anchor);
  body["anchor_image"] = to_json(image);
  body["kappa_hat_source"] = src.kappa_hat;
  body["kappa_hat_transported"] = dst.kappa_hat;
  if (cfg.expected_kappa) body["expected_kappa"] = *cfg.expected_kappa;
  if (t.rational()) body["rational"] = to_json(*t.rational());
  body["negsq"] = to_json(dst);
  bool ok = src.kappa_hat == dst.kappa_hat;
  if (cfg.expected_kappa) ok = ok && dst.kappa_hat == *cfg.expected_kappa;
  RunResult r;
  r.report = verdict_fields(std::move(body), ok ? CheckStatus::pass : CheckStatus::fail, r.exit_code);
  r.csv = eigen_csv(dst.witness.eigenvalues);
  return r;
}

}  // namespace

RunResult dispatch(const RunConfig& cfg) {
  RunResult r;
  switch (cfg.command) {
    case Command::blaschke_build: r = run_blaschke_build(cfg); break;
    case Command::negsq: r = run_negsq(cfg); break;
    case Command::dim_hb: r = run_dim_hb(cfg); break;
    case Command::realize: r = run_realize(cfg); break;
    case Command::stein: r = run_stein(cfg); break;
    case Command::kl_check: r = run_kl_check(cfg); break;
    case Command::transport: r = run_transport(cfg); break;
  }
  Json out;
  out["command"] = to_string(cfg.command);
  out["seed"] = cfg.seed;
  for (auto it = r.report.begin(); it != r.report.end(); ++it) out[it.key()] = it.value();
  out["config"] = effective_config(cfg);
  r.report = std::move(out);
  return r;
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("error while writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move report into place at " + path.string());
  }
}

}  // namespace qschur::cli
