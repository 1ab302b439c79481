#include <fstream>
#include <sstream>

#include "qschur/cli.hpp"

namespace qschur::cli {

namespace fs = std::filesystem;

namespace {

const char* const kCommands[] = {"blaschke-build", "negsq", "dim-hb", "realize", "stein", "kl-check", "transport"};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + p.string());
  return ss.str();
}

// Replaces string payloads under `keys` with the parsed contents of the named file.
void inline_payloads(Json& j, const std::string& path, const fs::path& dir, const std::vector<std::string>& keys,
                     JsonReader& rd) {
  if (!j.is_object()) return;
  for (const auto& k : keys) {
    if (!j.contains(k) || !j[k].is_string()) continue;
    const fs::path file = dir / j[k].get<std::string>();
    const std::string text = read_file(file);
    Json loaded = Json::parse(text, nullptr, false);
    if (loaded.is_discarded()) {
      rd.add(json_pointer_append(path, k), "payload file " + file.string() + " is not valid JSON");
      continue;
    }
    if (k == "function") inline_payloads(loaded, json_pointer_append(path, k), file.parent_path(),
                                         {"zeros", "b0", "s0", "rational", "colligation"}, rd);
    j[k] = std::move(loaded);
  }
  if (j.contains("function") && j["function"].is_object())
    inline_payloads(j["function"], json_pointer_append(path, "function"), dir,
                    {"zeros", "b0", "s0", "rational", "colligation"}, rd);
}

std::optional<S0Spec> read_s0(JsonReader& rd, const Json& j, const std::string& path) {
  if (j.is_object() && j.contains("constant")) {
    if (!rd.check_object(j, path, {"constant"}, {})) return std::nullopt;
    auto q = rd.quaternion(j["constant"], json_pointer_append(path, "constant"));
    if (!q) return std::nullopt;
    if (modulus(*q) > 1.0) {
      rd.add(json_pointer_append(path, "constant"), "constant S0 needs |c| <= 1");
      return std::nullopt;
    }
    return S0Spec{*q};
  }
  auto z = rd.zero_set(j, path);
  if (!z) return std::nullopt;
  return S0Spec{*z};
}

std::optional<FunctionSpec> read_function(JsonReader& rd, const Json& j, const std::string& path) {
  if (!j.is_object()) {
    rd.add(path, "expected an object");
    return std::nullopt;
  }
  if (!j.contains("type")) {
    rd.add(json_pointer_append(path, "type"), "missing required field");
    return std::nullopt;
  }
  auto type = rd.string(j["type"], json_pointer_append(path, "type"));
  if (!type) return std::nullopt;
  FunctionSpec f;
  if (*type == "product") {
    f.type = FunctionSpec::Type::product;
    if (!rd.check_object(j, path, {"type", "zeros"}, {"inverse"})) return std::nullopt;
    if (j.contains("zeros")) f.zeros = rd.zero_set(j["zeros"], json_pointer_append(path, "zeros"));
    if (j.contains("inverse")) f.inverse = rd.boolean(j["inverse"], json_pointer_append(path, "inverse")).value_or(false);
    if (!f.zeros) return std::nullopt;
  } else if (*type == "quotient") {
    f.type = FunctionSpec::Type::quotient;
    if (!rd.check_object(j, path, {"type", "b0", "s0"}, {})) return std::nullopt;
    if (j.contains("b0")) f.b0 = rd.zero_set(j["b0"], json_pointer_append(path, "b0"));
    if (j.contains("s0")) f.s0 = read_s0(rd, j["s0"], json_pointer_append(path, "s0"));
    if (!f.b0 || !f.s0) return std::nullopt;
    if (const auto* z = std::get_if<ZeroSet>(&*f.s0); z && z->domain != f.b0->domain) {
      rd.add(json_pointer_append(path, "s0"), "domain differs from /b0");
      return std::nullopt;
    }
  } else if (*type == "rational") {
    f.type = FunctionSpec::Type::rational;
    if (!rd.check_object(j, path, {"type", "domain", "rational"}, {})) return std::nullopt;
    if (j.contains("domain")) f.domain = rd.domain(j["domain"], json_pointer_append(path, "domain")).value_or(Domain::ball);
    if (j.contains("rational")) f.rational = rd.slice_rational(j["rational"], json_pointer_append(path, "rational"));
    if (!f.rational) return std::nullopt;
  } else if (*type == "colligation") {
    f.type = FunctionSpec::Type::colligation;
    if (!rd.check_object(j, path, {"type", "colligation"}, {})) return std::nullopt;
    if (j.contains("colligation"))
      f.colligation = rd.colligation(j["colligation"], json_pointer_append(path, "colligation"));
    if (!f.colligation) return std::nullopt;
    f.domain = f.colligation->domain;
  } else {
    rd.add(json_pointer_append(path, "type"), "type must be product, quotient, rational or colligation");
    return std::nullopt;
  }
  return f;
}

template <class T>
std::optional<T> bounded_int(JsonReader& rd, const Json& j, const std::string& path, long long lo, long long hi) {
  auto v = rd.integer(j, path);
  if (!v) return std::nullopt;
  if (*v < lo || *v > hi) {
    rd.add(path, "must be in " + std::to_string(lo) + ".." + std::to_string(hi));
    return std::nullopt;
  }
  return static_cast<T>(*v);
}

std::optional<double> positive(JsonReader& rd, const Json& j, const std::string& path) {
  auto v = rd.number(j, path);
  if (v && !(*v > 0.0)) {
    rd.add(path, "must be positive");
    return std::nullopt;
  }
  return v;
}

void read_budget(JsonReader& rd, const Json& j, NegSquaresOptions& b) {
  const std::string p = "/budget";
  if (!rd.check_object(j, p, {}, {"trials", "batch", "radius", "cutoff", "threads", "cayley_x0"})) return;
  if (j.contains("trials")) b.trials = bounded_int<int>(rd, j["trials"], p + "/trials", 1, 100000).value_or(b.trials);
  if (j.contains("batch")) b.batch = bounded_int<int>(rd, j["batch"], p + "/batch", 1, 2000).value_or(b.batch);
  if (j.contains("threads")) b.threads = bounded_int<int>(rd, j["threads"], p + "/threads", 1, 256).value_or(b.threads);
  if (j.contains("radius")) {
    auto r = positive(rd, j["radius"], p + "/radius");
    if (r && *r >= 1.0) rd.add(p + "/radius", "sampling radius must be < 1");
    b.radius = r.value_or(b.radius);
  }
  if (j.contains("cutoff")) b.cutoff = positive(rd, j["cutoff"], p + "/cutoff").value_or(b.cutoff);
  if (j.contains("cayley_x0")) b.cayley_x0 = positive(rd, j["cayley_x0"], p + "/cayley_x0").value_or(b.cayley_x0);
}

void read_identity(JsonReader& rd, const Json& j, KernelIdentityOptions& o) {
  const std::string p = "/identity";
  if (!rd.check_object(j, p, {},
                       {"order", "gram_points", "coeff_tol", "hermitian_tol", "positivity_tol", "tail_tol", "min_radius"}))
    return;
  if (j.contains("order")) o.order = bounded_int<int>(rd, j["order"], p + "/order", 4, 400).value_or(o.order);
  if (j.contains("gram_points"))
    o.gram_points = bounded_int<int>(rd, j["gram_points"], p + "/gram_points", 1, 200).value_or(o.gram_points);
  if (j.contains("coeff_tol")) o.coeff_tol = positive(rd, j["coeff_tol"], p + "/coeff_tol").value_or(o.coeff_tol);
  if (j.contains("hermitian_tol"))
    o.hermitian_tol = positive(rd, j["hermitian_tol"], p + "/hermitian_tol").value_or(o.hermitian_tol);
  if (j.contains("positivity_tol"))
    o.positivity_tol = positive(rd, j["positivity_tol"], p + "/positivity_tol").value_or(o.positivity_tol);
  if (j.contains("tail_tol")) o.tail_tol = positive(rd, j["tail_tol"], p + "/tail_tol").value_or(o.tail_tol);
  if (j.contains("min_radius")) {
    auto r = positive(rd, j["min_radius"], p + "/min_radius");
    if (r && *r >= 1.0) rd.add(p + "/min_radius", "must be < 1");
    o.min_radius = r.value_or(o.min_radius);
  }
}

}  // namespace

std::string to_string(Command c) { return kCommands[static_cast<int>(c)]; }

std::optional<Command> parse_command(const std::string& s) {
  for (int i = 0; i < 7; ++i)
    if (s == kCommands[i]) return static_cast<Command>(i);
  return std::nullopt;
}

RunConfig parse_config(const std::string& text, const fs::path& base_dir) {
  JsonReader rd;
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    rd.add("", "malformed JSON");
    rd.raise();
  }
  if (!j.is_object()) {
    rd.add("", "config must be a JSON object");
    rd.raise();
  }
  RunConfig cfg;
  cfg.base_dir = base_dir;
  inline_payloads(j, "", base_dir, {"zeros", "function", "b0", "s0", "A", "C"}, rd);
  rd.raise();
  cfg.resolved = j;

  if (!j.contains("command")) {
    rd.add("/command", "missing required field");
    rd.raise();
  }
  auto name = rd.string(j["command"], "/command");
  rd.raise();
  auto cmd = parse_command(*name);
  if (!cmd) {
    rd.add("/command", "unknown command \"" + *name + "\"");
    rd.raise();
  }
  cfg.command = *cmd;

  std::vector<std::string> common{"command", "seed", "budget", "output", "csv"};
  std::vector<std::string> required, optional = common;
  auto more = [&](std::initializer_list<const char*> req, std::initializer_list<const char*> opt) {
    for (auto r : req) required.emplace_back(r);
    for (auto o : opt) optional.emplace_back(o);
  };
  switch (cfg.command) {
    case Command::blaschke_build: more({"zeros"}, {}); break;
    case Command::negsq: more({"function"}, {"expected_kappa"}); break;
    case Command::dim_hb: more({"zeros"}, {"points", "cutoff"}); break;
    case Command::realize: more({"function"}, {"order", "samples", "tolerance"}); break;
    case Command::stein: more({"A", "C"}, {"tolerance"}); break;
    case Command::kl_check: more({"b0", "s0"}, {"expected_kappa", "identity"}); break;
    case Command::transport: more({"function"}, {"direction", "x0", "expected_kappa"}); break;
  }
  rd.check_object(j, "", required, optional);

  if (j.contains("seed")) {
    auto s = rd.integer(j["seed"], "/seed");
    if (s && *s < 0) rd.add("/seed", "seed must be non-negative");
    if (s && *s >= 0) cfg.seed = static_cast<std::uint64_t>(*s);
  }
  if (j.contains("budget")) read_budget(rd, j["budget"], cfg.budget);
  if (j.contains("output")) cfg.output = rd.string(j["output"], "/output");
  if (j.contains("csv")) cfg.csv = rd.string(j["csv"], "/csv");
  if (j.contains("expected_kappa"))
    cfg.expected_kappa = bounded_int<int>(rd, j["expected_kappa"], "/expected_kappa", 0, 1000);

  if (cfg.command == Command::stein) cfg.tolerance = 1e-9;

  switch (cfg.command) {
    case Command::blaschke_build:
    case Command::dim_hb:
      if (j.contains("zeros")) cfg.zeros = rd.zero_set(j["zeros"], "/zeros");
      if (j.contains("points")) cfg.points = bounded_int<int>(rd, j["points"], "/points", 1, 500).value_or(0);
      if (j.contains("cutoff")) cfg.cutoff = positive(rd, j["cutoff"], "/cutoff").value_or(cfg.cutoff);
      break;
    case Command::negsq:
    case Command::realize:
    case Command::transport:
      if (j.contains("function")) cfg.function = read_function(rd, j["function"], "/function");
      if (j.contains("order")) cfg.order = bounded_int<int>(rd, j["order"], "/order", 1, 200).value_or(cfg.order);
      if (j.contains("samples"))
        cfg.samples = bounded_int<int>(rd, j["samples"], "/samples", 1, 10000).value_or(cfg.samples);
      if (j.contains("tolerance")) cfg.tolerance = positive(rd, j["tolerance"], "/tolerance").value_or(cfg.tolerance);
      if (j.contains("x0")) cfg.x0 = positive(rd, j["x0"], "/x0").value_or(cfg.x0);
      if (j.contains("direction")) {
        auto d = rd.string(j["direction"], "/direction");
        if (d && *d == "halfspace_to_ball")
          cfg.direction = TransportDirection::halfspace_to_ball;
        else if (d && *d == "ball_to_halfspace")
          cfg.direction = TransportDirection::ball_to_halfspace;
        else if (d)
          rd.add("/direction", "direction must be halfspace_to_ball or ball_to_halfspace");
      }
      break;
    case Command::stein:
      if (j.contains("A")) cfg.stein_a = rd.qmatrix(j["A"], "/A");
      if (j.contains("C")) cfg.stein_c = rd.qmatrix(j["C"], "/C");
      if (j.contains("tolerance")) cfg.tolerance = positive(rd, j["tolerance"], "/tolerance").value_or(cfg.tolerance);
      if (cfg.stein_a && cfg.stein_a->rows() != cfg.stein_a->cols()) rd.add("/A", "A must be square");
      if (cfg.stein_a && cfg.stein_c && cfg.stein_c->cols() != cfg.stein_a->rows())
        rd.add("/C", "C must have as many columns as A");
      break;
    case Command::kl_check:
      if (j.contains("b0")) cfg.b0 = rd.zero_set(j["b0"], "/b0");
      if (j.contains("s0")) cfg.s0 = read_s0(rd, j["s0"], "/s0");
      if (j.contains("identity")) read_identity(rd, j["identity"], cfg.identity);
      if (cfg.b0 && cfg.s0)
        if (const auto* z = std::get_if<ZeroSet>(&*cfg.s0); z && z->domain != cfg.b0->domain)
          rd.add("/s0/domain", "domain differs from /b0/domain");
      break;
  }
  rd.raise();
  cfg.budget.seed = cfg.seed;
  cfg.identity.seed = cfg.seed;
  return cfg;
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
  JsonReader rd;
  if (o.seed) cfg.seed = *o.seed;
  if (o.trials) {
    if (*o.trials < 1 || *o.trials > 100000) rd.add("--trials", "must be in 1..100000");
    cfg.budget.trials = *o.trials;
  }
  if (o.batch) {
    if (*o.batch < 1 || *o.batch > 2000) rd.add("--batch", "must be in 1..2000");
    cfg.budget.batch = *o.batch;
  }
  if (o.out) cfg.output = *o.out;
  rd.raise();
  cfg.budget.seed = cfg.seed;
  cfg.identity.seed = cfg.seed;
}

Json effective_config(const RunConfig& cfg) {
  Json j = cfg.resolved;
  j["seed"] = cfg.seed;
  Json b = to_json(cfg.budget);
  b.erase("seed");
  j["budget"] = std::move(b);
  if (cfg.output) j["output"] = *cfg.output;
  switch (cfg.command) {
    case Command::negsq:
      break;
    case Command::dim_hb:
      j["points"] = cfg.points;
      j["cutoff"] = cfg.cutoff;
      break;
    case Command::realize:
      j["order"] = cfg.order;
      j["samples"] = cfg.samples;
      j["tolerance"] = cfg.tolerance;
      break;
    case Command::stein:
      j["tolerance"] = cfg.tolerance;
      break;
    case Command::kl_check: {
      Json id;
      id["order"] = cfg.identity.order;
      id["gram_points"] = cfg.identity.gram_points;
      id["coeff_tol"] = cfg.identity.coeff_tol;
      id["hermitian_tol"] = cfg.identity.hermitian_tol;
      id["positivity_tol"] = cfg.identity.positivity_tol;
      id["tail_tol"] = cfg.identity.tail_tol;
      id["min_radius"] = cfg.identity.min_radius;
      j["identity"] = std::move(id);
      break;
    }
    case Command::transport:
      j["direction"] =
          cfg.direction == TransportDirection::halfspace_to_ball ? "halfspace_to_ball" : "ball_to_halfspace";
      j["x0"] = cfg.x0;
      break;
    case Command::blaschke_build:
      break;
  }
  return j;
}

}  // namespace qschur::cli
