#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qschur/cli.hpp"

namespace qschur::cli {

namespace fs = std::filesystem;

namespace {

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-')
    throw SchemaError(std::vector<Violation>{{"--seed", "expected a non-negative integer (decimal or 0x hex)"}});
  return v;
}

int exit_for(const Error& e) {
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const PreconditionError*>(&e) ||
      dynamic_cast<const ShapeError*>(&e) || dynamic_cast<const ConstructionError*>(&e) ||
      dynamic_cast<const NotARootError*>(&e))
    return kUsage;
  return kInconclusive;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quaternionic Schur analysis: Blaschke products, negative squares, realizations, Krein-Langer checks"};
  app.name("qschur");
  std::string command;
  std::string config_path;
  std::string seed_text;
  std::string out_path;
  int trials = 0;
  int batch = 0;
  app.add_option("command", command, "pipeline (optional; must match the config)")
      ->check(CLI::IsMember({"blaschke-build", "negsq", "dim-hb", "realize", "stein", "kl-check", "transport"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--seed", seed_text, "seed override");
  app.add_option("--out", out_path, "report path (default: standard output)");
  app.add_option("--trials", trials, "negative-squares trials override");
  app.add_option("--batch", batch, "points per trial override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  RunConfig cfg;
  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw IoError("cannot read config " + config_path);
    std::ostringstream text;
    text << in.rdbuf();
    const fs::path base = fs::path(config_path).has_parent_path() ? fs::path(config_path).parent_path() : fs::path(".");
    cfg = parse_config(text.str(), base);
    if (!command.empty() && to_string(cfg.command) != command)
      throw SchemaError(std::vector<Violation>{{"/command", "config command \"" + to_string(cfg.command) + "\" differs from \"" + command + "\""}});
    Overrides o;
    if (!seed_text.empty()) o.seed = parse_seed(seed_text);
    if (app.count("--trials")) o.trials = trials;
    if (app.count("--batch")) o.batch = batch;
    if (!out_path.empty()) o.out = out_path;
    apply_overrides(cfg, o);
  } catch (const SchemaError& e) {
    err << "invalid configuration:\n";
    for (const auto& v : e.violations()) err << "  " << (v.path.empty() ? "/" : v.path) << ": " << v.message << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  }

  RunResult result;
  try {
    result = dispatch(cfg);
  } catch (const Error& e) {
    const int code = exit_for(e);
    err << (code == kUsage ? "inadmissible input: " : "numerical failure: ") << e.what() << "\n";
    return code;
  } catch (const std::bad_alloc&) {
    err << "out of memory\n";
    return kInconclusive;
  }

  const std::string report = dump_json(result.report);
  try {
    if (!out_path.empty())
      write_atomic(out_path, report);
    else if (cfg.output)
      write_atomic(cfg.base_dir / *cfg.output, report);
    else
      out << report;
    if (cfg.csv && !result.csv.empty()) write_atomic(cfg.base_dir / *cfg.csv, result.csv);
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIo;
  }
  if (!out_path.empty() || cfg.output) {
    const auto& r = result.report;
    out << to_string(cfg.command) << ": " << (r.contains("verdict") ? r["verdict"].get<std::string>() : "done") << "\n";
  }
  return result.exit_code;
}

}  // namespace qschur::cli
