#include <michelson/cli/runners.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

enum Exit { ok = 0, validation_failed = 1, config_error = 2, numerical_failure = 3 };

int write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return ok;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return config_error;
  }
  f << text;
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace michelson;
  CLI::App app{"Michelson interferometer input-output simulator"};
  app.set_version_flag("--version", std::string(MICHELSON_VERSION));
  app.require_subcommand(1);

  std::string config_path, out_path, format;
  std::vector<std::string> overrides;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--set", overrides, "override, key=value (repeatable)");
  };
  auto* conv = app.add_subcommand("conventional", "monochromatic carrier: sideband relations and S_h");
  auto* weak = app.add_subcommand("weakvalue", "pulsed source: frequency shift and weak value");
  auto* val = app.add_subcommand("validate", "run the acceptance checks");
  for (auto* s : {conv, weak, val}) add_common(s);

  CLI11_PARSE(app, argc, argv);

  cli::RunConfig cfg;
  try {
    if (conv->parsed()) cfg.regime = cli::Regime::conventional;
    if (weak->parsed()) cfg.regime = cli::Regime::weakvalue;
    if (val->parsed()) cfg.regime = cli::Regime::validate;
    const auto requested = cfg.regime;
    if (!config_path.empty()) cli::apply_file(cfg, config_path);
    for (const auto& kv : overrides) cli::apply_override(cfg, kv);
    cfg.regime = requested;
    if (!format.empty()) cfg.set("output.format", format);
    if (!out_path.empty()) cfg.output_path = out_path;
    cfg.validate();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  }

  try {
    if (cfg.regime == cli::Regime::validate) {
      std::vector<validation::CheckResult> checks;
      const auto table = cli::run_validate(cfg, &checks);
      bool all = true;
      for (const auto& c : checks) {
        std::fprintf(stderr, "[%s] %2d %-42s measured %.3e threshold %.1e (%.3f s) %s\n",
                     c.passed ? "PASS" : "FAIL", c.id, c.name.c_str(), c.measured, c.threshold, c.seconds,
                     c.detail.c_str());
        all = all && c.passed;
      }
      if (const int rc = write_output(cli::serialize(table, cfg), cfg.output_path)) return rc;
      return all ? ok : validation_failed;
    }
    const auto table = cfg.regime == cli::Regime::conventional ? cli::run_conventional(cfg) : cli::run_weakvalue(cfg);
    for (const auto& w : table.warnings) std::cerr << "warning: " << w << "\n";
    return write_output(cli::serialize(table, cfg), cfg.output_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return numerical_failure;
  }
}
