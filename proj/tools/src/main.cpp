#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "equichar/app.hpp"
#include "equichar/errors.hpp"

namespace {

using namespace equichar;

enum Exit { kOk = 0, kNumerical = 1, kConfig = 2 };

void print_checks(const app::Report& rep) {
  for (const auto& c : rep.checks) {
    std::printf("%-4s %-40s measured=%s tol=%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                app::format_double(c.measured).c_str(), app::format_double(c.tolerance).c_str(),
                c.gating ? "" : " (informational)");
  }
}

int run(const std::string& cmd, const std::string& config_path, const std::string& out_dir) {
  app::RunConfig cfg = app::load_config(config_path);
  if (!out_dir.empty()) cfg.output_dir = out_dir;

  if (cmd == "lform") {
    std::filesystem::create_directories(cfg.output_dir);
    app::write_lform_csv(cfg.output_dir / "lform.csv", app::lform_table(cfg));
    return kOk;
  }
  if (cmd == "transgression") {
    std::filesystem::create_directories(cfg.output_dir);
    app::write_transgression_csv(cfg.output_dir / "transgression.csv", app::transgression_table(cfg));
    return kOk;
  }
  if (cmd == "eta") {
    const app::Report rep = app::eta_invariant(cfg);
    app::emit_tables(cfg, rep);
    std::printf("eta = %s  (error %s)\n", app::format_double(rep.eta).c_str(),
                app::format_double(rep.eta_error).c_str());
    return kOk;
  }
  const app::Report rep = cmd == "check" ? app::run_check(cfg) : app::run_oracle(cfg);
  print_checks(rep);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    app::write_report_json(cfg.output_dir / "report.json", rep);
  }
  const bool ok = rep.all_gating_passed();
  std::printf("%s\n", ok ? "all checks passed" : "some checks FAILED");
  return ok ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"equivariant characteristic forms and eta invariants on SKR profiles"};
  cli.require_subcommand(1);
  std::string config_path, out_dir;
  for (const char* name : {"check", "lform", "transgression", "eta", "oracle"}) {
    auto* sub = cli.add_subcommand(name);
    sub->add_option("config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--output", out_dir, "output directory");
  }
  try {
    cli.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return kConfig;
  }

  const std::string cmd = cli.get_subcommands().front()->get_name();
  try {
    return run(cmd, config_path, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
