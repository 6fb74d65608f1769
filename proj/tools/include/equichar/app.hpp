#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "equichar/skr.hpp"

namespace equichar::app {

using ordered_json = nlohmann::ordered_json;

struct Numerics {
  int series_order = 16;
  int quadrature_nodes = 32;
  double fd_step = 1e-4;
  int tau_samples = 33;
};

struct Topology {
  int signature = 0;
};

struct RunConfig {
  SKRProfile profile;
  Numerics numerics;
  Topology topology;
  std::filesystem::path output_dir = ".";
  ordered_json echo;  // the parsed document, for the report
};

/// Parses and validates; every failure is a ConfigError.
RunConfig parse_config(const ordered_json& doc);
RunConfig load_config(const std::filesystem::path& path);

struct LFormRow {
  double tau;
  double alpha, beta, gamma, delta;  // NaN where sqrt(A) is singular
  double l4;                         // generic series route
  double l4_closed;                  // closed formula, NaN where singular
  double tail;
};

struct CheckResult {
  std::string name;
  bool passed;
  bool gating;
  double measured;
  double tolerance;
};

struct Report {
  std::vector<LFormRow> lform;
  double tl3_direct = 0, tl3_closed = 0, tl3_discrepancy = 0, tl3_closed_tail = 0;
  double bulk = 0, bulk_error = 0;
  double boundary = 0, boundary_error = 0;
  double eta = 0, eta_error = 0;
  std::string bulk_method;
  std::vector<CheckResult> checks;
  ordered_json config;

  bool all_gating_passed() const;
  ordered_json to_json() const;
};

/// Upper bound on worker threads, from EQUICHAR_THREADS (default: hardware).
unsigned thread_limit();

std::vector<LFormRow> lform_table(const RunConfig& cfg);
/// (t, e123 coefficient of the degree-3 integrand) at the quadrature nodes.
std::vector<std::pair<double, double>> transgression_table(const RunConfig& cfg);

/// Bulk integral fiber_period * base_area * int L4(tau) w(tau) dtau, w the base factor.
double bulk_integral(const RunConfig& cfg, int nodes, double* error, std::string* method);

Report eta_invariant(const RunConfig& cfg);
Report run_check(const RunConfig& cfg);
Report run_oracle(const RunConfig& cfg);

/// Writes lform.csv, transgression.csv and report.json into cfg.output_dir.
void emit_tables(const RunConfig& cfg, const Report& report);

void write_lform_csv(const std::filesystem::path& path, const std::vector<LFormRow>& rows);
void write_transgression_csv(const std::filesystem::path& path, const std::vector<std::pair<double, double>>& rows);
void write_report_json(const std::filesystem::path& path, const Report& report);

/// Formats with 17 significant digits, '.' decimal separator.
std::string format_double(double v);

}  // namespace equichar::app
