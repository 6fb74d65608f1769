#include "equichar/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "equichar/charforms.hpp"
#include "equichar/errors.hpp"
#include "equichar/oracle.hpp"

namespace equichar::app {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kReferenceOrder = 40;

const AnalyticGerm& l_log() {
  static const AnalyticGerm g = l_log_germ();
  return g;
}

// Runs f(i) for i in [0, n) on up to thread_limit() workers. Results must be
// written to per-index slots; the first failing index (lowest i) is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t workers = std::min<std::size_t>(thread_limit(), n);
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t start) {
    for (std::size_t i = start; i < n; i += std::max<std::size_t>(workers, 1)) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ScalarFunction parse_function(const ordered_json& j, const char* what) {
  if (j.is_array()) {
    std::vector<double> c;
    for (const auto& v : j) c.push_back(v.get<double>());
    if (c.empty()) throw ConfigError(std::string(what) + ": empty coefficient array");
    return ScalarFunction::polynomial(std::move(c));
  }
  if (j.is_object()) {
    auto tau = j.at("tau").get<std::vector<double>>();
    auto values = j.at("values").get<std::vector<double>>();
    const int order = j.value("order", 3);
    try {
      return ScalarFunction::tabulated(std::move(tau), std::move(values), order);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string(what) + ": " + e.what());
    }
  }
  throw ConfigError(std::string(what) + " must be a coefficient array or a {tau, values, order} table");
}

std::vector<double> tau_samples(const RunConfig& cfg) {
  const int n = cfg.numerics.tau_samples;
  const double lo = cfg.profile.tau_min;
  std::vector<double> out;
  // tau_min itself is left out: Q may vanish there
  for (int i = 1; i <= n; ++i) out.push_back(lo + (0.0 - lo) * static_cast<double>(i) / n);
  return out;
}

double rel_or_abs(double a, double b, double floor = 1.0) {
  return std::abs(a - b) / std::max(floor, std::max(std::abs(a), std::abs(b)));
}

CheckResult make_check(std::string name, double measured, double tol, bool gating = true) {
  const bool ok = std::isfinite(measured) && measured <= tol;
  return {std::move(name), ok, gating, measured, tol};
}

// Pfaffian of a 4x4 matrix of even forms.
ExteriorForm pfaffian(const FormMatrix& m) {
  return wedge(m(0, 1), m(2, 3)) - wedge(m(0, 2), m(1, 3)) + wedge(m(0, 3), m(1, 2));
}

ExteriorForm sum_of_squares(const FormMatrix& m) {
  ExteriorForm s(m.form_dim());
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) s += wedge(m(i, j), m(i, j));
  }
  return s;
}

double five_point_derivative(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

void append_oracle_checks(const RunConfig& cfg, std::vector<CheckResult>& out) {
  SKRProfile flat = cfg.profile;
  flat.base_curvature = 0.0;
  const auto opts = oracle::ChartOptions::for_profile(flat);
  const double h = cfg.numerics.fd_step;
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  constexpr int kPoints = 10;
  std::vector<oracle::ChartPoint> pts;
  for (int i = 0; i < kPoints; ++i) {
    const double tau = flat.tau_min * (0.1 + 0.85 * unit(rng));
    pts.push_back({tau, 2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0});
  }
  std::vector<double> curv(kPoints), three(kPoints), sym(kPoints), kahler(kPoints), geo(kPoints), conn(kPoints);
  parallel_for(pts.size(), [&](std::size_t i) {
    const auto& pt = pts[i];
    const oracle::Tensor4 r = oracle::riemann_frame_fd(flat, pt, h, opts);
    const FormMatrix closed = curvature_matrix(curvature_components(flat, pt.tau));
    double scale = 0.0, diff = 0.0, vanish = 0.0, bianchi = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            const double ref = (c == d) ? 0.0
                               : (c < d) ? closed(a, b).coeff(MultiIndex{c + 1, d + 1})
                                         : -closed(a, b).coeff(MultiIndex{d + 1, c + 1});
            scale = std::max(scale, std::abs(ref));
            diff = std::max(diff, std::abs(r(a, b, c, d) - ref));
            const int vertical = (a >= 2) + (b >= 2) + (c >= 2) + (d >= 2);
            if (vertical == 3) vanish = std::max(vanish, std::abs(r(a, b, c, d)));
            bianchi = std::max({bianchi, std::abs(r(a, b, c, d) + r(b, a, c, d)),
                                std::abs(r(a, b, c, d) + r(a, b, d, c)), std::abs(r(a, b, c, d) - r(c, d, a, b)),
                                std::abs(r(a, b, c, d) + r(b, c, a, d) + r(c, a, b, d))});
          }
    // a flat chart has no scale; fall back to the absolute deviation
    curv[i] = scale > 0.0 ? diff / scale : diff;
    three[i] = vanish;
    sym[i] = bianchi;
    kahler[i] = oracle::kahler_defect_fd(flat, pt, h, opts);
    geo[i] = oracle::pregeodesic_defect_fd(flat, pt, h, opts);

    const auto nu = oracle::connection_forms_fd(flat, pt, h, opts);
    const DerivedValues v = derived_functions(flat, pt.tau);
    const double k = v.phi / std::sqrt(v.q), l = v.psi / std::sqrt(v.q);
    // nu_13 = k e2, nu_14 = k e1, nu_23 = -k e1, nu_24 = k e2, nu_34 = l e3
    double cd = 0.0;
    auto expect = [&](int i0, int j0, int k0, double val) { cd = std::max(cd, std::abs(nu[i0][j0][k0] - val)); };
    for (int kk = 0; kk < 4; ++kk) {
      expect(0, 2, kk, kk == 1 ? k : 0.0);
      expect(0, 3, kk, kk == 0 ? k : 0.0);
      expect(1, 2, kk, kk == 0 ? -k : 0.0);
      expect(1, 3, kk, kk == 1 ? k : 0.0);
      expect(2, 3, kk, kk == 2 ? l : 0.0);
    }
    conn[i] = cd;
  });
  auto worst = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  out.push_back(make_check("oracle_curvature_relative", worst(curv), 1e-5));
  out.push_back(make_check("oracle_three_vertical_vanishing", worst(three), 1e-6));
  out.push_back(make_check("oracle_curvature_symmetries", worst(sym), 1e-6));
  out.push_back(make_check("oracle_connection_forms", worst(conn), 1e-6));
  out.push_back(make_check("oracle_kahler_nabla_j", worst(kahler), 1e-6));
  out.push_back(make_check("oracle_pregeodesic", worst(geo), 1e-6));

  // volume reduction against direct chart quadrature of a smooth test integrand
  auto test_fn = [](double tau) { return 1.0 + tau + 0.5 * tau * tau; };
  const double lo = flat.tau_min * 0.999;
  const double chart = oracle::chart_volume_integral(flat, test_fn, lo, 12, opts);
  const QuadratureRule& rule = gauss_legendre_unit(cfg.numerics.quadrature_nodes);
  double reduced = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double tau = lo + (0.0 - lo) * rule.nodes[i];
    reduced += rule.weights[i] * test_fn(tau) * flat.base_factor(tau);
  }
  reduced *= (0.0 - lo) * flat.fiber_period * flat.base_area;
  out.push_back(make_check("volume_reduction_bulk", rel_or_abs(chart, reduced, 0.0), 1e-4));
  const double q0 = derived_functions(flat, 0.0).q;
  const double bvol = flat.base_factor(0.0) * flat.base_area * flat.fiber_period * std::sqrt(q0);
  out.push_back(make_check("volume_reduction_boundary",
                           rel_or_abs(oracle::chart_boundary_volume(flat, 8, opts), bvol, 0.0), 1e-4));
}

}  // namespace

unsigned thread_limit() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("EQUICHAR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunConfig parse_config(const ordered_json& doc) {
  RunConfig cfg;
  cfg.echo = doc;
  try {
    const auto& pj = doc.at("profile");
    SKRProfile& p = cfg.profile;
    const std::string mode = pj.value("mode", std::string("irreducible"));
    if (mode == "irreducible") {
      p.mode = ProfileMode::irreducible;
      p.phi = parse_function(pj.at("phi"), "profile.phi");
      p.c_bar = pj.at("c_bar").get<double>();
    } else if (mode == "reducible") {
      p.mode = ProfileMode::reducible;
      p.q_fun = parse_function(pj.at("q"), "profile.q");
      p.c_bar = pj.value("c_bar", 0.0);
    } else {
      throw ConfigError("profile.mode must be 'irreducible' or 'reducible'");
    }
    p.a = pj.value("a", 1.0);
    p.base_curvature = pj.value("base_curvature", 0.0);
    p.tau_min = pj.at("tau_min").get<double>();

    if (doc.contains("topology")) {
      const auto& tj = doc.at("topology");
      cfg.topology.signature = tj.value("signature", 0);
      p.base_area = tj.value("base_area", 1.0);
      p.fiber_period = tj.value("fiber_period", 2.0 * std::numbers::pi);
    }
    if (doc.contains("numerics")) {
      const auto& nj = doc.at("numerics");
      Numerics& n = cfg.numerics;
      n.series_order = nj.value("series_order", n.series_order);
      n.quadrature_nodes = nj.value("quadrature_nodes", n.quadrature_nodes);
      n.fd_step = nj.value("fd_step", n.fd_step);
      n.tau_samples = nj.value("tau_samples", n.tau_samples);
    }
    if (doc.contains("output")) cfg.output_dir = doc.at("output").value("dir", std::string("."));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  const Numerics& n = cfg.numerics;
  if (n.series_order < 2 || n.series_order > kDefaultGermOrder - 4) {
    throw ConfigError("numerics.series_order must be in [2, " + std::to_string(kDefaultGermOrder - 4) + "]");
  }
  if (n.quadrature_nodes < 2) throw ConfigError("numerics.quadrature_nodes must be >= 2");
  if (!(n.fd_step > 0.0)) throw ConfigError("numerics.fd_step must be positive");
  if (n.tau_samples < 2) throw ConfigError("numerics.tau_samples must be >= 2");
  try {
    validate(cfg.profile);
  } catch (const ProfileError& e) {
    throw ConfigError(std::string("invalid profile: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

std::vector<LFormRow> lform_table(const RunConfig& cfg) {
  const std::vector<double> taus = tau_samples(cfg);
  std::vector<LFormRow> rows(taus.size());
  const SeriesOptions opts{cfg.numerics.series_order};
  parallel_for(taus.size(), [&](std::size_t i) {
    LFormRow row{taus[i], kNaN, kNaN, kNaN, kNaN, 0.0, kNaN, 0.0};
    const auto generic = l_form_generic(cfg.profile, row.tau, opts);
    row.l4 = generic.value.coeff({1, 2, 3, 4});
    row.tail = generic.tail_bound;
    const DerivedValues v = derived_functions(cfg.profile, row.tau);
    if (v.phi != 0.0 || v.psi != 0.0) {
      const SqrtA s = sqrt_a_coeffs(v.phi, v.psi, curvature_components(cfg.profile, row.tau));
      row.alpha = s.alpha;
      row.beta = s.beta;
      row.gamma = s.gamma;
      row.delta = s.delta;
      try {
        row.l4_closed = l_form_closed(cfg.profile, row.tau).coeff({1, 2, 3, 4});
      } catch (const DomainError&) {
        row.l4_closed = kNaN;
      }
    }
    rows[i] = row;
  });
  return rows;
}

std::vector<std::pair<double, double>> transgression_table(const RunConfig& cfg) {
  const BoundaryData bd = boundary_data(cfg.profile);
  const ConnectionFamily fam = bd.family();
  const QuadratureRule& rule = gauss_legendre_unit(cfg.numerics.quadrature_nodes);
  std::vector<std::pair<double, double>> rows(rule.nodes.size());
  const SeriesOptions opts{cfg.numerics.series_order};
  parallel_for(rows.size(), [&](std::size_t i) {
    const double t = rule.nodes[i];
    rows[i] = {t, transgression_degree3_integrand(l_log(), fam, t, opts).coeff({1, 2, 3})};
  });
  return rows;
}

double bulk_integral(const RunConfig& cfg, int nodes, double* error, std::string* method) {
  const SKRProfile& p = cfg.profile;
  const SeriesOptions opts{cfg.numerics.series_order};
  auto integrand = [&](double tau) {
    return l_form_generic(p, tau, opts).value.coeff({1, 2, 3, 4}) * p.base_factor(tau);
  };
  auto gauss = [&](double lo, int n) {
    const QuadratureRule& rule = gauss_legendre_unit(n);
    std::vector<double> vals(rule.nodes.size());
    parallel_for(vals.size(), [&](std::size_t i) { vals[i] = integrand(lo + (0.0 - lo) * rule.nodes[i]); });
    double s = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) s += rule.weights[i] * vals[i];
    return s * (0.0 - lo);
  };
  const double scale = p.fiber_period * p.base_area;

  bool direct_ok = false;
  double coarse = 0.0, fine = 0.0;
  try {
    coarse = gauss(p.tau_min, nodes);
    fine = gauss(p.tau_min, 2 * nodes);
    direct_ok = std::isfinite(coarse) && std::isfinite(fine) &&
                std::abs(coarse - fine) <= 1e-9 * std::max(1.0, std::abs(fine));
  } catch (const ProfileError&) {
  } catch (const DomainError&) {
  }
  if (direct_ok) {
    if (error) *error = scale * std::abs(coarse - fine);
    if (method) *method = "gauss-legendre";
    return scale * coarse;
  }

  // endpoint singularity at tau_min: integrate on [tau_min + eps, 0] and
  // extrapolate linearly in eps
  const double eps[3] = {1e-3, 1e-4, 1e-5};
  double vals[3];
  for (int i = 0; i < 3; ++i) vals[i] = gauss(p.tau_min + eps[i], 2 * nodes);
  const double r1 = vals[1] + (vals[1] - vals[0]) * eps[1] / (eps[0] - eps[1]);
  const double r2 = vals[2] + (vals[2] - vals[1]) * eps[2] / (eps[1] - eps[2]);
  const double err = std::abs(r2 - r1);
  if (!std::isfinite(r2) || err > 1e-3 * std::max(1.0, std::abs(r2))) {
    std::ostringstream os;
    os << "bulk integral does not converge near tau_min: extrapolants " << r1 << ", " << r2;
    throw NumericalError(os.str());
  }
  if (error) *error = scale * err;
  if (method) *method = "epsilon-richardson";
  return scale * r2;
}

bool Report::all_gating_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed || !c.gating; });
}

ordered_json Report::to_json() const {
  ordered_json j;
  j["config"] = config;
  ordered_json rows = ordered_json::array();
  for (const auto& r : lform) {
    ordered_json row;
    row["tau"] = r.tau;
    row["alpha"] = r.alpha;
    row["beta"] = r.beta;
    row["gamma"] = r.gamma;
    row["delta"] = r.delta;
    row["L4"] = r.l4;
    row["L4_closed_formula"] = r.l4_closed;
    row["series_tail_bound"] = r.tail;
    rows.push_back(row);
  }
  j["lform"] = rows;
  j["boundary_transgression"] = {{"direct", tl3_direct},
                                 {"closed", tl3_closed},
                                 {"discrepancy", tl3_discrepancy},
                                 {"closed_tail_bound", tl3_closed_tail}};
  j["bulk_integral"] = {{"value", bulk}, {"error", bulk_error}, {"method", bulk_method}};
  j["boundary_integral"] = {{"value", boundary}, {"error", boundary_error}};
  j["eta"] = {{"value", eta}, {"error", eta_error}};
  ordered_json cs = ordered_json::array();
  for (const auto& c : checks) {
    cs.push_back({{"name", c.name},
                  {"passed", c.passed},
                  {"gating", c.gating},
                  {"measured", c.measured},
                  {"tolerance", c.tolerance}});
  }
  j["checks"] = cs;
  return j;
}

Report eta_invariant(const RunConfig& cfg) {
  const SKRProfile& p = cfg.profile;
  Report rep;
  rep.config = cfg.echo;
  rep.lform = lform_table(cfg);

  const QuadratureSpec quad{cfg.numerics.quadrature_nodes};
  const int k = cfg.numerics.series_order;
  rep.tl3_direct = transgression_pullback_direct(p, k, quad).coeff({1, 2, 3});
  const auto closed = transgression_pullback_closed(p, k, quad);
  rep.tl3_closed = closed.value.coeff({1, 2, 3});
  rep.tl3_closed_tail = closed.tail_bound;
  rep.tl3_discrepancy = std::abs(rep.tl3_direct - rep.tl3_closed);

  rep.bulk = bulk_integral(cfg, cfg.numerics.quadrature_nodes, &rep.bulk_error, &rep.bulk_method);

  const double q0 = derived_functions(p, 0.0).q;
  const double bvol = p.base_factor(0.0) * p.base_area * p.fiber_period * std::sqrt(q0);
  rep.boundary = rep.tl3_direct * bvol;
  rep.boundary_error = rep.tl3_discrepancy * bvol;

  const double pi2 = std::numbers::pi * std::numbers::pi;
  rep.eta = -(rep.bulk - rep.boundary) / pi2 - cfg.topology.signature;
  rep.eta_error = (rep.bulk_error + rep.boundary_error) / pi2;
  return rep;
}

Report run_oracle(const RunConfig& cfg) {
  Report rep;
  rep.config = cfg.echo;
  append_oracle_checks(cfg, rep.checks);
  return rep;
}

Report run_check(const RunConfig& cfg) {
  const SKRProfile& p = cfg.profile;
  Report rep = eta_invariant(cfg);
  auto& out = rep.checks;
  const std::vector<double> taus = tau_samples(cfg);
  const SeriesOptions opts{cfg.numerics.series_order};
  const QuadratureSpec quad{cfg.numerics.quadrature_nodes};

  if (p.irreducible()) {
    double rq = 0.0, rdq = 0.0, rphi = 0.0, rr = 0.0;
    const double lo = p.tau_min, hi = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double tau = lo + (hi - lo) * (i + 1.0) / 100.0;
      const DerivedValues v = derived_functions(p, tau);
      rq = std::max(rq, std::abs(v.q - 2.0 * (tau - p.c_bar) * v.phi));
      auto q_of = [&](double t) { return 2.0 * (t - p.c_bar) * p.phi(t); };
      rdq = std::max(rdq, std::abs(five_point_derivative(q_of, tau, 1e-3) - 2.0 * v.psi));
      rphi = std::max(rphi, std::abs(v.q * v.phi_d - 2.0 * (v.psi - v.phi) * v.phi));
      const CurvatureComponents cc = curvature_components(p, tau);
      rr = std::max(rr, std::abs(cc.r - 0.5 * cc.c));
    }
    out.push_back(make_check("relation_q", rq, 1e-12));
    out.push_back(make_check("relation_dq", rdq, 1e-10));
    out.push_back(make_check("relation_dphi", rphi, 1e-10));
    out.push_back(make_check("r_equals_half_c", rr, 0.0));
  }

  double sq = 0.0, charpoly_a = 0.0, charpoly_pf = 0.0, l4_closed = 0.0, l4_red = 0.0;
  for (const auto& row : rep.lform) {
    const DerivedValues v = derived_functions(p, row.tau);
    const CurvatureComponents cc = curvature_components(p, row.tau);
    const ExteriorForm a = a_form(v.phi, v.psi, cc);
    if (v.phi != 0.0 || v.psi != 0.0) {
      const ExteriorForm s = sqrt_a_coeffs(v.phi, v.psi, cc).form();
      sq = std::max(sq, (wedge(s, s) - a).max_abs() / std::max(1.0, a.max_abs()));
    }
    const FormMatrix rg = equivariant_curvature_at(p, row.tau);
    charpoly_a = std::max(charpoly_a, (sum_of_squares(rg) - a).max_abs());
    const ExteriorForm pf = pfaffian(rg);
    charpoly_pf = std::max(charpoly_pf, wedge(pf, pf).max_abs());
    if (!std::isnan(row.l4_closed)) l4_closed = std::max(l4_closed, rel_or_abs(row.l4, row.l4_closed));
    l4_red = std::max(l4_red, std::abs(row.l4));
  }
  out.push_back(make_check("sqrt_a_square", sq, 1e-13));
  out.push_back(make_check("charpoly_lambda2_equals_a", charpoly_a, 1e-12, false));
  out.push_back(make_check("charpoly_constant_term_vanishes", charpoly_pf, 1e-12, false));
  out.push_back(make_check("lform_closed_vs_generic", l4_closed, 1e-10, false));

  // reference at a converged series order; at K the generic route can carry
  // truncation error of order (rho/pi)^K
  const int ref_order = std::max(kReferenceOrder, cfg.numerics.series_order);
  const double tl3_ref = transgression_pullback_direct(p, ref_order, quad).coeff({1, 2, 3});
  out.push_back(make_check("transgression_closed_vs_direct", rel_or_abs(rep.tl3_closed, tl3_ref, 1e-12), 1e-8));
  out.push_back(make_check("transgression_direct_truncation", rel_or_abs(rep.tl3_direct, tl3_ref, 1e-12), 1e-6,
                           false));
  const BoundaryData bd = boundary_data(p);
  const ConnectionFamily fam = bd.family();
  const double alt = transgression_degree3_alt(l_log(), fam, quad, opts).coeff({1, 2, 3});
  const double full = transgression(l_log(), fam, quad, opts).degree_component(3).coeff({1, 2, 3});
  out.push_back(make_check("transgression_degree3_vs_alt", std::abs(alt - rep.tl3_direct), 1e-10));
  out.push_back(make_check("transgression_degree3_vs_full", std::abs(full - rep.tl3_direct), 1e-10));

  if (!p.irreducible()) {
    out.push_back(make_check("reducible_l4_vanishes", l4_red, 1e-12));
    out.push_back(make_check("reducible_tl3_vanishes",
                             std::max(std::abs(rep.tl3_direct), std::abs(rep.tl3_closed)), 1e-10));
  }
  append_oracle_checks(cfg, out);
  return rep;
}

void write_lform_csv(const std::filesystem::path& path, const std::vector<LFormRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "tau,alpha,beta,gamma,delta,L4\n";
  for (const auto& r : rows) {
    out << format_double(r.tau) << ',' << format_double(r.alpha) << ',' << format_double(r.beta) << ','
        << format_double(r.gamma) << ',' << format_double(r.delta) << ',' << format_double(r.l4) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_transgression_csv(const std::filesystem::path& path, const std::vector<std::pair<double, double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t,integrand_e123\n";
  for (const auto& [t, v] : rows) out << format_double(t) << ',' << format_double(v) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_report_json(const std::filesystem::path& path, const Report& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << report.to_json().dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void emit_tables(const RunConfig& cfg, const Report& report) {
  std::filesystem::create_directories(cfg.output_dir);
  write_lform_csv(cfg.output_dir / "lform.csv", report.lform);
  write_transgression_csv(cfg.output_dir / "transgression.csv", transgression_table(cfg));
  write_report_json(cfg.output_dir / "report.json", report);
}

}  // namespace equichar::app
