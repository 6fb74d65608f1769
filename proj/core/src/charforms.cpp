#include "equichar/charforms.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace equichar {
namespace {

const AnalyticGerm& l_log() {
  static const AnalyticGerm g = l_log_germ();
  return g;
}

const AnalyticGerm& a_hat_log() {
  static const AnalyticGerm g = a_hat_log_germ();
  return g;
}

void require_even(const AnalyticGerm& f) {
  if (!f.even()) throw std::invalid_argument("degree-3 transgression formulas need an even germ");
}

QuadratureRule build_gauss_legendre(int n) {
  // Newton iteration on P_n from the Chebyshev-like initial guess.
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    // map [-1,1] -> [0,1]; z > 0 here, so -z is the smaller node
    rule.nodes[i] = 0.5 * (1.0 - z);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + z);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

void check_antisymmetric(const FormMatrix& m, const char* what) {
  const double tol = 1e-12 * std::max(1.0, m.max_abs());
  if (!m.is_antisymmetric(tol)) throw std::invalid_argument(std::string(what) + " must be antisymmetric");
}

}  // namespace

const QuadratureRule& gauss_legendre_unit(int nodes) {
  if (nodes < 2) throw std::invalid_argument("quadrature needs at least 2 nodes");
  static std::mutex mu;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(nodes);
  if (it == cache.end()) it = cache.emplace(nodes, build_gauss_legendre(nodes)).first;
  return it->second;
}

ExteriorForm integrate_unit(const QuadratureSpec& quad, const std::function<ExteriorForm(double)>& g) {
  const QuadratureRule& rule = gauss_legendre_unit(quad.nodes);
  ExteriorForm acc = rule.weights[0] * g(rule.nodes[0]);
  for (std::size_t i = 1; i < rule.nodes.size(); ++i) acc += rule.weights[i] * g(rule.nodes[i]);
  return acc;
}

ConnectionFamily::ConnectionFamily(FormMatrix theta, MatrixPath nabla_x_at, MatrixPath curvature_at)
    : theta_(std::move(theta)), nabla_x_(std::move(nabla_x_at)), curvature_(std::move(curvature_at)) {
  if (!nabla_x_ || !curvature_) throw std::invalid_argument("connection family needs both paths");
  check_antisymmetric(theta_, "theta");
  for (double t : {0.0, 0.5, 1.0}) {
    const FormMatrix nx = nabla_x_(t);
    const FormMatrix r = curvature_(t);
    if (nx.size() != size() || r.size() != size() || nx.form_dim() != form_dim() || r.form_dim() != form_dim()) {
      throw std::invalid_argument("connection family shape mismatch");
    }
    check_antisymmetric(nx, "nabla X");
    if (!nx.is_scalar()) throw std::invalid_argument("nabla X must be degree 0");
    check_antisymmetric(r, "curvature");
  }
}

ConnectionFamily ConnectionFamily::from_endpoints(FormMatrix theta, const FormMatrix& nabla0_x,
                                                  const FormMatrix& nabla1_x, MatrixPath curvature_at) {
  auto path = [n0 = nabla0_x, n1 = nabla1_x](double t) { return (1.0 - t) * n0 + t * n1; };
  return ConnectionFamily(std::move(theta), path, std::move(curvature_at));
}

FormMatrix equivariant_curvature(const FormMatrix& r, const FormMatrix& nabla_x) { return r - nabla_x; }

Truncated<ExteriorForm> l_form(const FormMatrix& rg, const SeriesOptions& opts) {
  return exp_trace_germ(l_log(), rg, opts);
}

Truncated<ExteriorForm> a_hat_form(const FormMatrix& rg, const SeriesOptions& opts) {
  return exp_trace_germ(a_hat_log(), rg, opts);
}

FormMatrix form_matrix_exp(const FormMatrix& m) {
  static const AnalyticGerm e = exp_germ(40);
  const double rho = std::max(scalar_spectral_radius(m), m.degree_component(0).max_abs() * m.size());
  int squarings = 0;
  while (std::ldexp(rho, -squarings) > 0.5) ++squarings;
  FormMatrix x = apply_germ(e, std::ldexp(1.0, -squarings) * m, {30}).value;
  for (int i = 0; i < squarings; ++i) x = mat_mul(x, x);
  return x;
}

ExteriorForm chern_form(const FormMatrix& fg, const std::vector<int>& grading) {
  if (static_cast<int>(grading.size()) != fg.size()) throw std::invalid_argument("grading length != matrix size");
  const FormMatrix ex = form_matrix_exp(-fg);
  ExteriorForm out(fg.form_dim());
  for (int i = 0; i < fg.size(); ++i) out += static_cast<double>(grading[i]) * ex(i, i);
  return out;
}

ExteriorForm transgression_integrand(const AnalyticGerm& f, const ConnectionFamily& fam, double t,
                                     const SeriesOptions& opts) {
  const FormMatrix rg = equivariant_curvature(fam.curvature_at(t), fam.nabla_x_at(t));
  const ExteriorForm e = exp_trace_germ(f, rg, opts).value;
  const FormMatrix fp = apply_germ(f.derivative(), rg, opts).value;
  return wedge(e, trace(mat_mul(fam.theta(), fp)));
}

ExteriorForm transgression_degree3_integrand(const AnalyticGerm& f, const ConnectionFamily& fam, double t,
                                             const SeriesOptions& opts) {
  require_even(f);
  const FormMatrix nx = fam.nabla_x_at(t);
  const FormMatrix r = fam.curvature_at(t);
  const double e = std::exp(trace(apply_germ(f, nx, opts).value).scalar());
  const FormMatrix fp = apply_germ(f.derivative(), nx, opts).value;
  const FormMatrix star = star_second(f, nx, fam.theta(), opts).value;
  const ExteriorForm first = wedge(trace(mat_mul(fam.theta(), fp)), trace(mat_mul(fp, r)));
  const ExteriorForm second = trace(mat_mul(star, r));
  return e * (first + second).degree_component(3);
}

ExteriorForm transgression_degree3_alt_integrand(const AnalyticGerm& f, const ConnectionFamily& fam, double t,
                                                 const SeriesOptions& opts) {
  require_even(f);
  const FormMatrix nx = fam.nabla_x_at(t);
  const FormMatrix r = fam.curvature_at(t);
  const AnalyticGerm fd = f.derivative();
  const double e = std::exp(trace(apply_germ(f, nx, opts).value).scalar());
  ExteriorForm lead = trace(mat_mul(fam.theta(), apply_germ(fd, nx, opts).value));
  lead += ExteriorForm::constant(fam.form_dim(), 1.0);
  const ExteriorForm tail = trace(mat_mul(apply_germ(fd, fam.theta() + nx, opts).value, r));
  return e * wedge(lead, tail).degree_component(3);
}

ExteriorForm transgression(const AnalyticGerm& f, const ConnectionFamily& fam, const QuadratureSpec& quad,
                           const SeriesOptions& opts) {
  return integrate_unit(quad, [&](double t) { return transgression_integrand(f, fam, t, opts); });
}

ExteriorForm transgression_degree3(const AnalyticGerm& f, const ConnectionFamily& fam, const QuadratureSpec& quad,
                                   const SeriesOptions& opts) {
  require_even(f);
  return integrate_unit(quad, [&](double t) { return transgression_degree3_integrand(f, fam, t, opts); });
}

ExteriorForm transgression_degree3_alt(const AnalyticGerm& f, const ConnectionFamily& fam,
                                       const QuadratureSpec& quad, const SeriesOptions& opts) {
  require_even(f);
  return integrate_unit(quad, [&](double t) { return transgression_degree3_alt_integrand(f, fam, t, opts); });
}

ExteriorForm product_transgression(const ExteriorForm& t_beta1, const ExteriorForm& beta2_at1,
                                   const ExteriorForm& beta1_at0, const ExteriorForm& t_beta2) {
  return wedge(t_beta1, beta2_at1) + wedge(beta1_at0, t_beta2);
}

}  // namespace equichar
