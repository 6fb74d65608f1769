#include "equichar/skr.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "equichar/errors.hpp"
#include "equichar/germ.hpp"

namespace equichar {
namespace {

using cplx = std::complex<double>;

const AnalyticGerm& l_log() {
  static const AnalyticGerm g = l_log_germ();
  return g;
}

ExteriorForm e(int dim, std::initializer_list<int> idx, double c = 1.0) { return ExteriorForm::basis(dim, idx, c); }

}  // namespace

// ---------------------------------------------------------------------------
// ScalarFunction

ScalarFunction::ScalarFunction(Fn f, Fn d1, Fn d2) : f_(std::move(f)), d1_(std::move(d1)), d2_(std::move(d2)) {
  if (!f_ || !d1_) throw std::invalid_argument("scalar function needs a value and a first derivative");
}

double ScalarFunction::d2(double t) const {
  if (d2_) return d2_(t);
  const double h = kSecondDerivativeStep;
  return (d1_(t + h) - d1_(t - h)) / (2.0 * h);
}

ScalarFunction ScalarFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  auto eval = [](const std::vector<double>& c, double t, int deriv) {
    double s = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= deriv; --k) {
      double w = 1.0;
      for (int j = 0; j < deriv; ++j) w *= (k - j);
      s = s * t + w * c[k];
    }
    return s;
  };
  return ScalarFunction([c = coeffs, eval](double t) { return eval(c, t, 0); },
                        [c = coeffs, eval](double t) { return eval(c, t, 1); },
                        [c = coeffs, eval](double t) { return eval(c, t, 2); });
}

ScalarFunction ScalarFunction::tabulated(std::vector<double> tau, std::vector<double> values, int order) {
  if (tau.size() != values.size()) throw std::invalid_argument("tabulated function: size mismatch");
  if (order < 1 || static_cast<std::size_t>(order) + 1 > tau.size()) {
    throw std::invalid_argument("tabulated function: order must be >= 1 and below the sample count");
  }
  for (std::size_t i = 1; i < tau.size(); ++i) {
    if (!(tau[i] > tau[i - 1])) throw std::invalid_argument("tabulated function: tau must increase strictly");
  }
  struct Table {
    std::vector<double> x, y;
    int order;
  };
  auto table = std::make_shared<Table>(Table{std::move(tau), std::move(values), order});

  // value and first derivative of the local interpolant at t
  auto local = [table](double t) -> std::pair<double, double> {
    const auto& x = table->x;
    const int n = static_cast<int>(x.size());
    const int m = table->order + 1;
    const int pos = static_cast<int>(std::lower_bound(x.begin(), x.end(), t) - x.begin());
    int lo = std::clamp(pos - m / 2, 0, n - m);
    double value = 0.0, slope = 0.0;
    for (int j = lo; j < lo + m; ++j) {
      // L_j(t + h) = c0 + c1 h + O(h^2)
      double c0 = 1.0, c1 = 0.0;
      for (int i = lo; i < lo + m; ++i) {
        if (i == j) continue;
        const double den = x[j] - x[i];
        const double lin = (t - x[i]) / den;
        c1 = c1 * lin + c0 / den;
        c0 *= lin;
      }
      value += table->y[j] * c0;
      slope += table->y[j] * c1;
    }
    return {value, slope};
  };
  return ScalarFunction([local](double t) { return local(t).first; },
                        [local](double t) { return local(t).second; });
}

// ---------------------------------------------------------------------------
// profile

double SKRProfile::base_factor(double tau) const { return irreducible() ? 2.0 * std::abs(tau - c_bar) : 1.0; }

void validate(const SKRProfile& p, int samples) {
  auto fail = [](const std::string& msg) { throw ProfileError(msg); };
  if (p.a == 0.0) fail("a must be non-zero");
  if (!(p.tau_min < 0.0)) fail("tau_min must be negative");
  if (!(p.base_area > 0.0)) fail("base_area must be positive");
  if (!(p.fiber_period > 0.0)) fail("fiber_period must be positive");
  if (p.irreducible()) {
    if (!p.phi) fail("irreducible profile needs phi");
    if (p.c_bar >= p.tau_min && p.c_bar <= 0.0) fail("c_bar must lie outside [tau_min, 0]");
  } else if (!p.q_fun) {
    fail("reducible profile needs Q");
  }
  for (int i = 0; i < samples; ++i) {
    const double tau = p.tau_min + (i + 1.0) / samples * (0.0 - p.tau_min);
    derived_functions(p, tau);
  }
}

DerivedValues derived_functions(const SKRProfile& p, double tau) {
  DerivedValues v{};
  if (p.irreducible()) {
    const double s = tau - p.c_bar;
    v.phi = p.phi(tau);
    v.phi_d = p.phi.d1(tau);
    v.q = 2.0 * s * v.phi;
    v.psi = v.phi + s * v.phi_d;
    v.psi_d = 2.0 * v.phi_d + s * p.phi.d2(tau);
  } else {
    v.phi = 0.0;
    v.phi_d = 0.0;
    v.q = p.q_fun(tau);
    v.psi = 0.5 * p.q_fun.d1(tau);
    v.psi_d = 0.5 * p.q_fun.d2(tau);
  }
  if (!(v.q > 0.0)) {
    std::ostringstream os;
    os << "Q = " << v.q << " is not positive at tau = " << tau;
    throw ProfileError(os.str());
  }
  return v;
}

CurvatureComponents curvature_components(const SKRProfile& p, double tau) {
  const DerivedValues v = derived_functions(p, tau);
  CurvatureComponents cc{};
  cc.d = -v.psi_d;
  if (p.irreducible()) {
    cc.b = -std::abs(v.phi / v.q) * p.base_curvature - 4.0 * v.phi * v.phi / v.q;
    cc.c = -v.phi_d;
    cc.r = -0.5 * v.phi_d;
  } else {
    cc.b = -p.base_curvature;
    cc.c = 0.0;
    cc.r = 0.0;
  }
  return cc;
}

FormMatrix curvature_matrix(const CurvatureComponents& cc) {
  constexpr int n = 4;
  FormMatrix m(4, n);
  const ExteriorForm s = e(n, {1, 3}) + e(n, {2, 4});
  const ExteriorForm t = e(n, {1, 4}) - e(n, {2, 3});
  m.set_antisymmetric(0, 1, e(n, {1, 2}, cc.b) + e(n, {3, 4}, cc.c));
  m.set_antisymmetric(2, 3, e(n, {1, 2}, cc.c) + e(n, {3, 4}, cc.d));
  m.set_antisymmetric(0, 2, cc.r * s);
  m.set_antisymmetric(0, 3, cc.r * t);
  m.set_antisymmetric(1, 2, -cc.r * t);
  m.set_antisymmetric(1, 3, cc.r * s);
  return m;
}

FormMatrix nabla_x_matrix(double phi, double psi, int form_dim) {
  FormMatrix m(4, form_dim);
  m.set_antisymmetric(0, 1, ExteriorForm::constant(form_dim, phi));
  m.set_antisymmetric(2, 3, ExteriorForm::constant(form_dim, psi));
  return m;
}

// ---------------------------------------------------------------------------
// L-form

ExteriorForm SqrtA::form() const {
  return ExteriorForm::constant(4, alpha) + e(4, {1, 2}, beta) + e(4, {3, 4}, gamma) + e(4, {1, 2, 3, 4}, delta);
}

ExteriorForm a_form(double phi, double psi, const CurvatureComponents& cc) {
  const auto& [b, c, d, r] = cc;
  return ExteriorForm::constant(4, phi * phi + psi * psi) + e(4, {1, 2}, 2.0 * (phi * b + psi * c)) +
         e(4, {3, 4}, 2.0 * (phi * c + psi * d)) + e(4, {1, 2, 3, 4}, 2.0 * (b * c + c * d - 4.0 * r * r));
}

SqrtA sqrt_a_coeffs(double phi, double psi, const CurvatureComponents& cc) {
  const double a2 = phi * phi + psi * psi;
  if (a2 == 0.0) throw SingularInputError("sqrt(A) coefficients undefined at phi = psi = 0");
  const auto& [b, c, d, r] = cc;
  const double alpha = std::sqrt(a2);
  SqrtA out{};
  out.alpha = alpha;
  out.beta = (b * phi + c * psi) / alpha;
  out.gamma = (c * phi + d * psi) / alpha;
  out.delta = ((c * d - 4.0 * r * r) * phi * phi + (b * c - 4.0 * r * r) * psi * psi - phi * psi * (b * d + c * c)) /
              (a2 * alpha);
  return out;
}

ExteriorForm l_form_closed(const SKRProfile& p, double tau) {
  const DerivedValues v = derived_functions(p, tau);
  const SqrtA s = sqrt_a_coeffs(v.phi, v.psi, curvature_components(p, tau));
  const double f0 = lbar(s.alpha), f1 = lbar_d1(s.alpha), f2 = lbar_d2(s.alpha);
  return ExteriorForm::constant(4, f0) + e(4, {1, 2}, f1 * s.beta) + e(4, {3, 4}, f1 * s.gamma) +
         e(4, {1, 2, 3, 4}, f1 * s.delta + f2 * s.beta * s.gamma);
}

FormMatrix equivariant_curvature_at(const SKRProfile& p, double tau) {
  const DerivedValues v = derived_functions(p, tau);
  return equivariant_curvature(curvature_matrix(curvature_components(p, tau)), nabla_x_matrix(v.phi, v.psi));
}

Truncated<ExteriorForm> l_form_generic(const SKRProfile& p, double tau, const SeriesOptions& opts) {
  return l_form(equivariant_curvature_at(p, tau), opts);
}

// ---------------------------------------------------------------------------
// boundary

FormMatrix BoundaryData::nabla_tx(double t, double s) const {
  return nabla_x_matrix(s * phi0, s * t * psi0, 3);
}

FormMatrix BoundaryData::curvature_t(double t) const { return a1 + t * a2 + (t * t) * a3; }

ConnectionFamily BoundaryData::family(double s) const {
  BoundaryData copy = *this;
  return ConnectionFamily(
      theta, [copy, s](double t) { return copy.nabla_tx(t, s); },
      [copy](double t) { return copy.curvature_t(t); });
}

BoundaryData boundary_data(const SKRProfile& p) {
  validate(p);
  const DerivedValues v = derived_functions(p, 0.0);
  const CurvatureComponents cc = curvature_components(p, 0.0);
  BoundaryData bd;
  bd.phi0 = v.phi;
  bd.psi0 = v.psi;
  bd.q0 = v.q;
  const double sq = std::sqrt(v.q);
  bd.k = v.phi / sq;
  bd.ell = v.psi / sq;
  if (p.irreducible()) {
    const double cb2 = p.c_bar * p.c_bar;
    bd.r0_1212 = 2.0 * std::abs(p.c_bar) * p.base_curvature + 3.0 * v.q / (4.0 * cb2);
    bd.r0_2323 = -v.q / (4.0 * cb2);
  } else {
    // product of the base with a flat circle
    bd.r0_1212 = -p.base_curvature;
    bd.r0_2323 = 0.0;
  }
  bd.r1234 = cc.c;
  bd.r2314 = -cc.r;

  constexpr int n = 3;
  bd.theta = FormMatrix(4, n);
  bd.theta.set_antisymmetric(0, 3, e(n, {1}, bd.k));
  bd.theta.set_antisymmetric(1, 3, e(n, {2}, bd.k));
  bd.theta.set_antisymmetric(2, 3, e(n, {3}, bd.ell));

  bd.a1 = FormMatrix(4, n);
  bd.a1.set_antisymmetric(0, 1, e(n, {1, 2}, bd.r0_1212));
  bd.a1.set_antisymmetric(0, 2, e(n, {1, 3}, bd.r0_2323));  // R0_1313 = R0_2323
  bd.a1.set_antisymmetric(1, 2, e(n, {2, 3}, bd.r0_2323));

  // Codazzi: the last column of the bulk curvature with e^4 terms dropped
  const FormMatrix bulk = curvature_matrix(cc);
  bd.a2 = FormMatrix(4, n);
  for (int i = 0; i < 3; ++i) bd.a2.set_antisymmetric(i, 3, drop_last_direction(bulk(i, 3)));

  bd.a3 = mat_mul(bd.theta, bd.theta);
  return bd;
}

Truncated<double> transgression_closed_integrand(const BoundaryData& bd, double t, int order, double s) {
  const AnalyticGerm& f = l_log();
  const double xp = s * bd.phi0;
  const double xq = s * t * bd.psi0;
  const cplx fp_p = f.eval_i_d1(xp);
  const cplx fp_q = f.eval_i_d1(xq);
  const cplx fpp_q = f.eval_i_d2(xq);
  const double ex = std::exp((2.0 * (f.eval_i(xp) + f.eval_i(xq))).real());

  const double t1 = (4.0 * bd.ell * fp_q * ((t * t * bd.k * bd.k - bd.r0_1212) * fp_p - t * bd.r1234 * fp_q)).real();
  const double t3 = -2.0 * t * bd.ell * bd.r1234 * fpp_q.real();

  auto m_sum = [&](int m, int parity) {
    double acc = 0.0;
    for (int kk = parity; kk <= 2 * m; kk += 2) {
      if (parity == 1 && kk > 2 * m - 1) break;
      acc += std::pow(xp, kk) * std::pow(xq, 2 * m - kk) + std::pow(xq, kk) * std::pow(xp, 2 * m - kk);
    }
    return acc;
  };
  auto term = [&](int m) {
    const double am = (2.0 * m + 2.0) * f.coeff(2 * m + 2);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // (-1)^m
    const double odd = (sign * bd.r0_2323 - sign * t * t * bd.k * bd.ell) * m_sum(m, 1);
    const double even = -sign * t * bd.r2314 * m_sum(m, 0);
    return am * (odd + even);
  };
  double t2 = 0.0;
  for (int m = 0; m <= order; ++m) t2 += term(m);
  double tail = 0.0;
  for (int m = order + 1; m <= order + 4; ++m) tail += std::abs(term(m));

  return {ex * (t1 + 2.0 * bd.k * t2 + t3), ex * 2.0 * std::abs(bd.k) * tail};
}

Truncated<ExteriorForm> transgression_pullback_closed(const SKRProfile& p, int order, const QuadratureSpec& quad,
                                                      double s) {
  const BoundaryData bd = boundary_data(p);
  const QuadratureRule& rule = gauss_legendre_unit(quad.nodes);
  double value = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const auto g = transgression_closed_integrand(bd, rule.nodes[i], order, s);
    value += rule.weights[i] * g.value;
    tail += rule.weights[i] * g.tail_bound;
  }
  return {e(3, {1, 2, 3}, value), tail};
}

ExteriorForm transgression_pullback_direct(const SKRProfile& p, int order, const QuadratureSpec& quad, double s) {
  const BoundaryData bd = boundary_data(p);
  return transgression_degree3(l_log(), bd.family(s), quad, SeriesOptions{order});
}

ExteriorForm transgression_pullback_limit(const SKRProfile& p, const QuadratureSpec& quad) {
  const BoundaryData bd = boundary_data(p);
  const double f2 = l_log().derivative_at_zero(2);
  return f2 * integrate_unit(quad, [&](double t) { return trace(mat_mul(bd.theta, bd.curvature_t(t))); });
}

}  // namespace equichar
