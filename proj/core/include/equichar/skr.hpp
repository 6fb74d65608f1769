#pragma once

#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "equichar/charforms.hpp"
#include "equichar/exterior.hpp"
#include "equichar/matforms.hpp"

namespace equichar {

/// Smooth real function of tau with first and (optionally) second derivative.
/// When no second derivative is available it is taken by a central
/// difference of the first derivative with step kSecondDerivativeStep.
class ScalarFunction {
 public:
  using Fn = std::function<double(double)>;
  static constexpr double kSecondDerivativeStep = 1e-5;

  ScalarFunction() = default;
  ScalarFunction(Fn f, Fn d1, Fn d2 = {});

  /// Coefficients lowest degree first; derivatives are exact.
  static ScalarFunction polynomial(std::vector<double> coeffs);
  /// Piecewise Lagrange interpolation of the given order through the
  /// nearest order+1 samples. tau must be strictly increasing. The second
  /// derivative is left to the finite-difference rule.
  static ScalarFunction tabulated(std::vector<double> tau, std::vector<double> values, int order);

  double operator()(double t) const { return f_(t); }
  double d1(double t) const { return d1_(t); }
  double d2(double t) const;
  bool has_d2() const noexcept { return static_cast<bool>(d2_); }
  explicit operator bool() const noexcept { return static_cast<bool>(f_); }

 private:
  Fn f_, d1_, d2_;
};

enum class ProfileMode { irreducible, reducible };

struct SKRProfile {
  ProfileMode mode = ProfileMode::irreducible;
  ScalarFunction phi;    // irreducible
  ScalarFunction q_fun;  // reducible
  double c_bar = -1.0;
  double a = 1.0;
  double base_curvature = 0.0;  // R^h_1212
  double tau_min = -0.5;
  double base_area = 1.0;
  double fiber_period = 2.0 * std::numbers::pi;

  bool irreducible() const noexcept { return mode == ProfileMode::irreducible; }
  /// Weight of the base metric: 2|tau - c_bar|, or 1 when reducible.
  double base_factor(double tau) const;
};

/// Throws ProfileError when an invariant fails (Q <= 0 on the sampled range,
/// c_bar inside the tau range, a == 0, tau_min >= 0, ...).
void validate(const SKRProfile& p, int samples = 64);

struct DerivedValues {
  double phi, psi, q, phi_d, psi_d;
};

DerivedValues derived_functions(const SKRProfile& p, double tau);

struct CurvatureComponents {
  double b, c, d, r;
};

CurvatureComponents curvature_components(const SKRProfile& p, double tau);

/// 4x4 curvature matrix over the 4-dimensional coframe.
FormMatrix curvature_matrix(const CurvatureComponents& cc);

/// phi J_H + psi J_V, degree 0, over a coframe of the given dimension.
FormMatrix nabla_x_matrix(double phi, double psi, int form_dim = 4);

struct SqrtA {
  double alpha, beta, gamma, delta;
  ExteriorForm form() const;
};

/// A = phi^2 + psi^2 + 2(phi b + psi c) e12 + 2(phi c + psi d) e34 + 2(bc + cd - 4r^2) e1234.
ExteriorForm a_form(double phi, double psi, const CurvatureComponents& cc);
/// Throws SingularInputError when phi = psi = 0.
SqrtA sqrt_a_coeffs(double phi, double psi, const CurvatureComponents& cc);

/// lbar(alpha) + lbar'(alpha) (beta e12 + gamma e34 + delta e1234) + lbar''(alpha) beta gamma e1234.
ExteriorForm l_form_closed(const SKRProfile& p, double tau);

/// R_g(X) = R - nabla X at tau.
FormMatrix equivariant_curvature_at(const SKRProfile& p, double tau);
/// exp Tr f_L(R_g(X)) at tau via the series calculus.
Truncated<ExteriorForm> l_form_generic(const SKRProfile& p, double tau, const SeriesOptions& opts = {});

struct BoundaryData {
  double phi0 = 0, psi0 = 0, q0 = 0;
  double k = 0, ell = 0;
  double r0_1212 = 0, r0_2323 = 0;
  double r1234 = 0, r2314 = 0;
  FormMatrix theta{4, 3};
  FormMatrix a1{4, 3}, a2{4, 3}, a3{4, 3};

  /// phi0 J_H + t psi0 J_V, both eigenvalues scaled by s.
  FormMatrix nabla_tx(double t, double s = 1.0) const;
  /// A1 + t A2 + t^2 A3.
  FormMatrix curvature_t(double t) const;
  /// Family with nabla^t X scaled by s; Theta and curvature untouched.
  ConnectionFamily family(double s = 1.0) const;
};

BoundaryData boundary_data(const SKRProfile& p);

/// Coefficient of e123 in the closed integrand at t. Scaling s multiplies
/// the arguments phi0, t psi0 of f, f', f'' and M_{k,m} only.
Truncated<double> transgression_closed_integrand(const BoundaryData& bd, double t, int order, double s = 1.0);

/// Closed boundary transgression, a multiple of e123 on the 3-dim coframe.
Truncated<ExteriorForm> transgression_pullback_closed(const SKRProfile& p, int order = 16,
                                                      const QuadratureSpec& quad = {}, double s = 1.0);
/// Same quantity from the generic degree-3 transgression of the boundary family.
ExteriorForm transgression_pullback_direct(const SKRProfile& p, int order = 16, const QuadratureSpec& quad = {},
                                           double s = 1.0);

/// f''(0) int_0^1 Tr[Theta R^t] dt, the X -> 0 limit of both routes.
ExteriorForm transgression_pullback_limit(const SKRProfile& p, const QuadratureSpec& quad = {});

}  // namespace equichar
