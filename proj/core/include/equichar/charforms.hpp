#pragma once

#include <functional>
#include <vector>

#include "equichar/exterior.hpp"
#include "equichar/germ.hpp"
#include "equichar/matforms.hpp"

namespace equichar {

/// Gauss-Legendre rule on [0,1]. Nodes are returned in increasing order.
struct QuadratureSpec {
  int nodes = 32;
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Throws std::invalid_argument for fewer than 2 nodes.
const QuadratureRule& gauss_legendre_unit(int nodes);

/// Fixed left-to-right sum of w_i * g(t_i) over the sorted nodes.
ExteriorForm integrate_unit(const QuadratureSpec& quad, const std::function<ExteriorForm(double)>& g);

/// A path of connections nabla^t = nabla^0 + t Theta, described at one frame
/// fiber by Theta, t -> nabla^t X (degree 0) and t -> R^t.
class ConnectionFamily {
 public:
  using MatrixPath = std::function<FormMatrix(double)>;

  /// Antisymmetry of theta, nabla_x_at(t) and curvature_at(t) is checked at
  /// t = 0, 1/2, 1.
  ConnectionFamily(FormMatrix theta, MatrixPath nabla_x_at, MatrixPath curvature_at);

  /// nabla^t X = (1-t) nabla^0 X + t nabla^1 X.
  static ConnectionFamily from_endpoints(FormMatrix theta, const FormMatrix& nabla0_x, const FormMatrix& nabla1_x,
                                         MatrixPath curvature_at);

  const FormMatrix& theta() const noexcept { return theta_; }
  FormMatrix nabla_x_at(double t) const { return nabla_x_(t); }
  FormMatrix curvature_at(double t) const { return curvature_(t); }
  int size() const noexcept { return theta_.size(); }
  int form_dim() const noexcept { return theta_.form_dim(); }

 private:
  FormMatrix theta_;
  MatrixPath nabla_x_;
  MatrixPath curvature_;
};

/// R_g = R - nabla X.
FormMatrix equivariant_curvature(const FormMatrix& r, const FormMatrix& nabla_x);

/// det^{1/2}((R/2)/tanh(R/2)) = exp Tr f_L(R_g).
Truncated<ExteriorForm> l_form(const FormMatrix& rg, const SeriesOptions& opts = {});
/// det^{1/2}((R/2)/sinh(R/2)).
Truncated<ExteriorForm> a_hat_form(const FormMatrix& rg, const SeriesOptions& opts = {});
/// Str exp(-F_g) with the given +-1 grading.
ExteriorForm chern_form(const FormMatrix& fg, const std::vector<int>& grading);

/// Exact-up-to-series matrix exponential by scaling and squaring.
FormMatrix form_matrix_exp(const FormMatrix& m);

/// exp(Tr f(R_g^t)) ^ Tr[Theta f'(R_g^t)] at a single t.
ExteriorForm transgression_integrand(const AnalyticGerm& f, const ConnectionFamily& fam, double t,
                                     const SeriesOptions& opts = {});
/// Degree-3 integrand E (Tr[Theta f'(nX)] Tr[f'(nX) R] + Tr[(f^[2](nX)*Theta) R]), E = exp Tr f(nX).
ExteriorForm transgression_degree3_integrand(const AnalyticGerm& f, const ConnectionFamily& fam, double t,
                                             const SeriesOptions& opts = {});
/// Degree-3 part of E (1 + Tr[Theta f'(nX)]) Tr[f'(Theta + nX) R].
ExteriorForm transgression_degree3_alt_integrand(const AnalyticGerm& f, const ConnectionFamily& fam, double t,
                                                 const SeriesOptions& opts = {});

/// int_0^1 of the full integrand; all degrees.
ExteriorForm transgression(const AnalyticGerm& f, const ConnectionFamily& fam, const QuadratureSpec& quad = {},
                           const SeriesOptions& opts = {});
/// Pure degree-3 form; f must be even.
ExteriorForm transgression_degree3(const AnalyticGerm& f, const ConnectionFamily& fam,
                                   const QuadratureSpec& quad = {}, const SeriesOptions& opts = {});
ExteriorForm transgression_degree3_alt(const AnalyticGerm& f, const ConnectionFamily& fam,
                                       const QuadratureSpec& quad = {}, const SeriesOptions& opts = {});

/// T beta = T beta_1 ^ beta_2(1) + beta_1(0) ^ T beta_2.
ExteriorForm product_transgression(const ExteriorForm& t_beta1, const ExteriorForm& beta2_at1,
                                   const ExteriorForm& beta1_at0, const ExteriorForm& t_beta2);

}  // namespace equichar
