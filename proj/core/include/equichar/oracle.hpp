#pragma once

#include <array>
#include <functional>

#include "equichar/skr.hpp"

namespace equichar::oracle {

/// Coordinates (tau, s, x, y): tau the potential, s the fiber angle, (x, y)
/// isothermal coordinates on a flat base.
struct ChartPoint {
  double tau = 0, s = 0, x = 0, y = 0;
};

/// theta = a (ds + twist * x dy). The metric is Kaehler only for
/// twist = 2 (irreducible); reducible profiles use twist = 0.
struct ChartOptions {
  double twist = 2.0;
  static ChartOptions for_profile(const SKRProfile& p) { return {p.irreducible() ? 2.0 : 0.0}; }
};

using Mat4 = std::array<std::array<double, 4>, 4>;
/// gamma[k][i][j] = Gamma^k_{ij}
using Christoffel = std::array<Mat4, 4>;

/// All-index tensor, 0-based.
struct Tensor4 {
  double v[4][4][4][4] = {};
  double& operator()(int i, int j, int k, int l) { return v[i][j][k][l]; }
  double operator()(int i, int j, int k, int l) const { return v[i][j][k][l]; }
};

/// g_{ab} at pt. Throws ProfileError for Q <= 0 and NumericalError when the
/// matrix is not positive definite.
Mat4 metric_at(const SKRProfile& p, const ChartPoint& pt, const ChartOptions& opts);

/// Kaehler form components omega_{ab}.
Mat4 kahler_form_at(const SKRProfile& p, const ChartPoint& pt, const ChartOptions& opts);
/// J^a_b with omega(X, Y) = g(JX, Y).
Mat4 complex_structure_at(const SKRProfile& p, const ChartPoint& pt, const ChartOptions& opts);

/// Central differences of the metric with step h.
Christoffel christoffel_fd(const SKRProfile& p, const ChartPoint& pt, double h, const ChartOptions& opts);

/// frame[i][a]: coordinate components of e_i, with e1 = d_x/|d_x|,
/// e2 = J e1, e3 = u/sqrt(Q), e4 = -v/sqrt(Q).
Mat4 frame_at(const SKRProfile& p, const ChartPoint& pt, const ChartOptions& opts);

/// R_{ijkl} = g(R(e_i, e_j) e_l, e_k) with R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y],
/// so that R_{ijij} is the sectional curvature of span{e_i, e_j}.
Tensor4 riemann_frame_fd(const SKRProfile& p, const ChartPoint& pt, double h, const ChartOptions& opts);

/// nu[i][j][k] = g(nabla_{e_k} e_i, e_j).
std::array<Mat4, 4> connection_forms_fd(const SKRProfile& p, const ChartPoint& pt, double h,
                                        const ChartOptions& opts);

/// max |(nabla_a J)^b_c| over coordinate components.
double kahler_defect_fd(const SKRProfile& p, const ChartPoint& pt, double h, const ChartOptions& opts);

/// |nabla_v v - proj_v(nabla_v v)| / |v|^2 with v = grad tau.
double pregeodesic_defect_fd(const SKRProfile& p, const ChartPoint& pt, double h, const ChartOptions& opts);

/// int over tau in [tau_lo, 0], s in [0, fiber_period], (x, y) in a square of
/// area base_area, of F(tau) sqrt(det g), by tensor Gauss-Legendre.
double chart_volume_integral(const SKRProfile& p, const std::function<double(double)>& integrand, double tau_lo,
                             int nodes, const ChartOptions& opts);

/// 3-volume of {tau = 0} from the induced chart metric.
double chart_boundary_volume(const SKRProfile& p, int nodes, const ChartOptions& opts);

}  // namespace equichar::oracle
