#include "equichar/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "equichar/charforms.hpp"
#include "equichar/errors.hpp"

namespace equichar::oracle {
namespace {

using M4 = Eigen::Matrix4d;
using V4 = Eigen::Vector4d;

enum Coord { kTau = 0, kS = 1, kX = 2, kY = 3 };

M4 to_eigen(const Mat4& m) {
  M4 out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out(i, j) = m[i][j];
  }
  return out;
}

Mat4 from_eigen(const M4& m) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out[i][j] = m(i, j);
  }
  return out;
}

ChartPoint shifted(ChartPoint pt, int coord, double h) {
  switch (coord) {
    case kTau: pt.tau += h; break;
    case kS: pt.s += h; break;
    case kX: pt.x += h; break;
    default: pt.y += h; break;
  }
  return pt;
}

double q_at(const SKRProfile& p, double tau) { return derived_functions(p, tau).q; }

M4 metric(const SKRProfile& p, const ChartPoint& pt, const ChartOptions& opts) {
  const double q = q_at(p, pt.tau);
  const double hh = p.base_factor(pt.tau);
  const double kx = opts.twist * pt.x;
  M4 g = M4::Zero();
  g(kTau, kTau) = 1.0 / q;
  g(kS, kS) = q;
  g(kS, kY) = g(kY, kS) = q * kx;
  g(kY, kY) = q * kx * kx + hh;
  g(kX, kX) = hh;
  return g;
}

// d_c g_ab by central differences
std::array<M4, 4> metric_gradient(const SKRProfile& p, const ChartPoint& pt, double h, const ChartOptions& opts) {
  std::array<M4, 4> dg;
  for (int c = 0; c < 4; ++c) {
    dg[c] = (metric(p, shifted(pt, c, h), opts) - metric(p, shifted(pt, c, -h), opts)) / (2.0 * h);
  }
  return dg;
}

M4 frame_matrix(const SKRProfile& p, const ChartPoint& pt, const ChartOptions& opts) {
  // columns are e_1..e_4
  const double q = q_at(p, pt.tau);
  const double hh = p.base_factor(pt.tau);
  const M4 j = to_eigen(complex_structure_at(p, pt, opts));
  M4 e = M4::Zero();
  e(kX, 0) = 1.0 / std::sqrt(hh);
  e.col(1) = j * e.col(0);
  e(kS, 2) = 1.0 / std::sqrt(q);
  e(kTau, 3) = -std::sqrt(q);  // -v/sqrt(Q), v = Q d_tau
  return e;
}

}  // namespace

Mat4 metric_at(const SKRProfile& p, const ChartPoint& pt, const ChartOptions& opts) {
  const M4 g = metric(p, pt, opts);
  Eigen::LLT<M4> llt(g);
  if (llt.info() != Eigen::Success) throw NumericalError("chart metric is not positive definite");
  return from_eigen(g);
}

Mat4 kahler_form_at(const SKRProfile& p, const ChartPoint& pt, const ChartOptions& opts) {
  // omega = d tau ^ theta / a + (+-2(tau - c_bar) or 1) dx ^ dy
  M4 w = M4::Zero();
  w(kTau, kS) = 1.0;
  w(kTau, kY) = opts.twist * pt.x;
  w(kX, kY) = p.irreducible() ? 2.0 * (pt.tau - p.c_bar) : 1.0;
  return from_eigen(w - M4(w.transpose()));
}

Mat4 complex_structure_at(const SKRProfile& p, const ChartPoint& pt, const ChartOptions& opts) {
  const M4 g = metric(p, pt, opts);
  const M4 w = to_eigen(kahler_form_at(p, pt, opts));
  return from_eigen(-g.inverse() * w);
}

Christoffel christoffel_fd(const SKRProfile& p, const ChartPoint& pt, double h, const ChartOptions& opts) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const M4 g = metric(p, pt, opts);
  Eigen::FullPivLU<M4> lu(g);
  if (!lu.isInvertible()) throw NumericalError("singular chart metric");
  const M4 ginv = lu.inverse();
  const auto dg = metric_gradient(p, pt, h, opts);
  Christoffel gamma{};
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        double s = 0.0;
        for (int l = 0; l < 4; ++l) s += ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        gamma[k][i][j] = 0.5 * s;
      }
    }
  }
  return gamma;
}

Mat4 frame_at(const SKRProfile& p, const ChartPoint& pt, const ChartOptions& opts) {
  return from_eigen(M4(frame_matrix(p, pt, opts).transpose()));
}

Tensor4 riemann_frame_fd(const SKRProfile& p, const ChartPoint& pt, double h, const ChartOptions& opts) {
  const Christoffel gam = christoffel_fd(p, pt, h, opts);
  std::array<Christoffel, 4> dgam;  // dgam[a] = d_a Gamma
  for (int a = 0; a < 4; ++a) {
    const Christoffel plus = christoffel_fd(p, shifted(pt, a, h), h, opts);
    const Christoffel minus = christoffel_fd(p, shifted(pt, a, -h), h, opts);
    for (int k = 0; k < 4; ++k) {
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) dgam[a][k][i][j] = (plus[k][i][j] - minus[k][i][j]) / (2.0 * h);
      }
    }
  }
  // R(d_a, d_b) d_c = R^d_{cab} d_d
  Tensor4 rup;
  for (int d = 0; d < 4; ++d) {
    for (int c = 0; c < 4; ++c) {
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          double s = dgam[a][d][b][c] - dgam[b][d][a][c];
          for (int e = 0; e < 4; ++e) s += gam[d][a][e] * gam[e][b][c] - gam[d][b][e] * gam[e][a][c];
          rup(d, c, a, b) = s;
        }
      }
    }
  }
  const M4 g = metric(p, pt, opts);
  // lowered: Rm(d_a, d_b, d_c, d_d) = g(R(d_a, d_b) d_c, d_d)
  Tensor4 low;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 4; ++d) {
          double s = 0.0;
          for (int e = 0; e < 4; ++e) s += g(d, e) * rup(e, c, a, b);
          low(a, b, c, d) = s;
        }
      }
    }
  }
  const M4 e = frame_matrix(p, pt, opts);
  // contract one slot at a time
  Tensor4 t1, t2, t3, out;
  for (int i = 0; i < 4; ++i)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double s = 0.0;
          for (int a = 0; a < 4; ++a) s += e(a, i) * low(a, b, c, d);
          t1(i, b, c, d) = s;
        }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double s = 0.0;
          for (int b = 0; b < 4; ++b) s += e(b, j) * t1(i, b, c, d);
          t2(i, j, c, d) = s;
        }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l)
        for (int d = 0; d < 4; ++d) {
          double s = 0.0;
          for (int c = 0; c < 4; ++c) s += e(c, l) * t2(i, j, c, d);
          t3(i, j, l, d) = s;
        }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l)
        for (int k = 0; k < 4; ++k) {
          double s = 0.0;
          for (int d = 0; d < 4; ++d) s += e(d, k) * t3(i, j, l, d);
          out(i, j, k, l) = s;  // g(R(e_i, e_j) e_l, e_k)
        }
  return out;
}

std::array<Mat4, 4> connection_forms_fd(const SKRProfile& p, const ChartPoint& pt, double h,
                                        const ChartOptions& opts) {
  const Christoffel gam = christoffel_fd(p, pt, h, opts);
  const M4 g = metric(p, pt, opts);
  const M4 e = frame_matrix(p, pt, opts);
  std::array<M4, 4> de;  // de[a] = d_a of the frame components
  for (int a = 0; a < 4; ++a) {
    de[a] = (frame_matrix(p, shifted(pt, a, h), opts) - frame_matrix(p, shifted(pt, a, -h), opts)) / (2.0 * h);
  }
  std::array<Mat4, 4> nu{};
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < 4; ++i) {
      // nabla_{e_k} e_i
      V4 cov = V4::Zero();
      for (int a = 0; a < 4; ++a) {
        const double xa = e(a, k);
        if (xa == 0.0) continue;
        for (int b = 0; b < 4; ++b) {
          double s = de[a](b, i);
          for (int c = 0; c < 4; ++c) s += gam[b][a][c] * e(c, i);
          cov(b) += xa * s;
        }
      }
      for (int j = 0; j < 4; ++j) nu[i][j][k] = cov.dot(g * e.col(j));
    }
  }
  return nu;
}

double kahler_defect_fd(const SKRProfile& p, const ChartPoint& pt, double h, const ChartOptions& opts) {
  const Christoffel gam = christoffel_fd(p, pt, h, opts);
  const M4 j = to_eigen(complex_structure_at(p, pt, opts));
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    const M4 dj = (to_eigen(complex_structure_at(p, shifted(pt, a, h), opts)) -
                   to_eigen(complex_structure_at(p, shifted(pt, a, -h), opts))) /
                  (2.0 * h);
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        double s = dj(b, c);
        for (int d = 0; d < 4; ++d) s += gam[b][a][d] * j(d, c) - gam[d][a][c] * j(b, d);
        worst = std::max(worst, std::abs(s));
      }
    }
  }
  return worst;
}

double pregeodesic_defect_fd(const SKRProfile& p, const ChartPoint& pt, double h, const ChartOptions& opts) {
  const Christoffel gam = christoffel_fd(p, pt, h, opts);
  const M4 g = metric(p, pt, opts);
  auto v_at = [&](const ChartPoint& x) {
    V4 v = V4::Zero();
    v(kTau) = q_at(p, x.tau);
    return v;
  };
  const V4 v = v_at(pt);
  V4 cov = V4::Zero();
  for (int a = 0; a < 4; ++a) {
    if (v(a) == 0.0) continue;
    const V4 dv = (v_at(shifted(pt, a, h)) - v_at(shifted(pt, a, -h))) / (2.0 * h);
    for (int b = 0; b < 4; ++b) {
      double s = dv(b);
      for (int c = 0; c < 4; ++c) s += gam[b][a][c] * v(c);
      cov(b) += v(a) * s;
    }
  }
  const double vv = v.dot(g * v);
  const V4 perp = cov - (cov.dot(g * v) / vv) * v;
  return std::sqrt(std::max(0.0, perp.dot(g * perp))) / vv;
}

double chart_volume_integral(const SKRProfile& p, const std::function<double(double)>& integrand, double tau_lo,
                             int nodes, const ChartOptions& opts) {
  const QuadratureRule& rule = gauss_legendre_unit(nodes);
  const double side = std::sqrt(p.base_area);
  const double tau_len = 0.0 - tau_lo;
  double total = 0.0;
  for (std::size_t it = 0; it < rule.nodes.size(); ++it) {
    const double tau = tau_lo + tau_len * rule.nodes[it];
    const double f = integrand(tau);
    double inner = 0.0;
    for (std::size_t is = 0; is < rule.nodes.size(); ++is) {
      for (std::size_t ix = 0; ix < rule.nodes.size(); ++ix) {
        for (std::size_t iy = 0; iy < rule.nodes.size(); ++iy) {
          const ChartPoint pt{tau, p.fiber_period * rule.nodes[is], side * rule.nodes[ix], side * rule.nodes[iy]};
          const double w = rule.weights[is] * rule.weights[ix] * rule.weights[iy];
          inner += w * std::sqrt(metric(p, pt, opts).determinant());
        }
      }
    }
    total += rule.weights[it] * f * inner;
  }
  return total * tau_len * p.fiber_period * side * side;
}

double chart_boundary_volume(const SKRProfile& p, int nodes, const ChartOptions& opts) {
  const QuadratureRule& rule = gauss_legendre_unit(nodes);
  const double side = std::sqrt(p.base_area);
  double total = 0.0;
  for (std::size_t is = 0; is < rule.nodes.size(); ++is) {
    for (std::size_t ix = 0; ix < rule.nodes.size(); ++ix) {
      for (std::size_t iy = 0; iy < rule.nodes.size(); ++iy) {
        const ChartPoint pt{0.0, p.fiber_period * rule.nodes[is], side * rule.nodes[ix], side * rule.nodes[iy]};
        const M4 g = metric(p, pt, opts);
        const Eigen::Matrix3d induced = g.bottomRightCorner<3, 3>();
        total += rule.weights[is] * rule.weights[ix] * rule.weights[iy] * std::sqrt(induced.determinant());
      }
    }
  }
  return total * p.fiber_period * side * side;
}

}  // namespace equichar::oracle
