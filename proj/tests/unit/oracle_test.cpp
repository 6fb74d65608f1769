#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "equichar/oracle.hpp"
#include "test_oracles.hpp"

using namespace equichar;
namespace eqt = equichar::testing;
namespace orc = equichar::oracle;

namespace {

double det4(const orc::Mat4& m) {
  // Laplace expansion along the first row
  auto minor = [&](int c) {
    double s[3][3];
    for (int i = 1; i < 4; ++i)
      for (int j = 0, k = 0; j < 4; ++j)
        if (j != c) s[i - 1][k++] = m[i][j];
    return s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
           s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
  };
  double d = 0.0;
  for (int c = 0; c < 4; ++c) d += (c % 2 ? -1.0 : 1.0) * m[0][c] * minor(c);
  return d;
}

SKRProfile flat_worked() {
  SKRProfile p = eqt::worked_profile();
  p.base_curvature = 0.0;
  return p;
}

}  // namespace

TEST(Oracle, ReducibleConstantQMetric) {
  SKRProfile p;
  p.mode = ProfileMode::reducible;
  p.q_fun = ScalarFunction::polynomial({1.0});
  p.c_bar = 0.0;
  const auto opts = orc::ChartOptions::for_profile(p);
  const orc::Mat4 g = orc::metric_at(p, {-0.2, 0.3, 0.1, -0.4}, opts);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(g[i][j], i == j ? 1.0 : 0.0, 1e-15);
  const auto gam = orc::christoffel_fd(p, {-0.2, 0.3, 0.1, -0.4}, 1e-4, opts);
  for (const auto& m : gam)
    for (const auto& row : m)
      for (double v : row) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Oracle, MetricDeterminantAndFiberNorm) {
  const SKRProfile p = flat_worked();
  const auto opts = orc::ChartOptions::for_profile(p);
  for (double tau : {-0.4, -0.1, 0.0}) {
    const orc::ChartPoint pt{tau, 0.2, 0.5, -0.3};
    const orc::Mat4 g = orc::metric_at(p, pt, opts);
    EXPECT_NEAR(det4(g), std::pow(2 * std::abs(tau - p.c_bar), 2), 1e-12);
    EXPECT_NEAR(g[1][1], derived_functions(p, tau).q, 1e-14);  // g(d_s, d_s) = Q for a = 1
  }
}

TEST(Oracle, ChristoffelSymmetric) {
  const SKRProfile p = flat_worked();
  const auto opts = orc::ChartOptions::for_profile(p);
  const auto gam = orc::christoffel_fd(p, {-0.2, 0.1, 0.4, 0.2}, 1e-4, opts);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(gam[k][i][j], gam[k][j][i], 1e-9);
}

TEST(Oracle, KaehlerAndPregeodesic) {
  const SKRProfile p = flat_worked();
  const auto opts = orc::ChartOptions::for_profile(p);
  const orc::ChartPoint pt{-0.25, 0.3, -0.2, 0.6};
  EXPECT_LT(orc::kahler_defect_fd(p, pt, 1e-4, opts), 1e-6);
  EXPECT_LT(orc::pregeodesic_defect_fd(p, pt, 1e-4, opts), 1e-6);
  // the unit twist is not Kaehler
  EXPECT_GT(orc::kahler_defect_fd(p, pt, 1e-4, {1.0}), 1e-2);
}

TEST(Oracle, CurvatureMatchesClosedComponents) {
  std::mt19937_64 rng(53);
  for (int prof = 0; prof < 5; ++prof) {
    const SKRProfile p = eqt::random_irreducible(rng, true);
    const auto opts = orc::ChartOptions::for_profile(p);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 4; ++i) {
      const orc::ChartPoint pt{p.tau_min * (0.1 + 0.8 * u(rng)), u(rng), u(rng) - 0.5, u(rng) - 0.5};
      const orc::Tensor4 r = orc::riemann_frame_fd(p, pt, 1e-4, opts);
      const CurvatureComponents cc = curvature_components(p, pt.tau);
      const double scale = std::max({std::abs(cc.b), std::abs(cc.c), std::abs(cc.d), std::abs(cc.r)});
      EXPECT_NEAR(r(0, 1, 0, 1), cc.b, 1e-5 * scale);
      EXPECT_NEAR(r(0, 1, 2, 3), cc.c, 1e-5 * scale);
      EXPECT_NEAR(r(2, 3, 2, 3), cc.d, 1e-5 * scale);
      EXPECT_NEAR(r(0, 2, 0, 2), cc.r, 1e-5 * scale);
      EXPECT_NEAR(r(0, 2, 1, 3), cc.r, 1e-5 * scale);
      EXPECT_NEAR(r(1, 2, 0, 3), -cc.r, 1e-5 * scale);
      // exactly three indices in {3, 4}
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int c = 0; c < 4; ++c)
            for (int d = 0; d < 4; ++d)
              if ((a >= 2) + (b >= 2) + (c >= 2) + (d >= 2) == 3) EXPECT_LT(std::abs(r(a, b, c, d)), 1e-6);
    }
  }
}

TEST(Oracle, ConnectionForms) {
  const SKRProfile p = flat_worked();
  const auto opts = orc::ChartOptions::for_profile(p);
  const orc::ChartPoint pt{-0.3, 0.0, 0.2, 0.1};
  const auto nu = orc::connection_forms_fd(p, pt, 1e-4, opts);
  const DerivedValues v = derived_functions(p, pt.tau);
  const double k = v.phi / std::sqrt(v.q), l = v.psi / std::sqrt(v.q);
  EXPECT_NEAR(nu[0][2][1], k, 1e-6);
  EXPECT_NEAR(nu[0][3][0], k, 1e-6);
  EXPECT_NEAR(nu[1][2][0], -k, 1e-6);
  EXPECT_NEAR(nu[1][3][1], k, 1e-6);
  EXPECT_NEAR(nu[2][3][2], l, 1e-6);
}

TEST(Oracle, VolumeReduction) {
  const SKRProfile p = flat_worked();
  const auto opts = orc::ChartOptions::for_profile(p);
  auto f = [](double tau) { return std::cos(3 * tau) + tau * tau; };
  const double chart = orc::chart_volume_integral(p, f, p.tau_min, 12, opts);
  // reduced integral by composite Simpson, independent of the library rules
  const int n = 2000;
  const double h = -p.tau_min / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double tau = p.tau_min + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * f(tau) * p.base_factor(tau);
  }
  const double reduced = s * h / 3 * p.fiber_period * p.base_area;
  EXPECT_NEAR(chart, reduced, 1e-4 * std::abs(reduced));
}
