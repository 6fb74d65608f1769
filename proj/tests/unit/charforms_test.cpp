#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "equichar/charforms.hpp"
#include "equichar/skr.hpp"
#include "test_oracles.hpp"

using namespace equichar;
namespace eqt = equichar::testing;

namespace {

ExteriorForm e(int dim, std::initializer_list<int> idx, double c = 1.0) { return ExteriorForm::basis(dim, idx, c); }

FormMatrix random_antisym(std::mt19937_64& rng, int dim, int degree, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  FormMatrix m(4, dim);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      ExteriorForm f(dim);
      for (std::uint32_t mask = 0; mask < (1u << dim); ++mask)
        if (std::popcount(mask) == degree) f.set(MultiIndex::from_mask(mask), u(rng));
      m.set_antisymmetric(i, j, f);
    }
  return m;
}

ConnectionFamily random_family(std::mt19937_64& rng) {
  const FormMatrix theta = random_antisym(rng, 3, 1, 0.5);
  const FormMatrix x0 = random_antisym(rng, 3, 0, 0.8), x1 = random_antisym(rng, 3, 0, 0.8);
  const FormMatrix r0 = random_antisym(rng, 3, 2), r1 = random_antisym(rng, 3, 2);
  return ConnectionFamily::from_endpoints(theta, x0, x1, [r0, r1](double t) { return r0 + t * r1; });
}

}  // namespace

TEST(Quadrature, GaussLegendreExactness) {
  for (int n : {2, 5, 32, 64}) {
    const QuadratureRule& r = gauss_legendre_unit(n);
    double wsum = 0.0, moment = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      wsum += r.weights[i];
      moment += r.weights[i] * std::pow(r.nodes[i], 2 * n - 1);
    }
    EXPECT_NEAR(wsum, 1.0, 1e-14);
    EXPECT_NEAR(moment, 1.0 / (2 * n), 1e-14);
  }
  EXPECT_THROW(gauss_legendre_unit(1), std::invalid_argument);
}

TEST(Charforms, EquivariantCurvatureShapes) {
  EXPECT_TRUE(equivariant_curvature(FormMatrix(4, 4), FormMatrix(4, 4)).max_abs() == 0.0);
  // reducible: block diagonal
  SKRProfile p;
  p.mode = ProfileMode::reducible;
  p.q_fun = ScalarFunction::polynomial({1.0, 0.5, 0.2});
  p.c_bar = 0.0;
  p.base_curvature = 1.0;
  const FormMatrix rg = equivariant_curvature_at(p, -0.2);
  for (int i : {0, 1})
    for (int j : {2, 3}) EXPECT_TRUE(rg(i, j).is_zero());
  // irreducible worked profile: (1,2) entry -phi + b e12 + c e34
  const FormMatrix w = equivariant_curvature_at(eqt::worked_profile(), 0.0);
  EXPECT_DOUBLE_EQ(w(0, 1).scalar(), -0.5);
  EXPECT_DOUBLE_EQ(w(0, 1).coeff({1, 2}), -2.0);
  EXPECT_DOUBLE_EQ(w(0, 1).coeff({3, 4}), -0.25);
  EXPECT_DOUBLE_EQ(w(2, 3).scalar(), -0.75);
  EXPECT_DOUBLE_EQ(w(0, 2).coeff({1, 3}), -0.125);
}

TEST(Charforms, LFormTrivial) {
  EXPECT_DOUBLE_EQ(l_form(FormMatrix(4, 4)).value.scalar(), 1.0);
  EXPECT_DOUBLE_EQ(a_hat_form(FormMatrix(4, 4)).value.scalar(), 1.0);
}

TEST(Charforms, LFormAgainstTwoEigenvalueOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const SKRProfile p = eqt::random_irreducible(rng);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double tau = p.tau_min * u(rng);
    const FormMatrix rg = equivariant_curvature_at(p, tau);
    const ExteriorForm got = l_form(rg, {30}).value;
    const ExteriorForm ref = eqt::l_form_two_eigen(rg);
    EXPECT_LE((got - ref).max_abs(), 1e-10 * std::max(1.0, ref.max_abs())) << trial;
  }
}

TEST(Charforms, LFormDegreeZeroFactorises) {
  const SKRProfile p = eqt::worked_profile();
  const DerivedValues v = derived_functions(p, 0.0);
  const ExteriorForm l = l_form_generic(p, 0.0).value;
  EXPECT_NEAR(l.scalar(), eqt::h_genus(v.phi) * eqt::h_genus(v.psi), 1e-12);
}

TEST(Charforms, ClassicalLPolynomialAtXZero) {
  // X = 0: only f(x) = x^2/24 + ... contributes in degree 4, and Tr f(R) has
  // no degree-2 part, so L_[4] = Tr(R^2)/24.
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const FormMatrix r = random_antisym(rng, 4, 2);
    const ExteriorForm l = l_form(r).value;
    const ExteriorForm expect = (1.0 / 24) * trace(r * r);
    EXPECT_LE((l.degree_component(4) - expect.degree_component(4)).max_abs(), 1e-15);
    EXPECT_TRUE(l.degree_component(2).is_zero());
  }
}

TEST(Charforms, AHatDegreeZeroOnRotation) {
  const double x = 1.1;
  const ExteriorForm a = a_hat_form(nabla_x_matrix(x, 0.0)).value;
  EXPECT_NEAR(a.scalar(), (x / 2) / std::sin(x / 2), 1e-13);
}

TEST(Charforms, ChernForm) {
  EXPECT_NEAR(chern_form(FormMatrix(3, 4), {1, 1, 1}).scalar(), 3.0, 1e-15);
  EXPECT_NEAR(chern_form(FormMatrix(2, 4), {1, -1}).max_abs(), 0.0, 1e-15);
  FormMatrix f(1, 4);
  f(0, 0) = e(4, {1, 2}, 0.4);
  const ExteriorForm c = chern_form(f, {1});
  EXPECT_NEAR(c.scalar(), 1.0, 1e-15);
  EXPECT_NEAR(c.coeff({1, 2}), -0.4, 1e-15);
  EXPECT_NEAR(c.coeff({1, 2, 3, 4}), 0.0, 1e-15);
  // degree-0 part handled exactly: rank 1, F = a + b e12 -> e^{-a}(1 - b e12)
  f(0, 0) = ExteriorForm::constant(4, 0.7) + e(4, {1, 2}, 0.4);
  const ExteriorForm c2 = chern_form(f, {1});
  EXPECT_NEAR(c2.scalar(), std::exp(-0.7), 1e-14);
  EXPECT_NEAR(c2.coeff({1, 2}), -0.4 * std::exp(-0.7), 1e-14);
}

TEST(Charforms, TransgressionTrivialCases) {
  std::mt19937_64 rng(23);
  const FormMatrix x = random_antisym(rng, 3, 0, 0.7);
  const FormMatrix r = random_antisym(rng, 3, 2);
  const ConnectionFamily zero_theta = ConnectionFamily::from_endpoints(FormMatrix(4, 3), x, x, [r](double) { return r; });
  const AnalyticGerm f = l_log_germ();
  EXPECT_LE(transgression(f, zero_theta).max_abs(), 1e-300);
  EXPECT_LE(transgression_degree3_alt(f, zero_theta).max_abs(), 1e-300);

  // constant family: quadrature returns the integrand
  const ConnectionFamily c = ConnectionFamily::from_endpoints(random_antisym(rng, 3, 1), x, x, [r](double) { return r; });
  EXPECT_LE((transgression(f, c) - transgression_integrand(f, c, 0.37)).max_abs(), 1e-14);
}

TEST(Charforms, TransgressionAtXZero) {
  std::mt19937_64 rng(29);
  const FormMatrix theta = random_antisym(rng, 3, 1);
  const FormMatrix r0 = random_antisym(rng, 3, 2), r1 = random_antisym(rng, 3, 2);
  const FormMatrix zero(4, 3);
  const auto path = [r0, r1](double t) { return r0 + t * r1; };
  const ConnectionFamily fam = ConnectionFamily::from_endpoints(theta, zero, zero, path);
  const AnalyticGerm f = l_log_germ();
  // f''(0) int Tr[Theta R^t] = (1/12) Tr[Theta (R0 + R1/2)]
  const ExteriorForm expect = (1.0 / 12) * trace(theta * (r0 + 0.5 * r1));
  EXPECT_LE((transgression_degree3(f, fam) - expect).max_abs(), 1e-15);
}

TEST(Charforms, Degree3RoutesAgreeOnRandomFamilies) {
  std::mt19937_64 rng(31);
  const AnalyticGerm f = l_log_germ();
  for (int trial = 0; trial < 10; ++trial) {
    const ConnectionFamily fam = random_family(rng);
    const ExteriorForm a = transgression_degree3(f, fam);
    EXPECT_LE((a - transgression_degree3_alt(f, fam)).max_abs(), 1e-10);
    EXPECT_LE((a - transgression(f, fam).degree_component(3)).max_abs(), 1e-10);
    EXPECT_TRUE(a.is_homogeneous(3));
  }
}

TEST(Charforms, ProductTransgression) {
  const ExteriorForm one = ExteriorForm::constant(3, 1.0);
  const ExteriorForm zero(3);
  const ExteriorForm t1 = e(3, {1}, 0.3) + e(3, {1, 2, 3}, 0.2);
  EXPECT_EQ(product_transgression(t1, one, one, zero), t1);
  EXPECT_EQ(product_transgression(zero, one, one, t1), t1);
  const ExteriorForm b2 = one + e(3, {2, 3}, 0.5), b1 = one + e(3, {1, 2}, -0.25), t2 = e(3, {3}, 0.7);
  const ExteriorForm expect = wedge(t1, b2) + wedge(b1, t2);
  EXPECT_LE((product_transgression(t1, b2, b1, t2) - expect).max_abs(), 1e-16);
}

TEST(Charforms, FamilyValidation) {
  FormMatrix bad(4, 3);
  bad(0, 1) = e(3, {1});
  EXPECT_THROW(ConnectionFamily(bad, [](double) { return FormMatrix(4, 3); }, [](double) { return FormMatrix(4, 3); }),
               std::invalid_argument);
}
