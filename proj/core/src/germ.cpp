#include "equichar/germ.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "equichar/errors.hpp"

namespace equichar {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Below this |x| the evaluators use the stored Taylor sum; the series
// converge geometrically there for every germ in this file.
constexpr double kTaylorSwitch = 1.0;

// zeta(2n) for n >= 1: partial sum to N-1 plus the Euler-Maclaurin tail
// N^{1-s}/(s-1) + N^{-s}/2 + sum_j B_2j/(2j)! s(s+1)..(s+2j-2) N^{1-s-2j}.
double zeta_even_uncached(int n) {
  const double s = 2.0 * n;
  if (n >= 30) return 1.0 + std::pow(2.0, -s) + std::pow(3.0, -s);
  constexpr int kN = 50;
  double sum = 0.0;
  for (int k = kN - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double big_n = kN;
  double tail = std::pow(big_n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(big_n, -s);
  constexpr double kB2jOverFact[] = {1.0 / 12, -1.0 / 720, 1.0 / 30240, -1.0 / 1209600, 1.0 / 47900160};
  double rising = s;  // s (s+1) ... (s+2j-2)
  for (int j = 1; j <= 5; ++j) {
    tail += kB2jOverFact[j - 1] * rising * std::pow(big_n, 1.0 - s - 2.0 * j);
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
  }
  return tail + sum;
}

double zeta_even(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(30, 0.0);
    for (int k = 1; k < 30; ++k) t[k] = zeta_even_uncached(k);
    return t;
  }();
  return n < 30 ? table[n] : zeta_even_uncached(n);
}

const AnalyticGerm& cached_l_genus() {
  static const AnalyticGerm g = l_genus_germ();
  return g;
}

// B_{2n} / (2n)! = (-1)^{n+1} 2 zeta(2n) / (2 pi)^{2n}, n >= 1.
double bernoulli_over_factorial(int n) {
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;
  return sign * 2.0 * zeta_even(n) * std::pow(kTwoPi, -2.0 * n);
}

bool near_nonzero_multiple_of(double x, double period) {
  const double k = std::round(x / period);
  return k != 0.0 && std::abs(x - k * period) < 1e-9;
}

}  // namespace

AnalyticGerm::AnalyticGerm(std::string name, std::vector<double> taylor, bool even, double radius,
                           ImagEvaluator f, ImagEvaluator d1, ImagEvaluator d2)
    : name_(std::move(name)),
      taylor_(std::move(taylor)),
      even_(even),
      radius_(radius),
      f_(std::move(f)),
      d1_(std::move(d1)),
      d2_(std::move(d2)) {
  if (taylor_.empty()) throw std::invalid_argument("germ needs at least one Taylor coefficient");
  if (even_) {
    for (std::size_t k = 1; k < taylor_.size(); k += 2) {
      if (taylor_[k] != 0.0) throw std::invalid_argument("even germ with non-zero odd coefficient");
    }
  }
}

bool AnalyticGerm::odd() const {
  for (std::size_t k = 0; k < taylor_.size(); k += 2) {
    if (taylor_[k] != 0.0) return false;
  }
  return true;
}

double AnalyticGerm::derivative_at_zero(int k) const {
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) fact *= j;
  return coeff(k) * fact;
}

cplx AnalyticGerm::taylor_sum(cplx z, int derivative) const {
  cplx sum = 0.0;
  // Horner in z over k >= derivative with falling-factorial weights
  for (int k = max_order(); k >= derivative; --k) {
    double w = 1.0;
    for (int j = 0; j < derivative; ++j) w *= (k - j);
    sum = sum * z + w * taylor_[k];
  }
  return sum;
}

cplx AnalyticGerm::eval_i(double x) const {
  if (f_ && std::abs(x) >= kTaylorSwitch) return f_(x);
  return taylor_sum(cplx(0.0, x), 0);
}

cplx AnalyticGerm::eval_i_d1(double x) const {
  if (d1_ && std::abs(x) >= kTaylorSwitch) return d1_(x);
  return taylor_sum(cplx(0.0, x), 1);
}

cplx AnalyticGerm::eval_i_d2(double x) const {
  if (d2_ && std::abs(x) >= kTaylorSwitch) return d2_(x);
  return taylor_sum(cplx(0.0, x), 2);
}

AnalyticGerm AnalyticGerm::derivative() const {
  std::vector<double> shifted(std::max<std::size_t>(taylor_.size() - 1, 1), 0.0);
  for (std::size_t k = 1; k < taylor_.size(); ++k) shifted[k - 1] = static_cast<double>(k) * taylor_[k];
  // Derivative of an even germ is odd; odd germs become even.
  const bool shifted_even = odd();
  return AnalyticGerm(name_ + "'", std::move(shifted), shifted_even, radius_, d1_, d2_, {});
}

std::vector<double> bernoulli_numbers(int n) {
  std::vector<double> b(n + 1, 0.0);
  b[0] = 1.0;
  if (n >= 1) b[1] = -0.5;
  double fact = 1.0;
  for (int m = 1; m <= n; ++m) {
    fact *= m;
    if (m % 2 == 0) b[m] = bernoulli_over_factorial(m / 2) * fact;
  }
  return b;
}

AnalyticGerm l_genus_germ(int max_order) {
  std::vector<double> c(max_order + 1, 0.0);
  c[0] = 1.0;
  for (int n = 1; 2 * n <= max_order; ++n) c[2 * n] = bernoulli_over_factorial(n);
  return AnalyticGerm(
      "L", std::move(c), true, kTwoPi, [](double x) { return cplx(lbar(x), 0.0); },
      [](double x) { return cplx(0.0, -lbar_d1(x)); }, [](double x) { return cplx(-lbar_d2(x), 0.0); });
}

AnalyticGerm l_log_germ(int max_order) {
  // f'(x) = (1/x - 1/sinh x)/2, so c_{2n} = (2^{2n-1} - 1) B_{2n} / (2n (2n)!)
  std::vector<double> c(max_order + 1, 0.0);
  for (int n = 1; 2 * n <= max_order; ++n) {
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    const double weight = 0.5 * std::pow(kPi, -2.0 * n) - std::pow(kTwoPi, -2.0 * n);
    c[2 * n] = sign * 2.0 * zeta_even(n) * weight / (2.0 * n);
  }
  return AnalyticGerm(
      "log L / 2", std::move(c), true, kPi, [](double x) { return 0.5 * std::log(cplx(lbar(x), 0.0)); },
      [](double x) { return cplx(0.0, 0.5 * (1.0 / std::sin(x) - 1.0 / x)); },
      [](double x) {
        const double s = std::sin(x);
        return cplx(0.5 * (1.0 / (x * x) - std::cos(x) / (s * s)), 0.0);
      });
}

AnalyticGerm a_hat_genus_germ(int max_order) {
  std::vector<double> c(max_order + 1, 0.0);
  c[0] = 1.0;
  for (int n = 1; 2 * n <= max_order; ++n) {
    // (2^{1-2n} - 1) B_{2n} / (2n)!
    c[2 * n] = (std::pow(2.0, 1.0 - 2.0 * n) - 1.0) * bernoulli_over_factorial(n);
  }
  return AnalyticGerm("A-hat", std::move(c), true, kTwoPi, [](double x) {
    if (near_nonzero_multiple_of(x, kTwoPi)) throw DomainError("A-hat germ evaluated at a pole", x);
    return cplx(0.5 * x / std::sin(0.5 * x), 0.0);
  });
}

AnalyticGerm a_hat_log_germ(int max_order) {
  // f'(x) = (1/x - coth(x/2)/2)/2, so c_{2n} = -B_{2n} / (4n (2n)!)
  std::vector<double> c(max_order + 1, 0.0);
  for (int n = 1; 2 * n <= max_order; ++n) c[2 * n] = -bernoulli_over_factorial(n) / (4.0 * n);
  return AnalyticGerm(
      "log A-hat / 2", std::move(c), true, kTwoPi,
      [](double x) { return 0.5 * std::log(cplx(0.5 * x / std::sin(0.5 * x), 0.0)); },
      [](double x) { return cplx(0.0, 0.5 * (0.5 / std::tan(0.5 * x) - 1.0 / x)); },
      [](double x) {
        const double s = std::sin(0.5 * x);
        return cplx(0.5 * (1.0 / (x * x) - 0.25 / (s * s)), 0.0);
      });
}

AnalyticGerm exp_germ(int max_order) {
  std::vector<double> c(max_order + 1, 0.0);
  double term = 1.0;
  for (int k = 0; k <= max_order; ++k) {
    c[k] = term;
    term /= (k + 1);
  }
  auto e = [](double x) { return std::exp(cplx(0.0, x)); };
  return AnalyticGerm("exp", std::move(c), false, std::numeric_limits<double>::infinity(), e, e, e);
}

double lbar(double x) {
  if (near_nonzero_multiple_of(x, kTwoPi)) throw DomainError("x/(2 tan(x/2)) evaluated at a pole", x);
  if (std::abs(x) < kTaylorSwitch) return cached_l_genus().taylor_sum(cplx(0.0, x)).real();
  return 0.5 * x / std::tan(0.5 * x);
}

double lbar_d1(double x) {
  if (near_nonzero_multiple_of(x, kTwoPi)) throw DomainError("x/(2 tan(x/2)) evaluated at a pole", x);
  // d/dx f(ix) = i f'(ix)
  if (std::abs(x) < kTaylorSwitch) return (cplx(0.0, 1.0) * cached_l_genus().taylor_sum(cplx(0.0, x), 1)).real();
  const double s = std::sin(0.5 * x);
  return 0.5 / std::tan(0.5 * x) - 0.25 * x / (s * s);
}

double lbar_d2(double x) {
  if (near_nonzero_multiple_of(x, kTwoPi)) throw DomainError("x/(2 tan(x/2)) evaluated at a pole", x);
  if (std::abs(x) < kTaylorSwitch) return -cached_l_genus().taylor_sum(cplx(0.0, x), 2).real();
  const double s = std::sin(0.5 * x);
  return -0.5 / (s * s) + 0.25 * x * std::cos(0.5 * x) / (s * s * s);
}

}  // namespace equichar
