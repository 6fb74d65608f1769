#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace equichar {

/// Germ of a real-analytic function at 0, carried as Taylor coefficients
/// c_k = f^(k)(0)/k! together with optional exact evaluators on the
/// imaginary axis. Evaluators fall back to the Taylor sum when absent.
class AnalyticGerm {
 public:
  using ImagEvaluator = std::function<std::complex<double>(double)>;

  AnalyticGerm() = default;
  AnalyticGerm(std::string name, std::vector<double> taylor, bool even, double radius,
               ImagEvaluator f = {}, ImagEvaluator d1 = {}, ImagEvaluator d2 = {});

  const std::string& name() const noexcept { return name_; }
  const std::vector<double>& taylor() const noexcept { return taylor_; }
  /// c_k, zero beyond the stored order.
  double coeff(int k) const { return k < static_cast<int>(taylor_.size()) ? taylor_[k] : 0.0; }
  int max_order() const noexcept { return static_cast<int>(taylor_.size()) - 1; }
  bool even() const noexcept { return even_; }
  bool odd() const;
  /// Radius of convergence of the Taylor series.
  double radius() const noexcept { return radius_; }

  /// f^(k)(0)
  double derivative_at_zero(int k) const;

  /// f(ix), f'(ix), f''(ix) for real x.
  std::complex<double> eval_i(double x) const;
  std::complex<double> eval_i_d1(double x) const;
  std::complex<double> eval_i_d2(double x) const;

  /// Taylor sum at complex z up to the stored order.
  std::complex<double> taylor_sum(std::complex<double> z, int derivative = 0) const;

  /// f' as a germ: coefficients shifted (k+1) c_{k+1}; parity flips.
  AnalyticGerm derivative() const;

 private:
  std::string name_;
  std::vector<double> taylor_;
  bool even_ = false;
  double radius_ = std::numeric_limits<double>::infinity();
  ImagEvaluator f_, d1_, d2_;
};

/// Default number of stored Taylor coefficients for the library germs.
inline constexpr int kDefaultGermOrder = 80;

/// Bernoulli numbers B_0..B_n (B_1 = -1/2).
std::vector<double> bernoulli_numbers(int n);

/// (x/2)/tanh(x/2); its value at ix is x/(2 tan(x/2)).
AnalyticGerm l_genus_germ(int max_order = kDefaultGermOrder);
/// f = log((x/2)/tanh(x/2)) / 2, the log-germ whose exp-trace gives the L-form.
AnalyticGerm l_log_germ(int max_order = kDefaultGermOrder);
/// (x/2)/sinh(x/2)
AnalyticGerm a_hat_genus_germ(int max_order = kDefaultGermOrder);
/// log((x/2)/sinh(x/2)) / 2
AnalyticGerm a_hat_log_germ(int max_order = kDefaultGermOrder);
/// exp(x)
AnalyticGerm exp_germ(int max_order = kDefaultGermOrder);

/// lbar(x) = x / (2 tan(x/2)) and its first two derivatives, real x.
/// Poles at x in 2*pi*Z \ {0} raise DomainError.
double lbar(double x);
double lbar_d1(double x);
double lbar_d2(double x);

}  // namespace equichar
