#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace equichar {

/// Largest coframe dimension supported. Forms are stored densely, one
/// coefficient per subset of {e^1..e^n}.
inline constexpr int kMaxFormDim = 4;
inline constexpr int kMaxBlades = 1 << kMaxFormDim;

/// Strictly increasing sequence of coframe indices (1-based), stored as a
/// bitmask: bit i-1 set <=> e^i present.
class MultiIndex {
 public:
  MultiIndex() = default;

  /// Requires a strictly increasing sequence with entries in 1..kMaxFormDim.
  explicit MultiIndex(std::initializer_list<int> indices);
  explicit MultiIndex(std::span<const int> indices);

  static MultiIndex from_mask(std::uint32_t mask);

  std::uint32_t mask() const noexcept { return mask_; }
  int size() const noexcept;
  std::vector<int> indices() const;
  bool contains(int index) const noexcept { return (mask_ >> (index - 1)) & 1u; }

  friend bool operator==(MultiIndex, MultiIndex) = default;

 private:
  std::uint32_t mask_ = 0;
};

/// Sort an arbitrary index sequence into canonical order. Returns the parity
/// sign of the sorting permutation, or 0 if an index repeats.
std::pair<int, MultiIndex> canonicalize(std::span<const int> indices);

/// Inhomogeneous exterior form over an orthonormal coframe e^1..e^n, n <= 4.
class ExteriorForm {
 public:
  /// Zero form in dimension `dim`.
  explicit ExteriorForm(int dim);

  static ExteriorForm zero(int dim) { return ExteriorForm(dim); }
  static ExteriorForm constant(int dim, double value);
  /// coeff * e^{i1} ^ e^{i2} ^ ... ; indices may be unsorted (sign applied)
  /// and a repeated index gives the zero form.
  static ExteriorForm basis(int dim, std::initializer_list<int> indices, double coeff = 1.0);
  static ExteriorForm basis(int dim, MultiIndex index, double coeff = 1.0);

  int dimension() const noexcept { return dim_; }

  double coeff(MultiIndex index) const;
  double coeff(std::initializer_list<int> sorted_indices) const { return coeff(MultiIndex(sorted_indices)); }
  double scalar() const noexcept { return c_[0]; }
  void set(MultiIndex index, double value);

  /// Raw access by bitmask; mask must be < 2^dim.
  double at_mask(std::uint32_t mask) const { return c_[mask]; }
  std::uint32_t blade_count() const noexcept { return 1u << dim_; }

  /// Terms of exact geometric degree k.
  ExteriorForm degree_component(int k) const;
  /// Largest degree with a non-zero coefficient, -1 for the zero form.
  int max_degree() const;
  /// True when every non-zero term has degree exactly k.
  bool is_homogeneous(int k, double tol = 0.0) const;

  double max_abs() const;
  bool is_zero(double tol = 0.0) const { return max_abs() <= tol; }
  /// Copy with all coefficients of magnitude <= threshold set to zero.
  ExteriorForm pruned(double threshold) const;

  ExteriorForm& operator+=(const ExteriorForm& other);
  ExteriorForm& operator-=(const ExteriorForm& other);
  ExteriorForm& operator*=(double s);

  friend ExteriorForm operator+(ExteriorForm a, const ExteriorForm& b) { return a += b; }
  friend ExteriorForm operator-(ExteriorForm a, const ExteriorForm& b) { return a -= b; }
  friend ExteriorForm operator-(ExteriorForm a) { return a *= -1.0; }
  friend ExteriorForm operator*(double s, ExteriorForm a) { return a *= s; }
  friend ExteriorForm operator*(ExteriorForm a, double s) { return a *= s; }
  friend bool operator==(const ExteriorForm&, const ExteriorForm&) = default;

  std::string to_string() const;

 private:
  int dim_;
  std::array<double, kMaxBlades> c_{};
};

/// Exterior product. Terms of degree > n vanish automatically.
ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b);
inline ExteriorForm operator^(const ExteriorForm& a, const ExteriorForm& b) { return wedge(a, b); }

/// Exact coefficient-wise sum of s_i * form_i. All dimensions must agree; an
/// empty sequence is rejected since its dimension is unknown.
ExteriorForm linear_combine(std::span<const std::pair<double, ExteriorForm>> terms);

inline ExteriorForm degree_component(const ExteriorForm& a, int k) { return a.degree_component(k); }

/// Keep only terms not involving e^{n}; the result lives in dimension n-1.
/// Models pull-back along the inclusion of {e^n = 0}.
ExteriorForm drop_last_direction(const ExteriorForm& a);

/// exp(a) = e^{a_0} * sum_j N^j / j!, N the positive-degree part of an even
/// form (odd parts anticommute, so only even forms are accepted).
ExteriorForm exp_form(const ExteriorForm& a);

std::ostream& operator<<(std::ostream& os, const ExteriorForm& a);

}  // namespace equichar
