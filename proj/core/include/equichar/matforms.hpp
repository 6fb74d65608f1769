#pragma once

#include <array>
#include <vector>

#include "equichar/exterior.hpp"
#include "equichar/germ.hpp"

namespace equichar {

/// Square matrix whose entries are exterior forms over a common coframe.
/// The matrix size and the coframe dimension are independent: boundary
/// quantities are 4x4 matrices of forms over a 3-dimensional coframe.
class FormMatrix {
 public:
  FormMatrix(int size, int form_dim);

  static FormMatrix zero(int size, int form_dim) { return FormMatrix(size, form_dim); }
  static FormMatrix identity(int size, int form_dim);
  /// Degree-0 matrix from row-major real entries.
  static FormMatrix from_scalars(int size, int form_dim, const std::vector<double>& row_major);

  int size() const noexcept { return size_; }
  int form_dim() const noexcept { return form_dim_; }

  const ExteriorForm& operator()(int i, int j) const { return entries_[index(i, j)]; }
  ExteriorForm& operator()(int i, int j) { return entries_[index(i, j)]; }

  /// Sets (i,j) to `value` and (j,i) to -value.
  void set_antisymmetric(int i, int j, const ExteriorForm& value);

  FormMatrix transpose() const;
  FormMatrix degree_component(int k) const;
  /// Row-major degree-0 coefficients.
  std::vector<double> scalar_part() const;
  double max_abs() const;
  bool is_antisymmetric(double tol = 0.0) const;
  /// True when every entry is a pure degree-0 form.
  bool is_scalar(double tol = 0.0) const;

  FormMatrix& operator+=(const FormMatrix& other);
  FormMatrix& operator-=(const FormMatrix& other);
  FormMatrix& operator*=(double s);
  friend FormMatrix operator+(FormMatrix a, const FormMatrix& b) { return a += b; }
  friend FormMatrix operator-(FormMatrix a, const FormMatrix& b) { return a -= b; }
  friend FormMatrix operator-(FormMatrix a) { return a *= -1.0; }
  friend FormMatrix operator*(double s, FormMatrix a) { return a *= s; }
  friend bool operator==(const FormMatrix&, const FormMatrix&) = default;

 private:
  int index(int i, int j) const;

  int size_;
  int form_dim_;
  std::vector<ExteriorForm> entries_;
};

/// (AB)_ik = sum_j A_ij ^ B_jk
FormMatrix mat_mul(const FormMatrix& a, const FormMatrix& b);
inline FormMatrix operator*(const FormMatrix& a, const FormMatrix& b) { return mat_mul(a, b); }
ExteriorForm trace(const FormMatrix& a);

/// Value of a truncated series together with an estimate of the discarded
/// tail, sum_{k=K+1}^{K+4} |c_k| rho^k with rho the spectral radius of the
/// degree-0 part.
template <class T>
struct Truncated {
  T value;
  double tail_bound = 0.0;
};

struct SeriesOptions {
  /// Highest power of the matrix retained.
  int order = 16;
};

/// Spectral radius of the degree-0 part. Exact for 1x1, 2x2 and 4x4
/// antisymmetric blocks and diagonal matrices; the Frobenius norm (an upper
/// bound) otherwise.
double scalar_spectral_radius(const FormMatrix& m);

/// sum_{k=0}^{K} c_k M^k. Throws DomainError when the degree-0 spectral
/// radius is not strictly inside the germ's disc of convergence.
Truncated<FormMatrix> apply_germ(const AnalyticGerm& f, const FormMatrix& m, const SeriesOptions& opts = {});

/// f^{[2]}(A) * B = sum_n f^{(n+1)}(0)/n! sum_{q<n} A^q B A^{n-1-q}, n+1 <= K.
/// A must be purely degree-0.
Truncated<FormMatrix> star_second(const AnalyticGerm& f, const FormMatrix& a, const FormMatrix& b,
                                  const SeriesOptions& opts = {});

/// exp(Tr f(M)); the outer exponential is exact (nilpotent part terminates).
Truncated<ExteriorForm> exp_trace_germ(const AnalyticGerm& f, const FormMatrix& m, const SeriesOptions& opts = {});

}  // namespace equichar
