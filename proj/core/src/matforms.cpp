#include "equichar/matforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "equichar/errors.hpp"

namespace equichar {
namespace {

void check_same_shape(const FormMatrix& a, const FormMatrix& b) {
  if (a.size() != b.size() || a.form_dim() != b.form_dim()) {
    std::ostringstream os;
    os << "form matrix shape mismatch: " << a.size() << "x" << a.size() << "/dim " << a.form_dim() << " vs "
       << b.size() << "x" << b.size() << "/dim " << b.form_dim();
    throw std::invalid_argument(os.str());
  }
}

void check_radius(const AnalyticGerm& f, double rho) {
  if (!(rho < f.radius())) {
    std::ostringstream os;
    os << "spectral radius " << rho << " outside convergence radius " << f.radius() << " of germ " << f.name();
    throw DomainError(os.str(), rho);
  }
}

double series_tail(const AnalyticGerm& f, int order, double rho) {
  double tail = 0.0;
  for (int k = order + 1; k <= order + 4; ++k) tail += std::abs(f.coeff(k)) * std::pow(rho, k);
  return tail;
}

}  // namespace

FormMatrix::FormMatrix(int size, int form_dim)
    : size_(size), form_dim_(form_dim), entries_(static_cast<std::size_t>(size) * size, ExteriorForm(form_dim)) {
  if (size <= 0) throw std::invalid_argument("form matrix size must be positive");
}

FormMatrix FormMatrix::identity(int size, int form_dim) {
  FormMatrix m(size, form_dim);
  for (int i = 0; i < size; ++i) m(i, i) = ExteriorForm::constant(form_dim, 1.0);
  return m;
}

FormMatrix FormMatrix::from_scalars(int size, int form_dim, const std::vector<double>& row_major) {
  if (row_major.size() != static_cast<std::size_t>(size) * size) {
    throw std::invalid_argument("from_scalars: entry count does not match size");
  }
  FormMatrix m(size, form_dim);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) m(i, j) = ExteriorForm::constant(form_dim, row_major[i * size + j]);
  }
  return m;
}

int FormMatrix::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= size_ || j >= size_) throw std::out_of_range("form matrix index out of range");
  return i * size_ + j;
}

void FormMatrix::set_antisymmetric(int i, int j, const ExteriorForm& value) {
  (*this)(i, j) = value;
  (*this)(j, i) = -value;
}

FormMatrix FormMatrix::transpose() const {
  FormMatrix t(size_, form_dim_);
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

FormMatrix FormMatrix::degree_component(int k) const {
  FormMatrix out(size_, form_dim_);
  for (std::size_t e = 0; e < entries_.size(); ++e) out.entries_[e] = entries_[e].degree_component(k);
  return out;
}

std::vector<double> FormMatrix::scalar_part() const {
  std::vector<double> out(entries_.size());
  for (std::size_t e = 0; e < entries_.size(); ++e) out[e] = entries_[e].scalar();
  return out;
}

double FormMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, e.max_abs());
  return m;
}

bool FormMatrix::is_antisymmetric(double tol) const {
  for (int i = 0; i < size_; ++i) {
    for (int j = i; j < size_; ++j) {
      if (!((*this)(i, j) + (*this)(j, i)).is_zero(tol)) return false;
    }
  }
  return true;
}

bool FormMatrix::is_scalar(double tol) const {
  for (const auto& e : entries_) {
    if (!e.is_homogeneous(0, tol)) return false;
  }
  return true;
}

FormMatrix& FormMatrix::operator+=(const FormMatrix& other) {
  check_same_shape(*this, other);
  for (std::size_t e = 0; e < entries_.size(); ++e) entries_[e] += other.entries_[e];
  return *this;
}

FormMatrix& FormMatrix::operator-=(const FormMatrix& other) {
  check_same_shape(*this, other);
  for (std::size_t e = 0; e < entries_.size(); ++e) entries_[e] -= other.entries_[e];
  return *this;
}

FormMatrix& FormMatrix::operator*=(double s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

FormMatrix mat_mul(const FormMatrix& a, const FormMatrix& b) {
  check_same_shape(a, b);
  const int n = a.size();
  FormMatrix out(n, a.form_dim());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      ExteriorForm acc(a.form_dim());
      for (int j = 0; j < n; ++j) {
        if (a(i, j).is_zero() || b(j, k).is_zero()) continue;
        acc += wedge(a(i, j), b(j, k));
      }
      out(i, k) = acc;
    }
  }
  return out;
}

ExteriorForm trace(const FormMatrix& a) {
  ExteriorForm out(a.form_dim());
  for (int i = 0; i < a.size(); ++i) out += a(i, i);
  return out;
}

double scalar_spectral_radius(const FormMatrix& m) {
  const int n = m.size();
  const std::vector<double> s = m.scalar_part();
  auto at = [&](int i, int j) { return s[i * n + j]; };

  double frob = 0.0;
  for (double v : s) frob += v * v;
  frob = std::sqrt(frob);

  bool diagonal = true;
  bool antisym = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && at(i, j) != 0.0) diagonal = false;
      if (std::abs(at(i, j) + at(j, i)) > 1e-14 * std::max(1.0, frob)) antisym = false;
    }
  }
  if (diagonal) {
    double r = 0.0;
    for (int i = 0; i < n; ++i) r = std::max(r, std::abs(at(i, i)));
    return r;
  }
  if (antisym && n == 2) return std::abs(at(0, 1));
  if (antisym && n == 4) {
    // eigenvalues +-i x1, +-i x2 with x1^2 + x2^2 = sum of squares, x1 x2 = Pfaffian
    double sq = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) sq += at(i, j) * at(i, j);
    }
    const double pf = at(0, 1) * at(2, 3) - at(0, 2) * at(1, 3) + at(0, 3) * at(1, 2);
    const double disc = std::max(0.0, sq * sq - 4.0 * pf * pf);
    return std::sqrt(0.5 * (sq + std::sqrt(disc)));
  }
  return frob;
}

Truncated<FormMatrix> apply_germ(const AnalyticGerm& f, const FormMatrix& m, const SeriesOptions& opts) {
  if (opts.order < 0) throw std::invalid_argument("series order must be non-negative");
  if (opts.order > f.max_order()) throw std::invalid_argument("series order exceeds stored germ order");
  const double rho = scalar_spectral_radius(m);
  check_radius(f, rho);

  const int n = m.size();
  const int dim = m.form_dim();
  FormMatrix acc = f.coeff(opts.order) * FormMatrix::identity(n, dim);
  for (int k = opts.order - 1; k >= 0; --k) {
    acc = mat_mul(acc, m);
    if (f.coeff(k) != 0.0) {
      for (int i = 0; i < n; ++i) acc(i, i) += ExteriorForm::constant(dim, f.coeff(k));
    }
  }
  return {std::move(acc), series_tail(f, opts.order, rho)};
}

Truncated<FormMatrix> star_second(const AnalyticGerm& f, const FormMatrix& a, const FormMatrix& b,
                                  const SeriesOptions& opts) {
  if (a.size() != b.size() || a.form_dim() != b.form_dim()) {
    throw std::invalid_argument("star_second: shape mismatch");
  }
  if (!a.is_scalar()) throw std::invalid_argument("star_second: first argument must be purely degree-0");
  if (opts.order > f.max_order()) throw std::invalid_argument("series order exceeds stored germ order");
  const double rho = scalar_spectral_radius(a);
  check_radius(f, rho);

  const int n_max = opts.order - 1;  // n + 1 <= K
  const int dim = a.form_dim();
  FormMatrix out(a.size(), dim);
  if (n_max < 1) return {std::move(out), 0.0};

  std::vector<FormMatrix> powers{FormMatrix::identity(a.size(), dim)};
  for (int q = 1; q < n_max; ++q) powers.push_back(mat_mul(powers.back(), a));
  std::vector<FormMatrix> b_powers;
  b_powers.reserve(powers.size());
  for (const auto& p : powers) b_powers.push_back(mat_mul(b, p));

  for (int n = 1; n <= n_max; ++n) {
    // f^{(n+1)}(0) / n! = (n+1) c_{n+1}
    const double w = (n + 1) * f.coeff(n + 1);
    if (w == 0.0) continue;
    FormMatrix h(a.size(), dim);
    for (int q = 0; q < n; ++q) h += mat_mul(powers[q], b_powers[n - 1 - q]);
    out += w * h;
  }

  double tail = 0.0;
  for (int n = n_max + 1; n <= n_max + 4; ++n) {
    tail += (n + 1) * std::abs(f.coeff(n + 1)) * n * std::pow(rho, n - 1);
  }
  return {std::move(out), tail * b.max_abs()};
}

Truncated<ExteriorForm> exp_trace_germ(const AnalyticGerm& f, const FormMatrix& m, const SeriesOptions& opts) {
  auto fm = apply_germ(f, m, opts);
  const ExteriorForm tr = trace(fm.value);
  ExteriorForm value = exp_form(tr);
  const double tail = std::exp(tr.scalar()) * m.size() * fm.tail_bound;
  return {std::move(value), tail};
}

}  // namespace equichar
