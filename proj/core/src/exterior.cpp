#include "equichar/exterior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace equichar {
namespace {

void check_dim(int dim) {
  if (dim < 0 || dim > kMaxFormDim) {
    throw std::invalid_argument("exterior form dimension must be in 0..4, got " + std::to_string(dim));
  }
}

void check_same_dim(const ExteriorForm& a, const ExteriorForm& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("exterior form dimension mismatch: " + std::to_string(a.dimension()) +
                                " vs " + std::to_string(b.dimension()));
  }
}

// Sign of e^A ^ e^B for disjoint blades: (-1)^{#{(i,j): i in A, j in B, i > j}}.
int reorder_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
    const std::uint32_t low = rest & (~rest + 1);
    // bits of a strictly above this bit of b
    swaps += std::popcount(a & ~((low << 1) - 1));
  }
  return (swaps & 1) ? -1 : 1;
}

}  // namespace

MultiIndex::MultiIndex(std::initializer_list<int> indices)
    : MultiIndex(std::span<const int>(indices.begin(), indices.size())) {}

MultiIndex::MultiIndex(std::span<const int> indices) {
  int prev = 0;
  for (int i : indices) {
    if (i < 1 || i > kMaxFormDim) throw std::invalid_argument("multi-index entry out of range");
    if (i <= prev) throw std::invalid_argument("multi-index must be strictly increasing");
    mask_ |= 1u << (i - 1);
    prev = i;
  }
}

MultiIndex MultiIndex::from_mask(std::uint32_t mask) {
  if (mask >= static_cast<std::uint32_t>(kMaxBlades)) throw std::invalid_argument("multi-index mask out of range");
  MultiIndex m;
  m.mask_ = mask;
  return m;
}

int MultiIndex::size() const noexcept { return std::popcount(mask_); }

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  for (int i = 1; i <= kMaxFormDim; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::pair<int, MultiIndex> canonicalize(std::span<const int> indices) {
  std::vector<int> v(indices.begin(), indices.end());
  int sign = 1;
  // insertion sort keeps track of transposition parity
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  }
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) return {0, MultiIndex{}};
  return {sign, MultiIndex(std::span<const int>(v))};
}

ExteriorForm::ExteriorForm(int dim) : dim_(dim) { check_dim(dim); }

ExteriorForm ExteriorForm::constant(int dim, double value) {
  ExteriorForm f(dim);
  f.c_[0] = value;
  return f;
}

ExteriorForm ExteriorForm::basis(int dim, std::initializer_list<int> indices, double coeff) {
  ExteriorForm f(dim);
  auto [sign, index] = canonicalize(std::span<const int>(indices.begin(), indices.size()));
  if (sign == 0) return f;
  for (int i : indices) {
    if (i > dim) throw std::invalid_argument("basis index exceeds form dimension");
  }
  f.c_[index.mask()] = sign * coeff;
  return f;
}

ExteriorForm ExteriorForm::basis(int dim, MultiIndex index, double coeff) {
  ExteriorForm f(dim);
  f.set(index, coeff);
  return f;
}

double ExteriorForm::coeff(MultiIndex index) const {
  if (index.mask() >= blade_count()) return 0.0;
  return c_[index.mask()];
}

void ExteriorForm::set(MultiIndex index, double value) {
  if (index.mask() >= blade_count()) throw std::invalid_argument("multi-index exceeds form dimension");
  c_[index.mask()] = value;
}

ExteriorForm ExteriorForm::degree_component(int k) const {
  ExteriorForm out(dim_);
  for (std::uint32_t m = 0; m < blade_count(); ++m) {
    if (std::popcount(m) == k) out.c_[m] = c_[m];
  }
  return out;
}

int ExteriorForm::max_degree() const {
  int deg = -1;
  for (std::uint32_t m = 0; m < blade_count(); ++m) {
    if (c_[m] != 0.0) deg = std::max(deg, std::popcount(m));
  }
  return deg;
}

bool ExteriorForm::is_homogeneous(int k, double tol) const {
  for (std::uint32_t m = 0; m < blade_count(); ++m) {
    if (std::popcount(m) != k && std::abs(c_[m]) > tol) return false;
  }
  return true;
}

double ExteriorForm::max_abs() const {
  double m = 0.0;
  for (std::uint32_t i = 0; i < blade_count(); ++i) m = std::max(m, std::abs(c_[i]));
  return m;
}

ExteriorForm ExteriorForm::pruned(double threshold) const {
  ExteriorForm out = *this;
  for (auto& c : out.c_) {
    if (std::abs(c) <= threshold) c = 0.0;
  }
  return out;
}

ExteriorForm& ExteriorForm::operator+=(const ExteriorForm& other) {
  check_same_dim(*this, other);
  for (std::uint32_t i = 0; i < blade_count(); ++i) c_[i] += other.c_[i];
  return *this;
}

ExteriorForm& ExteriorForm::operator-=(const ExteriorForm& other) {
  check_same_dim(*this, other);
  for (std::uint32_t i = 0; i < blade_count(); ++i) c_[i] -= other.c_[i];
  return *this;
}

ExteriorForm& ExteriorForm::operator*=(double s) {
  for (std::uint32_t i = 0; i < blade_count(); ++i) c_[i] *= s;
  return *this;
}

std::string ExteriorForm::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (std::uint32_t m = 0; m < blade_count(); ++m) {
    if (c_[m] == 0.0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[m];
    if (m != 0) {
      os << " e^";
      for (int i : MultiIndex::from_mask(m).indices()) os << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b) {
  check_same_dim(a, b);
  ExteriorForm out(a.dimension());
  const std::uint32_t n = a.blade_count();
  std::array<double, kMaxBlades> acc{};
  for (std::uint32_t ma = 0; ma < n; ++ma) {
    const double ca = a.at_mask(ma);
    if (ca == 0.0) continue;
    for (std::uint32_t mb = 0; mb < n; ++mb) {
      const double cb = b.at_mask(mb);
      if (cb == 0.0 || (ma & mb) != 0) continue;
      acc[ma | mb] += reorder_sign(ma, mb) * ca * cb;
    }
  }
  for (std::uint32_t m = 0; m < n; ++m) out.set(MultiIndex::from_mask(m), acc[m]);
  return out;
}

ExteriorForm linear_combine(std::span<const std::pair<double, ExteriorForm>> terms) {
  if (terms.empty()) throw std::invalid_argument("linear_combine needs at least one term");
  ExteriorForm out(terms.front().second.dimension());
  for (const auto& [s, f] : terms) {
    check_same_dim(out, f);
    out += s * f;
  }
  return out;
}

ExteriorForm drop_last_direction(const ExteriorForm& a) {
  if (a.dimension() == 0) throw std::invalid_argument("cannot drop a direction from a 0-dimensional form");
  ExteriorForm out(a.dimension() - 1);
  for (std::uint32_t m = 0; m < out.blade_count(); ++m) out.set(MultiIndex::from_mask(m), a.at_mask(m));
  return out;
}

ExteriorForm exp_form(const ExteriorForm& a) {
  for (std::uint32_t m = 0; m < a.blade_count(); ++m) {
    if ((std::popcount(m) & 1) && a.at_mask(m) != 0.0) {
      throw std::invalid_argument("exp_form requires an even form");
    }
  }
  ExteriorForm nil = a;
  nil.set(MultiIndex{}, 0.0);
  ExteriorForm sum = ExteriorForm::constant(a.dimension(), 1.0);
  ExteriorForm power = sum;
  // nil has degree >= 2, so nil^j vanishes once 2j > n
  for (int j = 1; 2 * j <= a.dimension(); ++j) {
    power = (1.0 / j) * wedge(power, nil);
    sum += power;
  }
  return std::exp(a.scalar()) * sum;
}

std::ostream& operator<<(std::ostream& os, const ExteriorForm& a) { return os << a.to_string(); }

}  // namespace equichar
