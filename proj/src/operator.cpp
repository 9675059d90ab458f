#include "qhist/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qhist/error.hpp"

namespace qhist {

namespace {

void require_same_dim(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) {
    throw Error(Errc::DimensionMismatch, "operator dimensions differ: " +
                                             std::to_string(a.dim()) + " vs " +
                                             std::to_string(b.dim()));
  }
}

}  // namespace

Operator Operator::identity(std::size_t n) {
  Operator m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Operator Operator::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  Operator m(rows.size());
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw Error(Errc::DimensionMismatch, "from_rows: matrix is not square");
    }
    std::size_t j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Operator Operator::adjoint() const {
  Operator r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

double Operator::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool Operator::is_hermitian(double tol) const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool Operator::is_unitary(double tol) const {
  return max_abs_diff(adjoint() * (*this), identity(n_)) <= tol;
}

bool Operator::is_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

Operator& Operator::operator+=(const Operator& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Operator& Operator::operator*=(Complex s) {
  for (auto& v : data_) v *= s;
  return *this;
}

Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
Operator operator*(Complex s, Operator m) { return m *= s; }

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_dim(lhs, rhs);
  const std::size_t n = lhs.dim();
  Operator r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += a * rhs(k, j);
    }
  }
  return r;
}

Complex trace(const Operator& m) {
  Complex t{};
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_dim(a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

}  // namespace qhist
