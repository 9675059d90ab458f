#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qhist {

using Complex = std::complex<double>;

// Largest supported ray-space dimension.
inline constexpr std::size_t kMaxDimension = 64;

// Tolerances shared across modules.
inline constexpr double kExactTol = 1e-12;   // algebraic identities
inline constexpr double kInputTol = 1e-9;    // validation of user input
inline constexpr double kRenormTol = 1e-6;   // accepted deviation from unit norm

/// Dense square matrix of complex scalars, row-major.
///
/// Carries projectors, history operators and rotations. Dimensions are small
/// (at most kMaxDimension), so all products are plain triple loops.
class Operator {
 public:
  Operator() = default;
  explicit Operator(std::size_t n) : n_(n), data_(n * n) {}

  static Operator zeros(std::size_t n) { return Operator(n); }
  static Operator identity(std::size_t n);
  static Operator from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t dim() const { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  Operator adjoint() const;

  // max_{ij} |m_ij|
  double max_abs() const;

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;
  bool is_finite() const;

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(Complex s);

  friend bool operator==(const Operator&, const Operator&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

Operator operator+(Operator lhs, const Operator& rhs);
Operator operator-(Operator lhs, const Operator& rhs);
Operator operator*(const Operator& lhs, const Operator& rhs);
Operator operator*(Complex s, Operator m);

Complex trace(const Operator& m);

// ‖a − b‖_max; throws DimensionMismatch when shapes differ.
double max_abs_diff(const Operator& a, const Operator& b);

}  // namespace qhist
