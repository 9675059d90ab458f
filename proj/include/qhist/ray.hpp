#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qhist/operator.hpp"

namespace qhist {

/// A unit vector standing for a one-dimensional subspace. Two rays that differ
/// by a global phase are the same physical event; use same_ray() to compare.
class Ray {
 public:
  std::size_t dim() const { return components_.size(); }
  const std::vector<Complex>& components() const { return components_; }
  const Complex& operator[](std::size_t i) const { return components_[i]; }

 private:
  friend Ray make_ray(std::span<const Complex> components);
  explicit Ray(std::vector<Complex> c) : components_(std::move(c)) {}
  std::vector<Complex> components_;
};

// Accepts vectors whose norm is within kRenormTol of 1 and renormalizes them.
// Throws ZeroVector, NormOutOfTolerance, NonFinite, DimensionOutOfRange.
Ray make_ray(std::span<const Complex> components);
inline Ray make_ray(std::initializer_list<Complex> components) {
  return make_ray(std::span<const Complex>(components.begin(), components.size()));
}

// The k-th standard basis vector (0-based) of dimension n.
Ray basis_ray(std::size_t n, std::size_t k);

// (cos θ, sin θ) in the real plane.
Ray planar_ray(double theta);

/// Rank-1 Hermitian idempotent |r⟩⟨r|, or a sum/conjugate thereof that is
/// still a projector. Only constructible through the checked factories.
class Projector {
 public:
  const Operator& op() const { return op_; }
  operator const Operator&() const { return op_; }
  std::size_t dim() const { return op_.dim(); }

 private:
  friend Projector projector_of(const Ray& r);
  friend Projector conjugate_projector(const Projector& p, const Operator& u);
  explicit Projector(Operator op) : op_(std::move(op)) {}
  Operator op_;
};

Projector projector_of(const Ray& r);

/// [[cos θ, sin θ], [−sin θ, cos θ]]
Operator rotation_2d(double theta);

// rotation_2d(theta) acting on coordinates (p, q) of an n-dimensional space,
// identity elsewhere.
Operator plane_rotation(std::size_t n, std::size_t p, std::size_t q, double theta);

// U·P·U⁻¹. Throws NotUnitary when ‖U†U − I‖_max > kInputTol.
Projector conjugate_projector(const Projector& p, const Operator& u);

// ⟨a|b⟩, antilinear in the first argument.
Complex inner_product(const Ray& a, const Ray& b);

// Rays are equal iff their projectors agree within tol.
bool same_ray(const Ray& a, const Ray& b, double tol = kInputTol);

/// Sample space: a dimension plus named rays.
class EventSpace {
 public:
  explicit EventSpace(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }

  // Throws DimensionMismatch, DuplicateEvent, InvalidName.
  void add(const std::string& name, const Ray& ray);

  bool contains(std::string_view name) const;
  // Throws UnknownEvent.
  const Ray& ray(std::string_view name) const;
  const Projector& projector(std::string_view name) const;

  // Names in registration order.
  const std::vector<std::string>& names() const { return order_; }

 private:
  struct Entry {
    Ray ray;
    Projector projector;
  };
  std::size_t dimension_;
  std::map<std::string, Entry, std::less<>> events_;
  std::vector<std::string> order_;
};

bool is_identifier(std::string_view name);

}  // namespace qhist
