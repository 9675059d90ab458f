#include "qhist/ray.hpp"

#include <cmath>

#include "qhist/error.hpp"

namespace qhist {

Ray make_ray(std::span<const Complex> components) {
  if (components.empty() || components.size() > kMaxDimension) {
    throw Error(Errc::DimensionOutOfRange,
                "ray dimension must be in [1, " + std::to_string(kMaxDimension) + "], got " +
                    std::to_string(components.size()));
  }
  double norm2 = 0.0;
  for (const auto& c : components) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(Errc::NonFinite, "ray component is not finite");
    }
    norm2 += std::norm(c);
  }
  const double norm = std::sqrt(norm2);
  if (norm == 0.0) throw Error(Errc::ZeroVector, "ray vector is zero");
  if (std::abs(norm - 1.0) > kRenormTol) {
    throw Error(Errc::NormOutOfTolerance,
                "ray vector norm " + std::to_string(norm) + " is not within 1e-6 of 1");
  }
  std::vector<Complex> unit(components.begin(), components.end());
  for (auto& c : unit) c /= norm;
  return Ray(std::move(unit));
}

Ray basis_ray(std::size_t n, std::size_t k) {
  if (k >= n) {
    throw Error(Errc::IndexOutOfRange,
                "basis index " + std::to_string(k) + " out of range for dimension " +
                    std::to_string(n));
  }
  std::vector<Complex> v(n);
  v[k] = 1.0;
  return make_ray(v);
}

Ray planar_ray(double theta) { return make_ray({std::cos(theta), std::sin(theta)}); }

Projector projector_of(const Ray& r) {
  const std::size_t n = r.dim();
  Operator p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = r[i] * std::conj(r[j]);
  return Projector(std::move(p));
}

Operator rotation_2d(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Operator::from_rows({{c, s}, {-s, c}});
}

Operator plane_rotation(std::size_t n, std::size_t p, std::size_t q, double theta) {
  if (p >= n || q >= n || p == q) {
    throw Error(Errc::IndexOutOfRange, "plane_rotation: invalid coordinate pair");
  }
  Operator u = Operator::identity(n);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  u(p, p) = c;
  u(p, q) = s;
  u(q, p) = -s;
  u(q, q) = c;
  return u;
}

Projector conjugate_projector(const Projector& p, const Operator& u) {
  if (u.dim() != p.dim()) {
    throw Error(Errc::DimensionMismatch, "conjugate_projector: dimension mismatch");
  }
  if (!u.is_unitary(kInputTol)) {
    throw Error(Errc::NotUnitary, "conjugating operator is not unitary within 1e-9");
  }
  return Projector(u * p.op() * u.adjoint());
}

Complex inner_product(const Ray& a, const Ray& b) {
  if (a.dim() != b.dim()) {
    throw Error(Errc::DimensionMismatch, "inner_product: rays of dimension " +
                                             std::to_string(a.dim()) + " and " +
                                             std::to_string(b.dim()));
  }
  Complex s{};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

bool same_ray(const Ray& a, const Ray& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return max_abs_diff(projector_of(a), projector_of(b)) <= tol;
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  if (!alpha(name.front())) return false;
  for (char c : name)
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  return true;
}

EventSpace::EventSpace(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0 || dimension > kMaxDimension) {
    throw Error(Errc::DimensionOutOfRange, "event space dimension must be in [1, " +
                                               std::to_string(kMaxDimension) + "], got " +
                                               std::to_string(dimension));
  }
}

void EventSpace::add(const std::string& name, const Ray& ray) {
  if (!is_identifier(name)) {
    throw Error(Errc::InvalidName, "event name '" + name + "' is not an identifier");
  }
  if (ray.dim() != dimension_) {
    throw Error(Errc::DimensionMismatch, "event '" + name + "' has dimension " +
                                             std::to_string(ray.dim()) + ", space has " +
                                             std::to_string(dimension_));
  }
  if (events_.contains(name)) {
    throw Error(Errc::DuplicateEvent, "event '" + name + "' is already registered");
  }
  events_.emplace(name, Entry{ray, projector_of(ray)});
  order_.push_back(name);
}

bool EventSpace::contains(std::string_view name) const { return events_.find(name) != events_.end(); }

const Ray& EventSpace::ray(std::string_view name) const {
  auto it = events_.find(name);
  if (it == events_.end()) {
    throw Error(Errc::UnknownEvent, "unknown event '" + std::string(name) + "'");
  }
  return it->second.ray;
}

const Projector& EventSpace::projector(std::string_view name) const {
  auto it = events_.find(name);
  if (it == events_.end()) {
    throw Error(Errc::UnknownEvent, "unknown event '" + std::string(name) + "'");
  }
  return it->second.projector;
}

}  // namespace qhist
