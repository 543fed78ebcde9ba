#pragma once

// Dense real vectors, the two norm pairs, and feasible-set geometry.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace bsubgrad {

/// Dense vector of finite doubles. Immutable once built; every arithmetic
/// helper returns a fresh value.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::vector<double> coords);
  Vector(std::initializer_list<double> coords);

  static Vector zeros(std::size_t n);
  static Vector filled(std::size_t n, double value);

  std::size_t dim() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& data() const noexcept { return coords_; }

  bool operator==(const Vector&) const = default;

 private:
  std::vector<double> coords_;
};

// Throws std::invalid_argument when the dimensions differ.
void require_same_dim(const Vector& a, const Vector& b, const char* what);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double norm1(const Vector& v);
double norm_inf(const Vector& v);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);
/// a + s * b
Vector axpy(const Vector& a, double s, const Vector& b);

enum class NormKind { Euclidean, L1Linf };

/// Primal/dual norm pair. For L1Linf the primal is the l1 norm and the dual
/// is the max-abs norm; the Euclidean pair is self-dual.
struct NormPair {
  NormKind kind = NormKind::Euclidean;

  double primal(const Vector& v) const;
  double dual(const Vector& g) const;
};

double dual_norm(const NormPair& np, const Vector& g);

enum class SetKind { Ball, Simplex };

/// Either the origin-centred Euclidean ball of radius R or the probability
/// simplex of dimension n.
class FeasibleSet {
 public:
  static FeasibleSet ball(double radius);
  static FeasibleSet simplex(std::size_t n);

  SetKind kind() const noexcept { return kind_; }
  double radius() const noexcept { return radius_; }
  std::size_t simplex_dim() const noexcept { return dim_; }

  bool contains(const Vector& x) const;
  /// Radial projection for balls. Throws for simplex sets.
  Vector project(const Vector& x) const;
  std::string describe() const;

  bool operator==(const FeasibleSet&) const = default;

 private:
  FeasibleSet(SetKind kind, double radius, std::size_t dim)
      : kind_(kind), radius_(radius), dim_(dim) {}

  SetKind kind_;
  double radius_;
  std::size_t dim_;
};

/// Returns x if ||x||_2 <= R, otherwise (R / ||x||_2) x.
Vector project_ball(const Vector& x, double radius);

}  // namespace bsubgrad
