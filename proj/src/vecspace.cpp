#include "bsubgrad/vecspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bsubgrad {

namespace {

void require_finite(const std::vector<double>& c) {
  for (double v : c) {
    if (!std::isfinite(v)) throw std::invalid_argument("vector coordinate is not finite");
  }
}

constexpr double kMembershipTol = 1e-12;

}  // namespace

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("vector dimension must be positive");
  require_finite(coords_);
}

Vector::Vector(std::initializer_list<double> coords) : Vector(std::vector<double>(coords)) {}

Vector Vector::zeros(std::size_t n) { return Vector(std::vector<double>(n, 0.0)); }

Vector Vector::filled(std::size_t n, double value) {
  return Vector(std::vector<double>(n, value));
}

void require_same_dim(const Vector& a, const Vector& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw std::invalid_argument(os.str());
  }
}

double dot(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& v) {
  // Scaled accumulation keeps huge coordinates from overflowing the square.
  double scale = norm_inf(v);
  if (scale == 0.0) return 0.0;
  if (scale > 1e150 || scale < 1e-150) {
    double s = 0.0;
    for (double c : v.coords()) {
      double t = c / scale;
      s += t * t;
    }
    return scale * std::sqrt(s);
  }
  double s = 0.0;
  for (double c : v.coords()) s += c * c;
  return std::sqrt(s);
}

double norm1(const Vector& v) {
  double s = 0.0;
  for (double c : v.coords()) s += std::abs(c);
  return s;
}

double norm_inf(const Vector& v) {
  double m = 0.0;
  for (double c : v.coords()) m = std::max(m, std::abs(c));
  return m;
}

Vector operator+(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "add");
  std::vector<double> r(a.dim());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return Vector(std::move(r));
}

Vector operator-(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "subtract");
  std::vector<double> r(a.dim());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return Vector(std::move(r));
}

Vector operator*(double s, const Vector& v) {
  std::vector<double> r(v.dim());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = s * v[i];
  return Vector(std::move(r));
}

Vector axpy(const Vector& a, double s, const Vector& b) {
  require_same_dim(a, b, "axpy");
  std::vector<double> r(a.dim());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + s * b[i];
  return Vector(std::move(r));
}

double NormPair::primal(const Vector& v) const {
  return kind == NormKind::Euclidean ? norm2(v) : norm1(v);
}

double NormPair::dual(const Vector& g) const {
  return kind == NormKind::Euclidean ? norm2(g) : norm_inf(g);
}

double dual_norm(const NormPair& np, const Vector& g) { return np.dual(g); }

FeasibleSet FeasibleSet::ball(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("ball radius must be positive and finite");
  return FeasibleSet(SetKind::Ball, radius, 0);
}

FeasibleSet FeasibleSet::simplex(std::size_t n) {
  if (n == 0) throw std::invalid_argument("simplex dimension must be positive");
  return FeasibleSet(SetKind::Simplex, 0.0, n);
}

bool FeasibleSet::contains(const Vector& x) const {
  if (kind_ == SetKind::Ball) return norm2(x) <= radius_ + kMembershipTol * (1.0 + radius_);
  if (x.dim() != dim_) return false;
  double sum = 0.0;
  for (double c : x.coords()) {
    if (c < 0.0) return false;
    sum += c;
  }
  return std::abs(sum - 1.0) <= kMembershipTol;
}

Vector FeasibleSet::project(const Vector& x) const {
  if (kind_ != SetKind::Ball) throw std::logic_error("projection is only defined for ball sets");
  return project_ball(x, radius_);
}

std::string FeasibleSet::describe() const {
  std::ostringstream os;
  if (kind_ == SetKind::Ball)
    os << "ball(R=" << radius_ << ")";
  else
    os << "simplex(n=" << dim_ << ")";
  return os.str();
}

Vector project_ball(const Vector& x, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("project_ball: radius must be positive");
  double nx = norm2(x);
  // Points within a few ulps of the sphere count as inside, so the map is
  // idempotent in floating point.
  if (nx <= radius * (1.0 + 8.0 * std::numeric_limits<double>::epsilon())) return x;
  return (radius / nx) * x;
}

}  // namespace bsubgrad
