#include "bsubgrad/oracle.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bsubgrad {

namespace {

Vector random_unit(const NormPair& norms, std::size_t n, Rng& rng) {
  std::vector<double> u(n);
  if (norms.kind == NormKind::L1Linf) {
    for (double& c : u) c = rng.sign();
    return Vector(std::move(u));
  }
  double s = 0.0;
  do {
    s = 0.0;
    for (double& c : u) {
      c = rng.normal();
      s += c * c;
    }
  } while (s == 0.0);
  double inv = 1.0 / std::sqrt(s);
  for (double& c : u) c *= inv;
  return Vector(std::move(u));
}

NoisySubgradient exact_result(const NormPair& norms, const InexactnessModel& model, Vector g) {
  NoisySubgradient out;
  double gnorm = norms.dual(g);
  out.bound_a = model.error_budget(gnorm);
  out.bound_b = model.norm_cap(gnorm);
  out.g_tilde = g;
  out.g_exact = std::move(g);
  return out;
}

// g~ = g + scale * A * unit, where `unit` has dual norm one.
NoisySubgradient perturb(const NormPair& norms, const InexactnessModel& model, Vector g_exact,
                         const Vector& unit, double scale) {
  NoisySubgradient out;
  double gnorm = norms.dual(g_exact);
  out.bound_a = model.error_budget(gnorm);
  out.bound_b = model.norm_cap(gnorm);
  double radius = out.bound_a * scale;
  if (radius == 0.0) return exact_result(norms, model, std::move(g_exact));
  out.g_tilde = axpy(g_exact, radius, unit);
  out.error_norm = norms.dual(out.g_tilde - g_exact);
  out.g_exact = std::move(g_exact);

  double tol_a = 1e-12 * (1.0 + out.bound_a);
  double tol_b = 1e-12 * (1.0 + out.bound_b);
  if (out.error_norm > out.bound_a + tol_a || norms.dual(out.g_tilde) > out.bound_b + tol_b)
    throw std::logic_error("inexact oracle violated its error budget");
  return out;
}

double magnitude_scale(NoiseMagnitude magnitude, Rng& rng) {
  return magnitude == NoiseMagnitude::Worst ? 1.0 : rng.uniform();
}

double parse_decimal(const std::string& text, const std::string& spec) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
    throw std::invalid_argument("bad numeric parameter in '" + spec + "'");
  return v;
}

}  // namespace

InexactnessModel InexactnessModel::relative(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << "relative inexactness needs alpha in [0,1), got " << alpha;
    throw std::invalid_argument(os.str());
  }
  return InexactnessModel(Kind::Relative, alpha);
}

InexactnessModel InexactnessModel::absolute(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    std::ostringstream os;
    os << "absolute inexactness needs delta >= 0, got " << delta;
    throw std::invalid_argument(os.str());
  }
  return InexactnessModel(Kind::Absolute, delta);
}

InexactnessModel InexactnessModel::parse(const std::string& spec) {
  if (spec == "exact") return exact();
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("expected exact, relative:<alpha> or absolute:<delta>, got '" +
                                spec + "'");
  std::string head = spec.substr(0, colon);
  double v = parse_decimal(spec.substr(colon + 1), spec);
  if (head == "relative") return relative(v);
  if (head == "absolute") return absolute(v);
  throw std::invalid_argument("unknown model '" + head + "'");
}

std::string InexactnessModel::kind_name() const {
  switch (kind_) {
    case Kind::Exact:
      return "exact";
    case Kind::Relative:
      return "relative";
    case Kind::Absolute:
      return "absolute";
  }
  return "exact";
}

std::string InexactnessModel::to_string() const {
  if (kind_ == Kind::Exact) return "exact";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), param_);
  return kind_name() + ":" + std::string(buf, res.ptr);
}

double InexactnessModel::error_budget(double grad_dual_norm) const {
  switch (kind_) {
    case Kind::Exact:
      return 0.0;
    case Kind::Relative:
      return param_ * grad_dual_norm;
    case Kind::Absolute:
      return param_;
  }
  return 0.0;
}

double InexactnessModel::norm_cap(double grad_dual_norm) const {
  switch (kind_) {
    case Kind::Exact:
      return grad_dual_norm;
    case Kind::Relative:
      return (1.0 + param_) * grad_dual_norm;
    case Kind::Absolute:
      return param_ + grad_dual_norm;
  }
  return grad_dual_norm;
}

NoisySubgradient query(const Problem& pr, const NormPair& norms, const InexactnessModel& model,
                       const Vector& x, Rng& rng, NoiseMagnitude magnitude) {
  Vector g = pr.subgrad(x);
  if (model.kind() == InexactnessModel::Kind::Exact || model.error_budget(norms.dual(g)) == 0.0)
    return exact_result(norms, model, std::move(g));
  Vector u = random_unit(norms, g.dim(), rng);
  double scale = magnitude_scale(magnitude, rng);
  return perturb(norms, model, std::move(g), u, scale);
}

NoisySubgradient adversarial_query(const Problem& pr, const NormPair& norms,
                                   const InexactnessModel& model, const Vector& x, Rng& rng,
                                   NoiseMagnitude magnitude) {
  if (!pr.optimum) throw std::invalid_argument("adversarial oracle needs a known optimum");
  Vector g = pr.subgrad(x);
  if (model.kind() == InexactnessModel::Kind::Exact || model.error_budget(norms.dual(g)) == 0.0)
    return exact_result(norms, model, std::move(g));
  Vector dir = pr.optimum->x_star - x;
  double len = norms.dual(dir);
  Vector u = len > 0.0 ? (1.0 / len) * dir : random_unit(norms, g.dim(), rng);
  double scale = magnitude_scale(magnitude, rng);
  return perturb(norms, model, std::move(g), u, scale);
}

SubgradientOracle::SubgradientOracle(const Problem& pr, const NormPair& norms,
                                     InexactnessModel model, std::uint64_t seed,
                                     NoiseDirection direction, NoiseMagnitude magnitude)
    : problem_(pr),
      norms_(norms),
      model_(model),
      rng_(seed),
      direction_(direction),
      magnitude_(magnitude) {
  if (direction_ == NoiseDirection::Adversarial && !pr.optimum)
    throw std::invalid_argument("adversarial oracle needs a known optimum");
}

NoisySubgradient SubgradientOracle::operator()(const Vector& x) {
  if (direction_ == NoiseDirection::Adversarial)
    return adversarial_query(problem_, norms_, model_, x, rng_, magnitude_);
  return query(problem_, norms_, model_, x, rng_, magnitude_);
}

}  // namespace bsubgrad
