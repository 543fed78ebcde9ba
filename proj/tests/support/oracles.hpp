#pragma once

// Reference computations used by the tests. Each is written independently of
// the library code it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace oracle {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double max_sq_dist(const std::vector<Point2>& anchors, double x, double y) {
  double best = 0.0;
  for (const auto& a : anchors) best = std::max(best, (x - a.x) * (x - a.x) + (y - a.y) * (y - a.y));
  return best;
}

struct GridMin {
  Point2 x;
  double f = 0.0;
};

// Minimises max_i ||x - A_i||^2 over the disc of radius R by exhaustive grid
// search: a 2001 x 2001 grid over [-R, R]^2, then repeated re-gridding of a
// +-20 cell window around the incumbent until the spacing is below 1e-10.
// Reliable to about 1e-6 in value; the zoom can stall along the ridge of a
// two-point optimum, so use meb_enumerate for the centre.
inline GridMin meb_grid(const std::vector<Point2>& anchors, double radius) {
  const int pts = 2001;
  double lo_x = -radius, lo_y = -radius, step = 2.0 * radius / (pts - 1);
  GridMin best{{0.0, 0.0}, std::numeric_limits<double>::infinity()};
  auto scan = [&](int count) {
    GridMin local = best;
    for (int i = 0; i < count; ++i) {
      double x = lo_x + i * step;
      for (int j = 0; j < count; ++j) {
        double y = lo_y + j * step;
        if (x * x + y * y > radius * radius) continue;
        double f = max_sq_dist(anchors, x, y);
        if (f < local.f) local = {{x, y}, f};
      }
    }
    best = local;
  };
  scan(pts);
  const int window = 20, fine = 401;
  while (step > 1e-10) {
    double half = window * step;
    lo_x = best.x.x - half;
    lo_y = best.x.y - half;
    step = 2.0 * half / (fine - 1);
    scan(fine);
  }
  return best;
}

// Smallest enclosing circle by enumeration: in the plane the optimum is the
// diametral circle of some pair or the circumcircle of some triple, so the
// smallest enclosing candidate is exact. O(m^4).
inline GridMin meb_enumerate(const std::vector<Point2>& pts) {
  GridMin best{pts.front(), std::numeric_limits<double>::infinity()};
  if (pts.size() == 1) return {pts.front(), 0.0};
  auto consider = [&](double cx, double cy, double r2) {
    if (r2 >= best.f) return;
    for (const auto& p : pts)
      if ((p.x - cx) * (p.x - cx) + (p.y - cy) * (p.y - cy) > r2 * (1 + 1e-12) + 1e-300) return;
    best = {{cx, cy}, r2};
  };
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto& a = pts[i];
      const auto& b = pts[j];
      double cx = 0.5 * (a.x + b.x), cy = 0.5 * (a.y + b.y);
      consider(cx, cy, (a.x - cx) * (a.x - cx) + (a.y - cy) * (a.y - cy));
      for (std::size_t k = j + 1; k < m; ++k) {
        const auto& c = pts[k];
        double bx = b.x - a.x, by = b.y - a.y, qx = c.x - a.x, qy = c.y - a.y;
        double det = 2.0 * (bx * qy - by * qx);
        if (std::abs(det) < 1e-14) continue;
        double b2 = bx * bx + by * by, q2 = qx * qx + qy * qy;
        double ux = (qy * b2 - by * q2) / det, uy = (bx * q2 - qx * b2) / det;
        consider(a.x + ux, a.y + uy, ux * ux + uy * uy);
      }
    }
  }
  // Report the value of the objective itself at the chosen centre.
  best.f = max_sq_dist(pts, best.x.x, best.x.y);
  return best;
}

// max(1, ceil(2 M^2 / (mu eps) - 1)) for dyadic M = a/2^p, mu = b/2^q,
// eps = c/2^r, in exact integer arithmetic:
//   2 M^2 / (mu eps) = 2 a^2 2^(q+r) / (b c 2^(2p)).
struct Dyadic {
  std::uint64_t num;
  unsigned shift;
  double value() const { return std::ldexp(static_cast<double>(num), -static_cast<int>(shift)); }
};

inline std::uint64_t iterations_exact(Dyadic m, Dyadic mu, Dyadic eps) {
  using u128 = unsigned __int128;
  u128 num = u128(2) * m.num * m.num;
  u128 den = u128(mu.num) * eps.num;
  int exp2 = static_cast<int>(mu.shift + eps.shift) - 2 * static_cast<int>(m.shift);
  if (exp2 >= 0)
    num <<= exp2;
  else
    den <<= -exp2;
  u128 ceil_q = (num + den - 1) / den;
  if (ceil_q <= 1) return 1;
  u128 n = ceil_q - 1;
  return n < 1 ? 1 : static_cast<std::uint64_t>(n);
}

// x^_N = sum_k k x_k / sum_k k.
inline std::vector<double> weighted_average(const std::vector<std::vector<double>>& xs) {
  std::vector<double> acc(xs.front().size(), 0.0);
  double w = 0.0;
  for (std::size_t k = 1; k <= xs.size(); ++k) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += static_cast<double>(k) * xs[k - 1][i];
    w += static_cast<double>(k);
  }
  for (double& v : acc) v /= w;
  return acc;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  namespace fs = std::filesystem;
  static int counter = 0;
  fs::path p = fs::temp_directory_path() /
               ("bsubgrad-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter++));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace oracle
