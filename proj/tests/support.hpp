#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hybrid_centers/core_model.hpp"
#include "hybrid_centers/return_map.hpp"

namespace hc::test {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline LinearCenter random_center(std::mt19937_64& rng) {
  const int delta = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
  return LinearCenter(uniform(rng, -5, 5), uniform(rng, 0.2, 5), delta, uniform(rng, -5, 5), uniform(rng, -5, 5));
}

inline ResetPolynomial random_reset(std::mt19937_64& rng, int degree) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (auto& v : c) v = uniform(rng, -5, 5);
  while (std::abs(c.back()) < 1e-3) c.back() = uniform(rng, -5, 5);
  return ResetPolynomial(c);
}

inline HybridSystem random_system(std::mt19937_64& rng, int degree) {
  auto c1 = random_center(rng);
  auto c2 = random_center(rng);
  return {c1, c2, random_reset(rng, degree)};
}

/// Affine system with slope of modulus in [lo, hi] and random sign.
inline HybridSystem random_affine(std::mt19937_64& rng, double lo, double hi) {
  double a = uniform(rng, lo, hi);
  if (std::bernoulli_distribution(0.5)(rng)) a = -a;
  auto c1 = random_center(rng);
  auto c2 = random_center(rng);
  return {c1, c2, ResetPolynomial({uniform(rng, -5, 5), a})};
}

// Fixed-step RK4 on the raw field. Independent of the closed-form flow.
inline PlanePoint rk4(const LinearCenter& c, PlanePoint p, double t, int steps) {
  const double h = t / steps;
  auto f = [&](PlanePoint q) {
    return PlanePoint{-c.b() * q.x - c.delta() * c.stiffness() * q.y + c.d(),
                      c.delta() * q.x + c.b() * q.y + c.c()};
  };
  for (int i = 0; i < steps; ++i) {
    const PlanePoint k1 = f(p);
    const PlanePoint k2 = f({p.x + 0.5 * h * k1.x, p.y + 0.5 * h * k1.y});
    const PlanePoint k3 = f({p.x + 0.5 * h * k2.x, p.y + 0.5 * h * k2.y});
    const PlanePoint k4 = f({p.x + h * k3.x, p.y + h * k3.y});
    p.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    p.y += h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
  }
  return p;
}

inline double xdot(const LinearCenter& c, double y) { return -c.delta() * c.stiffness() * y + c.d(); }

// Integrates from (0, y) into the half plane until x changes sign again and
// returns the landing y. Event located by bisection on RK4 substeps.
inline double rk_return(const LinearCenter& c, double y) {
  const double w = std::sqrt(3 * c.b() * c.b() + c.omega() * c.omega());
  const double dt = 2 * M_PI / w / 4000;
  const double sign = xdot(c, y) < 0 ? -1.0 : 1.0;
  PlanePoint p{0.0, y};
  // step off the line first
  p = rk4(c, p, dt, 4);
  for (int i = 0; i < 8000; ++i) {
    const PlanePoint q = rk4(c, p, dt, 4);
    if (q.x * sign <= 0) {
      double lo = 0, hi = dt;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (rk4(c, p, mid, 4).x * sign > 0) lo = mid; else hi = mid;
      }
      return rk4(c, p, 0.5 * (lo + hi), 4).y;
    }
    p = q;
  }
  return std::nan("");
}

struct OracleReturn {
  double y = 0.0;
  int branch = 0;
};

// First return by direct integration: try side 1, jump, try side 2, jump.
inline OracleReturn oracle_return(const HybridSystem& s, double y) {
  const bool in1 = xdot(s.center1, y) < 0;
  double z = in1 ? rk_return(s.center1, y) : y;
  z = s.reset(z);
  const bool in2 = xdot(s.center2, z) > 0;
  double u = in2 ? rk_return(s.center2, z) : z;
  u = s.reset(u);
  const int branch = in1 ? (in2 ? 1 : 2) : (in2 ? 3 : 4);
  return {u, branch};
}

/// Distance from y to the nearest boundary of the partition.
inline double boundary_distance(const BranchPartition& p, double y) {
  double best = INFINITY;
  for (const auto& b : p.boundary_points()) best = std::min(best, std::abs(b.y - y));
  return best;
}

}  // namespace hc::test
