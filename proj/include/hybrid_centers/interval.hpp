#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace hc {

/// Closed interval [lo, hi] with outward-rounded arithmetic. Used as an
/// enclosure of function ranges during numeric root isolation.
struct Range {
  double lo = 0.0;
  double hi = 0.0;

  static Range point(double x) { return {x, x}; }
  double width() const { return hi - lo; }
  double mid() const { return lo + 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  bool intersects(const Range& o) const { return lo <= o.hi && o.lo <= hi; }
  bool within(const Range& o) const { return o.lo <= lo && hi <= o.hi; }
  double magnitude() const;
};

Range operator+(const Range& a, const Range& b);
Range operator-(const Range& a, const Range& b);
Range operator-(const Range& a);
Range operator*(const Range& a, const Range& b);
Range operator*(double s, const Range& a);
Range operator+(double s, const Range& a);
Range hull(const Range& a, const Range& b);

/// Horner enclosure of sum coeffs[k] x^k over x.
Range horner(std::span<const double> coeffs, const Range& x);
double horner(std::span<const double> coeffs, double x);
/// Coefficients of the derivative polynomial.
std::vector<double> derivative_coeffs(std::span<const double> coeffs);

/// A scalar function with pointwise values and range enclosures of itself and
/// its derivative. `feasible` (optional) may reject a box outright.
struct EnclosedFunction {
  std::function<double(double)> value;
  std::function<Range(const Range&)> range;
  std::function<Range(const Range&)> derivative_range;
  std::function<bool(const Range&)> feasible;
};

struct NumericRoot {
  double y = 0.0;
  /// Found in a box where the derivative enclosure excludes zero and the
  /// function changes sign, so the root is simple and unique in that box.
  bool certified = false;
};

struct IsolationOptions {
  /// Boxes narrower than this are not split further.
  double min_width = 1e-13;
  /// Roots closer than this (relative to 1 + |y|) are merged.
  double merge_tol = 1e-12;
  std::size_t max_boxes = 5'000'000;
};

/// Branch-and-bound root isolation over a closed window: discard boxes whose
/// range excludes zero, bisect-refine monotone boxes with a sign change, and
/// split everything else. Returns roots sorted ascending.
std::vector<NumericRoot> isolate_roots(const EnclosedFunction& f, const Range& window,
                                       const IsolationOptions& options = {});

/// Bisection to full double precision on [a, b] where f(a), f(b) have opposite signs.
double bisect_root(const std::function<double(double)>& f, double a, double b);

}  // namespace hc
