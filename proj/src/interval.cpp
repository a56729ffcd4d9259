#include "hybrid_centers/interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hybrid_centers/errors.hpp"

namespace hc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Push each end out by at least one ulp of itself (covers round-to-nearest).
Range widen(double lo, double hi) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = std::numeric_limits<double>::denorm_min();
  if (std::isnan(lo) || std::isnan(hi)) return {-kInf, kInf};
  return {lo - (std::abs(lo) * kEps + kTiny), hi + (std::abs(hi) * kEps + kTiny)};
}

}  // namespace

double Range::magnitude() const { return std::max(std::abs(lo), std::abs(hi)); }

Range operator+(const Range& a, const Range& b) { return widen(a.lo + b.lo, a.hi + b.hi); }
Range operator-(const Range& a, const Range& b) { return widen(a.lo - b.hi, a.hi - b.lo); }
Range operator-(const Range& a) { return {-a.hi, -a.lo}; }

Range operator*(const Range& a, const Range& b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return widen(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

Range operator*(double s, const Range& a) {
  return s >= 0 ? widen(s * a.lo, s * a.hi) : widen(s * a.hi, s * a.lo);
}

Range operator+(double s, const Range& a) { return widen(s + a.lo, s + a.hi); }

Range hull(const Range& a, const Range& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

Range horner(std::span<const double> coeffs, const Range& x) {
  if (x.lo == x.hi) {
    const double v = horner(coeffs, x.lo);
    return widen(v - std::abs(v) * 4e-16, v + std::abs(v) * 4e-16);
  }
  Range acc = Range::point(0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = *it + acc * x;
  return acc;
}

double horner(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> derivative_coeffs(std::span<const double> coeffs) {
  std::vector<double> d;
  for (std::size_t k = 1; k < coeffs.size(); ++k) d.push_back(static_cast<double>(k) * coeffs[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

double bisect_root(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  if (fa == 0.0) return a;
  if (f(b) == 0.0) return b;
  for (int i = 0; i < 2000; ++i) {
    const double m = a + 0.5 * (b - a);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return a + 0.5 * (b - a);
}

std::vector<NumericRoot> isolate_roots(const EnclosedFunction& f, const Range& window,
                                       const IsolationOptions& options) {
  std::vector<NumericRoot> found;
  std::vector<Range> stack{window};
  std::size_t boxes = 0;
  while (!stack.empty()) {
    const Range box = stack.back();
    stack.pop_back();
    if (++boxes > options.max_boxes) throw InsufficientPrecision("root isolation exhausted its box budget");
    if (f.feasible && !f.feasible(box)) continue;
    if (!f.range(box).contains_zero()) continue;

    const double fa = f.value(box.lo);
    const double fb = f.value(box.hi);
    if (fa == 0.0) found.push_back({box.lo, true});
    if (fb == 0.0) found.push_back({box.hi, true});
    const bool sign_change = (fa < 0 && fb > 0) || (fa > 0 && fb < 0);

    if (!f.derivative_range(box).contains_zero()) {
      if (sign_change) found.push_back({bisect_root(f.value, box.lo, box.hi), true});
      continue;
    }
    const double m = box.mid();
    if (box.width() <= options.min_width * (1.0 + std::abs(m)) || m <= box.lo || m >= box.hi) {
      if (sign_change) {
        found.push_back({bisect_root(f.value, box.lo, box.hi), false});
      } else if (f.value(m) == 0.0 || f.range(Range::point(m)).contains_zero()) {
        found.push_back({m, false});
      }
      continue;
    }
    stack.push_back({m, box.hi});
    stack.push_back({box.lo, m});
  }

  std::sort(found.begin(), found.end(), [](const NumericRoot& a, const NumericRoot& b) { return a.y < b.y; });
  std::vector<NumericRoot> merged;
  for (const auto& r : found) {
    if (!merged.empty() && std::abs(r.y - merged.back().y) <= options.merge_tol * (1.0 + std::abs(r.y))) {
      if (r.certified && !merged.back().certified) merged.back() = r;
      continue;
    }
    merged.push_back(r);
  }
  return merged;
}

}  // namespace hc
