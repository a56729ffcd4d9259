#include "hybrid_centers/core_model.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "hybrid_centers/errors.hpp"

namespace hc {

double default_tolerance() {
  if (const char* env = std::getenv(kToleranceEnvVar)) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && std::isfinite(v) && v > 0.0) return v;
  }
  return kDefaultTolerance;
}

bool nearly_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

Side side_from_int(int s) {
  if (s == 1) return Side::left;
  if (s == 2) return Side::right;
  throw InvalidParameter("side must be 1 or 2, got " + std::to_string(s));
}

LinearCenter::LinearCenter(double b, double omega, int delta, double c, double d)
    : b_(b), omega_(omega), delta_(delta), c_(c), d_(d) {
  if (!std::isfinite(b) || !std::isfinite(omega) || !std::isfinite(c) || !std::isfinite(d))
    throw InvalidParameter("center parameters must be finite");
  if (omega == 0.0) throw InvalidParameter("omega must be nonzero");
  if (delta != 1 && delta != -1) throw InvalidParameter("delta must be +1 or -1");
}

double LinearCenter::frequency() const { return std::sqrt(3.0 * b_ * b_ + omega_ * omega_); }

double LinearCenter::period() const { return 2.0 * std::numbers::pi / frequency(); }

ResetPolynomial::ResetPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw InvalidParameter("reset polynomial must have degree >= 1");
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw InvalidParameter("reset coefficients must be finite");
  if (coeffs_.back() == 0.0) throw InvalidParameter("reset leading coefficient must be nonzero");
}

double ResetPolynomial::operator()(double y) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

long double ResetPolynomial::eval_extended(long double y) const {
  long double acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

double ResetPolynomial::derivative(double y) const {
  double acc = 0.0;
  for (std::size_t k = coeffs_.size() - 1; k >= 1; --k) acc = acc * y + static_cast<double>(k) * coeffs_[k];
  return acc;
}

HybridSystem logistic_square_system() {
  return HybridSystem{LinearCenter(0.0, 1.0, 1, 0.0, 0.0), LinearCenter(0.0, 1.0, -1, 0.0, 0.0),
                      ResetPolynomial({0.0, -4.0, -4.0})};
}

PlanePoint vector_field_eval(const LinearCenter& center, PlanePoint p) {
  const double b = center.b();
  const double delta = center.delta();
  return {-b * p.x - delta * center.stiffness() * p.y + center.d(),
          delta * p.x + b * p.y + center.c()};
}

double first_integral(const LinearCenter& center, PlanePoint p) {
  const double b = center.b();
  const double delta = center.delta();
  return 2.0 * center.c() * p.x - 2.0 * center.d() * p.y + delta * p.x * p.x + 2.0 * b * p.x * p.y +
         delta * center.stiffness() * p.y * p.y;
}

PlanePoint first_integral_gradient(const LinearCenter& center, PlanePoint p) {
  const double b = center.b();
  const double delta = center.delta();
  return {2.0 * center.c() + 2.0 * delta * p.x + 2.0 * b * p.y,
          -2.0 * center.d() + 2.0 * b * p.x + 2.0 * delta * center.stiffness() * p.y};
}

double eta(const LinearCenter& center) {
  return 2.0 * center.d() * center.delta() / center.stiffness();
}

long double eta_extended(const LinearCenter& center) {
  const long double b = center.b(), w = center.omega();
  return 2.0L * center.d() * center.delta() / (4.0L * b * b + w * w);
}

double tangency_point(const LinearCenter& center) { return eta(center) / 2.0; }

PlanePoint equilibrium(const LinearCenter& center) {
  // [-b, -delta K; delta, b] (x, y) = (-d, -c), determinant 3b^2 + omega^2 > 0.
  const double b = center.b();
  const double delta = center.delta();
  const double k = center.stiffness();
  const double det = 3.0 * b * b + center.omega() * center.omega();
  return {(-center.d() * b - delta * k * center.c()) / det, (b * center.c() + delta * center.d()) / det};
}

bool equilibrium_on_sigma(const LinearCenter& center, double tol) {
  const PlanePoint e = equilibrium(center);
  return std::abs(e.x) <= tol * (1.0 + std::abs(e.y));
}

}  // namespace hc
