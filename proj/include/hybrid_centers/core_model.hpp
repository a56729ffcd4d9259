#pragma once

#include <span>
#include <vector>

#include "hybrid_centers/tolerance.hpp"

namespace hc {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

/// The two flow zones separated by the switching line x = 0.
enum class Side { left = 1, right = 2 };

inline Side other(Side s) { return s == Side::left ? Side::right : Side::left; }
inline int to_int(Side s) { return static_cast<int>(s); }
Side side_from_int(int s);

/**
 * \brief A planar linear center in normal form.
 *
 * The field is
 *   x' = -b x - delta (4 b^2 + omega^2) y + d
 *   y' =  delta x + b y + c
 * with omega != 0 and delta in {-1, +1}. Only normal-form input is accepted;
 * no reduction from an arbitrary linear center is attempted.
 */
class LinearCenter {
 public:
  LinearCenter(double b, double omega, int delta, double c, double d);

  double b() const { return b_; }
  double omega() const { return omega_; }
  int delta() const { return delta_; }
  double c() const { return c_; }
  double d() const { return d_; }

  /// 4 b^2 + omega^2, the coefficient coupling x' to y.
  double stiffness() const { return 4.0 * b_ * b_ + omega_ * omega_; }
  /// sqrt(3 b^2 + omega^2): the eigenvalues of the linear part are +-i times this.
  double frequency() const;
  double period() const;

  friend bool operator==(const LinearCenter&, const LinearCenter&) = default;

 private:
  double b_;
  double omega_;
  int delta_;
  double c_;
  double d_;
};

/// Reset map on the switching line, coefficient k multiplies y^k.
class ResetPolynomial {
 public:
  explicit ResetPolynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  double operator()(double y) const;
  double derivative(double y) const;
  /// Horner in long double. The return map is badly conditioned for large
  /// coefficients, so compositions are evaluated this way and rounded once.
  long double eval_extended(long double y) const;

  friend bool operator==(const ResetPolynomial&, const ResetPolynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

/// center1 governs x < 0, center2 governs x > 0.
struct HybridSystem {
  LinearCenter center1;
  LinearCenter center2;
  ResetPolynomial reset;

  const LinearCenter& center(Side s) const { return s == Side::left ? center1 : center2; }
  friend bool operator==(const HybridSystem&, const HybridSystem&) = default;
};

/// The degree-two example whose return map is the square of the logistic
/// map on [0, 1]: X1 = (-y, x), X2 = -X1, reset -4 y (1 + y).
HybridSystem logistic_square_system();

PlanePoint vector_field_eval(const LinearCenter& center, PlanePoint p);

/// Quadratic first integral 2cx - 2dy + delta x^2 + 2bxy + delta(4b^2+omega^2) y^2.
double first_integral(const LinearCenter& center, PlanePoint p);
PlanePoint first_integral_gradient(const LinearCenter& center, PlanePoint p);

/// 2 d delta / (4 b^2 + omega^2); the chord on the switching line maps y to eta - y.
double eta(const LinearCenter& center);

/// eta in long double.
long double eta_extended(const LinearCenter& center);

/// eta / 2, where the x-component of the field vanishes on the switching line.
double tangency_point(const LinearCenter& center);

PlanePoint equilibrium(const LinearCenter& center);

/// True when the equilibrium sits on the switching line (then it is the fold).
bool equilibrium_on_sigma(const LinearCenter& center, double tol = default_tolerance());

}  // namespace hc
