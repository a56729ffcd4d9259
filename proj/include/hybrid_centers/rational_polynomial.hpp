#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hc {

/// Univariate polynomial with exact rational coefficients (index k holds the
/// coefficient of y^k). Always trimmed: the zero polynomial has no
/// coefficients and degree -1.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<mpq_class> coeffs);

  static RationalPolynomial constant(const mpq_class& c);
  /// a + b y
  static RationalPolynomial linear(const mpq_class& a, const mpq_class& b);
  /// Every double is a dyadic rational, so the conversion is exact.
  static RationalPolynomial from_doubles(std::span<const double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  mpq_class coeff(std::size_t k) const;
  const mpq_class& leading() const { return coeffs_.back(); }

  mpq_class operator()(const mpq_class& x) const;
  /// Horner evaluation with the coefficients rounded to double.
  double eval(double x) const;
  std::vector<double> to_doubles() const;

  RationalPolynomial derivative() const;
  /// this(inner(y))
  RationalPolynomial compose(const RationalPolynomial& inner) const;
  RationalPolynomial monic() const;

  RationalPolynomial operator-() const;
  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const mpq_class& s, const RationalPolynomial& p);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

/// Quotient and remainder of a / b; b must be nonzero.
std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b);
/// Monic greatest common divisor (zero if both are zero).
RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b);
/// p / gcd(p, p'): same real roots, all simple.
RationalPolynomial square_free_part(const RationalPolynomial& p);

/// -1, 0 or +1.
int sign_at(const RationalPolynomial& p, const mpq_class& x);

/// A real root enclosed in the open interval (lo, hi), or equal to lo when
/// exact. Roots of the square-free part are simple, so a non-exact enclosure
/// always has opposite nonzero signs at its ends.
struct IsolatedRoot {
  mpq_class lo;
  mpq_class hi;
  bool exact = false;
  double value() const;
  /// Conservative double bounds.
  double lower() const;
  double upper() const;
};

class SturmSequence {
 public:
  /// `p` should be square-free.
  explicit SturmSequence(const RationalPolynomial& p);
  int sign_variations(const mpq_class& x) const;
  /// Number of distinct roots in the open interval (lo, hi).
  int count_open(const mpq_class& lo, const mpq_class& hi) const;
  const RationalPolynomial& base() const { return chain_.front(); }

 private:
  std::vector<RationalPolynomial> chain_;
  /// Positive integer multiples of the chain, for cheap sign evaluation.
  std::vector<std::vector<mpz_class>> scaled_;
};

/// Power of two strictly larger than the modulus of every root.
mpq_class root_bound(const RationalPolynomial& p);

/// All distinct real roots of a nonzero polynomial, sorted ascending, each
/// refined until its enclosure is narrower than rel_width * max(1, |root|).
std::vector<IsolatedRoot> real_roots(const RationalPolynomial& p, double rel_width = 1e-12);

/// Halve the enclosure of `root` (a root of the square-free `p`) until it is
/// narrower than rel_width * max(1, |root|).
void refine(IsolatedRoot& root, const RationalPolynomial& square_free, double rel_width);

/// Exact comparison of a root of the square-free `p` against a rational:
/// -1 if root < q, 0 if equal, +1 if greater. Refines `root` as needed.
int compare(IsolatedRoot& root, const RationalPolynomial& square_free, const mpq_class& q);

}  // namespace hc
