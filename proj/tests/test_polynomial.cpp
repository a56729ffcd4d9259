#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hybrid_centers/interval.hpp"
#include "hybrid_centers/rational_polynomial.hpp"

using namespace hc;

namespace {

RationalPolynomial poly(std::vector<long> c) {
  std::vector<mpq_class> q;
  for (long v : c) q.emplace_back(v);
  return RationalPolynomial(q);
}

// Product of (y - r) over integer roots.
RationalPolynomial from_roots(const std::vector<long>& roots) {
  RationalPolynomial p = RationalPolynomial::constant(1);
  for (long r : roots) p = p * RationalPolynomial::linear(-r, 1);
  return p;
}

}  // namespace

TEST_CASE("arithmetic and trimming") {
  const auto p = poly({1, 2, 3});
  const auto q = poly({-1, -2, -3});
  CHECK((p + q).is_zero());
  CHECK((p + q).degree() == -1);
  CHECK((p * q).degree() == 4);
  CHECK((p * q).coeff(4) == -9);
  CHECK(p.derivative() == poly({2, 6}));
  CHECK(p(mpq_class(1, 2)) == mpq_class(11, 4));
}

TEST_CASE("composition matches evaluation") {
  const auto outer = poly({0, -4, -4});
  const auto inner = poly({3, -1});
  const auto c = outer.compose(inner);
  for (int k = -5; k <= 5; ++k) {
    const mpq_class x(k, 3);
    CHECK(c(x) == outer(inner(x)));
  }
}

TEST_CASE("from_doubles is exact for dyadic values") {
  const std::vector<double> c{0.1, -2.5};
  const auto p = RationalPolynomial::from_doubles(c);
  CHECK(p.coeff(0).get_d() == 0.1);
  CHECK(p.coeff(1) == mpq_class(-5, 2));
}

TEST_CASE("divmod and gcd") {
  const auto a = from_roots({1, 2, 3});
  const auto b = from_roots({2, 5});
  const auto [q, r] = divmod(a, b);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());
  CHECK(gcd(a, b) == from_roots({2}));
  CHECK(square_free_part(from_roots({1, 1, 4})) == from_roots({1, 4}));
}

TEST_CASE("real roots of integer-rooted polynomials") {
  const auto p = from_roots({-3, 0, 2, 7});
  const auto roots = real_roots(p);
  REQUIRE(roots.size() == 4);
  const double expect[] = {-3, 0, 2, 7};
  for (int i = 0; i < 4; ++i) CHECK(roots[i].value() == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("irrational roots and Sturm counts") {
  // y^2 - 2
  const auto p = poly({-2, 0, 1});
  const auto roots = real_roots(p, 1e-14);
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[1].value() - std::sqrt(2.0)) < 1e-13);
  CHECK(roots[1].lower() <= std::sqrt(2.0));
  CHECK(roots[1].upper() >= std::sqrt(2.0));
  SturmSequence s(p);
  CHECK(s.count_open(0, 2) == 1);
  CHECK(s.count_open(-2, 2) == 2);
  CHECK(s.count_open(2, 3) == 0);
  // y^2 + 1 has none
  CHECK(real_roots(poly({1, 0, 1})).empty());
}

TEST_CASE("root bound exceeds every root") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int t = 0; t < 200; ++t) {
    std::vector<long> c(5);
    for (auto& v : c) v = d(rng);
    if (c.back() == 0) c.back() = 1;
    const auto p = poly(c);
    const double bound = root_bound(p).get_d();
    for (const auto& r : real_roots(p)) CHECK(std::abs(r.value()) < bound);
  }
}

TEST_CASE("compare against rationals") {
  const auto p = poly({-2, 0, 1});
  auto roots = real_roots(square_free_part(p));
  CHECK(compare(roots[1], square_free_part(p), mpq_class(141, 100)) == 1);
  CHECK(compare(roots[1], square_free_part(p), mpq_class(142, 100)) == -1);
  auto lin = real_roots(poly({-1, 2}));
  CHECK(compare(lin[0], poly({-1, 2}), mpq_class(1, 2)) == 0);
}

TEST_CASE("interval arithmetic encloses point evaluations") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3, 3);
  const std::vector<double> c{0.3, -1.7, 2.2, 0.9};
  for (int t = 0; t < 500; ++t) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const Range r = horner(c, Range{a, b});
    for (int k = 0; k <= 10; ++k) {
      const double x = a + (b - a) * k / 10;
      CHECK(r.contains(horner(c, x)));
    }
  }
  const Range p = Range{-1, 2} * Range{-3, 1};
  CHECK(p.lo <= -6);
  CHECK(p.hi >= 3);
}

TEST_CASE("numeric root isolation on a polynomial") {
  const std::vector<double> c{-6, 11, -6, 1};  // (y-1)(y-2)(y-3)
  const auto dc = derivative_coeffs(c);
  EnclosedFunction f;
  f.value = [&](double x) { return horner(c, x); };
  f.range = [&](const Range& r) { return horner(c, r); };
  f.derivative_range = [&](const Range& r) { return horner(dc, r); };
  const auto roots = isolate_roots(f, Range{-10, 10});
  REQUIRE(roots.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(roots[i].y == doctest::Approx(i + 1).epsilon(1e-12));
    CHECK(roots[i].certified);
  }
  CHECK(bisect_root([](double x) { return x * x - 2; }, 0, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}
