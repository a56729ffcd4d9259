#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hybrid_centers/errors.hpp"
#include "hybrid_centers/symbolic_chaos.hpp"

using namespace hc;

namespace {

BitString random_bits(std::mt19937_64& rng, std::size_t n, bool exact = true) {
  BitString s;
  s.exact = exact;
  for (std::size_t i = 0; i < n; ++i) s.bits.push_back(static_cast<std::uint8_t>(rng() & 1));
  return s;
}

// Digits of F^m(x) for F = T^2: s_{2m+j} xor s_{2m}.
std::string f_iterate_digits(const BitString& s, std::size_t m, std::size_t len) {
  std::string out;
  const std::uint8_t key = m == 0 ? 0 : s.digit(2 * m);
  for (std::size_t j = 1; j <= len; ++j) out.push_back(static_cast<char>('0' + (s.digit(2 * m + j) ^ key)));
  return out;
}

double inverse_h(double p) { return 2 / std::numbers::pi * std::asin(std::sqrt(p)); }

}  // namespace

TEST_CASE("maps and domain errors") {
  CHECK(tent(0.25) == 0.5);
  CHECK(tent(0.75) == 0.5);
  CHECK(logistic(0.5) == 1.0);
  CHECK(conjugacy_h(1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(tent(1.5), OutOfDomain);
  CHECK_THROWS_AS(logistic(-0.1), OutOfDomain);
  CHECK_THROWS_AS(conjugacy_h(2), OutOfDomain);
}

TEST_CASE("bit strings") {
  const BitString s = BitString::parse("0110");
  CHECK(s.str() == "0110");
  CHECK(s.value() == 0.375);
  CHECK(s.digit(5) == 0);
  CHECK(tent_exact_iterate(s, 1).str() == "110");
  const BitString inexact = BitString::parse("0110", false);
  CHECK_THROWS_AS(inexact.digit(5), InsufficientPrecision);
  CHECK_THROWS_AS(tent_exact_iterate(inexact, 4), InsufficientPrecision);
  CHECK_THROWS(BitString::parse("01a"));
}

TEST_CASE("conjugacy identities on a grid") {
  double e1 = 0, e2 = 0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = i / 10000.0;
    e1 = std::max(e1, std::abs(conjugacy_h(tent(x)) - logistic(conjugacy_h(x))));
    e2 = std::max(e2, std::abs(conjugacy_h(tent(tent(x))) - logistic(logistic(conjugacy_h(x)))));
  }
  CHECK(e1 < 1e-12);
  CHECK(e2 < 1e-11);
}

TEST_CASE("exact iteration against floating tent") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 200; ++t) {
    const BitString s = random_bits(rng, 64);
    double x = s.value();
    for (std::size_t k = 1; k <= 20; ++k) {
      x = tent(x);
      const double exact = tent_exact_iterate(s, k).value();
      CHECK(std::abs(exact - x) <= std::ldexp(1.0, static_cast<int>(k) - 52));
    }
  }
}

TEST_CASE("double shift depends only on the second digit") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 500; ++t) {
    const BitString s = random_bits(rng, 40, t % 2 == 0);
    const BitString f = tent_exact_iterate(s, 2);
    CHECK(f.str() == f_iterate_digits(s, 1, 38));
  }
}

TEST_CASE("fixed points of the squared logistic map") {
  const auto pts = logistic_periodic_points(2);
  const std::vector<double> expect{0, (5 - std::sqrt(5.0)) / 8, 0.75, (5 + std::sqrt(5.0)) / 8};
  REQUIRE(pts.size() == expect.size());
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(pts[i] - expect[i]) < 1e-10);
}

TEST_CASE("periodic points pull back to tent periodic points") {
  for (int m = 1; m <= 6; ++m) {
    const auto pts = logistic_periodic_points(m);
    CHECK(pts.size() == static_cast<std::size_t>(1 << m));
    for (double p : pts) {
      double x = inverse_h(p);
      const double x0 = x;
      for (int k = 0; k < m; ++k) x = tent(x);
      CHECK(std::abs(x - x0) < 1e-9);
    }
  }
  std::vector<double> all;
  for (int m = 1; m <= 8; ++m)
    for (double p : logistic_periodic_points(m)) all.push_back(p);
  CHECK(max_gap(all) < 0.05);
}

TEST_CASE("dense orbit blocks") {
  CHECK(dense_orbit_blocks(2) == std::vector<std::string>{"00", "10"});
  CHECK(dense_orbit_blocks(4) ==
        std::vector<std::string>{"0000", "0010", "0100", "1000", "0110", "1010", "1100", "1110"});
  CHECK(dense_orbit_prefix(4).str() == "0010" "0000001001001000011010101100" "1110");
}

bool appears(const BitString& x, const std::string& block) {
  for (std::size_t m = 0; 2 * m + block.size() <= x.size(); ++m)
    if (f_iterate_digits(x, m, block.size()) == block) return true;
  return false;
}

TEST_CASE("listed blocks show up along the double-shift orbit") {
  const BitString x = dense_orbit_prefix(8);
  for (int len = 2; len <= 8; len += 2)
    for (const auto& block : dense_orbit_blocks(len)) CHECK_MESSAGE(appears(x, block), block);
  // any block of length L sits in front of some listed block of length L + 2
  for (int len = 2; len <= 6; len += 2) {
    for (int v = 0; v < (1 << len); ++v) {
      std::string block;
      for (int j = len - 1; j >= 0; --j) block.push_back(static_cast<char>('0' + ((v >> j) & 1)));
      CHECK_MESSAGE(appears(x, block), block);
    }
  }
  const TransitivityWitness w = transitivity_witness(8);
  CHECK(w.covered_length == 6);
  CHECK_FALSE(w.hits.empty());
  for (const auto& [block, m] : w.hits) {
    CHECK(f_iterate_digits(x, static_cast<std::size_t>(m), block.size()) == block);
    CHECK(tent_exact_iterate(x, 2 * static_cast<std::size_t>(m)).str().substr(0, block.size()) == block);
  }
}

TEST_CASE("certificate for the logistic example") {
  const ChaosCertificate c = certify_chaos(logistic_square_system());
  CHECK(c.passes());
  CHECK(c.failed_clauses.empty());
  CHECK(c.periodic_density_gap < 0.05);
  CHECK(c.transitivity_blocks == 8);
  CHECK(c.sensitivity_estimate > 0);
  const HybridSystem other{LinearCenter(0, 1, 1, 0, 0), LinearCenter(0, 1, -1, 0, 0), ResetPolynomial({0, 1, 1})};
  const ChaosCertificate bad = certify_chaos(other);
  CHECK_FALSE(bad.passes());
  CHECK_FALSE(bad.failed_clauses.empty());
}
