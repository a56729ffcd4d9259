#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "hybrid_centers/orbit_engine.hpp"
#include "hybrid_centers/return_map.hpp"
#include "support.hpp"

using namespace hc;

namespace {

mpq_class exact_eta_oracle(const LinearCenter& c) {
  const mpq_class b(c.b()), w(c.omega()), d(c.d());
  return mpq_class(2 * c.delta()) * d / (4 * b * b + w * w);
}

}  // namespace

TEST_CASE("logistic example partition") {
  const HybridSystem s = logistic_square_system();
  const BranchPartition p = build_partition(s);
  const std::vector<mpq_class> expect{0, 16, -80, 128, -64};
  CHECK(p.branch(1).expr.coeffs() == expect);
  CHECK(p.branch(1).domain == std::vector<OpenInterval>{{0, 1}});
  CHECK(p.branch(2).domain == std::vector<OpenInterval>{{1, INFINITY}});
  CHECK(p.branch(3).domain == std::vector<OpenInterval>{{-1, 0}});
  CHECK(p.branch(4).domain == std::vector<OpenInterval>{{-INFINITY, -1}});
  REQUIRE(p.boundary_points().size() == 3);
  for (const auto& b : p.boundary_points()) {
    CHECK(b.exact);
    CHECK(b.candidates.size() == 2);
    for (const auto& c : b.candidates) CHECK(c.value == 0.0);
  }
  // branch 1 is the square of 4y(1-y)
  for (double y : {0.1, 0.3, 0.77}) {
    const double f = 4 * y * (1 - y);
    CHECK(eval_return(s, p, y).value == doctest::Approx(4 * f * (1 - f)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(eval_return(s, p, 0.0), BoundaryPoint);
  CHECK(eval_return_resolved(s, p, 1.0).value == 0.0);
  try {
    eval_return(s, p, 1.0);
  } catch (const BoundaryPoint& e) {
    CHECK(e.candidates().size() == 2);
  }
}

TEST_CASE("transversal intervals") {
  const LinearCenter c(1, 2, 1, 3, 4);  // eta = 1, fold 0.5, equilibrium x = -1
  const auto t1 = transversal_intervals(c, Side::left);
  CHECK(t1.entering == OpenInterval{0.5, INFINITY});
  CHECK(t1.leaving == OpenInterval{-INFINITY, 0.5});
  CHECK(t1.fold_kind == FoldKind::visible);
  const auto t2 = transversal_intervals(c, Side::right);
  CHECK(t2.entering == OpenInterval{-INFINITY, 0.5});
  CHECK(t2.fold_kind == FoldKind::invisible);
  CHECK(transversal_intervals(logistic_square_system().center1, Side::left).fold_kind ==
        FoldKind::equilibrium_on_sigma);
}

TEST_CASE("affine reduction is exact") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    const HybridSystem s = test::random_affine(rng, 0.1, 3);
    const BranchPartition p = build_partition(s);
    const mpq_class a(s.reset.coeffs()[1]), b(s.reset.coeffs()[0]);
    const mpq_class e1 = exact_eta_oracle(s.center1), e2 = exact_eta_oracle(s.center2);
    const mpq_class beta[4] = {b * (1 - a) + a * (e2 - a * e1), b * (1 + a) + a * a * e1, b * (1 - a) + a * e2,
                               b * (1 + a)};
    const mpq_class slope[4] = {a * a, -a * a, -a * a, a * a};
    for (int j = 0; j < 4; ++j) {
      CHECK(p.branch(j + 1).expr.coeff(0) == beta[j]);
      CHECK(p.branch(j + 1).expr.coeff(1) == slope[j]);
    }
  }
}

TEST_CASE("branch formulas match direct composition") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    const HybridSystem s = test::random_system(rng, 1 + t % 3);
    const BranchPartition p = build_partition(s);
    const double e1 = eta(s.center1), e2 = eta(s.center2);
    const auto& f = s.reset;
    const double y = test::uniform(rng, -1, 1);
    const double direct[4] = {f(e2 - f(e1 - y)), f(f(e1 - y)), f(e2 - f(y)), f(f(y))};
    for (int j = 1; j <= 4; ++j) {
      CHECK(p.branch(j).expr.eval(y) == doctest::Approx(direct[j - 1]).epsilon(1e-9));
      CHECK(eval_branch(s, j, y) == doctest::Approx(direct[j - 1]).epsilon(1e-12));
    }
  }
}

TEST_CASE("component bound and coverage") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 5;
    const HybridSystem s = test::random_system(rng, n);
    const BranchPartition p = build_partition(s);
    std::vector<OpenInterval> all;
    for (const auto& b : p.branches()) {
      CHECK(static_cast<int>(b.domain.size()) <= n);
      all.insert(all.end(), b.domain.begin(), b.domain.end());
    }
    std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
    REQUIRE(!all.empty());
    CHECK(all.front().lo == -INFINITY);
    CHECK(all.back().hi == INFINITY);
    std::vector<double> joints;
    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
      CHECK(all[i].hi == all[i + 1].lo);
      joints.push_back(all[i].hi);
    }
    std::vector<double> bps;
    for (const auto& b : p.boundary_points()) bps.push_back(b.y);
    CHECK(joints == bps);
  }
}

TEST_CASE("eval_return against an integrating oracle") {
  std::mt19937_64 rng(24);
  int mismatches = 0, samples = 0;
  double worst = 0;
  for (int t = 0; t < 40; ++t) {
    const HybridSystem s = test::random_system(rng, 1 + t % 3);
    const BranchPartition p = build_partition(s);
    for (int k = 0; k < 10; ++k) {
      const double y = test::uniform(rng, -2, 2);
      if (test::boundary_distance(p, y) < 1e-4) continue;
      const ReturnValue r = eval_return(s, p, y);
      const test::OracleReturn o = test::oracle_return(s, y);
      mismatches += r.branch != o.branch;
      worst = std::max(worst, std::abs(r.value - o.y) / (1 + std::abs(o.y)));
      ++samples;
    }
  }
  CHECK(samples > 300);
  CHECK(mismatches == 0);
  CHECK(worst < 1e-6);
}

TEST_CASE("derivative matches finite differences") {
  std::mt19937_64 rng(25);
  for (int t = 0; t < 100; ++t) {
    const HybridSystem s = test::random_system(rng, 1 + t % 3);
    const BranchPartition p = build_partition(s);
    const double y = test::uniform(rng, -1, 1);
    if (test::boundary_distance(p, y) < 1e-3) continue;
    const double h = 1e-6;
    const double fd = (eval_return(s, p, y + h).value - eval_return(s, p, y - h).value) / (2 * h);
    const double d = return_derivative(s, p, y);
    CHECK(std::abs(fd - d) <= 1e-4 * (1 + std::abs(d)));
  }
}
