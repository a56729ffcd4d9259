// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "hybrid_centers/asymptotics.hpp"
#include "hybrid_centers/cycles.hpp"
#include "hybrid_centers/linear_flow.hpp"
#include "hybrid_centers/orbit_engine.hpp"
#include "hybrid_centers/symbolic_chaos.hpp"
#include "support.hpp"

using namespace hc;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (ok) detail << why;
    ok = false;
  }
};

bool run_criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= limit_s) o.fail("runtime " + std::to_string(secs) + " s over the " + std::to_string(limit_s) + " s limit");
  std::printf("%s %d %s (%.2f s) %s\n", o.ok ? "PASS" : "FAIL", id, title, secs, o.detail.str().c_str());
  std::fflush(stdout);
  return o.ok;
}

void logistic_exact(Outcome& o) {
  const BranchPartition p = build_partition(logistic_square_system());
  const std::vector<mpq_class> expect{0, 16, -80, 128, -64};
  if (p.branch(1).expr.coeffs() != expect) o.fail("branch 1 is " + p.branch(1).expr.to_string());
  const std::vector<std::vector<OpenInterval>> domains{
      {{0, 1}}, {{1, INFINITY}}, {{-1, 0}}, {{-INFINITY, -1}}};
  for (int j = 1; j <= 4; ++j)
    if (p.branch(j).domain != domains[static_cast<std::size_t>(j - 1)]) o.fail("J" + std::to_string(j) + " differs");
  for (const auto& b : p.boundary_points())
    if (!b.exact) o.fail("inexact boundary");
  o.detail << "P1 = " << p.branch(1).expr.to_string();
}

void oracle_equivalence(Outcome& o) {
  std::mt19937_64 rng(2024);
  int samples = 0, mismatches = 0;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const HybridSystem s = test::random_system(rng, 1 + t % 3);
    const BranchPartition p = build_partition(s);
    for (int k = 0; k < 100;) {
      const double y = test::uniform(rng, -2, 2);
      if (!p.branch_of(y)) continue;
      ++k;
      const ReturnValue r = eval_return(s, p, y);
      const NumericReturn n = first_return_numeric(s, y);
      mismatches += n.way != r.branch;
      worst = std::max(worst, std::abs(n.y - r.value));
      ++samples;
    }
  }
  if (mismatches > 0) o.fail(std::to_string(mismatches) + " branch mismatches; ");
  if (!(worst <= 1e-7)) o.fail("worst error " + std::to_string(worst) + "; ");
  o.detail << samples << " samples, worst |diff| " << worst;
}

void affine_uniqueness(Outcome& o) {
  std::mt19937_64 rng(2025);
  CycleSearchOptions opt;
  opt.max_period = 3;
  int with_cycle = 0, convergence_runs = 0, systems = 0;
  while (systems < 500) {
    const HybridSystem s = test::random_affine(rng, 0.1, 3);
    const double a = std::abs(s.reset.coeffs()[1]);
    if (std::abs(a - 1) < 1e-9) continue;
    ++systems;
    const BranchPartition p = build_partition(s);
    int regular = 0;
    for (const auto& c : find_cycles(s, p, opt)) {
      if (!c.regular) continue;
      ++regular;
      if (c.period != 1) o.fail("regular cycle of period " + std::to_string(c.period) + "; ");
      if (c.classification != (a < 1 ? Stability::stable : Stability::unstable)) o.fail("classification; ");
    }
    if (regular > 1) o.fail("two regular cycles; ");
    with_cycle += regular;

    const AffineCycleResult r = affine_regular_cycle(s);
    if (a >= 1 || r.outcome != AffineOutcome::isolated_cycle) continue;
    const double y_star = r.cycle->points[0];
    // starts drawn from J1 within distance 10 of the fixed point
    std::vector<double> starts;
    for (int tries = 0; starts.size() < 5 && tries < 10000; ++tries) {
      const double y = y_star + test::uniform(rng, -10, 10);
      if (p.branch_of(y) == 1) starts.push_back(y);
    }
    for (double y : starts) {
      ++convergence_runs;
      bool done = false;
      for (int k = 0; k < 500 && !done; ++k) {
        y = eval_return_resolved(s, p, y).value;
        done = std::abs(y - y_star) <= 1e-6;
      }
      if (!done) {
        std::ostringstream why;
        why << "no convergence to " << y_star << " (a = " << s.reset.coeffs()[1] << ", ended at " << y << "); ";
        o.fail(why.str());
      }
    }
  }
  o.detail << systems << " systems, " << with_cycle << " regular cycles, " << convergence_runs
           << " convergence runs";
}

void escape_and_trap(Outcome& o) {
  const LinearCenter c1(0, 1, 1, 0, 0), c2(0.5, 2, -1, 1, 0);  // d = 0: both chords through the origin
  const HybridSystem contracting{c1, c2, ResetPolynomial({1, 0.5})};
  const mpq_class r = trapping_radius_exact(contracting);
  if (r != 2) o.fail("R = " + r.get_str() + "; ");
  const BranchPartition p = build_partition(contracting);
  std::mt19937_64 rng(2026);
  for (int k = 0; k < 50; ++k) {
    double y = test::uniform(rng, -200, 200);
    int entered = -1;
    for (int j = 0; j < 500; ++j) {
      y = eval_return_resolved(contracting, p, y).value;
      const bool inside = std::abs(y) <= 2 + 1e-6;
      if (inside && entered < 0) entered = j;
      if (entered >= 0 && !inside) o.fail("left [-R, R]; ");
    }
    if (entered < 0) o.fail("never entered [-R, R]; ");
  }
  const HybridSystem squaring{c1, c2, ResetPolynomial({0, 0, 1})};
  const double y0 = escape_threshold(squaring);
  if (y0 != 1.0) o.fail("Y0 = " + std::to_string(y0) + "; ");
  const BranchPartition q = build_partition(squaring);
  for (int k = 0; k < 50; ++k) {
    double y = test::uniform(rng, 1, 2);
    if (y == 1.0) y = 2.0;
    if (k % 2) y = -y;
    int j = 0;
    while (j < 40 && std::abs(y) <= 1e6) {
      y = eval_return_resolved(squaring, q, y).value;
      ++j;
    }
    if (!(std::abs(y) > 1e6)) o.fail("start did not diverge; ");
  }
  o.detail << "R = 2, Y0 = 1";
}

void chaos_suite(Outcome& o) {
  double err = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x = i / 9999.0;
    err = std::max(err, std::abs(conjugacy_h(tent(x)) - logistic(conjugacy_h(x))));
  }
  if (!(err < 1e-12)) o.fail("conjugacy error " + std::to_string(err) + "; ");
  std::vector<double> pts;
  for (int m = 1; m <= 8; ++m)
    for (double v : logistic_periodic_points(m)) pts.push_back(v);
  const double gap = max_gap(pts);
  if (!(gap < 0.05)) o.fail("gap " + std::to_string(gap) + "; ");
  const auto fixed = logistic_periodic_points(2);
  const std::vector<double> expect{0, (5 - std::sqrt(5.0)) / 8, 0.75, (5 + std::sqrt(5.0)) / 8};
  if (fixed.size() != expect.size()) {
    o.fail("wrong number of fixed points; ");
  } else {
    for (std::size_t i = 0; i < expect.size(); ++i)
      if (!(std::abs(fixed[i] - expect[i]) <= 1e-10)) o.fail("fixed point mismatch; ");
  }
  const BitString x = dense_orbit_prefix(8);
  int blocks = 0;
  for (int len = 2; len <= 8; len += 2) {
    for (const auto& block : dense_orbit_blocks(len)) {
      bool hit = false;
      for (std::size_t m = 0; 2 * m + block.size() <= x.size() && !hit; ++m)
        hit = tent_exact_iterate(x, 2 * m).str().compare(0, block.size(), block) == 0;
      if (!hit) o.fail("block " + block + " never leads; ");
      ++blocks;
    }
  }
  o.detail << "conjugacy error " << err << ", gap " << gap << ", " << blocks << " blocks";
}

void invariant_suites(Outcome& o) {
  std::mt19937_64 rng(2027);
  auto norm = [](PlanePoint p) { return std::hypot(p.x, p.y); };
  for (int t = 0; t < 1000; ++t) {
    const LinearCenter c = test::random_center(rng);
    const PlanePoint p{test::uniform(rng, -5, 5), test::uniform(rng, -5, 5)};
    const double s = test::uniform(rng, -10, 10), u = test::uniform(rng, -10, 10);
    const double h0 = first_integral(c, p);
    const PlanePoint q = flow(c, p, s);
    const double scale = 1 + std::abs(h0) + c.stiffness() * (1 + norm(q) * norm(q));
    if (!(std::abs(first_integral(c, q) - h0) <= 1e-9 * scale)) o.fail("conservation; ");
    const double y = test::uniform(rng, -100, 100);
    if (!(std::abs(sigma_chord(c, sigma_chord(c, y)) - y) <= 1e-12 * (1 + std::abs(y)))) o.fail("chord; ");
    const PlanePoint a = flow(c, p, s + u), b = flow(c, q, u);
    const double tol = 1e-9 * (1 + norm(a)) * (1 + c.stiffness());
    if (!(std::hypot(a.x - b.x, a.y - b.y) <= tol)) o.fail("group law; ");
    const PlanePoint per = flow(c, p, 2 * std::numbers::pi / c.frequency());
    if (!(std::hypot(per.x - p.x, per.y - p.y) <= 1e-8 * (1 + norm(p)) * (1 + c.stiffness())))
      o.fail("periodicity; ");
  }
  int traces = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 5;
    const HybridSystem s = test::random_system(rng, n);
    const BranchPartition p = build_partition(s);
    for (const auto& br : p.branches())
      if (static_cast<int>(br.domain.size()) > n) o.fail("J" + std::to_string(br.id) + " has too many pieces; ");
    OrbitBudget budget;
    budget.max_events = 40;
    budget.samples = 4;
    const OrbitTrace tr = global_orbit(s, {0, test::uniform(rng, -2, 2)}, Side::left, budget);
    const std::string why = validate_trace(tr);
    if (!why.empty()) o.fail("trace: " + why + "; ");
    ++traces;
  }
  o.detail << "1000 flow samples, 500 partitions, " << traces << " traces";
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "logistic example: exact branch-1 polynomial and partition", 1, logistic_exact);
  ok &= run_criterion(2, "return map against flow-and-jump orbits", 30, oracle_equivalence);
  ok &= run_criterion(3, "affine resets: at most one regular cycle", 20, affine_uniqueness);
  ok &= run_criterion(4, "trapping radius and escape threshold", 5, escape_and_trap);
  ok &= run_criterion(5, "conjugacy, periodic density and dense orbit", 10, chaos_suite);
  ok &= run_criterion(6, "invariant suites", 60, invariant_suites);
  return ok ? 0 : 1;
}
