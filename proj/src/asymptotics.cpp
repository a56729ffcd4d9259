#include "hybrid_centers/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "hybrid_centers/orbit_engine.hpp"

namespace hc {

namespace {

constexpr double kTrapSlack = 1e-6;
constexpr double kCycleTol = 1e-8;
constexpr double kOverflow = 1e100;
constexpr std::size_t kWitnessLength = 12;

mpq_class abs_q(const mpq_class& q) { return q < 0 ? mpq_class(-q) : q; }

mpq_class affine_slope(const HybridSystem& system) {
  if (system.reset.degree() != 1) throw WrongRegime("reset map is not affine");
  return mpq_class(system.reset.coeffs()[1]);
}

double polynomial_escape_threshold(const BranchPartition& partition) {
  const RationalPolynomial id = RationalPolynomial::linear(0, 1);
  double y0 = 0.0;
  for (const auto& br : partition.branches())
    for (const auto& q : {br.expr - id, br.expr + id})
      for (const auto& r : real_roots(q)) y0 = std::max({y0, std::abs(r.lower()), std::abs(r.upper())});
  // Sampling check of the construction.
  const HybridSystem& sys = partition.system();
  for (int i = 1; i <= 200; ++i) {
    const double y = y0 + (1.0 + y0) * i / 20.0;
    for (int br = 1; br <= 4; ++br)
      for (double s : {y, -y})
        if (!(std::abs(eval_branch(sys, br, s)) > std::abs(s)))
          throw InsufficientPrecision("escape threshold failed its sampling check at y = " + std::to_string(s));
  }
  return y0;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::escape: return "Escape";
    case Verdict::trapped: return "Trapped";
    case Verdict::converged_to_cycle: return "ConvergedToCycle";
    case Verdict::sigma_confined: return "SigmaConfined";
    case Verdict::undetermined: return "Undetermined";
  }
  return "?";
}

mpq_class affine_beta(const BranchPartition& partition) {
  mpq_class beta = 0;
  for (const auto& b : affine_branches(partition)) beta = std::max(beta, abs_q(b.intercept));
  return beta;
}

mpq_class trapping_radius_exact(const HybridSystem& system) {
  const mpq_class a = affine_slope(system);
  if (abs_q(a) >= 1) throw WrongRegime("trapping radius needs |a| < 1");
  return affine_beta(build_partition(system)) / (1 - a * a);
}

double trapping_radius(const HybridSystem& system) { return trapping_radius_exact(system).get_d(); }

double escape_threshold(const HybridSystem& system) {
  if (system.reset.degree() == 1) {
    const mpq_class a = affine_slope(system);
    if (abs_q(a) <= 1) throw WrongRegime("escape threshold needs |a| > 1 for an affine reset");
    return mpq_class(affine_beta(build_partition(system)) / (a * a - 1)).get_d();
  }
  return polynomial_escape_threshold(build_partition(system));
}

FateBounds fate_bounds(const HybridSystem& system) {
  FateBounds b;
  if (system.reset.degree() == 1) {
    const double a = std::abs(system.reset.coeffs()[1]);
    if (a == 1.0)
      b.neutral = true;
    else if (a < 1.0)
      b.trap = trapping_radius(system);
    else
      b.escape = escape_threshold(system);
  } else {
    b.escape = escape_threshold(system);
  }
  return b;
}

FateReport orbit_fate(const HybridSystem& system, const BranchPartition& partition, double y, int max_iter,
                      const std::vector<LimitCycle>& cycles) {
  return orbit_fate(system, partition, y, max_iter, cycles, fate_bounds(system));
}

FateReport orbit_fate(const HybridSystem& system, const BranchPartition& partition, double y, int max_iter,
                      const std::vector<LimitCycle>& cycles, const FateBounds& bounds) {
  if (max_iter < 1) throw InvalidParameter("max_iter must be positive");
  FateReport rep;
  if (bounds.neutral) return rep;
  const std::optional<double> trap = bounds.trap;
  const std::optional<double> escape = bounds.escape;

  // Jump-only loops never reach the arcs the return map assumes.
  OrbitBudget budget;
  budget.max_events = 4 * max_iter + 8;
  budget.samples = 0;
  if (global_orbit(system, {0.0, y}, Side::left, budget).terminated == StopReason::sigma_confined) {
    rep.verdict = Verdict::sigma_confined;
    return rep;
  }

  std::deque<double> tail;
  auto finish = [&](Verdict v, int iters, std::optional<double> bound) {
    rep.verdict = v;
    rep.iterations_used = iters;
    rep.bound = bound;
    rep.witness.assign(tail.begin(), tail.end());
    return rep;
  };
  auto remember = [&](double v) {
    tail.push_back(v);
    if (tail.size() > kWitnessLength) tail.pop_front();
  };

  int growth = 0;
  int inside = 0;
  remember(y);
  for (int j = 0; j <= max_iter; ++j) {
    for (const auto& c : cycles)
      for (double p : c.points)
        if (std::abs(y - p) <= kCycleTol) return finish(Verdict::converged_to_cycle, j, std::nullopt);
    if (trap) {
      inside = std::abs(y) <= *trap + kTrapSlack ? inside + 1 : 0;
      if (inside >= kFateWindow) return finish(Verdict::trapped, j, trap);
    }
    if (j == max_iter) break;
    const double next = eval_return_resolved(system, partition, y).value;
    if (escape) {
      const bool grows = std::abs(next) > std::abs(y) || (!std::isfinite(next) && std::isfinite(y));
      growth = grows ? growth + 1 : 0;
      if (std::abs(y) > *escape && growth >= 1 && (!std::isfinite(next) || std::abs(next) > kOverflow)) {
        remember(next);
        return finish(Verdict::escape, j + 1, escape);
      }
      if (std::abs(next) > *escape && growth >= kFateWindow) {
        remember(next);
        return finish(Verdict::escape, j + 1, escape);
      }
    }
    if (!std::isfinite(next)) return finish(Verdict::undetermined, j + 1, std::nullopt);
    y = next;
    remember(y);
  }
  return finish(Verdict::undetermined, max_iter, std::nullopt);
}

}  // namespace hc
