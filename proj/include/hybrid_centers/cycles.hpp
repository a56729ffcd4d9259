#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hybrid_centers/interval.hpp"
#include "hybrid_centers/return_map.hpp"

namespace hc {

enum class Stability { stable, unstable, nonhyperbolic };
const char* to_string(Stability s);

struct LimitCycle {
  int period = 1;
  std::vector<double> points;
  /// Branch used at each point.
  std::vector<int> itinerary;
  /// Every step uses branch 1 (both sides traversed).
  bool regular = false;
  /// Derivative of P^period at the cycle.
  double multiplier = 0.0;
  Stability classification = Stability::nonhyperbolic;
  /// Some point lies within 1e-10 of a branch boundary.
  bool boundary_adjacent = false;
  /// Classified by |multiplier| outside the regular period-one case.
  bool extended_classification = false;
};

/// P(y) - y. Throws BoundaryPoint.
double displacement(const HybridSystem& system, const BranchPartition& partition, double y);

/// |multiplier| against 1; nonhyperbolic within `tol`.
Stability classify(const LimitCycle& cycle, double tol = default_tolerance());
Stability classify_multiplier(double multiplier, double tol = default_tolerance());

/// Branch j of an affine reset is slope * y + intercept.
struct AffineBranch {
  mpq_class slope;
  mpq_class intercept;
};

/// Exact slopes and intercepts of the four branches. Throws WrongDegree unless
/// the reset is affine.
std::array<AffineBranch, 4> affine_branches(const BranchPartition& partition);

enum class AffineOutcome {
  isolated_cycle,
  fixed_point_outside_j1,
  no_regular_periodic_orbits,
  continuum_of_periodic_orbits,
};
const char* to_string(AffineOutcome outcome);

struct AffineCycleResult {
  AffineOutcome outcome = AffineOutcome::fixed_point_outside_j1;
  std::optional<LimitCycle> cycle;
  /// beta1 / (1 - a^2) when |a| != 1.
  std::optional<double> fixed_point;
};

/// Regular cycle of an affine reset phi(y) = a y + b. Throws WrongDegree.
AffineCycleResult affine_regular_cycle(const HybridSystem& system);

struct CycleSearchOptions {
  int max_period = 6;
  /// Largest allowed degree n^(2 k) of a composed itinerary.
  long degree_cap = 4096;
  /// Distance to a branch boundary below which a point is boundary-adjacent.
  double boundary_tol = 1e-10;
};

/// Largest period whose composed degree stays within the cap (at most `limit`).
int max_period_within_cap(int reset_degree, long degree_cap, int limit);

/// Periodic points of P grouped into cycles, sorted by period then by the
/// smallest point. Throws DegreeOverflow when n^(2 max_period) exceeds the cap.
std::vector<LimitCycle> find_cycles(const HybridSystem& system, const BranchPartition& partition,
                                    const CycleSearchOptions& options = {});

/// Branch value and derivative enclosures over a box, by composition.
struct BranchEnclosure {
  Range value;
  Range derivative;
};
BranchEnclosure enclose_branch(const HybridSystem& system, int branch, const Range& y);

/// Same as enclose_branch with the reset derivative and chord constants cached.
class BranchEncloser {
 public:
  explicit BranchEncloser(const HybridSystem& system);
  BranchEnclosure operator()(int branch, const Range& y) const;

 private:
  std::vector<double> phi_;
  std::vector<double> dphi_;
  double eta1_;
  double eta2_;
};

}  // namespace hc
