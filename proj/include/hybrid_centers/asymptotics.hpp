#pragma once

#include <optional>
#include <vector>

#include "hybrid_centers/cycles.hpp"

namespace hc {

enum class Verdict { escape, trapped, converged_to_cycle, sigma_confined, undetermined };
const char* to_string(Verdict v);

struct FateReport {
  Verdict verdict = Verdict::undetermined;
  /// R (trapped) or Y0 (escape) when one applies.
  std::optional<double> bound;
  int iterations_used = 0;
  /// Last iterates, oldest first.
  std::vector<double> witness;
};

/// beta = max |beta_j| over the four affine branches, exact.
mpq_class affine_beta(const BranchPartition& partition);

/// beta / (1 - a^2) for an affine reset with |a| < 1. Throws WrongRegime.
mpq_class trapping_radius_exact(const HybridSystem& system);
double trapping_radius(const HybridSystem& system);

/// Beyond this |y| every branch satisfies |P_j(y)| > |y|: beta / (a^2 - 1)
/// for an affine reset with |a| > 1, otherwise the largest modulus of a real
/// root of P_j(y) -+ y. Throws WrongRegime for affine resets with |a| <= 1.
double escape_threshold(const HybridSystem& system);

inline constexpr int kFateWindow = 10;

/// The bound orbit_fate tests against: the trapping radius of a contracting
/// affine reset, the escape threshold otherwise. `neutral` marks |a| = 1.
struct FateBounds {
  std::optional<double> trap;
  std::optional<double> escape;
  bool neutral = false;
};
FateBounds fate_bounds(const HybridSystem& system);

/// Iterates the return map from y. `cycles` are the known cycles tested for
/// convergence. Computing the bounds dominates for n >= 2, so scans over
/// many starts should pass them in.
FateReport orbit_fate(const HybridSystem& system, const BranchPartition& partition, double y, int max_iter,
                      const std::vector<LimitCycle>& cycles, const FateBounds& bounds);
FateReport orbit_fate(const HybridSystem& system, const BranchPartition& partition, double y, int max_iter,
                      const std::vector<LimitCycle>& cycles = {});

}  // namespace hc
