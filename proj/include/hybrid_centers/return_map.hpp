#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hybrid_centers/core_model.hpp"
#include "hybrid_centers/errors.hpp"
#include "hybrid_centers/rational_polynomial.hpp"

namespace hc {

enum class FoldKind { visible, invisible, equilibrium_on_sigma };
const char* to_string(FoldKind kind);

/// Open interval (lo, hi); either end may be infinite.
struct OpenInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double y) const { return lo < y && y < hi; }
  bool bounded() const;
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// Where the field of one center crosses the switching line into (entering)
/// or out of (leaving) its own zone. Both are rays split at the fold.
struct TransversalIntervals {
  Side side = Side::left;
  OpenInterval entering;
  OpenInterval leaving;
  double fold = 0.0;
  FoldKind fold_kind = FoldKind::visible;
};

TransversalIntervals transversal_intervals(const LinearCenter& center, Side side);

/// One of the four return-map formulas together with its domain.
///   1: phi(eta2 - phi(eta1 - y))   enters both sides
///   2: phi(phi(eta1 - y))          enters side 1 only
///   3: phi(eta2 - phi(y))          enters side 2 only
///   4: phi(phi(y))                 enters neither
struct ReturnBranch {
  int id = 0;
  std::vector<OpenInterval> domain;
  /// Expanded exact polynomial of degree n^2.
  RationalPolynomial expr;
};

/// An endpoint shared by branch domains.
struct PartitionBoundary {
  double y = 0.0;
  /// True when y is the exact (dyadic) location; otherwise within 1e-12 relative.
  bool exact = false;
  std::vector<BranchCandidate> candidates;
};

/// The return map: branch formulas, their domains and the ambiguous points.
class BranchPartition {
 public:
  BranchPartition(const HybridSystem& system, std::array<ReturnBranch, 4> branches,
                  std::vector<PartitionBoundary> boundaries, mpq_class eta1, mpq_class eta2);

  const HybridSystem& system() const { return system_; }
  const std::array<ReturnBranch, 4>& branches() const { return branches_; }
  const ReturnBranch& branch(int id) const { return branches_.at(static_cast<std::size_t>(id - 1)); }
  const std::vector<PartitionBoundary>& boundary_points() const { return boundaries_; }
  const mpq_class& exact_eta1() const { return eta1_; }
  const mpq_class& exact_eta2() const { return eta2_; }

  /// Branch whose domain interior holds y; nullopt on a boundary point.
  std::optional<int> branch_of(double y) const;
  /// Nearest boundary point within `tol` (relative to 1 + |y|), if any.
  const PartitionBoundary* boundary_near(double y, double tol) const;

 private:
  HybridSystem system_;
  std::array<ReturnBranch, 4> branches_;
  std::vector<PartitionBoundary> boundaries_;
  mpq_class eta1_;
  mpq_class eta2_;
};

/// Exact construction: entering rays split at the folds, preimages of the
/// second fold under phi(eta1 - y) and phi(y) isolated with Sturm sequences.
BranchPartition build_partition(const HybridSystem& system);

struct ReturnValue {
  double value = 0.0;
  int branch = 0;
};

/// Throws BoundaryPoint on an ambiguous point.
ReturnValue eval_return(const HybridSystem& system, const BranchPartition& partition, double y);
double return_derivative(const HybridSystem& system, const BranchPartition& partition, double y);

/// Like eval_return, but on a boundary point returns the first adjacent
/// branch (the map is continuous there).
ReturnValue eval_return_resolved(const HybridSystem& system, const BranchPartition& partition, double y);

/// Evaluate one branch formula by composition, ignoring its domain.
double eval_branch(const HybridSystem& system, int branch, double y);
double branch_derivative(const HybridSystem& system, int branch, double y);

}  // namespace hc
