#include "hybrid_centers/return_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative width to which boundary roots are refined.
constexpr double kRootWidth = 1e-12;

mpq_class exact_eta(const LinearCenter& center) {
  const mpq_class b(center.b());
  const mpq_class omega(center.omega());
  const mpq_class k = 4 * b * b + omega * omega;
  return mpq_class(2 * mpq_class(center.d()) * center.delta() / k);
}

bool exactly_representable(const mpq_class& q) { return mpq_class(q.get_d()) == q; }

// A point where the branch assignment can change: the fold of side 1 or a
// root of the crossing polynomial. Rational bounds bracket the true location.
struct Cut {
  IsolatedRoot where;
  bool infinite = false;
  int sign = 0;  // -1 for -inf, +1 for +inf
  int boundary_index = -1;
};

// Rational strictly between two separated cuts.
mpq_class sample_between(const Cut& a, const Cut& b) {
  if (a.infinite) return b.where.lo - 1;
  if (b.infinite) return a.where.hi + 1;
  return (a.where.hi + b.where.lo) / 2;
}

// At least one bisection of a non-exact enclosure.
void halve(IsolatedRoot& r, const RationalPolynomial& sf) {
  const mpq_class width = r.hi - r.lo;
  const double scale = std::max(1.0, std::abs(r.value()));
  refine(r, sf, width.get_d() / scale / 2);
}

// Shrink enclosures until a rational strictly between the two cuts exists at
// (a.hi + b.lo) / 2; both must be distinct points with a < b.
void separate(Cut& a, Cut& b, const RationalPolynomial& sf) {
  if (a.infinite || b.infinite) return;
  while (true) {
    if (a.where.hi < b.where.lo) return;
    if (a.where.hi == b.where.lo && !a.where.exact && !b.where.exact) return;
    if (!a.where.exact)
      halve(a.where, sf);
    else if (!b.where.exact)
      halve(b.where, sf);
    else
      throw std::logic_error("separate: coincident exact cuts");
  }
}

struct RegionBuilder {
  const HybridSystem& system;
  std::array<ReturnBranch, 4>& branches;
  std::vector<PartitionBoundary>& boundaries;

  int boundary_for(const IsolatedRoot& r) {
    const double y = r.value();
    for (std::size_t i = 0; i < boundaries.size(); ++i)
      if (boundaries[i].y == y) return static_cast<int>(i);
    boundaries.push_back(PartitionBoundary{y, r.exact && exactly_representable(r.lo), {}});
    return static_cast<int>(boundaries.size()) - 1;
  }

  void add_candidate(int boundary, int branch) {
    if (boundary < 0) return;
    auto& c = boundaries[static_cast<std::size_t>(boundary)].candidates;
    for (const auto& x : c)
      if (x.branch == branch) return;
    c.push_back(BranchCandidate{branch, 0.0});
  }

  // Splits the ray at the roots of `g`; regions where the post-jump point
  // enters side 2 go to `enter_branch`, the rest to `fail_branch`.
  void split_ray(const RationalPolynomial& g, const mpq_class& fold1, bool ray_above_fold, int side2_sign,
                 int enter_branch, int fail_branch) {
    if (g.is_zero()) throw DegenerateReset("post-jump point sits on the second fold for every y");
    const RationalPolynomial sf = square_free_part(g);
    std::vector<Cut> cuts;
    Cut fold_cut{IsolatedRoot{fold1, fold1, true}, false, 0, -1};
    fold_cut.boundary_index = boundary_for(fold_cut.where);
    Cut neg_inf{{}, true, -1, -1};
    Cut pos_inf{{}, true, +1, -1};

    cuts.push_back(ray_above_fold ? fold_cut : neg_inf);
    for (IsolatedRoot r : real_roots(g, kRootWidth)) {
      const int c = compare(r, sf, fold1);
      if ((ray_above_fold && c > 0) || (!ray_above_fold && c < 0)) {
        refine(r, sf, kRootWidth);
        Cut cut{r, false, 0, -1};
        cut.boundary_index = boundary_for(r);
        cuts.push_back(cut);
      }
    }
    cuts.push_back(ray_above_fold ? pos_inf : fold_cut);
    std::sort(cuts.begin() + 1, cuts.end() - 1,
              [](const Cut& a, const Cut& b) { return a.where.lo < b.where.lo; });

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      separate(cuts[i], cuts[i + 1], sf);
      const mpq_class s = sample_between(cuts[i], cuts[i + 1]);
      const int sign = sgn(g(s)) * side2_sign;
      const int branch = sign > 0 ? enter_branch : fail_branch;
      const double lo = cuts[i].infinite ? -kInf : cuts[i].where.value();
      const double hi = cuts[i + 1].infinite ? kInf : cuts[i + 1].where.value();
      branches[static_cast<std::size_t>(branch - 1)].domain.push_back(OpenInterval{lo, hi});
      add_candidate(cuts[i].boundary_index, branch);
      add_candidate(cuts[i + 1].boundary_index, branch);
    }
  }
};

}  // namespace

const char* to_string(FoldKind kind) {
  switch (kind) {
    case FoldKind::visible: return "visible";
    case FoldKind::invisible: return "invisible";
    case FoldKind::equilibrium_on_sigma: return "equilibrium_on_sigma";
  }
  return "?";
}

bool OpenInterval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

TransversalIntervals transversal_intervals(const LinearCenter& center, Side side) {
  TransversalIntervals t;
  t.side = side;
  t.fold = tangency_point(center);
  // x' on the line is -delta K (y - fold): negative above the fold iff delta = +1.
  const bool negative_above = center.delta() > 0;
  const OpenInterval above{t.fold, kInf};
  const OpenInterval below{-kInf, t.fold};
  const bool enters_above = (side == Side::left) == negative_above;
  t.entering = enters_above ? above : below;
  t.leaving = enters_above ? below : above;

  // Second-order contact: x'' at the fold equals e_x (3b^2 + omega^2); the
  // tangent ellipse lies on the side of the equilibrium.
  const double contact = -center.delta() * center.stiffness() *
                         vector_field_eval(center, {0.0, t.fold}).y;
  if (equilibrium_on_sigma(center) || contact == 0.0)
    t.fold_kind = FoldKind::equilibrium_on_sigma;
  else if ((side == Side::left) == (contact < 0.0))
    t.fold_kind = FoldKind::visible;
  else
    t.fold_kind = FoldKind::invisible;
  return t;
}

BranchPartition::BranchPartition(const HybridSystem& system, std::array<ReturnBranch, 4> branches,
                                 std::vector<PartitionBoundary> boundaries, mpq_class eta1, mpq_class eta2)
    : system_(system),
      branches_(std::move(branches)),
      boundaries_(std::move(boundaries)),
      eta1_(std::move(eta1)),
      eta2_(std::move(eta2)) {}

const PartitionBoundary* BranchPartition::boundary_near(double y, double tol) const {
  const PartitionBoundary* best = nullptr;
  double best_dist = kInf;
  for (const auto& b : boundaries_) {
    const double dist = std::abs(b.y - y);
    const bool hit = b.exact && tol == 0.0 ? dist == 0.0 : dist <= tol * (1.0 + std::abs(y));
    if (hit && dist < best_dist) {
      best = &b;
      best_dist = dist;
    }
  }
  return best;
}

std::optional<int> BranchPartition::branch_of(double y) const {
  for (const auto& b : boundaries_) {
    if (b.y == y) return std::nullopt;
    if (!b.exact && std::abs(b.y - y) <= kRootWidth * (1.0 + std::abs(y))) return std::nullopt;
  }
  for (const auto& br : branches_)
    for (const auto& iv : br.domain)
      if (iv.contains(y)) return br.id;
  return std::nullopt;
}

BranchPartition build_partition(const HybridSystem& system) {
  const mpq_class eta1 = exact_eta(system.center1);
  const mpq_class eta2 = exact_eta(system.center2);
  const mpq_class fold1 = eta1 / 2;
  const mpq_class fold2 = eta2 / 2;

  const RationalPolynomial phi = RationalPolynomial::from_doubles(system.reset.coeffs());
  const RationalPolynomial after_arc1 = phi.compose(RationalPolynomial::linear(eta1, -1));
  const RationalPolynomial eta2_const = RationalPolynomial::constant(eta2);

  std::array<ReturnBranch, 4> branches;
  for (int i = 0; i < 4; ++i) branches[static_cast<std::size_t>(i)].id = i + 1;
  branches[0].expr = phi.compose(eta2_const - after_arc1);
  branches[1].expr = phi.compose(after_arc1);
  branches[2].expr = phi.compose(eta2_const - phi);
  branches[3].expr = phi.compose(phi);

  std::vector<PartitionBoundary> boundaries;
  RegionBuilder builder{system, branches, boundaries};
  // Side 1 is entered above its fold iff delta1 = +1; side 2 is entered where
  // -delta2 (z - fold2) > 0.
  const bool side1_above = system.center1.delta() > 0;
  const int side2_sign = -system.center2.delta();
  const RationalPolynomial fold2_const = RationalPolynomial::constant(fold2);
  builder.split_ray(after_arc1 - fold2_const, fold1, side1_above, side2_sign, 1, 2);
  builder.split_ray(phi - fold2_const, fold1, !side1_above, side2_sign, 3, 4);

  for (auto& br : branches)
    std::sort(br.domain.begin(), br.domain.end(),
              [](const OpenInterval& a, const OpenInterval& b) { return a.lo < b.lo; });
  std::sort(boundaries.begin(), boundaries.end(),
            [](const PartitionBoundary& a, const PartitionBoundary& b) { return a.y < b.y; });
  for (auto& b : boundaries) {
    std::sort(b.candidates.begin(), b.candidates.end(),
              [](const BranchCandidate& x, const BranchCandidate& y) { return x.branch < y.branch; });
    for (auto& c : b.candidates) c.value = eval_branch(system, c.branch, b.y);
  }
  return BranchPartition(system, std::move(branches), std::move(boundaries), eta1, eta2);
}

double eval_branch(const HybridSystem& system, int branch, double y) {
  const ResetPolynomial& phi = system.reset;
  const long double eta1 = eta_extended(system.center1);
  const long double eta2 = eta_extended(system.center2);
  const long double u = y;
  auto f = [&phi](long double v) { return phi.eval_extended(v); };
  switch (branch) {
    case 1: return static_cast<double>(f(eta2 - f(eta1 - u)));
    case 2: return static_cast<double>(f(f(eta1 - u)));
    case 3: return static_cast<double>(f(eta2 - f(u)));
    case 4: return static_cast<double>(f(f(u)));
    default: throw InvalidParameter("branch id must be 1..4");
  }
}

double branch_derivative(const HybridSystem& system, int branch, double y) {
  const ResetPolynomial& phi = system.reset;
  const double eta1 = eta(system.center1);
  const double eta2 = eta(system.center2);
  switch (branch) {
    case 1: {
      const double u1 = eta1 - y;
      return phi.derivative(eta2 - phi(u1)) * phi.derivative(u1);
    }
    case 2: {
      const double u1 = eta1 - y;
      return -phi.derivative(phi(u1)) * phi.derivative(u1);
    }
    case 3: return -phi.derivative(eta2 - phi(y)) * phi.derivative(y);
    case 4: return phi.derivative(phi(y)) * phi.derivative(y);
    default: throw InvalidParameter("branch id must be 1..4");
  }
}

namespace {

[[noreturn]] void throw_boundary(const HybridSystem& system, const BranchPartition& partition, double y) {
  std::vector<BranchCandidate> candidates;
  if (const PartitionBoundary* b = partition.boundary_near(y, 1e-9)) {
    for (const auto& c : b->candidates) candidates.push_back({c.branch, eval_branch(system, c.branch, y)});
  }
  throw BoundaryPoint(y, std::move(candidates));
}

}  // namespace

ReturnValue eval_return(const HybridSystem& system, const BranchPartition& partition, double y) {
  const auto branch = partition.branch_of(y);
  if (!branch) throw_boundary(system, partition, y);
  return {eval_branch(system, *branch, y), *branch};
}

double return_derivative(const HybridSystem& system, const BranchPartition& partition, double y) {
  const auto branch = partition.branch_of(y);
  if (!branch) throw_boundary(system, partition, y);
  return branch_derivative(system, *branch, y);
}

ReturnValue eval_return_resolved(const HybridSystem& system, const BranchPartition& partition, double y) {
  try {
    return eval_return(system, partition, y);
  } catch (const BoundaryPoint& bp) {
    if (bp.candidates().empty()) throw;
    return {bp.candidates().front().value, bp.candidates().front().branch};
  }
}

}  // namespace hc
