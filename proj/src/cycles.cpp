#include "hybrid_centers/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>

namespace hc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kResidualTol = 1e-9;
constexpr double kDuplicateTol = 1e-8;
// Slack when testing a box against a closed branch domain.
constexpr double kFeasibleSlack = 1e-9;
constexpr int kInitialCells = 32;

bool touches(const Range& r, const OpenInterval& iv) {
  const double slack = kFeasibleSlack * (1.0 + std::min(r.magnitude(), 1e12));
  return r.lo <= iv.hi + slack && iv.lo - slack <= r.hi;
}

bool touches_branch(const BranchPartition& partition, int branch, const Range& r) {
  for (const auto& iv : partition.branch(branch).domain)
    if (touches(r, iv)) return true;
  return false;
}

// Hull of r intersected with the closure of the branch domain; nullopt if empty.
std::optional<Range> clip_to_branch(const BranchPartition& partition, int branch, const Range& r) {
  std::optional<Range> out;
  for (const auto& iv : partition.branch(branch).domain) {
    if (!touches(r, iv)) continue;
    const Range piece{std::max(r.lo, iv.lo), std::min(r.hi, iv.hi)};
    const Range fixed = piece.lo <= piece.hi ? piece : Range{piece.hi, piece.lo};
    out = out ? hull(*out, fixed) : fixed;
  }
  return out;
}

// Smallest rotation first; itineraries that are not their own minimal
// rotation describe the same cycles as one that is.
bool is_canonical(const std::vector<int>& it) {
  const std::size_t k = it.size();
  for (std::size_t r = 1; r < k; ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      const int a = it[i];
      const int b = it[(i + r) % k];
      if (b < a) return false;
      if (b > a) break;
    }
  }
  return true;
}

long composed_degree(int n, int period, long cap) {
  long deg = 1;
  for (int i = 0; i < 2 * period; ++i) {
    deg *= n;
    if (deg > cap) return cap + 1;
  }
  return deg;
}

// Largest modulus of a real root of P_j(y) -+ y over all branches: outside it
// every branch moves points strictly away from the origin.
double periodic_window(const BranchPartition& partition) {
  const RationalPolynomial id = RationalPolynomial::linear(0, 1);
  mpq_class bound = 1;
  for (const auto& br : partition.branches()) {
    for (const auto& q : {br.expr - id, br.expr + id}) {
      if (q.degree() < 1) continue;
      const mpq_class rb = root_bound(q);
      if (rb > bound) bound = rb;
    }
  }
  return bound.get_d();
}

class CycleCollector {
 public:
  CycleCollector(const HybridSystem& system, const BranchPartition& partition, const CycleSearchOptions& options)
      : system_(system), partition_(partition), options_(options) {}

  // Follows the itinerary from y; records a cycle if it closes with primitive
  // period k and every point lies in (the closure of) its branch domain.
  void consider(const std::vector<int>& itinerary, double y0) {
    const std::size_t k = itinerary.size();
    std::optional<Orbit> orbit = trace(itinerary, y0);
    if (!orbit || !nearly_equal(orbit->points.back(), y0, kResidualTol)) return;
    for (std::size_t d = 1; d < k; ++d)
      if (k % d == 0 && nearly_equal(orbit->points[d], y0, kResidualTol)) return;

    // Restart from the smallest point. Its value carries the error of the
    // partial orbit before it, amplified by the multiplier, so polish it.
    const auto& pts = orbit->points;
    const auto start = static_cast<std::size_t>(std::min_element(pts.begin(), pts.end() - 1) - pts.begin());
    std::vector<int> rotated;
    for (std::size_t i = 0; i < k; ++i) rotated.push_back(itinerary[(start + i) % k]);
    double y = pts[start];
    for (int it = 0; it < 4 && start != 0; ++it) {
      const std::optional<Orbit> o = trace(rotated, y);
      if (!o) return;
      const double g = o->points.back() - y;
      const double dg = o->multiplier - 1.0;
      if (g == 0.0 || dg == 0.0 || !std::isfinite(g / dg)) break;
      y -= g / dg;
    }
    orbit = trace(rotated, y);
    if (!orbit || !nearly_equal(orbit->points.back(), y, kResidualTol)) return;
    orbit->points.pop_back();

    LimitCycle c;
    c.period = static_cast<int>(k);
    c.points = std::move(orbit->points);
    c.itinerary = std::move(rotated);
    c.multiplier = orbit->multiplier;
    c.boundary_adjacent = orbit->adjacent;
    c.regular = std::all_of(c.itinerary.begin(), c.itinerary.end(), [](int b) { return b == 1; });
    c.extended_classification = !(c.regular && c.period == 1);
    c.classification = classify(c);

    for (const auto& other : found_) {
      if (other.period != c.period) continue;
      std::vector<double> a = other.points;
      std::vector<double> b = c.points;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      bool same = true;
      for (std::size_t i = 0; i < a.size() && same; ++i) same = std::abs(a[i] - b[i]) <= kDuplicateTol;
      if (same) return;
    }
    found_.push_back(std::move(c));
  }

  struct Orbit {
    /// k + 1 points: the start, its images, and the return.
    std::vector<double> points;
    double multiplier = 1.0;
    bool adjacent = false;
  };

  // Follows the itinerary from y, checking each point lies in (or next to)
  // the domain of its branch.
  std::optional<Orbit> trace(const std::vector<int>& itinerary, double y0) const {
    Orbit o;
    o.points.push_back(y0);
    for (const int br : itinerary) {
      const double y = o.points.back();
      if (!std::isfinite(y)) return std::nullopt;
      const auto own = partition_.branch_of(y);
      if (!own || *own != br) {
        const PartitionBoundary* b = partition_.boundary_near(y, options_.boundary_tol);
        if (b == nullptr) return std::nullopt;
        const bool listed = std::any_of(b->candidates.begin(), b->candidates.end(),
                                        [br](const BranchCandidate& c) { return c.branch == br; });
        if (!listed) return std::nullopt;
        o.adjacent = true;
      }
      o.multiplier *= branch_derivative(system_, br, y);
      o.points.push_back(eval_branch(system_, br, y));
    }
    return o;
  }

  std::vector<LimitCycle> take() {
    std::sort(found_.begin(), found_.end(), [](const LimitCycle& a, const LimitCycle& b) {
      if (a.period != b.period) return a.period < b.period;
      return a.points.front() < b.points.front();
    });
    return std::move(found_);
  }

 private:
  const HybridSystem& system_;
  const BranchPartition& partition_;
  const CycleSearchOptions& options_;
  std::vector<LimitCycle> found_;
};

// Image of a box under the itinerary, or nullopt when some intermediate
// enclosure misses the next branch domain.
// Every point of a periodic orbit lies in the window, so a box whose
// intermediate image leaves it is infeasible.
std::optional<BranchEnclosure> enclose_chain(const BranchEncloser& enc, const BranchPartition& partition,
                                             const std::vector<int>& itinerary, const Range& y,
                                             const Range& window) {
  BranchEnclosure acc{y, Range::point(1.0)};
  for (int br : itinerary) {
    if (!acc.value.intersects(window) || !touches_branch(partition, br, acc.value)) return std::nullopt;
    const BranchEnclosure e = enc(br, acc.value);
    acc.value = e.value;
    acc.derivative = acc.derivative * e.derivative;
  }
  return acc;
}

Range enclose_chain_unchecked(const BranchEncloser& enc, const std::vector<int>& itinerary, Range y) {
  for (int br : itinerary) y = enc(br, y).value;
  return y;
}

double eval_chain(const HybridSystem& system, const std::vector<int>& itinerary, double y) {
  for (int br : itinerary) y = eval_branch(system, br, y);
  return y;
}

void search_polynomial(const HybridSystem& system, const BranchPartition& partition, int period,
                       double window, CycleCollector& collector) {
  struct Cell {
    Range box;
    Range image;
  };
  std::vector<int> itinerary;
  const IsolationOptions iso;
  const BranchEncloser enc(system);
  const Range win{-window, window};

  // Depth-first over itineraries, carrying clipped images of a coarse cover.
  auto dfs = [&](auto&& self, const std::vector<Cell>& cells) -> void {
    if (static_cast<int>(itinerary.size()) == period) {
      if (!is_canonical(itinerary)) return;
      // The three callbacks query the same box in turn; share one evaluation.
      struct Cache {
        Range box{kInf, -kInf};
        std::optional<BranchEnclosure> e;
      };
      auto cache = std::make_shared<Cache>();
      auto chain = [&, cache](const Range& y) -> const std::optional<BranchEnclosure>& {
        if (!(cache->box.lo == y.lo && cache->box.hi == y.hi)) {
          cache->box = y;
          cache->e = enclose_chain(enc, partition, itinerary, y, win);
        }
        return cache->e;
      };
      EnclosedFunction f;
      f.value = [&](double y) { return eval_chain(system, itinerary, y) - y; };
      f.range = [&, chain](const Range& y) {
        const auto& e = chain(y);
        if (!e) return Range{-kInf, kInf};
        Range natural = e->value - y;
        // Mean-value form around the midpoint, intersected with the natural one.
        const double m = y.mid();
        const Range fm = enclose_chain_unchecked(enc, itinerary, Range::point(m)) - Range::point(m);
        const Range slope = e->derivative - Range::point(1.0);
        const Range mv = fm + slope * Range{y.lo - m, y.hi - m};
        const Range both{std::max(natural.lo, mv.lo), std::min(natural.hi, mv.hi)};
        return both.lo <= both.hi ? both : Range{1.0, 1.0};
      };
      f.derivative_range = [&, chain](const Range& y) {
        const auto& e = chain(y);
        return e ? e->derivative - Range::point(1.0) : Range{-kInf, kInf};
      };
      f.feasible = [&, chain](const Range& y) { return chain(y).has_value(); };
      for (const Cell& c : cells) {
        if (!c.image.intersects(c.box)) continue;
        for (const NumericRoot& r : isolate_roots(f, c.box, iso)) collector.consider(itinerary, r.y);
      }
      return;
    }
    for (int br = 1; br <= 4; ++br) {
      std::vector<Cell> next;
      for (const Cell& c : cells) {
        if (!c.image.intersects(win)) continue;
        const auto clipped = clip_to_branch(partition, br, Range{std::max(c.image.lo, win.lo), std::min(c.image.hi, win.hi)});
        if (!clipped) continue;
        next.push_back({c.box, enc(br, *clipped).value});
      }
      if (next.empty()) continue;
      itinerary.push_back(br);
      self(self, next);
      itinerary.pop_back();
    }
  };

  std::vector<Cell> cells;
  for (int br = 1; br <= 4; ++br) {
    for (const auto& iv : partition.branch(br).domain) {
      const double lo = std::max(iv.lo, win.lo);
      const double hi = std::min(iv.hi, win.hi);
      if (!(lo < hi)) continue;
      for (int i = 0; i < kInitialCells; ++i) {
        const double a = lo + (hi - lo) * i / kInitialCells;
        const double b = i + 1 == kInitialCells ? hi : lo + (hi - lo) * (i + 1) / kInitialCells;
        cells.push_back({Range{a, b}, Range{a, b}});
      }
    }
  }
  dfs(dfs, cells);
}

void search_affine(const BranchPartition& partition, int period, CycleCollector& collector) {
  const auto branches = affine_branches(partition);
  std::vector<int> itinerary(static_cast<std::size_t>(period), 1);
  while (true) {
    if (is_canonical(itinerary)) {
      mpq_class s = 1;
      mpq_class t = 0;
      for (int br : itinerary) {
        const AffineBranch& a = branches[static_cast<std::size_t>(br - 1)];
        t = a.slope * t + a.intercept;
        s = a.slope * s;
      }
      if (s != 1) collector.consider(itinerary, mpq_class(t / (1 - s)).get_d());
    }
    int pos = period - 1;
    while (pos >= 0 && itinerary[static_cast<std::size_t>(pos)] == 4) itinerary[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0) break;
    ++itinerary[static_cast<std::size_t>(pos)];
  }
}

}  // namespace

const char* to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::nonhyperbolic: return "nonhyperbolic";
  }
  return "?";
}

const char* to_string(AffineOutcome outcome) {
  switch (outcome) {
    case AffineOutcome::isolated_cycle: return "isolated_cycle";
    case AffineOutcome::fixed_point_outside_j1: return "fixed_point_outside_j1";
    case AffineOutcome::no_regular_periodic_orbits: return "no_regular_periodic_orbits";
    case AffineOutcome::continuum_of_periodic_orbits: return "continuum_of_periodic_orbits";
  }
  return "?";
}

double displacement(const HybridSystem& system, const BranchPartition& partition, double y) {
  return eval_return(system, partition, y).value - y;
}

Stability classify_multiplier(double multiplier, double tol) {
  const double m = std::abs(multiplier);
  if (std::abs(m - 1.0) <= tol) return Stability::nonhyperbolic;
  return m < 1.0 ? Stability::stable : Stability::unstable;
}

Stability classify(const LimitCycle& cycle, double tol) { return classify_multiplier(cycle.multiplier, tol); }

std::array<AffineBranch, 4> affine_branches(const BranchPartition& partition) {
  if (partition.system().reset.degree() != 1) throw WrongDegree("reset map is not affine");
  std::array<AffineBranch, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    const RationalPolynomial& e = partition.branches()[i].expr;
    out[i] = {e.coeff(1), e.coeff(0)};
  }
  return out;
}

AffineCycleResult affine_regular_cycle(const HybridSystem& system) {
  if (system.reset.degree() != 1) throw WrongDegree("reset map has degree " + std::to_string(system.reset.degree()));
  const BranchPartition partition = build_partition(system);
  const AffineBranch b1 = affine_branches(partition)[0];
  AffineCycleResult out;
  if (b1.slope == 1) {
    out.outcome = b1.intercept == 0 ? AffineOutcome::continuum_of_periodic_orbits
                                    : AffineOutcome::no_regular_periodic_orbits;
    return out;
  }
  const double y = mpq_class(b1.intercept / (1 - b1.slope)).get_d();
  out.fixed_point = y;
  const auto br = partition.branch_of(y);
  if (!br || *br != 1) {
    out.outcome = AffineOutcome::fixed_point_outside_j1;
    return out;
  }
  LimitCycle c;
  c.period = 1;
  c.points = {y};
  c.itinerary = {1};
  c.regular = true;
  c.multiplier = b1.slope.get_d();
  c.classification = classify(c);
  out.outcome = AffineOutcome::isolated_cycle;
  out.cycle = c;
  return out;
}

int max_period_within_cap(int reset_degree, long degree_cap, int limit) {
  int k = 0;
  while (k < limit && composed_degree(reset_degree, k + 1, degree_cap) <= degree_cap) ++k;
  return k;
}

std::vector<LimitCycle> find_cycles(const HybridSystem& system, const BranchPartition& partition,
                                    const CycleSearchOptions& options) {
  if (options.max_period < 1) throw InvalidParameter("max_period must be positive");
  const int n = system.reset.degree();
  if (composed_degree(n, options.max_period, options.degree_cap) > options.degree_cap)
    throw DegreeOverflow("degree " + std::to_string(n) + "^" + std::to_string(2 * options.max_period) +
                         " exceeds the cap " + std::to_string(options.degree_cap));
  CycleCollector collector(system, partition, options);
  const double window = n >= 2 ? periodic_window(partition) : 0.0;
  for (int k = 1; k <= options.max_period; ++k) {
    if (n == 1)
      search_affine(partition, k, collector);
    else
      search_polynomial(system, partition, k, window, collector);
  }
  return collector.take();
}

BranchEnclosure enclose_branch(const HybridSystem& system, int branch, const Range& y) {
  return BranchEncloser(system)(branch, y);
}

BranchEncloser::BranchEncloser(const HybridSystem& system)
    : phi_(system.reset.coeffs()),
      dphi_(derivative_coeffs(phi_)),
      eta1_(eta(system.center1)),
      eta2_(eta(system.center2)) {}

BranchEnclosure BranchEncloser::operator()(int branch, const Range& y) const {
  switch (branch) {
    case 1: {
      const Range u1 = eta1_ + (-y);
      const Range u2 = eta2_ + (-horner(phi_, u1));
      return {horner(phi_, u2), horner(dphi_, u2) * horner(dphi_, u1)};
    }
    case 2: {
      const Range u1 = eta1_ + (-y);
      const Range a = horner(phi_, u1);
      return {horner(phi_, a), -(horner(dphi_, a) * horner(dphi_, u1))};
    }
    case 3: {
      const Range u2 = eta2_ + (-horner(phi_, y));
      return {horner(phi_, u2), -(horner(dphi_, u2) * horner(dphi_, y))};
    }
    case 4: {
      const Range a = horner(phi_, y);
      return {horner(phi_, a), horner(dphi_, a) * horner(dphi_, y)};
    }
    default: throw InvalidParameter("branch id must be 1..4");
  }
}

}  // namespace hc
