#pragma once

#include <string>
#include <vector>

#include "hybrid_centers/linear_flow.hpp"

namespace hc {

enum class StopReason { budget, escape, sigma_confined, equilibrium, closed };
const char* to_string(StopReason r);

struct Jump {
  double from_y = 0.0;
  double to_y = 0.0;
};

struct OrbitEvent {
  enum class Kind { arc, jump, stop };
  Kind kind = Kind::stop;
  int index = 0;
  /// Elapsed orbit time when the event begins.
  double t_start = 0.0;
  FlowArc arc;          // kind == arc
  Jump jump;            // kind == jump
  StopReason reason{};  // kind == stop
};
const char* to_string(OrbitEvent::Kind k);

struct OrbitTrace {
  PlanePoint initial;
  std::vector<OrbitEvent> events;
  double total_time = 0.0;
  StopReason terminated = StopReason::budget;
};

/// A point on the switching line together with what happens next: an entry
/// attempt into `attempt`, or (after an arc) the jump that must follow it.
struct SigmaState {
  double y = 0.0;
  Side attempt = Side::left;
  bool must_jump = false;
  friend bool operator==(const SigmaState&, const SigmaState&) = default;
};

struct StepResult {
  OrbitEvent event;
  SigmaState next;
};

/// One event from a state on the line. Throws EquilibriumReached when the
/// attempt starts at an equilibrium sitting on the line.
StepResult step(const HybridSystem& system, const SigmaState& state, int samples = kDefaultArcSamples);

struct OrbitBudget {
  int max_events = 1000;
  double max_time = 1e6;
  int samples = kDefaultArcSamples;
};

/// Global orbit through q. On the line, `which` picks the side whose field
/// is followed first; off the line the orbit starts in the side holding q.
OrbitTrace global_orbit(const HybridSystem& system, PlanePoint q, Side which, const OrbitBudget& budget = {});

/// Empty if the event chain is consistent; otherwise a description of the
/// first inconsistency.
std::string validate_trace(const OrbitTrace& trace, double tol = 1e-9);

struct NumericReturn {
  double y = 0.0;
  /// 1: both sides entered, 2: side 1 only, 3: side 2 only, 4: neither.
  int way = 0;
  std::vector<OrbitEvent> events;
};

/// One full return (attempt side 1, then side 2) computed from flow arcs and
/// jumps. Throws BoundaryPoint when an attempt starts exactly at a fold.
NumericReturn first_return_numeric(const HybridSystem& system, double y, int samples = 0);

}  // namespace hc
