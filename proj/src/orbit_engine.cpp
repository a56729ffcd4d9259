#include "hybrid_centers/orbit_engine.hpp"

#include <cmath>

#include "hybrid_centers/errors.hpp"
#include "hybrid_centers/return_map.hpp"

namespace hc {

namespace {

constexpr double kEscapeMagnitude = 1e100;
constexpr double kConfinedTol = 1e-12;
constexpr double kClosedTol = 1e-9;

bool enters(double xdot, Side side) { return side == Side::left ? xdot < 0.0 : xdot > 0.0; }

bool same_state(const SigmaState& a, const SigmaState& b, double tol) {
  return a.attempt == b.attempt && a.must_jump == b.must_jump && std::abs(a.y - b.y) <= tol * (1.0 + std::abs(a.y));
}

}  // namespace

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::budget: return "budget";
    case StopReason::escape: return "escape";
    case StopReason::sigma_confined: return "sigma_confined";
    case StopReason::equilibrium: return "equilibrium";
    case StopReason::closed: return "closed";
  }
  return "?";
}

const char* to_string(OrbitEvent::Kind k) {
  switch (k) {
    case OrbitEvent::Kind::arc: return "arc";
    case OrbitEvent::Kind::jump: return "jump";
    case OrbitEvent::Kind::stop: return "stop";
  }
  return "?";
}

StepResult step(const HybridSystem& system, const SigmaState& state, int samples) {
  StepResult r;
  auto jump = [&] {
    const double to = system.reset(state.y);
    r.event.kind = OrbitEvent::Kind::jump;
    r.event.jump = {state.y, to};
    r.next = {to, other(state.attempt), false};
    return r;
  };
  if (state.must_jump) return jump();

  const LinearCenter& c = system.center(state.attempt);
  const double xdot = vector_field_eval(c, {0.0, state.y}).x;
  bool enter = enters(xdot, state.attempt);
  if (xdot == 0.0) {
    const TransversalIntervals ti = transversal_intervals(c, state.attempt);
    if (ti.fold_kind == FoldKind::equilibrium_on_sigma)
      throw EquilibriumReached("equilibrium of side " + std::to_string(to_int(state.attempt)) + " at y = " +
                               std::to_string(state.y));
    enter = ti.fold_kind == FoldKind::visible;
  }
  if (!enter) return jump();

  const double t = time_of_flight(c, state.y, state.attempt);
  r.event.kind = OrbitEvent::Kind::arc;
  r.event.arc = make_arc(c, state.attempt, {0.0, state.y}, t, samples);
  r.event.arc.end.x = 0.0;
  if (samples > 0) r.event.arc.samples.back().x = 0.0;
  r.next = {r.event.arc.end.y, state.attempt, true};
  return r;
}

OrbitTrace global_orbit(const HybridSystem& system, PlanePoint q, Side which, const OrbitBudget& budget) {
  if (budget.max_events < 1 || !(budget.max_time > 0.0)) throw InvalidParameter("orbit budgets must be positive");
  OrbitTrace tr;
  tr.initial = q;
  double t = 0.0;
  auto push = [&](OrbitEvent ev) {
    ev.index = static_cast<int>(tr.events.size());
    ev.t_start = t;
    if (ev.kind == OrbitEvent::Kind::arc) t += ev.arc.duration;
    tr.events.push_back(std::move(ev));
  };
  auto stop = [&](StopReason reason) {
    OrbitEvent ev;
    ev.kind = OrbitEvent::Kind::stop;
    ev.reason = reason;
    push(ev);
    tr.terminated = reason;
    tr.total_time = t;
    return tr;
  };

  SigmaState s;
  if (q.x == 0.0) {
    s = {q.y, which, false};
  } else {
    const Side side = q.x < 0.0 ? Side::left : Side::right;
    const LinearCenter& c = system.center(side);
    const auto reach = time_to_sigma(c, q);
    OrbitEvent ev;
    ev.kind = OrbitEvent::Kind::arc;
    if (!reach) {
      ev.arc = make_arc(c, side, q, c.period(), budget.samples);
      push(ev);
      return stop(StopReason::closed);
    }
    ev.arc = make_arc(c, side, q, *reach, budget.samples);
    ev.arc.end.x = 0.0;
    if (!ev.arc.samples.empty()) ev.arc.samples.back().x = 0.0;
    s = {ev.arc.end.y, side, true};
    push(ev);
  }

  const SigmaState initial = s;
  // Attempt states seen since the last arc; a repeat is a loop of failed entries.
  std::vector<SigmaState> run;
  if (!s.must_jump) run.push_back(s);
  while (true) {
    if (static_cast<int>(tr.events.size()) >= budget.max_events || t >= budget.max_time)
      return stop(StopReason::budget);
    if (!std::isfinite(s.y) || std::abs(s.y) > kEscapeMagnitude) return stop(StopReason::escape);
    StepResult r;
    try {
      r = step(system, s, budget.samples);
    } catch (const EquilibriumReached&) {
      return stop(StopReason::equilibrium);
    }
    push(r.event);
    s = r.next;
    if (r.event.kind == OrbitEvent::Kind::arc) {
      run.clear();
    } else {
      for (const auto& prev : run)
        if (same_state(prev, s, kConfinedTol)) return stop(StopReason::sigma_confined);
      run.push_back(s);
    }
    if (same_state(initial, s, kClosedTol)) return stop(StopReason::closed);
  }
}

std::string validate_trace(const OrbitTrace& trace, double tol) {
  const auto& ev = trace.events;
  double total = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const OrbitEvent& e = ev[i];
    const std::string at = "event " + std::to_string(i) + ": ";
    if (e.index != static_cast<int>(i)) return at + "index out of sequence";
    if (!nearly_equal(e.t_start, total, tol)) return at + "start time does not match elapsed time";
    if (e.kind == OrbitEvent::Kind::stop) {
      if (i + 1 != ev.size()) return at + "events after stop";
      if (e.reason != trace.terminated) return at + "stop reason differs from trace";
      continue;
    }
    if (i + 1 == ev.size()) return at + "trace does not end with stop";
    const OrbitEvent& n = ev[i + 1];
    if (e.kind == OrbitEvent::Kind::arc) {
      const FlowArc& a = e.arc;
      if (a.duration < 0.0) return at + "negative duration";
      total += a.duration;
      if (n.kind == OrbitEvent::Kind::jump && !nearly_equal(a.end.y, n.jump.from_y, tol))
        return at + "arc end differs from next jump start";
      if (n.kind == OrbitEvent::Kind::arc) return at + "two consecutive arcs";
      if (n.kind == OrbitEvent::Kind::stop && n.reason != StopReason::closed && n.reason != StopReason::budget &&
          n.reason != StopReason::escape)
        return at + "arc followed by an unexpected stop";
    } else {
      if (n.kind == OrbitEvent::Kind::arc) {
        if (n.arc.start.x != 0.0 || !nearly_equal(e.jump.to_y, n.arc.start.y, tol))
          return at + "jump target differs from next arc start";
      } else if (n.kind == OrbitEvent::Kind::jump) {
        if (!nearly_equal(e.jump.to_y, n.jump.from_y, tol)) return at + "jump target differs from next jump start";
      }
    }
  }
  if (ev.empty() || ev.back().kind != OrbitEvent::Kind::stop) return "trace does not end with stop";
  if (!nearly_equal(total, trace.total_time, tol)) return "total time differs from sum of arc durations";
  return {};
}

NumericReturn first_return_numeric(const HybridSystem& system, double y, int samples) {
  NumericReturn out;
  SigmaState s{y, Side::left, false};
  bool arc1 = false;
  bool arc2 = false;
  // The events carry doubles; the returned value is carried along in long
  // double, since the reset can amplify a last-bit error by a large factor.
  long double precise = y;
  for (int i = 0; i < 4; ++i) {
    if (!s.must_jump && vector_field_eval(system.center(s.attempt), {0.0, s.y}).x == 0.0)
      throw BoundaryPoint(y, {});
    const Side attempt = s.attempt;
    const StepResult r = step(system, s, samples);
    if (r.event.kind == OrbitEvent::Kind::arc) {
      (attempt == Side::left ? arc1 : arc2) = true;
      precise = landing_extended(system.center(attempt), precise, attempt);
    } else if (r.event.kind == OrbitEvent::Kind::jump) {
      precise = system.reset.eval_extended(precise);
    }
    out.events.push_back(r.event);
    s = r.next;
    if (s.attempt == Side::left && !s.must_jump) break;
  }
  out.y = static_cast<double>(precise);
  out.way = arc1 ? (arc2 ? 1 : 2) : (arc2 ? 3 : 4);
  return out;
}

}  // namespace hc
