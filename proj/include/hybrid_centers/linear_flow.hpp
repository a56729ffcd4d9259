#pragma once

#include <optional>
#include <vector>

#include "hybrid_centers/core_model.hpp"

namespace hc {

inline constexpr int kDefaultArcSamples = 64;

/// One piece of a global orbit that follows a single center.
struct FlowArc {
  Side side = Side::left;
  PlanePoint start;
  PlanePoint end;
  double duration = 0.0;
  /// Evenly spaced in time, including both ends; empty when not requested.
  std::vector<PlanePoint> samples;
};

/// Exact solution through p after time t (any sign). Uses A^2 = -(3b^2+omega^2) I:
/// u(t) = cos(wt) u0 + sin(wt)/w A u0 around the equilibrium.
PlanePoint flow(const LinearCenter& center, PlanePoint p, double t);

/// eta - y: the other point where the level curve through (0, y) meets x = 0.
double sigma_chord(const LinearCenter& center, double y);

struct SigmaIntersections {
  /// Sorted ascending; a tangency is reported once.
  std::vector<double> ys;
  bool tangent = false;
};

/// Real solutions of H(0, y) = H(p).
SigmaIntersections ellipse_sigma_intersections(const LinearCenter& center, PlanePoint p,
                                               double tol = 1e-12);

/// Time along the arc from (0, y_from) through `side` back to the switching
/// line. A visible fold returns the full period; an equilibrium on the line
/// returns 0. Throws SideMismatch if the field does not enter `side` there.
double time_of_flight(const LinearCenter& center, double y_from, Side side);

/// Where the arc from (0, y_from) through `side` meets the line again,
/// computed from the flow in long double (not from the chord formula).
/// Throws SideMismatch like time_of_flight.
long double landing_extended(const LinearCenter& center, long double y_from, Side side);

/// First positive time at which the orbit through an off-line point reaches
/// x = 0, or nullopt when its ellipse never meets the line.
std::optional<double> time_to_sigma(const LinearCenter& center, PlanePoint p);

/// Arc of `center` from start over `duration`, with `samples` rendering points
/// (0 for none).
FlowArc make_arc(const LinearCenter& center, Side side, PlanePoint start, double duration,
                 int samples = kDefaultArcSamples);

}  // namespace hc
