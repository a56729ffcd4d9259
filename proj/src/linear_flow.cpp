#include "hybrid_centers/linear_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hybrid_centers/errors.hpp"

namespace hc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// A u for the linear part of the field.
PlanePoint apply_linear_part(const LinearCenter& center, PlanePoint u) {
  const double b = center.b();
  const double delta = center.delta();
  return {-b * u.x - delta * center.stiffness() * u.y, delta * u.x + b * u.y};
}

bool enters(double xdot, Side side) { return side == Side::left ? xdot < 0.0 : xdot > 0.0; }

}  // namespace

PlanePoint flow(const LinearCenter& center, PlanePoint p, double t) {
  if (t == 0.0) return p;
  const PlanePoint e = equilibrium(center);
  const PlanePoint u0{p.x - e.x, p.y - e.y};
  const PlanePoint au0 = apply_linear_part(center, u0);
  const double w = center.frequency();
  const double c = std::cos(w * t);
  const double s = std::sin(w * t) / w;
  return {e.x + c * u0.x + s * au0.x, e.y + c * u0.y + s * au0.y};
}

double sigma_chord(const LinearCenter& center, double y) { return eta(center) - y; }

SigmaIntersections ellipse_sigma_intersections(const LinearCenter& center, PlanePoint p, double tol) {
  // delta K y^2 - 2 d y - H(p) = 0
  const double a = center.delta() * center.stiffness();
  const double bq = -2.0 * center.d();
  const double h = first_integral(center, p);
  const double disc = bq * bq + 4.0 * a * h;
  const double scale = bq * bq + 4.0 * std::abs(a * h);
  SigmaIntersections out;
  if (disc < -tol * scale) return out;
  if (std::abs(disc) <= tol * scale) {
    out.ys.push_back(tangency_point(center));
    out.tangent = true;
    return out;
  }
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (bq + std::copysign(sq, bq));
  double r1 = q / a;
  double r2 = q != 0.0 ? -h / q : -r1;
  if (r1 > r2) std::swap(r1, r2);
  out.ys = {r1, r2};
  return out;
}

double time_of_flight(const LinearCenter& center, double y_from, Side side) {
  const double xdot = vector_field_eval(center, {0.0, y_from}).x;
  const PlanePoint e = equilibrium(center);
  const double w = center.frequency();
  if (xdot == 0.0) {
    if (e.x == 0.0 || equilibrium_on_sigma(center)) return 0.0;
    const bool visible = side == Side::left ? e.x < 0.0 : e.x > 0.0;
    if (!visible) throw SideMismatch("fold at y = " + std::to_string(y_from) + " is invisible from side " +
                                     std::to_string(to_int(side)));
    return center.period();
  }
  if (!enters(xdot, side))
    throw SideMismatch("field at y = " + std::to_string(y_from) + " does not enter side " +
                       std::to_string(to_int(side)));
  // x(theta) = e_x (1 - cos theta) + v sin theta vanishes again at theta = 2 alpha,
  // alpha in (0, pi) with e_x sin alpha + v cos alpha = 0.
  const double v = xdot / w;
  double alpha = std::atan2(-v, e.x);
  if (alpha <= 0.0) alpha += std::numbers::pi;
  return 2.0 * alpha / w;
}

long double landing_extended(const LinearCenter& center, long double y_from, Side side) {
  const long double b = center.b(), w2 = 3.0L * b * b + static_cast<long double>(center.omega()) * center.omega();
  const long double delta = center.delta(), c = center.c(), d = center.d();
  const long double k = 4.0L * b * b + static_cast<long double>(center.omega()) * center.omega();
  const long double ex = (-d * b - delta * k * c) / w2;
  const long double ey = (b * c + delta * d) / w2;
  const long double w = std::sqrt(w2);
  const long double xdot = -delta * k * y_from + d;
  // full period or an equilibrium on the line: back where it started
  if (xdot == 0.0L) {
    time_of_flight(center, static_cast<double>(y_from), side);
    return y_from;
  }
  if (!enters(static_cast<double>(xdot), side))
    throw SideMismatch("field does not enter side " + std::to_string(to_int(side)));
  long double alpha = std::atan2(-xdot / w, ex);
  if (alpha <= 0.0L) alpha += std::numbers::pi_v<long double>;
  const long double theta = 2.0L * alpha;
  // u(t) = cos u0 + sin / w A u0 around the equilibrium, y component only
  const long double ux = -ex, uy = y_from - ey;
  const long double auy = delta * ux + b * uy;
  return ey + std::cos(theta) * uy + std::sin(theta) / w * auy;
}

std::optional<double> time_to_sigma(const LinearCenter& center, PlanePoint p) {
  const PlanePoint e = equilibrium(center);
  const PlanePoint u0{p.x - e.x, p.y - e.y};
  const double w = center.frequency();
  const double vx = apply_linear_part(center, u0).x / w;
  // x(theta) = e_x + r cos(theta - phase)
  const double r = std::hypot(u0.x, vx);
  if (r == 0.0 || std::abs(e.x) > r) return std::nullopt;
  const double phase = std::atan2(vx, u0.x);
  const double spread = std::acos(std::clamp(-e.x / r, -1.0, 1.0));
  double best = kTwoPi;
  for (double cand : {phase + spread, phase - spread}) {
    double th = std::fmod(cand, kTwoPi);
    if (th < 0.0) th += kTwoPi;
    if (th <= 1e-15) th += kTwoPi;
    best = std::min(best, th);
  }
  return best / w;
}

FlowArc make_arc(const LinearCenter& center, Side side, PlanePoint start, double duration, int samples) {
  FlowArc arc;
  arc.side = side;
  arc.start = start;
  arc.duration = duration;
  arc.end = flow(center, start, duration);
  if (samples > 0) {
    const int n = std::max(samples, 2);
    arc.samples.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) arc.samples.push_back(flow(center, start, duration * i / (n - 1)));
  }
  return arc;
}

}  // namespace hc
