#pragma once

namespace hc {

/// Default absolute/relative tolerance used by predicates that compare
/// floating results of closed-form formulas.
inline constexpr double kDefaultTolerance = 1e-9;

/// Name of the environment variable that overrides kDefaultTolerance.
inline constexpr const char* kToleranceEnvVar = "HYBRID_CENTERS_TOL";

/// kDefaultTolerance, or the value of HYBRID_CENTERS_TOL when it parses as a
/// positive finite number.
double default_tolerance();

/// |a - b| <= tol * (1 + max(|a|, |b|))
bool nearly_equal(double a, double b, double tol);

}  // namespace hc
