#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hybrid_centers/core_model.hpp"

namespace hc {

/// Binary digits 0.s1 s2 s3 ... of a point of [0, 1]. When `exact`, the
/// expansion continues with the repeating digit `tail` after the stored bits
/// (a dyadic rational, or its complement); otherwise only the stored prefix
/// is known.
struct BitString {
  std::vector<std::uint8_t> bits;
  bool exact = true;
  std::uint8_t tail = 0;

  static BitString parse(const std::string& digits, bool exact = true);
  std::string str() const;
  std::size_t size() const { return bits.size(); }
  /// Digit k (1-based), reading into the tail when exact.
  std::uint8_t digit(std::size_t k) const;
  double value() const;
  friend bool operator==(const BitString&, const BitString&) = default;
};

double tent(double x);
double logistic(double x);
/// sin^2(pi x / 2); carries the tent map onto the logistic map.
double conjugacy_h(double x);

/// k applications of the shift rule: drop s1 and complement the rest iff
/// s1 = 1. A non-exact string needs more than k digits.
BitString tent_exact_iterate(const BitString& s, std::size_t k);

/// Every even-length block ending in 0, lengths 2, 4, ..., max_block_length,
/// concatenated. Within a length, blocks are ordered by the number of ones
/// and then by value.
BitString dense_orbit_prefix(int max_block_length);
std::vector<std::string> dense_orbit_blocks(int block_length);

/// Fixed points of the period-th iterate of the logistic map in [0, 1],
/// ascending. 1 <= period <= 12.
std::vector<double> logistic_periodic_points(int period);

/// Largest gap between consecutive points of {0, 1} and `points`.
double max_gap(std::vector<double> points);

struct TransitivityWitness {
  /// Every even block of length <= this appears as a prefix of some iterate.
  int covered_length = 0;
  /// Iterates F^m(x*), m = 0 .. count-1, as values of [0, 1].
  std::vector<double> orbit;
  /// For each listed block, the first m at which it appears.
  std::vector<std::pair<std::string, int>> hits;
};

/// Iterates F = T^2 exactly from the dense-orbit prefix and records where
/// each block shows up as a leading digit string.
TransitivityWitness transitivity_witness(int max_block_length);

struct ChaosCertificate {
  bool coefficient_match = false;
  bool unit_interval_in_branch1 = false;
  bool interval_invariant = false;
  int periodic_density_depth = 0;
  double periodic_density_gap = 1.0;
  int transitivity_blocks = 0;
  double sensitivity_estimate = 0.0;
  std::vector<std::string> failed_clauses;
  bool passes() const { return coefficient_match && unit_interval_in_branch1 && interval_invariant; }
};

struct CertificateOptions {
  int density_depth = 4;
  int block_length = 8;
  int sensitivity_trials = 32;
  std::uint64_t seed = 1;
};

/// Checks that the return map is the squared logistic map on [0, 1] and
/// gathers the periodic-density, transitivity and sensitivity evidence.
ChaosCertificate certify_chaos(const HybridSystem& system, const CertificateOptions& options = {});

}  // namespace hc
