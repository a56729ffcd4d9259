#include "hybrid_centers/symbolic_chaos.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "hybrid_centers/errors.hpp"
#include "hybrid_centers/interval.hpp"
#include "hybrid_centers/return_map.hpp"

namespace hc {

namespace {

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw OutOfDomain(std::string(what) + ": " + std::to_string(x) + " is outside [0, 1]");
}

double logistic_iterate(double x, int k) {
  for (int i = 0; i < k; ++i) x = 4.0 * x * (1.0 - x);
  return x;
}

// f4 preimages of y in [0, 1], computed without cancellation.
std::pair<double, double> logistic_preimages(double y) {
  const double r = std::sqrt(1.0 - y);
  const double small = y / (2.0 * (1.0 + r));
  return {small, 1.0 - small};
}

BitString F(const BitString& s) { return tent_exact_iterate(s, 2); }

std::string leading(const BitString& s, std::size_t len) {
  std::string out;
  for (std::size_t k = 1; k <= len; ++k) out += static_cast<char>('0' + s.digit(k));
  return out;
}

}  // namespace

BitString BitString::parse(const std::string& digits, bool exact) {
  BitString s;
  s.exact = exact;
  for (char c : digits) {
    if (c != '0' && c != '1') throw InvalidParameter("binary digits must be 0 or 1");
    s.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return s;
}

std::string BitString::str() const {
  std::string out;
  for (auto b : bits) out += static_cast<char>('0' + b);
  return out;
}

std::uint8_t BitString::digit(std::size_t k) const {
  if (k >= 1 && k <= bits.size()) return bits[k - 1];
  if (exact && k > bits.size()) return tail;
  throw InsufficientPrecision("digit " + std::to_string(k) + " of a " + std::to_string(bits.size()) +
                              "-digit prefix");
}

double BitString::value() const {
  double v = 0.0;
  // Accumulate from the least significant end so short strings are exact.
  const std::size_t n = std::min<std::size_t>(bits.size(), 1100);
  if (exact && tail == 1) v = 1.0;  // 0.111... at position n+1 onwards contributes 2^-n
  for (std::size_t k = n; k >= 1; --k) v = 0.5 * (v + bits[k - 1]);
  return v;
}

double tent(double x) {
  check_unit(x, "tent");
  return x <= 0.5 ? 2.0 * x : 2.0 - 2.0 * x;
}

double logistic(double x) {
  check_unit(x, "logistic");
  return 4.0 * x * (1.0 - x);
}

double conjugacy_h(double x) {
  check_unit(x, "conjugacy_h");
  const double s = std::sin(std::numbers::pi * x / 2.0);
  return s * s;
}

BitString tent_exact_iterate(const BitString& s, std::size_t k) {
  if (!s.exact && s.bits.size() <= k)
    throw InsufficientPrecision(std::to_string(k) + " shifts need more than " + std::to_string(s.bits.size()) +
                                " digits");
  BitString out = s;
  const std::size_t drop = std::min(k, out.bits.size());
  // Complement parity of each surviving digit: flips accumulate with every
  // dropped leading one (read after earlier flips).
  std::uint8_t flip = 0;
  for (std::size_t i = 0; i < drop; ++i) flip ^= static_cast<std::uint8_t>(out.bits[i] ^ flip);
  out.bits.erase(out.bits.begin(), out.bits.begin() + static_cast<std::ptrdiff_t>(drop));
  for (auto& b : out.bits) b ^= flip;
  out.tail ^= flip;
  // Past the stored digits only 0.000... or 0.111... remain; both map to 0.
  if (k > drop) out.tail = 0;
  return out;
}

std::vector<std::string> dense_orbit_blocks(int block_length) {
  if (block_length < 2 || block_length % 2 != 0 || block_length > 24)
    throw InvalidParameter("block length must be even, between 2 and 24");
  std::vector<unsigned> heads;
  for (unsigned v = 0; v < (1u << (block_length - 1)); ++v) heads.push_back(v);
  std::stable_sort(heads.begin(), heads.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
  std::vector<std::string> out;
  for (unsigned v : heads) {
    std::string s;
    for (int i = block_length - 2; i >= 0; --i) s += ((v >> i) & 1u) ? '1' : '0';
    out.push_back(s + '0');
  }
  return out;
}

BitString dense_orbit_prefix(int max_block_length) {
  if (max_block_length < 2 || max_block_length % 2 != 0) throw InvalidParameter("block length must be even and >= 2");
  std::string digits;
  for (int len = 2; len <= max_block_length; len += 2)
    for (const auto& b : dense_orbit_blocks(len)) digits += b;
  return BitString::parse(digits, true);
}

std::vector<double> logistic_periodic_points(int period) {
  if (period < 1 || period > 12) throw InvalidParameter("period must be in 1..12");
  // Turning points of the iterate: preimages of 1/2 under f4^m, m < period.
  std::vector<double> turning;
  std::vector<double> level{0.5};
  for (int m = 0; m < period; ++m) {
    turning.insert(turning.end(), level.begin(), level.end());
    if (m + 1 == period) break;
    std::vector<double> next;
    for (double y : level) {
      const auto [a, b] = logistic_preimages(y);
      next.push_back(a);
      next.push_back(b);
    }
    level = std::move(next);
  }
  turning.push_back(0.0);
  turning.push_back(1.0);
  std::sort(turning.begin(), turning.end());

  const auto g = [period](double x) { return logistic_iterate(x, period) - x; };
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < turning.size(); ++i) {
    const double a = turning[i];
    const double b = turning[i + 1];
    const double ga = g(a);
    const double gb = g(b);
    if (ga == 0.0) roots.push_back(a);
    if ((ga < 0.0 && gb > 0.0) || (ga > 0.0 && gb < 0.0)) roots.push_back(bisect_root(g, a, b));
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots)
    if (out.empty() || r - out.back() > 1e-10) out.push_back(r);
  return out;
}

double max_gap(std::vector<double> points) {
  points.push_back(0.0);
  points.push_back(1.0);
  std::sort(points.begin(), points.end());
  double gap = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) gap = std::max(gap, points[i + 1] - points[i]);
  return gap;
}

TransitivityWitness transitivity_witness(int max_block_length) {
  const BitString start = dense_orbit_prefix(max_block_length);
  const std::size_t steps = start.size() / 2 + 1;
  std::vector<std::set<std::string>> seen(static_cast<std::size_t>(max_block_length / 2));
  std::vector<std::string> targets;
  for (int len = 2; len <= max_block_length; len += 2)
    for (const auto& b : dense_orbit_blocks(len)) targets.push_back(b);

  TransitivityWitness w;
  std::vector<int> first(targets.size(), -1);
  BitString x = start;
  for (std::size_t m = 0; m < steps; ++m) {
    w.orbit.push_back(x.value());
    const std::string head = leading(x, static_cast<std::size_t>(max_block_length));
    for (int len = 2; len <= max_block_length; len += 2)
      seen[static_cast<std::size_t>(len / 2 - 1)].insert(head.substr(0, static_cast<std::size_t>(len)));
    for (std::size_t t = 0; t < targets.size(); ++t)
      if (first[t] < 0 && head.compare(0, targets[t].size(), targets[t]) == 0) first[t] = static_cast<int>(m);
    x = F(x);
  }
  for (std::size_t t = 0; t < targets.size(); ++t) w.hits.emplace_back(targets[t], first[t]);
  for (int len = 2; len <= max_block_length; len += 2) {
    if (seen[static_cast<std::size_t>(len / 2 - 1)].size() != (std::size_t{1} << len)) break;
    w.covered_length = len;
  }
  return w;
}

ChaosCertificate certify_chaos(const HybridSystem& system, const CertificateOptions& options) {
  ChaosCertificate cert;
  const BranchPartition partition = build_partition(system);

  const RationalPolynomial target(std::vector<mpq_class>{0, 16, -80, 128, -64});
  cert.coefficient_match = partition.branch(1).expr == target;
  for (const auto& iv : partition.branch(1).domain)
    if (iv.lo <= 0.0 && iv.hi >= 1.0) cert.unit_interval_in_branch1 = true;

  constexpr int kGrid = 10000;
  cert.interval_invariant = true;
  for (int i = 0; i <= kGrid && cert.interval_invariant; ++i) {
    const double y = static_cast<double>(i) / kGrid;
    const double p = eval_return_resolved(system, partition, y).value;
    cert.interval_invariant = p >= -1e-12 && p <= 1.0 + 1e-12;
  }

  // Periodic points of P of period d are fixed points of f4^(2d).
  std::vector<double> all;
  bool density_ok = true;
  for (int d = 1; d <= options.density_depth && density_ok; ++d) {
    for (double y : logistic_periodic_points(2 * d)) {
      double z = y;
      for (int i = 0; i < d; ++i) z = eval_return_resolved(system, partition, z).value;
      if (!nearly_equal(z, y, 1e-8)) {
        density_ok = false;
        break;
      }
      all.push_back(y);
    }
    if (density_ok) cert.periodic_density_depth = d;
  }
  cert.periodic_density_gap = max_gap(all);

  const TransitivityWitness w = transitivity_witness(options.block_length);
  bool carried = true;
  for (std::size_t m = 0; m + 1 < w.orbit.size() && carried; ++m) {
    const double p = eval_return_resolved(system, partition, conjugacy_h(w.orbit[m])).value;
    carried = std::abs(p - conjugacy_h(w.orbit[m + 1])) < 1e-9;
  }
  const bool all_hit = std::all_of(w.hits.begin(), w.hits.end(), [](const auto& h) { return h.second >= 0; });
  cert.transitivity_blocks = carried && all_hit ? options.block_length : 0;

  std::mt19937_64 rng(options.seed);
  double sensitivity = 1.0;
  for (int trial = 0; trial < options.sensitivity_trials; ++trial) {
    BitString a;
    for (int i = 0; i < 64; ++i) a.bits.push_back(static_cast<std::uint8_t>(rng() & 1u));
    BitString b = a;
    b.bits[19] ^= 1u;  // 2^-20 apart
    double best = 0.0;
    for (int m = 0; m < 24; ++m) {
      best = std::max(best, std::abs(conjugacy_h(a.value()) - conjugacy_h(b.value())));
      a = F(a);
      b = F(b);
    }
    sensitivity = std::min(sensitivity, best);
  }
  cert.sensitivity_estimate = sensitivity;

  if (!cert.coefficient_match) cert.failed_clauses.push_back("coefficient_match");
  if (!cert.unit_interval_in_branch1) cert.failed_clauses.push_back("unit_interval_in_branch1");
  if (!cert.interval_invariant) cert.failed_clauses.push_back("interval_invariant");
  if (!density_ok || cert.periodic_density_gap >= 0.05) cert.failed_clauses.push_back("periodic_density");
  if (cert.transitivity_blocks == 0) cert.failed_clauses.push_back("transitivity");
  return cert;
}

}  // namespace hc
