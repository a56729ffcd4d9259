#include "hybrid_centers/rational_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hc {

RationalPolynomial::RationalPolynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

RationalPolynomial RationalPolynomial::constant(const mpq_class& c) { return RationalPolynomial({c}); }

RationalPolynomial RationalPolynomial::linear(const mpq_class& a, const mpq_class& b) {
  return RationalPolynomial({a, b});
}

RationalPolynomial RationalPolynomial::from_doubles(std::span<const double> coeffs) {
  std::vector<mpq_class> q;
  q.reserve(coeffs.size());
  for (double c : coeffs) q.emplace_back(c);
  return RationalPolynomial(std::move(q));
}

mpq_class RationalPolynomial::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : mpq_class(0);
}

mpq_class RationalPolynomial::operator()(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPolynomial::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

std::vector<double> RationalPolynomial::to_doubles() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_d());
  return out;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpq_class> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::compose(const RationalPolynomial& inner) const {
  RationalPolynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * inner + constant(*it);
  return acc;
}

RationalPolynomial RationalPolynomial::monic() const {
  if (is_zero()) return {};
  const mpq_class lead = leading();
  std::vector<mpq_class> c = coeffs_;
  for (auto& x : c) x /= lead;
  return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::operator-() const {
  std::vector<mpq_class> c = coeffs_;
  for (auto& x : c) x = -x;
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<mpq_class> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) { return a + (-b); }

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const mpq_class& s, const RationalPolynomial& p) {
  std::vector<mpq_class> c = p.coeffs_;
  for (auto& x : c) x *= s;
  return RationalPolynomial(std::move(c));
}

std::string RationalPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    if (!first) os << " + ";
    os << "(" << coeffs_[k].get_str() << ")";
    if (k >= 1) os << "*y";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<mpq_class> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {RationalPolynomial(), a};
  std::vector<mpq_class> quot(static_cast<std::size_t>(a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    const mpq_class f = rem[static_cast<std::size_t>(k)] / b.leading();
    quot[static_cast<std::size_t>(k - db)] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b) {
  RationalPolynomial x = a;
  RationalPolynomial y = b;
  while (!y.is_zero()) {
    RationalPolynomial r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

RationalPolynomial square_free_part(const RationalPolynomial& p) {
  if (p.degree() <= 0) return p;
  const RationalPolynomial g = gcd(p, p.derivative());
  if (g.degree() == 0) return p.monic();
  return divmod(p, g).first.monic();
}

namespace {

// p times the positive lcm of its denominators.
std::vector<mpz_class> integer_multiple(const RationalPolynomial& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.emplace_back(c.get_num() * (l / c.get_den()));
  return out;
}

// Sign of sum c_k (a/b)^k via the homogeneous form sum c_k a^k b^(n-k), b > 0.
int integer_sign(const std::vector<mpz_class>& c, const mpq_class& x) {
  if (c.empty()) return 0;
  const mpz_class& a = x.get_num();
  const mpz_class& b = x.get_den();
  mpz_class acc = c.back();
  mpz_class bpow = 1;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    bpow *= b;
    acc *= a;
    acc += c[k] * bpow;
  }
  return sgn(acc);
}

}  // namespace

int sign_at(const RationalPolynomial& p, const mpq_class& x) { return integer_sign(integer_multiple(p), x); }

namespace {

double round_down(const mpq_class& q) {
  const double d = q.get_d();
  return mpq_class(d) > q ? std::nextafter(d, -std::numeric_limits<double>::infinity()) : d;
}

double round_up(const mpq_class& q) {
  const double d = q.get_d();
  return mpq_class(d) < q ? std::nextafter(d, std::numeric_limits<double>::infinity()) : d;
}

bool narrow_enough(const IsolatedRoot& r, double rel_width) {
  if (r.exact) return true;
  const mpq_class w = r.hi - r.lo;
  const double scale = std::max({1.0, std::abs(r.lo.get_d()), std::abs(r.hi.get_d())});
  return w.get_d() <= rel_width * scale;
}

// Bisection on a simple-root enclosure of the integer form `f`.
class Bisector {
 public:
  Bisector(const RationalPolynomial& p, const IsolatedRoot& r) : f_(integer_multiple(p)) {
    if (r.exact) return;
    // lo may itself be a (separately recorded) simple root; the sign just to
    // its right is then the sign of p'(lo).
    s_lo_ = integer_sign(f_, r.lo);
    if (s_lo_ == 0) s_lo_ = sign_at(p.derivative(), r.lo);
  }

  int sign(const mpq_class& x) const { return integer_sign(f_, x); }

  void step(IsolatedRoot& r) const {
    mpq_class mid = (r.lo + r.hi) / 2;
    const int sm = sign(mid);
    if (sm == 0) {
      r.lo = mid;
      r.hi = mid;
      r.exact = true;
    } else if (sm == s_lo_) {
      r.lo = mid;
    } else {
      r.hi = mid;
    }
  }

 private:
  std::vector<mpz_class> f_;
  int s_lo_ = 0;
};

}  // namespace

double IsolatedRoot::value() const {
  if (exact) return lo.get_d();
  return mpq_class((lo + hi) / 2).get_d();
}

double IsolatedRoot::lower() const { return round_down(lo); }
double IsolatedRoot::upper() const { return round_up(exact ? lo : hi); }

SturmSequence::SturmSequence(const RationalPolynomial& p) {
  chain_.push_back(p);
  if (p.degree() <= 0) return;
  chain_.push_back(p.derivative());
  while (true) {
    RationalPolynomial r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern and tames coefficient growth.
    mpq_class lead = abs(r.leading());
    chain_.push_back((mpq_class(-1) / lead) * r);
  }
  for (const auto& q : chain_) scaled_.push_back(integer_multiple(q));
}

int SturmSequence::sign_variations(const mpq_class& x) const {
  int count = 0;
  int last = 0;
  for (const auto& q : scaled_) {
    const int s = integer_sign(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int SturmSequence::count_open(const mpq_class& lo, const mpq_class& hi) const {
  // V(lo) - V(hi) counts roots in (lo, hi].
  int n = sign_variations(lo) - sign_variations(hi);
  if (integer_sign(scaled_.front(), hi) == 0) --n;
  return n;
}

mpq_class root_bound(const RationalPolynomial& p) {
  mpq_class m = 0;
  for (int k = 0; k < p.degree(); ++k) {
    mpq_class r = abs(p.coeffs()[static_cast<std::size_t>(k)] / p.leading());
    if (r > m) m = r;
  }
  mpq_class bound = 1;
  while (bound <= m + 1) bound *= 2;
  return bound;
}

std::vector<IsolatedRoot> real_roots(const RationalPolynomial& p, double rel_width) {
  if (p.is_zero()) throw std::domain_error("real_roots of the zero polynomial");
  std::vector<IsolatedRoot> roots;
  if (p.degree() == 0) return roots;
  const RationalPolynomial sf = square_free_part(p);
  const SturmSequence sturm(sf);
  const std::vector<mpz_class> f = integer_multiple(sf);
  const mpq_class m = root_bound(sf);

  std::vector<std::pair<mpq_class, mpq_class>> stack{{-m, m}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const int n = sturm.count_open(lo, hi);
    if (n == 0) continue;
    if (n == 1) {
      roots.push_back(IsolatedRoot{lo, hi, false});
      continue;
    }
    mpq_class mid = (lo + hi) / 2;
    if (integer_sign(f, mid) == 0) roots.push_back(IsolatedRoot{mid, mid, true});
    stack.emplace_back(lo, mid);
    stack.emplace_back(mid, hi);
  }
  for (auto& r : roots) refine(r, sf, rel_width);
  std::sort(roots.begin(), roots.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
  return roots;
}

void refine(IsolatedRoot& root, const RationalPolynomial& square_free, double rel_width) {
  if (narrow_enough(root, rel_width)) return;
  const Bisector b(square_free, root);
  while (!narrow_enough(root, rel_width)) b.step(root);
}

int compare(IsolatedRoot& root, const RationalPolynomial& square_free, const mpq_class& q) {
  if (root.exact) return cmp(root.lo, q) < 0 ? -1 : (cmp(root.lo, q) > 0 ? 1 : 0);
  if (q <= root.lo) return 1;
  if (q >= root.hi) return -1;
  const Bisector b(square_free, root);
  if (b.sign(q) == 0) return 0;
  while (true) {
    if (root.exact) return cmp(root.lo, q) < 0 ? -1 : (cmp(root.lo, q) > 0 ? 1 : 0);
    if (q <= root.lo) return 1;
    if (q >= root.hi) return -1;
    b.step(root);
  }
}

}  // namespace hc
