#include "rlah/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rlah/errors.hpp"
#include "rlah/exact.hpp"
#include "rlah/lah_distribution.hpp"

namespace rlah {

namespace {

const Rational& half() {
  static const Rational value(1, 2);
  return value;
}

// sum_{l >= 0} [n, d-2l-1]_{1/2} {d-2l-1, k}_{1/2}; terms vanish below k.
Rational parity_sum(int d, int n, int k) {
  Rational sum;
  for (int j = d - 1; j >= k; j -= 2)
    sum += stirling_r(StirlingKind::First, n, j, half()) * stirling_r(StirlingKind::Second, j, k, half());
  return sum;
}

}  // namespace

void ConeFaceQuery::validate() const {
  if (d < 1) throw InvalidParameter("d must be a positive integer");
  if (n < d) throw InvalidParameter("n must be at least d");
  if (k < 0 || k > d - 1) throw InvalidParameter("k must lie in [0, d-1]");
}

Rational expected_face_count(const ConeFaceQuery& q) {
  q.validate();
  return Rational(2) * Rational(factorial(q.k), factorial(q.n)) * parity_sum(q.d, q.n, q.k);
}

Rational face_ratio(const ConeFaceQuery& q) {
  q.validate();
  const LahDistribution dist(make_triple(q.n, q.k, half()));
  Rational p;
  for (int j = q.d - 1; j >= dist.first(); j -= 2) p += dist.pmf(j);
  return Rational(2) * p;
}

Rational face_ratio_complement(const ConeFaceQuery& q) {
  q.validate();
  const LahDistribution dist(make_triple(q.n, q.k, half()));
  Rational p;
  for (int j = q.d + 1; j <= dist.last(); j += 2) p += dist.pmf(j);
  return Rational(2) * p;
}

const char* to_string(ThresholdLimit limit) {
  switch (limit) {
    case ThresholdLimit::One:
      return "1";
    case ThresholdLimit::Zero:
      return "0";
    case ThresholdLimit::Critical:
      return "critical";
  }
  return "?";
}

WeakThresholdResult weak_threshold(int k, const GrowthExponent& gamma, std::optional<double> c) {
  if (k < 0) throw InvalidParameter("k must be non-negative");
  if (!gamma.infinite && gamma.value.sign() < 0) throw InvalidParameter("gamma must lie in [0, inf]");
  WeakThresholdResult out;
  out.boundary = Rational(2, 2 * k + 1);
  if (gamma.infinite || gamma.value > out.boundary) {
    out.limit = ThresholdLimit::Zero;
  } else if (gamma.value < out.boundary) {
    out.limit = ThresholdLimit::One;
  } else {
    out.limit = ThresholdLimit::Critical;
    if (c) out.critical_value = 0.5 * std::erfc(*c / std::numbers::sqrt2);
  }
  return out;
}

StrongThresholdCheck strong_threshold_check(int k, int d, int n) {
  if (k < 0) throw InvalidParameter("k must be non-negative");
  if (d < 1) throw InvalidParameter("d must be a positive integer");
  if (n < 1) throw InvalidParameter("n must be a positive integer");
  StrongThresholdCheck out;
  const double log_n = std::log(static_cast<double>(n));
  out.applies = log_n <= d / ((k + 0.5) * std::numbers::e);
  out.x_n = n == 1 ? std::numeric_limits<double>::infinity() : d / ((k + 0.5) * log_n);
  out.bound = 2.0 / std::sqrt(static_cast<double>(n));
  if (k <= n && n <= exact_n_max()) {
    const LahDistribution dist(make_triple(n, k, half()));
    Rational tail;
    for (int j = std::max(d, dist.first()); j <= dist.last(); ++j) tail += dist.pmf(j);
    out.exact_tail = Rational(2) * pow(Rational(n), static_cast<unsigned>(k)) * tail;
  }
  return out;
}

bool recovery_on_boundary(int d, int k) { return k == d; }

Rational recovery_probability(int d, int n, int k) {
  if (d < 1) throw InvalidParameter("d must be a positive integer");
  if (k < 0 || k > d || d > n) throw InvalidParameter("recovery needs 0 <= k <= d <= n");
  if (k <= d - 1) return face_ratio(ConeFaceQuery{d, n, k});
  // 2 k! / (n! binom(n,k)) * sum_l [n, d-2l-1] {d-2l-1, k}
  if (n > exact_n_max()) throw CapacityExceeded("n exceeds exact capacity");
  return Rational(2) * Rational(factorial(k), factorial(n) * binomial(n, k)) * parity_sum(d, n, k);
}

}  // namespace rlah
