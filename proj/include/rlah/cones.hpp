#pragma once

// Face numbers of the Weyl random cone of type B+ and unique recovery of
// monotone signals, as exact sums over r-Stirling numbers at r = 1/2.

#include <optional>

#include "rlah/rational.hpp"

namespace rlah {

// Ambient dimension d >= 1, number of walk steps n >= d, face dimension
// 0 <= k <= d - 1.
struct ConeFaceQuery {
  int d = 1;
  int n = 1;
  int k = 0;

  void validate() const;
};

// E[f_k] = (2 k!/n!) sum_{l >= 0} [n, d-2l-1]_{1/2} {d-2l-1, k}_{1/2}.
Rational expected_face_count(const ConeFaceQuery& q);

// E[f_k]/binom(n,k) = 2 P[Lah(n,k)_{1/2} in {d-1, d-3, ...}].
Rational face_ratio(const ConeFaceQuery& q);
// 2 P[Lah(n,k)_{1/2} in {d+1, d+3, ...}]; equals 1 - face_ratio since n > k.
Rational face_ratio_complement(const ConeFaceQuery& q);

struct GrowthExponent {
  Rational value;
  bool infinite = false;

  static GrowthExponent finite(Rational v) { return {std::move(v), false}; }
  static GrowthExponent infinity() { return {Rational(0), true}; }
};

enum class ThresholdLimit { One, Zero, Critical };

const char* to_string(ThresholdLimit limit);

struct WeakThresholdResult {
  ThresholdLimit limit = ThresholdLimit::One;
  Rational boundary;                     // 1 / (k + 1/2)
  std::optional<double> critical_value;  // Phi(-c), critical case with c given
};

// Limit of E[f_k]/binom(n,k) when log n(d) / d -> gamma.
WeakThresholdResult weak_threshold(int k, const GrowthExponent& gamma, std::optional<double> c = {});

struct StrongThresholdCheck {
  bool applies = false;  // n <= e^{d / ((k + 1/2) e)}
  double x_n = 0.0;      // d / ((k + 1/2) log n); +inf for n = 1
  double bound = 0.0;    // 2 n^{-1/2}
  // 2 n^k P[Lah(n,k)_{1/2} >= d], when n fits the exact capacity.
  std::optional<Rational> exact_tail;
};

StrongThresholdCheck strong_threshold_check(int k, int d, int n);

// P[Unique(G, x, B^(n))] for 0 <= k <= d <= n. For k <= d - 1 this is the
// face ratio; k = d uses the summation form directly.
Rational recovery_probability(int d, int n, int k);
bool recovery_on_boundary(int d, int k);

}  // namespace rlah
