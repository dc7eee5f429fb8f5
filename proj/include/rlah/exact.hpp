#pragma once

// Exact r-Stirling numbers of both kinds, r-Lah numbers and the small
// rational helpers they need. Every value is an exact Rational; r must be
// a non-negative rational.

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "rlah/rational.hpp"

namespace rlah {

enum class StirlingKind { First, Second };

const char* to_string(StirlingKind kind);

inline constexpr int kDefaultExactNMax = 4096;

// Process-wide capacity for exact tables and exact distributions.
int exact_n_max();
void set_exact_n_max(int n_max);

/**
 * Memoized triangle of r-Stirling numbers of one kind for a fixed r = p/q.
 *
 * Rows are filled on demand by the three-term recurrences and are never
 * modified once written. Internally row n is stored as the integers
 * q^n * entry(n, k), so filling is pure big-integer multiply-add.
 * Concurrent readers are safe; extension takes an exclusive lock.
 */
class RStirlingTable {
 public:
  RStirlingTable(StirlingKind kind, Rational r);

  StirlingKind kind() const { return kind_; }
  const Rational& r() const { return r_; }
  int filled_to() const;

  // Entry (n, k); zero outside 0 <= k <= n. Extends the table as needed.
  Rational at(int n, int k) const;

 private:
  void ensure(int n) const;

  StirlingKind kind_;
  Rational r_;
  mpz_class p_, q_;
  mutable std::shared_mutex mutex_;
  mutable std::deque<std::vector<mpz_class>> rows_;
  mutable std::deque<mpz_class> q_pow_;
};

// Keyed by (kind, canonical r); tables for different r never alias.
class StirlingRegistry {
 public:
  std::shared_ptr<const RStirlingTable> table(StirlingKind kind, const Rational& r);
  std::size_t size();

 private:
  struct Key {
    StirlingKind kind;
    Rational r;
    friend bool operator<(const Key& a, const Key& b) {
      if (a.kind != b.kind) return a.kind < b.kind;
      return a.r < b.r;
    }
  };

  std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<RStirlingTable>> tables_;
};

StirlingRegistry& default_registry();

// r-Stirling number via the memoized recurrence tables. Throws
// CapacityExceeded for n > exact_n_max().
Rational stirling_r(StirlingKind kind, int n, int k, const Rational& r);

// Same value through the polynomial-in-r expansion over ordinary
// Stirling numbers. Kept as an independent cross-check of stirling_r.
Rational stirling_r_poly(StirlingKind kind, int n, int k, const Rational& r);

// Row n of the first kind, entries k = 0..n, in O(n) memory.
std::vector<Rational> first_kind_row(int n, const Rational& r);
// Column k of the second kind, entries j = 0..n (zero for j < k).
std::vector<Rational> second_kind_column(int k, int n, const Rational& r);

// L(n,k)_r = binom(n+2r-1, k+2r-1) n!/k!. Requires max{k, r} > 0.
Rational lah_r(int n, int k, const Rational& r);

// H_{alpha+m} - H_alpha = sum_{j=1}^{m} 1/(alpha+j), alpha > -1.
Rational harmonic_diff(const Rational& alpha, int m);

// binom(x, x - gap) = prod_{j=1}^{gap} (x - gap + j)/j.
Rational gen_binomial(const Rational& top_offset, int gap);

// a (a+1) ... (a+n-1).
Rational rising_factorial(const Rational& a, int n);

// Memoized n!.
mpz_class factorial(int n);
mpz_class binomial(int n, int k);

void validate_r(const Rational& r);

}  // namespace rlah
