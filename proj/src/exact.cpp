#include "rlah/exact.hpp"

#include <atomic>
#include <string>

#include "rlah/errors.hpp"

namespace rlah {

namespace {

std::atomic<int> g_exact_n_max{kDefaultExactNMax};

void check_capacity(int n) {
  if (n > exact_n_max())
    throw CapacityExceeded("n = " + std::to_string(n) + " exceeds exact capacity n_max = " +
                           std::to_string(exact_n_max()));
}

// One recurrence step on q-scaled integers. `prev` holds q^(n-1) * row n-1;
// returns q^n * row n.
std::vector<mpz_class> next_row(StirlingKind kind, const std::vector<mpz_class>& prev, int n,
                                const mpz_class& p, const mpz_class& q) {
  std::vector<mpz_class> row(static_cast<std::size_t>(n) + 1);
  // first kind:  (n + r - 1) * prev[k] + prev[k-1]
  // second kind: (k + r)     * prev[k] + prev[k-1]
  const mpz_class first_factor = q * (n - 1) + p;
  for (int k = 0; k <= n; ++k) {
    mpz_class& out = row[static_cast<std::size_t>(k)];
    if (k < n) {
      if (kind == StirlingKind::First) {
        out = first_factor * prev[static_cast<std::size_t>(k)];
      } else {
        out = (q * k + p) * prev[static_cast<std::size_t>(k)];
      }
    }
    if (k >= 1) out += q * prev[static_cast<std::size_t>(k - 1)];
  }
  return row;
}

}  // namespace

const char* to_string(StirlingKind kind) { return kind == StirlingKind::First ? "first" : "second"; }

int exact_n_max() { return g_exact_n_max.load(std::memory_order_relaxed); }

void set_exact_n_max(int n_max) {
  if (n_max < 1) throw InvalidParameter("n_max must be positive");
  g_exact_n_max.store(n_max, std::memory_order_relaxed);
}

void validate_r(const Rational& r) {
  if (r.sign() < 0) throw InvalidParameter("r must be non-negative, got " + r.str());
}

RStirlingTable::RStirlingTable(StirlingKind kind, Rational r)
    : kind_(kind), r_(std::move(r)), p_(r_.num()), q_(r_.den()) {
  validate_r(r_);
  rows_.push_back({mpz_class(1)});
  q_pow_.push_back(mpz_class(1));
}

int RStirlingTable::filled_to() const {
  std::shared_lock lock(mutex_);
  return static_cast<int>(rows_.size()) - 1;
}

void RStirlingTable::ensure(int n) const {
  {
    std::shared_lock lock(mutex_);
    if (static_cast<int>(rows_.size()) > n) return;
  }
  std::unique_lock lock(mutex_);
  while (static_cast<int>(rows_.size()) <= n) {
    const int next = static_cast<int>(rows_.size());
    rows_.push_back(next_row(kind_, rows_.back(), next, p_, q_));
    q_pow_.push_back(q_pow_.back() * q_);
  }
}

Rational RStirlingTable::at(int n, int k) const {
  if (n < 0) throw InvalidParameter("n must be non-negative");
  if (k < 0 || k > n) return Rational(0);
  ensure(n);
  std::shared_lock lock(mutex_);
  return Rational(rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)],
                  q_pow_[static_cast<std::size_t>(n)]);
}

std::shared_ptr<const RStirlingTable> StirlingRegistry::table(StirlingKind kind, const Rational& r) {
  const Key key{kind, r};
  {
    std::shared_lock lock(mutex_);
    if (auto it = tables_.find(key); it != tables_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  auto [it, inserted] = tables_.try_emplace(key, nullptr);
  if (inserted) it->second = std::make_shared<RStirlingTable>(kind, r);
  return it->second;
}

std::size_t StirlingRegistry::size() {
  std::shared_lock lock(mutex_);
  return tables_.size();
}

StirlingRegistry& default_registry() {
  static StirlingRegistry registry;
  return registry;
}

Rational stirling_r(StirlingKind kind, int n, int k, const Rational& r) {
  validate_r(r);
  if (n < 0) throw InvalidParameter("n must be non-negative");
  check_capacity(n);
  return default_registry().table(kind, r)->at(n, k);
}

Rational stirling_r_poly(StirlingKind kind, int n, int k, const Rational& r) {
  validate_r(r);
  if (n < 0) throw InvalidParameter("n must be non-negative");
  check_capacity(n);
  if (k < 0 || k > n) return Rational(0);
  const auto ordinary = default_registry().table(kind, Rational(0));
  Rational sum;
  for (int j = k; j <= n; ++j) {
    if (kind == StirlingKind::First) {
      // [n j] * binom(j, k) * r^(j-k)
      sum += ordinary->at(n, j) * Rational(binomial(j, k)) * pow(r, static_cast<unsigned>(j - k));
    } else {
      // binom(n, j) * {j k} * r^(n-j)
      sum += Rational(binomial(n, j)) * ordinary->at(j, k) * pow(r, static_cast<unsigned>(n - j));
    }
  }
  return sum;
}

std::vector<Rational> first_kind_row(int n, const Rational& r) {
  validate_r(r);
  if (n < 0) throw InvalidParameter("n must be non-negative");
  check_capacity(n);
  const mpz_class& p = r.num();
  const mpz_class& q = r.den();
  std::vector<mpz_class> row{mpz_class(1)};
  for (int m = 1; m <= n; ++m) row = next_row(StirlingKind::First, row, m, p, q);
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
  std::vector<Rational> out;
  out.reserve(row.size());
  for (const auto& v : row) out.emplace_back(v, scale);
  return out;
}

std::vector<Rational> second_kind_column(int k, int n, const Rational& r) {
  validate_r(r);
  if (n < 0 || k < 0) throw InvalidParameter("n and k must be non-negative");
  check_capacity(n);
  const mpz_class& p = r.num();
  const mpz_class& q = r.den();
  // Only columns 0..k feed column k, so each row is truncated there.
  std::vector<Rational> out(static_cast<std::size_t>(n) + 1);
  std::vector<mpz_class> cols(static_cast<std::size_t>(k) + 1);
  cols[0] = 1;
  mpz_class scale = 1;
  if (k == 0) out[0] = Rational(1);
  for (int j = 1; j <= n; ++j) {
    for (int c = std::min(j, k); c >= 0; --c) {
      auto& cur = cols[static_cast<std::size_t>(c)];
      cur *= q * c + p;
      if (c >= 1) cur += q * cols[static_cast<std::size_t>(c - 1)];
    }
    scale *= q;
    if (j >= k) out[static_cast<std::size_t>(j)] = Rational(cols[static_cast<std::size_t>(k)], scale);
  }
  return out;
}

Rational gen_binomial(const Rational& top_offset, int gap) {
  if (gap < 0) throw InvalidParameter("gap must be non-negative");
  const Rational base = top_offset - Rational(gap);
  Rational product(1);
  for (int j = 1; j <= gap; ++j) {
    const Rational factor = base + Rational(j);
    if (factor.is_zero())
      throw InvalidParameter("zero factor in generalized binomial binom(" + top_offset.str() + ", " +
                             base.str() + ")");
    product *= factor;
  }
  return product / Rational(factorial(gap));
}

Rational lah_r(int n, int k, const Rational& r) {
  validate_r(r);
  if (n < 1) throw InvalidParameter("n must be a positive integer");
  if (k < 0 || k > n) throw InvalidParameter("k must lie in [0, n]");
  if (k == 0 && r.is_zero()) throw InadmissibleParameters("k = r = 0 is excluded");
  const Rational top = Rational(n) + Rational(2) * r - Rational(1);
  return gen_binomial(top, n - k) * Rational(factorial(n), factorial(k));
}

Rational harmonic_diff(const Rational& alpha, int m) {
  if (alpha <= Rational(-1)) throw InvalidParameter("harmonic difference needs alpha > -1");
  if (m < 0) throw InvalidParameter("m must be non-negative");
  Rational sum;
  for (int j = 1; j <= m; ++j) sum += Rational(1) / (alpha + Rational(j));
  return sum;
}

Rational rising_factorial(const Rational& a, int n) {
  if (n < 0) throw InvalidParameter("rising factorial length must be non-negative");
  Rational product(1);
  for (int i = 0; i < n; ++i) product *= a + Rational(i);
  return product;
}

mpz_class factorial(int n) {
  if (n < 0) throw InvalidParameter("factorial of a negative integer");
  static std::shared_mutex mutex;
  static std::vector<mpz_class> memo{mpz_class(1)};
  {
    std::shared_lock lock(mutex);
    if (static_cast<std::size_t>(n) < memo.size()) return memo[static_cast<std::size_t>(n)];
  }
  std::unique_lock lock(mutex);
  while (memo.size() <= static_cast<std::size_t>(n)) {
    const auto next = static_cast<unsigned long>(memo.size());
    memo.push_back(memo.back() * next);
  }
  return memo[static_cast<std::size_t>(n)];
}

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace rlah
