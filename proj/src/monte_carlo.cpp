#include "rlah/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "rlah/errors.hpp"
#include "rlah/exact.hpp"

namespace rlah {

namespace {

RationalVector gaussian_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RationalVector v;
  v.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) v.push_back(Rational::from_double(normal(rng)));
  return v;
}

// Calls f on each k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

void check_subset_guard(int n, int k) {
  if (n > kMcMaxN) throw CapacityExceeded("Monte Carlo runs are limited to n <= " + std::to_string(kMcMaxN));
  if (binomial(n, k) > static_cast<long>(kMcMaxSubsets))
    throw CapacityExceeded("binom(n, k) exceeds the enumeration guard of 10^6");
}

bool feasible(const LinearProgram& lp, RationalVector* witness = nullptr) {
  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::Optimal) return false;
  if (!satisfies(lp, sol.x)) throw DegenerateSample("LP certificate failed exact re-check");
  if (witness) *witness = sol.x;
  return true;
}

// Does the cone contain v? lambda >= 0 with sum lambda_i S_i = v.
bool cone_contains(const WalkSample& s, const RationalVector& v) {
  LinearProgram lp;
  lp.num_vars = s.n;
  for (int row = 0; row < s.d; ++row) {
    LinearConstraint c;
    c.relation = Relation::Equal;
    c.rhs = v[static_cast<std::size_t>(row)];
    for (const auto& S : s.partial_sums) c.coeffs.push_back(S[static_cast<std::size_t>(row)]);
    lp.constraints.push_back(std::move(c));
  }
  return feasible(lp);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct TrialResult {
  double value = 0.0;
  long long rejects = 0;
  ConeShape shape = ConeShape::Pointed;
};

// Runs body(trial) for every trial, spreading the work over a pool.
template <typename Body>
std::vector<TrialResult> run_trials(int trials, unsigned threads, Body&& body) {
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(trials));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (int t; !failed.load() && (t = next.fetch_add(1)) < trials;) {
      try {
        results[static_cast<std::size_t>(t)] = body(t);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

// Reduction in trial order so the result is independent of scheduling.
void summarize(McEstimate& est, const std::vector<TrialResult>& results) {
  double sum = 0.0;
  for (const auto& r : results) {
    sum += r.value;
    est.rejects += r.rejects;
  }
  est.mean = sum / static_cast<double>(results.size());
  if (results.size() > 1) {
    double ss = 0.0;
    for (const auto& r : results) ss += (r.value - est.mean) * (r.value - est.mean);
    est.stderr_ = std::sqrt(ss / static_cast<double>(results.size() - 1) / static_cast<double>(results.size()));
  }
}

}  // namespace

WalkSample draw_walk(int d, int n, std::mt19937_64& rng) {
  if (d < 1 || n < 1) throw InvalidParameter("walk needs d >= 1 and n >= 1");
  WalkSample s;
  s.d = d;
  s.n = n;
  RationalVector sum(static_cast<std::size_t>(d));
  for (int i = 0; i < n; ++i) {
    s.increments.push_back(gaussian_vector(d, rng));
    for (int j = 0; j < d; ++j) sum[static_cast<std::size_t>(j)] += s.increments.back()[static_cast<std::size_t>(j)];
    s.partial_sums.push_back(sum);
  }
  return s;
}

bool in_general_position(const WalkSample& sample) {
  const int m = std::min(sample.d, sample.n);
  bool ok = true;
  for_each_subset(sample.n, m, [&](const std::vector<int>& idx) {
    if (!ok) return;
    RationalMatrix rows;
    for (int i : idx) rows.push_back(sample.partial_sums[static_cast<std::size_t>(i)]);
    if (rank(std::move(rows)) < m) ok = false;
  });
  return ok;
}

WalkSample draw_generic_walk(int d, int n, std::mt19937_64& rng, long long& rejects) {
  for (;;) {
    WalkSample s = draw_walk(d, n, rng);
    if (in_general_position(s)) return s;
    ++rejects;
  }
}

std::optional<RationalVector> face_certificate(const WalkSample& sample, const std::vector<int>& A) {
  std::vector<bool> in_a(static_cast<std::size_t>(sample.n), false);
  for (int i : A) {
    if (i < 0 || i >= sample.n) throw InvalidParameter("subset index out of range");
    if (in_a[static_cast<std::size_t>(i)]) throw InvalidParameter("subset indices must be distinct");
    in_a[static_cast<std::size_t>(i)] = true;
  }
  LinearProgram lp;
  lp.num_vars = sample.d;
  lp.free_vars.assign(static_cast<std::size_t>(sample.d), true);
  for (int i = 0; i < sample.n; ++i) {
    LinearConstraint c;
    c.coeffs = sample.partial_sums[static_cast<std::size_t>(i)];
    if (in_a[static_cast<std::size_t>(i)]) {
      c.relation = Relation::Equal;
      c.rhs = Rational(0);
    } else {
      c.relation = Relation::LessEqual;
      c.rhs = Rational(-1);
    }
    lp.constraints.push_back(std::move(c));
  }
  RationalVector u;
  if (!feasible(lp, &u)) return std::nullopt;
  return u;
}

bool is_k_face(const WalkSample& sample, const std::vector<int>& A) {
  const int k = static_cast<int>(A.size());
  if (k < 1 || k > sample.d - 1) throw InvalidParameter("is_k_face needs 1 <= |A| <= d-1");
  RationalMatrix rows;
  for (int i : A) {
    if (i < 0 || i >= sample.n) throw InvalidParameter("subset index out of range");
    rows.push_back(sample.partial_sums[static_cast<std::size_t>(i)]);
  }
  if (rank(std::move(rows)) < k) return false;
  return face_certificate(sample, A).has_value();
}

const char* to_string(ConeShape shape) {
  switch (shape) {
    case ConeShape::Pointed:
      return "pointed";
    case ConeShape::ProperNonPointed:
      return "proper-non-pointed";
    case ConeShape::FullSpace:
      return "full-space";
  }
  return "?";
}

ConeShape classify_cone(const WalkSample& sample) {
  LinearProgram lp;
  lp.num_vars = sample.d;
  lp.free_vars.assign(static_cast<std::size_t>(sample.d), true);
  for (const auto& S : sample.partial_sums) lp.constraints.push_back({S, Relation::LessEqual, Rational(-1)});
  if (feasible(lp)) return ConeShape::Pointed;
  for (int i = 0; i < sample.d; ++i)
    for (int sgn : {1, -1}) {
      RationalVector e(static_cast<std::size_t>(sample.d));
      e[static_cast<std::size_t>(i)] = Rational(sgn);
      if (!cone_contains(sample, e)) return ConeShape::ProperNonPointed;
    }
  return ConeShape::FullSpace;
}

long long count_faces(const WalkSample& sample, int k) {
  if (k < 0 || k > sample.d - 1) throw InvalidParameter("count_faces needs 0 <= k <= d-1");
  check_subset_guard(sample.n, k);
  if (k == 0) return classify_cone(sample) == ConeShape::Pointed ? 1 : 0;
  long long count = 0;
  for_each_subset(sample.n, k, [&](const std::vector<int>& idx) {
    if (is_k_face(sample, idx)) ++count;
  });
  return count;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{splitmix64(seed), splitmix64(seed ^ splitmix64(trial)), trial};
  return std::mt19937_64(seq);
}

McEstimate estimate_expected_faces(int d, int n, int k, int trials, std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw InvalidParameter("trials must be positive");
  if (d < 1 || n < 1) throw InvalidParameter("need d >= 1 and n >= 1");
  if (k < 0 || k > d - 1) throw InvalidParameter("k must lie in [0, d-1]");
  check_subset_guard(n, k);
  const auto start = std::chrono::steady_clock::now();
  McEstimate est{d, n, k, trials, seed};
  const auto results = run_trials(trials, threads, [&](int t) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(t));
    TrialResult r;
    const WalkSample s = draw_generic_walk(d, n, rng, r.rejects);
    if (k == 0) {
      r.shape = classify_cone(s);
      r.value = r.shape == ConeShape::Pointed ? 1.0 : 0.0;
    } else {
      r.value = static_cast<double>(count_faces(s, k));
    }
    return r;
  });
  summarize(est, results);
  if (k == 0)
    for (const auto& r : results) {
      if (r.shape == ConeShape::Pointed) ++est.pointed;
      else if (r.shape == ConeShape::ProperNonPointed) ++est.proper_non_pointed;
      else ++est.full_space;
    }
  est.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return est;
}

RecoveryInstance make_recovery_instance(int d, int n, std::vector<int> jump_positions,
                                        RationalVector amplitudes, RationalMatrix G) {
  if (d < 1 || d > n) throw InvalidParameter("recovery needs 1 <= d <= n");
  const int k = static_cast<int>(jump_positions.size());
  if (k > d) throw InvalidParameter("recovery needs k <= d");
  if (amplitudes.size() != jump_positions.size()) throw InvalidParameter("one amplitude per jump");
  std::vector<std::pair<int, Rational>> jumps;
  for (std::size_t l = 0; l < jump_positions.size(); ++l) jumps.emplace_back(jump_positions[l], amplitudes[l]);
  std::sort(jumps.begin(), jumps.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t l = 0; l < jumps.size(); ++l) {
    jump_positions[l] = jumps[l].first;
    amplitudes[l] = jumps[l].second;
  }
  for (int i = 0; i < k; ++i) {
    const int p = jump_positions[static_cast<std::size_t>(i)];
    if (p < 1 || p > n || (i > 0 && p == jump_positions[static_cast<std::size_t>(i - 1)]))
      throw InvalidParameter("jump positions must be distinct values in [1, n]");
  }
  for (const auto& a : amplitudes)
    if (a.sign() <= 0) throw InvalidParameter("amplitudes must be positive");
  if (G.size() != static_cast<std::size_t>(d)) throw InvalidParameter("G must have d rows");
  for (const auto& row : G)
    if (row.size() != static_cast<std::size_t>(n)) throw InvalidParameter("G must have n columns");

  RecoveryInstance inst;
  inst.n = n;
  inst.d = d;
  inst.k = k;
  inst.signal.assign(static_cast<std::size_t>(n), Rational(0));
  for (int l = 0; l < k; ++l)
    for (int m = 1; m <= jump_positions[static_cast<std::size_t>(l)]; ++m)
      inst.signal[static_cast<std::size_t>(m - 1)] += amplitudes[static_cast<std::size_t>(l)];
  inst.jump_positions = std::move(jump_positions);
  inst.amplitudes = std::move(amplitudes);
  inst.G = std::move(G);
  return inst;
}

RecoveryInstance draw_recovery_instance(int d, int n, int k, AmplitudeRule rule, std::mt19937_64& rng,
                                        long long& rejects) {
  if (d < 1 || n < d || k < 0 || k > d) throw InvalidParameter("recovery needs 0 <= k <= d <= n");
  std::vector<int> positions(static_cast<std::size_t>(n));
  std::iota(positions.begin(), positions.end(), 1);
  std::shuffle(positions.begin(), positions.end(), rng);
  positions.resize(static_cast<std::size_t>(k));

  RationalVector amplitudes;
  for (int l = 0; l < k; ++l) {
    if (rule == AmplitudeRule::Unit) {
      amplitudes.emplace_back(1);
    } else {
      // uniform on (0, 1], dyadic
      const auto bits = static_cast<long>((rng() >> 11) + 1);
      amplitudes.push_back(Rational(mpz_class(bits), mpz_class(mpz_class(1) << 53)));
    }
  }

  RationalMatrix G;
  for (;;) {
    G.clear();
    for (int i = 0; i < d; ++i) G.push_back(gaussian_vector(n, rng));
    if (rank(G) == d) break;
    ++rejects;
  }
  return make_recovery_instance(d, n, std::move(positions), std::move(amplitudes), std::move(G));
}

bool is_unique_recovery(const RecoveryInstance& inst) {
  const int n = inst.n;
  if (rank(inst.G) < inst.d) throw DegenerateSample("measurement matrix is rank deficient");
  const auto kernel = null_space(inst.G, n);
  const int m = static_cast<int>(kernel.size());
  if (m == 0) return true;

  // z = N w; x + z must stay in B^(n): descents and the last coordinate >= 0.
  auto z_row = [&](int i) {
    RationalVector row(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) row[static_cast<std::size_t>(c)] = kernel[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
    return row;
  };
  LinearProgram lp;
  lp.num_vars = m;
  lp.free_vars.assign(static_cast<std::size_t>(m), true);
  for (int i = 0; i < n; ++i) {
    RationalVector coeffs = z_row(i);
    Rational slack = inst.signal[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      const RationalVector next = z_row(i + 1);
      for (int c = 0; c < m; ++c) coeffs[static_cast<std::size_t>(c)] -= next[static_cast<std::size_t>(c)];
      slack -= inst.signal[static_cast<std::size_t>(i + 1)];
    }
    lp.constraints.push_back({std::move(coeffs), Relation::GreaterEqual, -slack});
  }
  for (int c = 0; c < m; ++c)
    for (int sgn : {1, -1}) {
      lp.objective.assign(static_cast<std::size_t>(m), Rational(0));
      lp.objective[static_cast<std::size_t>(c)] = Rational(sgn);
      const LpSolution sol = solve(lp);
      if (sol.status == LpStatus::Infeasible) throw DegenerateSample("kernel LP infeasible at z = 0");
      if (sol.status == LpStatus::Unbounded || sol.objective.sign() > 0) return false;
    }
  return true;
}

McEstimate estimate_recovery_probability(int d, int n, int k, AmplitudeRule rule, int trials,
                                         std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw InvalidParameter("trials must be positive");
  if (d < 1 || n < d || k < 0 || k > d) throw InvalidParameter("recovery needs 0 <= k <= d <= n");
  if (n > kMcMaxN) throw CapacityExceeded("Monte Carlo runs are limited to n <= " + std::to_string(kMcMaxN));
  const auto start = std::chrono::steady_clock::now();
  McEstimate est{d, n, k, trials, seed};
  const auto results = run_trials(trials, threads, [&](int t) {
    auto rng = trial_rng(seed, static_cast<std::uint64_t>(t));
    TrialResult r;
    const RecoveryInstance inst = draw_recovery_instance(d, n, k, rule, rng, r.rejects);
    r.value = is_unique_recovery(inst) ? 1.0 : 0.0;
    return r;
  });
  summarize(est, results);
  est.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return est;
}

}  // namespace rlah
