#pragma once

// Binary64 route for large n: log-space r-Stirling tables, the real gamma
// and digamma functions, and the limit approximants of the r-Lah law
// (mod-Poisson residual, CLT, local limit, mode location, large deviations).

#include <utility>
#include <vector>

#include "rlah/exact.hpp"
#include "rlah/rational.hpp"

namespace rlah {

class LahDistribution;

inline constexpr int kDefaultFloatNMax = 20000;

// Gamma(x) for 0 < x <= 170. DomainError for x <= 0.
double gamma_real(double x);
// log Gamma(x) for x > 0, any magnitude.
double log_gamma_real(double x);
// Gamma'(x)/Gamma(x) for x > 0, absolute error below 1e-10.
double digamma(double x);
// Standard normal CDF.
double normal_cdf(double x);

/**
 * Natural-log r-Stirling numbers of one kind in binary64.
 *
 * The first `stored_rows` rows are kept; larger rows and columns are
 * produced on demand by rolling the same recurrence forward in
 * log-sum-exp form, O(n) memory per call. Zero entries are -inf.
 */
class LogSpaceTable {
 public:
  LogSpaceTable(StirlingKind kind, double r, int stored_rows = 128,
                int n_max_float = kDefaultFloatNMax);

  StirlingKind kind() const { return kind_; }
  double r() const { return r_; }
  int n_max() const { return n_max_; }

  double entry(int n, int k) const;
  // log entries k = 0..n of row n.
  std::vector<double> row(int n) const;
  // log entries j = 0..n of column k.
  std::vector<double> column(int k, int n) const;

 private:
  std::vector<double> advance(const std::vector<double>& prev, int n) const;
  void check(int n) const;

  StirlingKind kind_;
  double r_;
  int n_max_;
  std::vector<std::vector<double>> rows_;
};

// Log-space r-Lah PMF for large n. Entries cover j = first .. n.
class FloatLahPmf {
 public:
  FloatLahPmf(int n, int k, double r, int n_max_float = kDefaultFloatNMax);

  int n() const { return n_; }
  int k() const { return k_; }
  double r() const { return r_; }
  int first() const { return k_; }
  int last() const { return n_; }

  double log_pmf(int j) const;
  double pmf(int j) const;
  // P[X <= j] and P[X >= j], summed in binary64.
  double cdf(int j) const;
  double upper_tail(int j) const;
  double mean() const;
  // log E[e^{zX}].
  double log_mgf(double z) const;
  // Maximizers within a relative tolerance of 1e-12 on the PMF.
  std::vector<int> mode() const;

 private:
  int n_, k_;
  double r_;
  std::vector<double> log_p_;
  std::vector<double> cdf_;
};

enum class KRegime { Fixed, Proportional, Linear };

// Leading-order E[Lah(n,k)_r]: (k+r) log(n/k) for fixed k (r log n when
// k = 0), n a log(1/a)/(1-a) for k ~ a n, and n for k ~ n. `k_or_alpha` is
// k for the fixed regime and alpha for the proportional one.
double expectation_asymptotic(int n, KRegime regime, double r, double k_or_alpha = 0.0);

// Bundle of limit-theorem predictions for fixed (k, r) at a given n.
struct LimitApproximant {
  int n = 2;
  int k = 0;
  double r = 0.0;
  double lambda = 0.0;  // (k + r) log n

  // Gamma(k+2r) / Gamma((k+r) e^z + r).
  double psi_limit(double z) const;
};

LimitApproximant make_approximant(int n, int k, double r);

enum class ResidualRoute { Auto, Exact, LogSpace };

inline constexpr int kExactResidualMaxN = 512;

// E[e^{zX}] / e^{lambda (e^z - 1)}. The exact route evaluates the PGF at
// t = e^z rounded to a multiple of 2^-53 and uses that same t in the
// Poisson factor; Auto picks it for n <= kExactResidualMaxN.
double mod_poisson_residual(int n, int k, const Rational& r, double z,
                            ResidualRoute route = ResidualRoute::Auto);
double mod_poisson_residual(const FloatLahPmf& pmf, double z);

// (x - lambda) / sqrt(lambda).
double clt_normalize(double x, int n, int k, double r);
// sup_y |P[(X - lambda)/sqrt(lambda) <= y] - Phi(y)|.
double kolmogorov_distance(const FloatLahPmf& pmf);
double kolmogorov_distance(const LahDistribution& dist);

// exp{-(j - lambda)^2 / (2 lambda)} / sqrt(2 pi lambda).
double llt_gaussian_pmf(int j, int n, int k, double r);
// sup over integer j of |P[X = j] - llt_gaussian_pmf(j)|.
double llt_sup_gap(const FloatLahPmf& pmf);
double llt_sup_gap(const LahDistribution& dist);

// floor and ceil of (k+r) log n - (k+r) digamma(k+2r) - 1/2.
std::pair<int, int> mode_prediction(int n, int k, double r);

struct LdpEvaluation {
  int j = 0;          // round((k+r) x log n)
  double x_n = 0.0;   // j / ((k+r) log n)
  double value = 0.0;
};

// Large-deviation asymptotics at the lattice point nearest (k+r) x log n.
// Upper tail needs x > 1, lower tail x < 1; DomainError otherwise.
LdpEvaluation ldp_point(int n, int k, double r, double x);
LdpEvaluation ldp_upper_tail(int n, int k, double r, double x);
LdpEvaluation ldp_lower_tail(int n, int k, double r, double x);

}  // namespace rlah
