#pragma once

/**
 * @file lah_distribution.hpp
 * @brief The r-Lah distribution with exact rational statistics.
 *
 * For an admissible triple (n, k, r) the law on {k, ..., n} is
 *
 *     P[X = j] = [n j]_r {j k}_r / L(n,k)_r,
 *
 * with [.]_r and {.}_r the r-Stirling numbers of the first and second
 * kind. Everything here is exact; the floating-point route for large n
 * lives in asymptotics.hpp.
 */

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "rlah/rational.hpp"

namespace rlah {

// n >= 1, 0 <= k <= n, r >= 0 and max{k, r} > 0.
struct AdmissibleTriple {
  int n = 1;
  int k = 0;
  Rational r;

  // Throws InvalidParameter for out-of-range values and
  // InadmissibleParameters for k = r = 0.
  void validate() const;
};

AdmissibleTriple make_triple(int n, int k, const Rational& r);

class LahDistribution {
 public:
  // Throws InvalidParameter, InadmissibleParameters or CapacityExceeded.
  explicit LahDistribution(AdmissibleTriple params);

  const AdmissibleTriple& params() const { return params_; }
  int first() const { return params_.k; }
  int last() const { return params_.n; }

  // Zero outside {k, ..., n}.
  Rational pmf(int j) const;
  // P[X <= j]; 0 below k and 1 from n on.
  Rational cdf(int j) const;

  // Dense arrays indexed by j - k.
  const std::vector<Rational>& pmf_values() const { return pmf_; }
  const std::vector<Rational>& cdf_values() const { return cdf_; }
  // CDF thresholds rounded once to binary64, used by sample().
  const std::vector<double>& cdf_thresholds() const { return cdf_rounded_; }

  // L(n,k)_r.
  const Rational& normalizer() const { return normalizer_; }

 private:
  AdmissibleTriple params_;
  Rational normalizer_;
  std::vector<Rational> pmf_;
  std::vector<Rational> cdf_;
  std::vector<double> cdf_rounded_;
};

LahDistribution build_distribution(const AdmissibleTriple& params);

// Closed form (k + [k(n+r) + r(n+1)] [H_{n+2r-1} - H_{k+2r-1}]) / (n-k+1).
Rational expectation(const LahDistribution& dist);
Rational expectation_closed_form(const AdmissibleTriple& params);
// k(n+2r)/(n-k+1) [H_{n+2r} - H_{k+2r-1}] + r [H_{n+2r-1} - H_{k+2r-1}].
Rational expectation_closed_form_alt(const AdmissibleTriple& params);

// E[X^order] by summation over the PMF.
Rational raw_moment(const LahDistribution& dist, int order);
Rational variance(const LahDistribution& dist);

struct ParityProbabilities {
  Rational even;
  Rational odd;
};

ParityProbabilities parity_probabilities(const LahDistribution& dist);

// Every maximizer of the PMF, ascending.
std::vector<int> mode(const LahDistribution& dist);

// E[t^X] through the finite alternating sum over m = 0..k with the
// Gamma ratio expanded as a rising factorial. Exact for rational t.
Rational pgf_eval(const AdmissibleTriple& params, const Rational& t);
// E[t^X] summed directly over the PMF.
Rational pgf_by_pmf(const LahDistribution& dist, const Rational& t);

// `count` i.i.d. draws by inverse CDF. The stream is owned by the caller.
std::vector<int> sample(const LahDistribution& dist, std::mt19937_64& rng, std::size_t count);

struct LogConcavityReport {
  bool log_concave = true;
  std::optional<int> first_violation;  // the offending j
};

// Checks pmf(j)^2 >= pmf(j-1) pmf(j+1) for every interior j.
LogConcavityReport certify_log_concavity(const LahDistribution& dist);

}  // namespace rlah
