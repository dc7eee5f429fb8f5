#include "rlah/lah_distribution.hpp"

#include <algorithm>
#include <string>

#include "rlah/errors.hpp"
#include "rlah/exact.hpp"

namespace rlah {

void AdmissibleTriple::validate() const {
  if (n < 1) throw InvalidParameter("n must be a positive integer, got " + std::to_string(n));
  if (k < 0 || k > n)
    throw InvalidParameter("k must lie in [0, n], got k = " + std::to_string(k));
  validate_r(r);
  if (k == 0 && r.is_zero()) throw InadmissibleParameters("k = r = 0 is excluded");
}

AdmissibleTriple make_triple(int n, int k, const Rational& r) {
  AdmissibleTriple t{n, k, r};
  t.validate();
  return t;
}

LahDistribution::LahDistribution(AdmissibleTriple params) : params_(std::move(params)) {
  params_.validate();
  const int n = params_.n;
  const int k = params_.k;
  const auto first = first_kind_row(n, params_.r);
  const auto second = second_kind_column(k, n, params_.r);
  normalizer_ = lah_r(n, k, params_.r);

  const auto size = static_cast<std::size_t>(n - k + 1);
  pmf_.reserve(size);
  cdf_.reserve(size);
  cdf_rounded_.reserve(size);
  Rational running;
  for (int j = k; j <= n; ++j) {
    pmf_.push_back(first[static_cast<std::size_t>(j)] * second[static_cast<std::size_t>(j)] /
                   normalizer_);
    running += pmf_.back();
    cdf_.push_back(running);
    cdf_rounded_.push_back(running.to_double());
  }
}

Rational LahDistribution::pmf(int j) const {
  if (j < first() || j > last()) return Rational(0);
  return pmf_[static_cast<std::size_t>(j - first())];
}

Rational LahDistribution::cdf(int j) const {
  if (j < first()) return Rational(0);
  if (j >= last()) return cdf_.back();
  return cdf_[static_cast<std::size_t>(j - first())];
}

LahDistribution build_distribution(const AdmissibleTriple& params) { return LahDistribution(params); }

Rational expectation_closed_form(const AdmissibleTriple& params) {
  params.validate();
  const Rational n(params.n);
  const Rational k(params.k);
  const Rational& r = params.r;
  const Rational alpha = k + Rational(2) * r - Rational(1);
  const Rational h = harmonic_diff(alpha, params.n - params.k);
  const Rational coeff = k * (n + r) + r * (n + Rational(1));
  return (k + coeff * h) / (n - k + Rational(1));
}

Rational expectation_closed_form_alt(const AdmissibleTriple& params) {
  params.validate();
  const Rational n(params.n);
  const Rational k(params.k);
  const Rational& r = params.r;
  const Rational alpha = k + Rational(2) * r - Rational(1);
  const Rational h_long = harmonic_diff(alpha, params.n - params.k + 1);
  const Rational h_short = harmonic_diff(alpha, params.n - params.k);
  return k * (n + Rational(2) * r) / (n - k + Rational(1)) * h_long + r * h_short;
}

Rational expectation(const LahDistribution& dist) { return expectation_closed_form(dist.params()); }

Rational raw_moment(const LahDistribution& dist, int order) {
  if (order < 0) throw InvalidParameter("moment order must be non-negative");
  Rational sum;
  for (int j = dist.first(); j <= dist.last(); ++j)
    sum += pow(Rational(j), static_cast<unsigned>(order)) * dist.pmf(j);
  return sum;
}

Rational variance(const LahDistribution& dist) {
  const Rational mean = raw_moment(dist, 1);
  return raw_moment(dist, 2) - mean * mean;
}

ParityProbabilities parity_probabilities(const LahDistribution& dist) {
  ParityProbabilities out;
  for (int j = dist.first(); j <= dist.last(); ++j) (j % 2 == 0 ? out.even : out.odd) += dist.pmf(j);
  return out;
}

std::vector<int> mode(const LahDistribution& dist) {
  const auto& pmf = dist.pmf_values();
  const Rational& best = *std::max_element(pmf.begin(), pmf.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < pmf.size(); ++i)
    if (pmf[i] == best) out.push_back(dist.first() + static_cast<int>(i));
  return out;
}

Rational pgf_eval(const AdmissibleTriple& params, const Rational& t) {
  params.validate();
  const int n = params.n;
  const int k = params.k;
  const Rational& r = params.r;
  const Rational base = r * (t + Rational(1));
  const Rational n_fact(factorial(n));
  Rational sum;
  for (int m = 0; m <= k; ++m) {
    // Gamma(a + n) / (Gamma(a) n!) = a (a+1) ... (a+n-1) / n!, and the
    // r = 0, m = 0 summand vanishes because a = 0.
    const Rational a = base + t * Rational(m);
    Rational term = Rational(binomial(k, m)) * rising_factorial(a, n) / n_fact;
    if ((k - m) % 2 != 0) term = -term;
    sum += term;
  }
  const Rational top = Rational(n) + Rational(2) * r - Rational(1);
  return sum / gen_binomial(top, n - k);
}

Rational pgf_by_pmf(const LahDistribution& dist, const Rational& t) {
  // Horner from the top of the support.
  Rational acc;
  for (int j = dist.last(); j >= dist.first(); --j) acc = acc * t + dist.pmf(j);
  return acc * pow(t, static_cast<unsigned>(dist.first()));
}

std::vector<int> sample(const LahDistribution& dist, std::mt19937_64& rng, std::size_t count) {
  const auto& thresholds = dist.cdf_thresholds();
  std::vector<int> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto it = std::upper_bound(thresholds.begin(), thresholds.end(), u);
    out.push_back(dist.first() + static_cast<int>(it - thresholds.begin()));
  }
  return out;
}

LogConcavityReport certify_log_concavity(const LahDistribution& dist) {
  LogConcavityReport report;
  for (int j = dist.first() + 1; j < dist.last(); ++j) {
    const Rational centre = dist.pmf(j);
    if (centre * centre < dist.pmf(j - 1) * dist.pmf(j + 1)) {
      report.log_concave = false;
      report.first_violation = j;
      break;
    }
  }
  return report;
}

}  // namespace rlah
