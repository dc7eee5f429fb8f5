#include "rlah/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rlah/errors.hpp"
#include "rlah/lah_distribution.hpp"

namespace rlah {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(e^a + e^b). Terms more than 40 nats down cannot move the sum.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  const double d = b - a;
  if (d < -40.0) return a;
  return a + std::log1p(std::exp(d));
}

inline double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

void check_limit_params(int n, int k, double r) {
  if (n < 2) throw InvalidParameter("limit approximants need n >= 2");
  if (k < 0) throw InvalidParameter("k must be non-negative");
  if (!(r >= 0.0)) throw InvalidParameter("r must be non-negative");
  if (k == 0 && r == 0.0) throw InadmissibleParameters("k = r = 0 is excluded");
}

double lambda_of(int n, int k, double r) { return (k + r) * std::log(static_cast<double>(n)); }

}  // namespace

double gamma_real(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_real needs x > 0");
  if (x > 170.0) throw DomainError("gamma_real overflows beyond x = 170; use log_gamma_real");
  return std::tgamma(x);
}

double log_gamma_real(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma_real needs x > 0");
  int sign = 0;
  return lgamma_r(x, &sign);
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma needs x > 0");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // ln x - 1/(2x) - sum B_{2j} / (2j x^{2j})
  const double series =
      inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132)))));
  return shift + std::log(x) - 0.5 * inv - series;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

LogSpaceTable::LogSpaceTable(StirlingKind kind, double r, int stored_rows, int n_max_float)
    : kind_(kind), r_(r), n_max_(n_max_float) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidParameter("r must be finite and non-negative");
  if (stored_rows < 0) stored_rows = 0;
  stored_rows = std::min(stored_rows, n_max_float);
  rows_.push_back({0.0});
  for (int n = 1; n <= stored_rows; ++n) rows_.push_back(advance(rows_.back(), n));
}

void LogSpaceTable::check(int n) const {
  if (n < 0) throw InvalidParameter("n must be non-negative");
  if (n > n_max_)
    throw CapacityExceeded("n = " + std::to_string(n) + " exceeds float capacity " +
                           std::to_string(n_max_));
}

std::vector<double> LogSpaceTable::advance(const std::vector<double>& prev, int n) const {
  std::vector<double> row(static_cast<std::size_t>(n) + 1, kNegInf);
  const double first_factor = safe_log(n - 1 + r_);
  for (int k = 0; k <= n; ++k) {
    double v = kNegInf;
    if (k < n) {
      const double factor = kind_ == StirlingKind::First ? first_factor : safe_log(k + r_);
      v = factor + prev[static_cast<std::size_t>(k)];
      if (std::isnan(v)) v = kNegInf;
    }
    if (k >= 1) v = log_add(v, prev[static_cast<std::size_t>(k - 1)]);
    row[static_cast<std::size_t>(k)] = v;
  }
  return row;
}

std::vector<double> LogSpaceTable::row(int n) const {
  check(n);
  if (static_cast<std::size_t>(n) < rows_.size()) return rows_[static_cast<std::size_t>(n)];
  std::vector<double> cur = rows_.back();
  for (int m = static_cast<int>(rows_.size()); m <= n; ++m) cur = advance(cur, m);
  return cur;
}

double LogSpaceTable::entry(int n, int k) const {
  check(n);
  if (k < 0 || k > n) return kNegInf;
  if (static_cast<std::size_t>(n) < rows_.size()) return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  if (k == n) return 0.0;
  return column(k, n)[static_cast<std::size_t>(n)];
}

std::vector<double> LogSpaceTable::column(int k, int n) const {
  check(n);
  if (k < 0) throw InvalidParameter("k must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(n) + 1, kNegInf);
  // Rows truncated to columns 0..k; column c only reads c and c - 1.
  std::vector<double> cols(static_cast<std::size_t>(k) + 1, kNegInf);
  cols[0] = 0.0;
  if (k == 0) out[0] = 0.0;
  for (int m = 1; m <= n; ++m) {
    const double first_factor = safe_log(m - 1 + r_);
    for (int c = std::min(m, k); c >= 0; --c) {
      auto& cur = cols[static_cast<std::size_t>(c)];
      double v = kNegInf;
      if (c < m) {
        const double factor = kind_ == StirlingKind::First ? first_factor : safe_log(c + r_);
        v = factor + cur;
        if (std::isnan(v)) v = kNegInf;
      }
      if (c >= 1) v = log_add(v, cols[static_cast<std::size_t>(c - 1)]);
      cur = v;
    }
    if (m >= k) out[static_cast<std::size_t>(m)] = cols[static_cast<std::size_t>(k)];
  }
  return out;
}

FloatLahPmf::FloatLahPmf(int n, int k, double r, int n_max_float) : n_(n), k_(k), r_(r) {
  if (n < 1) throw InvalidParameter("n must be a positive integer");
  if (k < 0 || k > n) throw InvalidParameter("k must lie in [0, n]");
  if (!(r >= 0.0)) throw InvalidParameter("r must be non-negative");
  if (k == 0 && r == 0.0) throw InadmissibleParameters("k = r = 0 is excluded");

  const LogSpaceTable first(StirlingKind::First, r, 0, n_max_float);
  const LogSpaceTable second(StirlingKind::Second, r, 0, n_max_float);
  const auto row = first.row(n);
  const auto col = second.column(k, n);

  log_p_.resize(static_cast<std::size_t>(n - k + 1));
  double total = kNegInf;
  for (int j = k; j <= n; ++j) {
    const double v = row[static_cast<std::size_t>(j)] + col[static_cast<std::size_t>(j)];
    log_p_[static_cast<std::size_t>(j - k)] = v;
    total = log_add(total, v);
  }
  cdf_.resize(log_p_.size());
  double running = 0.0;
  for (std::size_t i = 0; i < log_p_.size(); ++i) {
    log_p_[i] -= total;
    running += std::exp(log_p_[i]);
    cdf_[i] = running;
  }
}

double FloatLahPmf::log_pmf(int j) const {
  if (j < k_ || j > n_) return kNegInf;
  return log_p_[static_cast<std::size_t>(j - k_)];
}

double FloatLahPmf::pmf(int j) const { return std::exp(log_pmf(j)); }

double FloatLahPmf::cdf(int j) const {
  if (j < k_) return 0.0;
  if (j >= n_) return cdf_.back();
  return cdf_[static_cast<std::size_t>(j - k_)];
}

double FloatLahPmf::upper_tail(int j) const {
  // Summed from the far end so small tails keep their relative accuracy.
  double sum = 0.0;
  for (int i = n_; i >= std::max(j, k_); --i) sum += pmf(i);
  return sum;
}

double FloatLahPmf::mean() const {
  double sum = 0.0;
  for (int j = k_; j <= n_; ++j) sum += j * pmf(j);
  return sum;
}

double FloatLahPmf::log_mgf(double z) const {
  double acc = kNegInf;
  for (int j = k_; j <= n_; ++j) acc = log_add(acc, z * j + log_pmf(j));
  return acc;
}

std::vector<int> FloatLahPmf::mode() const {
  const double best = *std::max_element(log_p_.begin(), log_p_.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < log_p_.size(); ++i)
    if (log_p_[i] >= best - 1e-12) out.push_back(k_ + static_cast<int>(i));
  return out;
}

double expectation_asymptotic(int n, KRegime regime, double r, double k_or_alpha) {
  if (n < 2) throw InvalidParameter("expectation asymptotics need n >= 2");
  const double dn = n;
  switch (regime) {
    case KRegime::Fixed: {
      const double k = k_or_alpha;
      if (k < 0.0) throw InvalidParameter("k must be non-negative");
      if (k == 0.0) return r * std::log(dn);
      return (k + r) * std::log(dn / k);
    }
    case KRegime::Proportional: {
      const double alpha = k_or_alpha;
      if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidParameter("alpha must lie in (0, 1)");
      return dn * alpha * std::log(1.0 / alpha) / (1.0 - alpha);
    }
    case KRegime::Linear:
      return dn;
  }
  throw InvalidParameter("unknown regime");
}

double LimitApproximant::psi_limit(double z) const {
  const double arg = (k + r) * std::exp(z) + r;
  return std::exp(log_gamma_real(k + 2 * r) - log_gamma_real(arg));
}

LimitApproximant make_approximant(int n, int k, double r) {
  check_limit_params(n, k, r);
  return LimitApproximant{n, k, r, lambda_of(n, k, r)};
}

double mod_poisson_residual(int n, int k, const Rational& r, double z, ResidualRoute route) {
  const double rd = r.to_double();
  check_limit_params(n, k, rd);
  if (route == ResidualRoute::Auto)
    route = n <= kExactResidualMaxN ? ResidualRoute::Exact : ResidualRoute::LogSpace;
  if (route == ResidualRoute::LogSpace) return mod_poisson_residual(FloatLahPmf(n, k, rd), z);

  // t = e^z on the 2^-53 grid, exact from there on.
  const double scaled = std::nearbyint(std::ldexp(std::exp(z), 53));
  const Rational t = Rational::from_double(scaled) / Rational::from_double(0x1.0p53);
  const Rational pgf = pgf_eval(make_triple(n, k, r), t);
  const double lambda = lambda_of(n, k, rd);
  return std::exp(pgf.log() - lambda * (t.to_double() - 1.0));
}

double mod_poisson_residual(const FloatLahPmf& pmf, double z) {
  check_limit_params(pmf.n(), pmf.k(), pmf.r());
  const double lambda = lambda_of(pmf.n(), pmf.k(), pmf.r());
  return std::exp(pmf.log_mgf(z) - lambda * std::expm1(z));
}

double clt_normalize(double x, int n, int k, double r) {
  check_limit_params(n, k, r);
  const double lambda = lambda_of(n, k, r);
  return (x - lambda) / std::sqrt(lambda);
}

namespace {

template <class Pmf>
double kolmogorov_impl(int first, int last, const Pmf& pmf, int n, int k, double r) {
  check_limit_params(n, k, r);
  const double lambda = lambda_of(n, k, r);
  const double scale = std::sqrt(lambda);
  double worst = 0.0;
  double below = 0.0;
  for (int j = first; j <= last; ++j) {
    const double phi = normal_cdf((j - lambda) / scale);
    const double at = below + pmf(j);
    worst = std::max({worst, std::abs(below - phi), std::abs(at - phi)});
    below = at;
  }
  return worst;
}

template <class Pmf>
double llt_impl(int first, int last, const Pmf& pmf, int n, int k, double r) {
  check_limit_params(n, k, r);
  const double lambda = lambda_of(n, k, r);
  const int lo = std::min(first - 1, static_cast<int>(std::floor(lambda - 60.0 * std::sqrt(lambda))));
  double worst = 0.0;
  for (int j = lo; j <= last + 1; ++j) {
    const double p = (j < first || j > last) ? 0.0 : pmf(j);
    worst = std::max(worst, std::abs(p - llt_gaussian_pmf(j, n, k, r)));
  }
  return worst;
}

}  // namespace

double kolmogorov_distance(const FloatLahPmf& pmf) {
  return kolmogorov_impl(pmf.first(), pmf.last(), [&](int j) { return pmf.pmf(j); }, pmf.n(),
                         pmf.k(), pmf.r());
}

double kolmogorov_distance(const LahDistribution& dist) {
  const auto& p = dist.params();
  return kolmogorov_impl(dist.first(), dist.last(), [&](int j) { return dist.pmf(j).to_double(); },
                         p.n, p.k, p.r.to_double());
}

double llt_gaussian_pmf(int j, int n, int k, double r) {
  check_limit_params(n, k, r);
  const double lambda = lambda_of(n, k, r);
  const double d = j - lambda;
  return std::exp(-d * d / (2.0 * lambda)) / std::sqrt(2.0 * std::numbers::pi * lambda);
}

double llt_sup_gap(const FloatLahPmf& pmf) {
  return llt_impl(pmf.first(), pmf.last(), [&](int j) { return pmf.pmf(j); }, pmf.n(), pmf.k(),
                  pmf.r());
}

double llt_sup_gap(const LahDistribution& dist) {
  const auto& p = dist.params();
  return llt_impl(dist.first(), dist.last(), [&](int j) { return dist.pmf(j).to_double(); }, p.n,
                  p.k, p.r.to_double());
}

std::pair<int, int> mode_prediction(int n, int k, double r) {
  check_limit_params(n, k, r);
  if (!(k + 2 * r > 0.0)) throw DomainError("mode prediction needs k + 2r > 0");
  const double centre = lambda_of(n, k, r) - (k + r) * digamma(k + 2 * r) - 0.5;
  return {static_cast<int>(std::floor(centre)), static_cast<int>(std::ceil(centre))};
}

LdpEvaluation ldp_point(int n, int k, double r, double x) {
  check_limit_params(n, k, r);
  if (!(x > 0.0)) throw DomainError("large deviations need x > 0");
  const double log_n = std::log(static_cast<double>(n));
  const double w = (k + r) * log_n;
  LdpEvaluation out;
  out.j = static_cast<int>(std::lround(x * w));
  out.x_n = out.j / w;
  const double rate = out.x_n > 0.0 ? out.x_n * std::log(out.x_n) - out.x_n + 1.0 : 1.0;
  const double log_value = -(k + r) * rate * log_n -
                           0.5 * std::log(2.0 * std::numbers::pi * (k + r) * x * log_n) +
                           log_gamma_real(k + 2 * r) - log_gamma_real((k + r) * x + r);
  out.value = std::exp(log_value);
  return out;
}

LdpEvaluation ldp_upper_tail(int n, int k, double r, double x) {
  if (!(x > 1.0)) throw DomainError("upper-tail asymptotics need x > 1");
  auto out = ldp_point(n, k, r, x);
  out.value *= x / (x - 1.0);
  return out;
}

LdpEvaluation ldp_lower_tail(int n, int k, double r, double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("lower-tail asymptotics need 0 < x < 1");
  auto out = ldp_point(n, k, r, x);
  out.value *= 1.0 / (1.0 - x);
  return out;
}

}  // namespace rlah
