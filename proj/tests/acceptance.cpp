// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rlah/asymptotics.hpp"
#include "rlah/cones.hpp"
#include "rlah/exact.hpp"
#include "rlah/lah_distribution.hpp"
#include "rlah/monte_carlo.hpp"

using namespace rlah;

namespace {

const std::vector<Rational> kRGrid{Rational(0), Rational(1, 2), Rational(1), Rational(7, 3)};
const std::vector<int> kTrendN{100, 1000, 10000};

bool admissible(int k, const Rational& r) { return k > 0 || !r.is_zero(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Each n = 10^4 float PMF is an O(n^2) fill; build each (n, k, r) once.
const FloatLahPmf& float_pmf(int n, int k, double r) {
  static std::map<std::tuple<int, int, double>, std::unique_ptr<FloatLahPmf>> cache;
  auto& slot = cache[{n, k, r}];
  if (!slot) slot = std::make_unique<FloatLahPmf>(n, k, r);
  return *slot;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Outcome ac1() {
  long checks = 0, bad = 0;
  auto check = [&](bool ok) {
    ++checks;
    if (!ok) ++bad;
  };
  for (const auto& r : kRGrid)
    for (int n = 0; n <= 12; ++n)
      for (int k = 0; k <= n; ++k) {
        for (auto kind : {StirlingKind::First, StirlingKind::Second})
          check(stirling_r(kind, n, k, r) == stirling_r_poly(kind, n, k, r));
        if (n < 1 || !admissible(k, r)) continue;
        Rational sum, alternating;
        for (int j = k; j <= n; ++j) {
          const Rational term = stirling_r(StirlingKind::First, n, j, r) * stirling_r(StirlingKind::Second, j, k, r);
          sum += term;
          alternating += (n - j) % 2 == 0 ? term : -term;
        }
        check(lah_r(n, k, r) == sum);
        if (n > k) check(alternating.is_zero());
        const LahDistribution dist(make_triple(n, k, r));
        check(dist.cdf_values().back() == Rational(1));
        if (n > k) {
          const auto parity = parity_probabilities(dist);
          check(parity.even == Rational(1, 2) && parity.odd == Rational(1, 2));
        }
        const Rational mean = raw_moment(dist, 1);
        check(expectation_closed_form(dist.params()) == mean);
        check(expectation_closed_form_alt(dist.params()) == mean);
      }
  return {bad == 0, std::to_string(checks) + " exact identities, " + std::to_string(bad) + " failures"};
}

Outcome ac2() {
  long checks = 0, bad = 0;
  for (const auto& r : kRGrid)
    for (int n = 1; n <= 12; ++n) {
      for (auto kind : {StirlingKind::First, StirlingKind::Second})
        for (int k = 1; k <= n - 1; ++k) {
          const Rational a = stirling_r(kind, n, k, r);
          ++checks;
          if (!(a * a > stirling_r(kind, n, k - 1, r) * stirling_r(kind, n, k + 1, r))) ++bad;
        }
      for (int k = 0; k <= n; ++k) {
        if (!admissible(k, r)) continue;
        ++checks;
        if (!certify_log_concavity(LahDistribution(make_triple(n, k, r))).log_concave) ++bad;
      }
    }
  return {bad == 0, std::to_string(checks) + " rows/PMFs, " + std::to_string(bad) + " violations"};
}

Outcome ac3() {
  long checks = 0, bad = 0;
  for (const auto& r : kRGrid)
    for (int n = 1; n <= 12; ++n)
      for (int k = 0; k <= n; ++k) {
        if (!admissible(k, r)) continue;
        const LahDistribution dist(make_triple(n, k, r));
        for (const auto& t : {Rational(-1), Rational(0), Rational(1, 3), Rational(1), Rational(2)}) {
          ++checks;
          if (pgf_eval(dist.params(), t) != pgf_by_pmf(dist, t)) ++bad;
        }
      }
  return {bad == 0, std::to_string(checks) + " evaluations, " + std::to_string(bad) + " mismatches"};
}

const std::vector<std::pair<int, Rational>> kModeGrid{{1, Rational(1, 2)}, {2, Rational(0)}, {0, Rational(1, 2)}};

Outcome ac4() {
  Outcome out;
  std::ostringstream info;
  for (const auto& [k, r] : kModeGrid) {
    const double rd = r.to_double();
    // n = 10^3 through the exact PMF; informational only.
    {
      const auto [lo, hi] = mode_prediction(1000, k, rd);
      const auto modes = mode(LahDistribution(make_triple(1000, k, r)));
      bool inside = true;
      for (int m : modes) inside = inside && (m == lo || m == hi);
      info << " n=1e3 (k=" << k << ",r=" << r << ") mode " << modes.front() << " pair {" << lo << "," << hi
           << "}" << (inside ? "" : " [informational miss]") << ";";
    }
    const auto [lo, hi] = mode_prediction(10000, k, rd);
    const auto modes = float_pmf(10000, k, rd).mode();
    bool inside = true;
    for (int m : modes) inside = inside && (m == lo || m == hi);
    info << " n=1e4 mode " << modes.front() << " pair {" << lo << "," << hi << "};";
    out.pass = out.pass && inside;
  }
  out.detail = info.str();
  return out;
}

Outcome ac5() {
  std::vector<double> ks;
  for (int n : kTrendN) ks.push_back(kolmogorov_distance(float_pmf(n, 1, 0.5)));
  const bool decreasing = ks[0] > ks[1] && ks[1] > ks[2];
  const bool small = ks[2] < 0.12;
  return {decreasing && small, "distances " + fmt(ks[0]) + " > " + fmt(ks[1]) + " > " + fmt(ks[2]) +
                                   (decreasing ? " (strictly decreasing)" : " (not decreasing)") +
                                   ", final " + (small ? "< 0.12" : ">= 0.12")};
}

Outcome ac6() {
  std::vector<double> g;
  for (int n : kTrendN) g.push_back(std::sqrt(std::log(static_cast<double>(n))) * llt_sup_gap(float_pmf(n, 1, 0.5)));
  return {g[0] > g[1] && g[1] > g[2], "scaled gaps " + fmt(g[0]) + ", " + fmt(g[1]) + ", " + fmt(g[2])};
}

Outcome ac7() {
  Outcome out;
  const auto limit = make_approximant(100, 1, 0.5);
  std::ostringstream info;
  for (double z : {-0.5, 0.3, 1.0}) {
    const double psi = limit.psi_limit(z);
    const double small = std::abs(mod_poisson_residual(100, 1, Rational(1, 2), z) - psi);
    const double large = std::abs(mod_poisson_residual(float_pmf(10000, 1, 0.5), z) - psi);
    info << " z=" << z << ": " << fmt(small) << " -> " << fmt(large) << ";";
    out.pass = out.pass && large < small;
  }
  const double psi0 = limit.psi_limit(0.0);
  info << " |Psi(0)-1| = " << fmt(std::abs(psi0 - 1.0));
  out.pass = out.pass && std::abs(psi0 - 1.0) <= 1e-12;
  out.detail = info.str();
  return out;
}

Outcome ac8() {
  auto upper = [](int n) {
    const auto l = ldp_upper_tail(n, 1, 0.5, 2.0);
    return float_pmf(n, 1, 0.5).upper_tail(l.j) / l.value;
  };
  auto lower = [](int n) {
    const auto l = ldp_lower_tail(n, 1, 0.5, 0.5);
    return float_pmf(n, 1, 0.5).cdf(l.j) / l.value;
  };
  const double u2 = upper(100), u4 = upper(10000), l2 = lower(100), l4 = lower(10000);
  const bool pass = std::abs(u4 - 1) < std::abs(u2 - 1) && std::abs(l4 - 1) < std::abs(l2 - 1);
  return {pass, "upper ratio " + fmt(u2) + " -> " + fmt(u4) + ", lower ratio " + fmt(l2) + " -> " + fmt(l4)};
}

constexpr std::uint64_t kSeed = 20240611;

Outcome ac9() {
  Outcome out;
  std::ostringstream info;
  const int trials = 2000;
  for (auto [d, n, k] : std::vector<std::tuple<int, int, int>>{{2, 2, 1}, {2, 4, 1}, {3, 4, 1}, {3, 4, 2}, {3, 6, 2}}) {
    const double exact = expected_face_count(ConeFaceQuery{d, n, k}).to_double();
    const auto est = estimate_expected_faces(d, n, k, trials, kSeed);
    bool ok = std::abs(est.mean - exact) <= 3.0 * est.stderr_;
    if (d == 2 && n == 2 && k == 1) ok = est.mean == 2.0 && est.stderr_ == 0.0;
    info << " (" << d << "," << n << "," << k << ") " << fmt(est.mean) << "+-" << fmt(est.stderr_) << " vs "
         << fmt(exact) << (ok ? "" : " MISS") << ";";
    out.pass = out.pass && ok;
  }
  out.detail = info.str();
  return out;
}

Outcome ac10() {
  Outcome out;
  std::ostringstream info;
  const int trials = 2000;
  for (auto [d, n, k] : std::vector<std::tuple<int, int, int>>{{2, 3, 1}, {2, 6, 1}, {3, 6, 2}}) {
    const double exact = recovery_probability(d, n, k).to_double();
    const auto est = estimate_recovery_probability(d, n, k, AmplitudeRule::Unit, trials, kSeed);
    const bool ok = std::abs(est.mean - exact) <= 3.0 * est.stderr_;
    info << " (" << d << "," << n << "," << k << ") " << fmt(est.mean) << "+-" << fmt(est.stderr_) << " vs "
         << fmt(exact) << (ok ? "" : " MISS") << ";";
    out.pass = out.pass && ok;
  }
  int violations = 0;
  for (int i = 0; i < 100; ++i) {
    auto rng = trial_rng(kSeed + 1, static_cast<std::uint64_t>(i));
    long long rejects = 0;
    const int d = 2 + i % 2, n = 6, k = 1 + i % 2;
    const auto inst = draw_recovery_instance(d, n, k, AmplitudeRule::Random, rng, rejects);
    const bool base = is_unique_recovery(inst);
    for (const auto& factor : {Rational(1, 1000), Rational(7, 3), Rational(1024)}) {
      RationalVector scaled = inst.amplitudes;
      for (auto& a : scaled) a *= factor;
      const auto other = make_recovery_instance(d, n, inst.jump_positions, scaled, inst.G);
      if (is_unique_recovery(other) != base) ++violations;
    }
  }
  info << " amplitude invariance: 100 instances, " << violations << " violations";
  out.pass = out.pass && violations == 0;
  out.detail = info.str();
  return out;
}

Outcome ac11() {
  Outcome out;
  std::ostringstream info;
  const std::vector<std::tuple<int, Rational, ThresholdLimit>> cases{
      {0, Rational(1), ThresholdLimit::One},
      {0, Rational(3), ThresholdLimit::Zero},
      {1, Rational(1, 2), ThresholdLimit::One},
      {1, Rational(1), ThresholdLimit::Zero}};
  for (const auto& [k, gamma, want] : cases) {
    const auto res = weak_threshold(k, GrowthExponent::finite(gamma));
    const bool ok = res.limit == want && res.boundary == Rational(1) / (Rational(k) + Rational(1, 2));
    info << " (k=" << k << ", gamma=" << gamma << ") -> " << to_string(res.limit) << ";";
    out.pass = out.pass && ok;
  }
  for (int k = 0; k <= 2; ++k) {
    const Rational boundary = Rational(2, 2 * k + 1);
    const auto res = weak_threshold(k, GrowthExponent::finite(boundary), 0.0);
    const bool ok = res.limit == ThresholdLimit::Critical && res.critical_value &&
                    std::abs(*res.critical_value - 0.5) <= 1e-12;
    out.pass = out.pass && ok;
  }
  info << " critical c=0 -> 1/2";
  out.detail = info.str();
  return out;
}

Outcome ac12() {
  int checked = 0, bad = 0;
  for (int d = 1; d <= 10; ++d)
    for (int n = 1; n <= 20; ++n)
      for (int k = 0; k <= 2 && k <= n; ++k) {
        const auto s = strong_threshold_check(k, d, n);
        if (!s.applies || !(s.x_n >= std::numbers::e) || !s.exact_tail) continue;
        ++checked;
        // tail <= 2 / sqrt(n)  <=>  tail^2 n <= 4, both sides exact
        const Rational& tail = *s.exact_tail;
        if (tail * tail * Rational(n) > Rational(4)) ++bad;
      }
  return {bad == 0 && checked > 0, std::to_string(checked) + " grid points, " + std::to_string(bad) + " exceed the envelope"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 exact identities", ac1},
      {"AC2 log-concavity", ac2},
      {"AC3 generating function", ac3},
      {"AC4 mode prediction", ac4},
      {"AC5 CLT trend", ac5},
      {"AC6 LLT trend", ac6},
      {"AC7 mod-Poisson residual", ac7},
      {"AC8 LDP ratio trend", ac8},
      {"AC9 cone face MC", ac9},
      {"AC10 recovery MC", ac10},
      {"AC11 threshold classification", ac11},
      {"AC12 strong-threshold envelope", ac12}};
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s [%.1fs]:%s%s\n", o.pass ? "PASS" : "FAIL", name, secs,
                o.detail.empty() || o.detail.front() == ' ' ? "" : " ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
