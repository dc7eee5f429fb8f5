#include "rlah/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rlah/asymptotics.hpp"
#include "rlah/cones.hpp"
#include "rlah/errors.hpp"
#include "rlah/exact.hpp"
#include "rlah/lah_distribution.hpp"
#include "rlah/monte_carlo.hpp"
#include "rlah/rational.hpp"

namespace rlah::cli {

using Json = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

struct Options {
  int n = 0, k = 0, d = 0;
  std::string r = "0";
  std::string kind = "first";
  std::string gamma;
  std::string t = "1";
  std::string format;
  std::string out;
  std::string amplitudes = "unit";
  std::string n_range, d_range;
  std::vector<int> n_grid;
  double c = 0.0, x = 2.0, z = 0.3;
  int trials = 1000;
  std::uint64_t seed = 0;
  int n_max = 0;
  unsigned threads = 0;
  bool timing = false;
};

// Rows of named cells. CSV prints a header and one line per row; JSON
// prints an object for a single row and an array otherwise.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  void add(std::vector<Json> row) { rows.push_back(std::move(row)); }
};

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

void emit(const Table& table, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << '\n';
    }
    return;
  }
  Json doc = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
    doc.push_back(std::move(obj));
  }
  os << (doc.size() == 1 ? doc.front() : doc).dump() << '\n';
}

Json rat(const Rational& q) { return q.str(); }

Json num_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::pair<int, int> parse_range(const std::string& text, int fallback) {
  if (text.empty()) return {fallback, fallback};
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    const int a = std::stoi(text.substr(0, colon));
    const int b = std::stoi(text.substr(colon + 1));
    if (a > b) throw InvalidParameter("range must be a:b with a <= b");
    return {a, b};
  } catch (const std::logic_error&) {
    throw InvalidParameter("range must be a:b, got '" + text + "'");
  }
}

StirlingKind parse_kind(const std::string& s) {
  if (s == "first") return StirlingKind::First;
  if (s == "second") return StirlingKind::Second;
  throw InvalidParameter("--kind must be first or second");
}

GrowthExponent parse_gamma(const std::string& s) {
  if (s == "inf" || s == "infinity") return GrowthExponent::infinity();
  return GrowthExponent::finite(Rational::parse(s));
}

void require_exact(int n) {
  if (n > exact_n_max())
    throw CapacityExceeded("n = " + std::to_string(n) + " exceeds the exact capacity " +
                           std::to_string(exact_n_max()));
}

Table cmd_stirling(const Options& o) {
  const auto kind = parse_kind(o.kind);
  const Rational r = Rational::parse(o.r);
  Table t{{"n", "k", "r", "kind", "value"}, {}};
  t.add({o.n, o.k, rat(r), to_string(kind), rat(stirling_r(kind, o.n, o.k, r))});
  return t;
}

Table cmd_lah(const Options& o) {
  const Rational r = Rational::parse(o.r);
  require_exact(o.n);
  Table t{{"n", "k", "r", "value"}, {}};
  t.add({o.n, o.k, rat(r), rat(lah_r(o.n, o.k, r))});
  return t;
}

Table cmd_pmf(const Options& o) {
  const auto triple = make_triple(o.n, o.k, Rational::parse(o.r));
  require_exact(o.n);
  const LahDistribution dist(triple);
  Table t{{"j", "pmf", "pmf_num", "pmf_den", "pmf_float"}, {}};
  for (int j = dist.first(); j <= dist.last(); ++j) {
    const Rational p = dist.pmf(j);
    t.add({j, rat(p), p.num().get_str(), p.den().get_str(), p.to_double()});
  }
  return t;
}

std::string join_modes(const std::vector<int>& modes) {
  std::string s;
  for (std::size_t i = 0; i < modes.size(); ++i) s += (i ? ";" : "") + std::to_string(modes[i]);
  return s;
}

Table cmd_stats(const Options& o) {
  const Rational r = Rational::parse(o.r);
  const auto triple = make_triple(o.n, o.k, r);
  Table t{{"statistic", "value", "value_float"}, {}};
  if (o.n > exact_n_max()) {
    const FloatLahPmf pmf(o.n, o.k, r.to_double());
    t.add({"mean", nullptr, pmf.mean()});
    t.add({"mode", join_modes(pmf.mode()), nullptr});
    return t;
  }
  const LahDistribution dist(triple);
  const Rational mean = expectation(dist);
  const Rational var = variance(dist);
  const auto parity = parity_probabilities(dist);
  t.add({"mean", rat(mean), mean.to_double()});
  t.add({"variance", rat(var), var.to_double()});
  t.add({"parity_even", rat(parity.even), parity.even.to_double()});
  t.add({"parity_odd", rat(parity.odd), parity.odd.to_double()});
  t.add({"mode", join_modes(mode(dist)), nullptr});
  t.add({"log_concave", certify_log_concavity(dist).log_concave ? "true" : "false", nullptr});
  return t;
}

Table cmd_pgf(const Options& o) {
  const auto triple = make_triple(o.n, o.k, Rational::parse(o.r));
  require_exact(o.n);
  const Rational t_val = Rational::parse(o.t);
  const Rational value = pgf_eval(triple, t_val);
  Table t{{"n", "k", "r", "t", "pgf", "pgf_float"}, {}};
  t.add({o.n, o.k, rat(triple.r), rat(t_val), rat(value), value.to_double()});
  return t;
}

Table cmd_asymptotics(const Options& o) {
  const Rational r_exact = Rational::parse(o.r);
  std::vector<int> grid = o.n_grid;
  if (grid.empty()) grid.push_back(o.n);
  const double r = r_exact.to_double();
  Table t{{"n", "statistic", "exact", "approximant", "gap"}, {}};
  auto row = [&](int n, const char* name, double exact, double approx) {
    t.add({n, name, num_or_null(exact), num_or_null(approx), num_or_null(exact - approx)});
  };
  for (int n : grid) {
    make_triple(n, o.k, r_exact);
    const FloatLahPmf pmf(n, o.k, r);
    const auto approx = make_approximant(n, o.k, r);
    row(n, "mean", pmf.mean(), expectation_asymptotic(n, KRegime::Fixed, r, o.k));
    const auto [lo, hi] = mode_prediction(n, o.k, r);
    const int m = pmf.mode().front();
    row(n, "mode", m, m <= lo ? lo : hi);
    row(n, "kolmogorov", kolmogorov_distance(pmf), 0.0);
    row(n, "llt_sup_gap", llt_sup_gap(pmf), 0.0);
    row(n, "mod_poisson", mod_poisson_residual(pmf, o.z), approx.psi_limit(o.z));
    if (o.x > 1.0) {
      const auto ldp = ldp_upper_tail(n, o.k, r, o.x);
      row(n, "ldp_upper", pmf.upper_tail(ldp.j), ldp.value);
    } else if (o.x < 1.0) {
      const auto ldp = ldp_lower_tail(n, o.k, r, o.x);
      row(n, "ldp_lower", pmf.cdf(ldp.j), ldp.value);
    }
  }
  return t;
}

Table cmd_faces(const Options& o) {
  const auto [d_lo, d_hi] = parse_range(o.d_range, o.d);
  const auto [n_lo, n_hi] = parse_range(o.n_range, o.n);
  Table t{{"d", "n", "k", "face_count_num", "face_count_den", "ratio_num", "ratio_den", "ratio_float"}, {}};
  for (int d = d_lo; d <= d_hi; ++d)
    for (int n = std::max(n_lo, d); n <= n_hi; ++n) {
      if (o.k > d - 1) continue;
      require_exact(n);
      const ConeFaceQuery q{d, n, o.k};
      const Rational count = expected_face_count(q);
      const Rational ratio = face_ratio(q);
      t.add({d, n, o.k, count.num().get_str(), count.den().get_str(), ratio.num().get_str(),
             ratio.den().get_str(), ratio.to_double()});
    }
  if (t.rows.empty()) ConeFaceQuery{d_lo, n_lo, o.k}.validate();
  return t;
}

Table cmd_threshold(const Options& o, bool has_c, bool has_strong) {
  const GrowthExponent gamma = parse_gamma(o.gamma);
  const auto res = weak_threshold(o.k, gamma, has_c ? std::optional<double>(o.c) : std::nullopt);
  Json limit;
  switch (res.limit) {
    case ThresholdLimit::One:
      limit = 1;
      break;
    case ThresholdLimit::Zero:
      limit = 0;
      break;
    case ThresholdLimit::Critical:
      limit = "critical";
      break;
  }
  Table t{{"k", "gamma", "boundary", "limit", "critical_value"}, {}};
  std::vector<Json> row{o.k, gamma.infinite ? Json("inf") : rat(gamma.value), rat(res.boundary), limit,
                        res.critical_value ? Json(*res.critical_value) : Json(nullptr)};
  if (has_strong) {
    const auto s = strong_threshold_check(o.k, o.d, o.n);
    for (const char* c : {"d", "n", "strong_applies", "x_n", "strong_bound", "exact_tail"}) t.columns.emplace_back(c);
    row.insert(row.end(), {o.d, o.n, s.applies, num_or_null(s.x_n), s.bound,
                           s.exact_tail ? rat(*s.exact_tail) : Json(nullptr)});
  }
  t.add(std::move(row));
  return t;
}

Table cmd_recovery(const Options& o) {
  require_exact(o.n);
  const Rational p = recovery_probability(o.d, o.n, o.k);
  Table t{{"d", "n", "k", "probability", "probability_float", "boundary"}, {}};
  t.add({o.d, o.n, o.k, rat(p), p.to_double(), recovery_on_boundary(o.d, o.k)});
  return t;
}

Table mc_table(const McEstimate& est, bool timing) {
  Table t{{"d", "n", "k", "trials", "seed", "mean", "stderr", "rejects", "elapsed_ms"}, {}};
  t.add({est.d, est.n, est.k, est.trials, est.seed, est.mean, est.stderr_, est.rejects,
         timing ? est.elapsed_ms : 0.0});
  return t;
}

Table cmd_mc_cone(const Options& o) {
  const auto est = estimate_expected_faces(o.d, o.n, o.k, o.trials, o.seed, o.threads);
  Table t = mc_table(est, o.timing);
  if (o.k == 0) {
    for (const char* c : {"pointed", "proper_non_pointed", "full_space"}) t.columns.emplace_back(c);
    t.rows.front().insert(t.rows.front().end(), {est.pointed, est.proper_non_pointed, est.full_space});
  }
  return t;
}

Table cmd_mc_recovery(const Options& o) {
  AmplitudeRule rule;
  if (o.amplitudes == "unit") rule = AmplitudeRule::Unit;
  else if (o.amplitudes == "random") rule = AmplitudeRule::Random;
  else throw InvalidParameter("--amplitudes must be unit or random");
  return mc_table(estimate_recovery_probability(o.d, o.n, o.k, rule, o.trials, o.seed, o.threads), o.timing);
}

void error_record(std::ostream& err, const std::string& kind, const std::string& message) {
  err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

// Restores the process-wide exact capacity when a run ends.
struct CapacityGuard {
  int saved = exact_n_max();
  ~CapacityGuard() { set_exact_n_max(saved); }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"r-Lah distribution, r-Stirling numbers and Weyl random cone tools", "rlah"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--out", o.out, "write output to this file");
    s->add_option("--n-max", o.n_max, "exact-route capacity")->check(CLI::PositiveNumber);
  };
  auto nkr = [&](CLI::App* s, bool need_r) {
    s->add_option("--n", o.n)->required();
    s->add_option("--k", o.k)->required();
    auto* r = s->add_option("--r", o.r, "p/q or decimal");
    if (need_r) r->required();
  };

  auto* stirling = app.add_subcommand("stirling", "one r-Stirling number");
  nkr(stirling, true);
  stirling->add_option("--kind", o.kind, "first or second");
  auto* lah = app.add_subcommand("lah", "r-Lah number");
  nkr(lah, true);
  auto* pmf = app.add_subcommand("pmf", "exact r-Lah PMF");
  nkr(pmf, true);
  auto* stats = app.add_subcommand("stats", "mean, variance, parity, mode");
  nkr(stats, true);
  auto* pgf = app.add_subcommand("pgf", "probability generating function at t");
  nkr(pgf, true);
  pgf->add_option("--t", o.t)->required();
  auto* asym = app.add_subcommand("asymptotics", "limit theorems vs exact values");
  asym->add_option("--n", o.n);
  asym->add_option("--n-grid", o.n_grid, "comma-separated n values")->delimiter(',');
  asym->add_option("--k", o.k)->required();
  asym->add_option("--r", o.r)->required();
  asym->add_option("--z", o.z, "mod-Poisson argument");
  asym->add_option("--x", o.x, "large-deviation level");
  auto* faces = app.add_subcommand("faces", "expected face counts of the Weyl random cone");
  faces->add_option("--d", o.d);
  faces->add_option("--n", o.n);
  faces->add_option("--k", o.k)->required();
  faces->add_option("--d-range", o.d_range, "a:b");
  faces->add_option("--n-range", o.n_range, "a:b");
  auto* threshold = app.add_subcommand("threshold", "weak and strong threshold classification");
  threshold->add_option("--k", o.k)->required();
  threshold->add_option("--gamma", o.gamma, "rational or inf")->required();
  auto* c_opt = threshold->add_option("--c", o.c, "critical-case offset");
  auto* td = threshold->add_option("--d", o.d);
  auto* tn = threshold->add_option("--n", o.n);
  td->needs(tn);
  tn->needs(td);
  auto* recovery = app.add_subcommand("recovery", "exact unique-recovery probability");
  auto dnk = [&](CLI::App* s) {
    s->add_option("--d", o.d)->required();
    s->add_option("--n", o.n)->required();
    s->add_option("--k", o.k)->required();
  };
  dnk(recovery);
  auto* mc_cone = app.add_subcommand("mc-cone", "Monte Carlo face counts");
  auto* mc_rec = app.add_subcommand("mc-recovery", "Monte Carlo recovery probability");
  for (auto* s : {mc_cone, mc_rec}) {
    dnk(s);
    s->add_option("--trials", o.trials);
    s->add_option("--seed", o.seed);
    s->add_option("--threads", o.threads, "0 = hardware concurrency");
    s->add_flag("--timing", o.timing, "report wall time in elapsed_ms");
  }
  mc_rec->add_option("--amplitudes", o.amplitudes, "unit or random");
  for (auto* s : app.get_subcommands({})) common(s);

  CapacityGuard guard;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    error_record(err, "InvalidParameter", e.what());
    return kExitInvalid;
  }

  try {
    if (const char* env = std::getenv("RLAH_N_MAX")) {
      int v = 0;
      const std::string s(env);
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size() || v < 1)
        throw InvalidParameter("RLAH_N_MAX must be a positive integer");
      set_exact_n_max(v);
    }
    if (o.n_max > 0) set_exact_n_max(o.n_max);

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    const bool record = name == "threshold" || name.starts_with("mc-");
    const std::string format = o.format.empty() ? (record ? "json" : "csv") : o.format;

    Table table;
    if (sub == stirling) table = cmd_stirling(o);
    else if (sub == lah) table = cmd_lah(o);
    else if (sub == pmf) table = cmd_pmf(o);
    else if (sub == stats) table = cmd_stats(o);
    else if (sub == pgf) table = cmd_pgf(o);
    else if (sub == asym) table = cmd_asymptotics(o);
    else if (sub == faces) table = cmd_faces(o);
    else if (sub == threshold) table = cmd_threshold(o, c_opt->count() > 0, td->count() > 0);
    else if (sub == recovery) table = cmd_recovery(o);
    else if (sub == mc_cone) table = cmd_mc_cone(o);
    else table = cmd_mc_recovery(o);

    std::ostringstream buf;
    emit(table, format, buf);
    if (o.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) throw InvalidParameter("cannot open output file " + o.out);
      file << buf.str();
    }
    return kExitOk;
  } catch (const CapacityExceeded& e) {
    error_record(err, e.kind(), e.what());
    return kExitCapacity;
  } catch (const Error& e) {
    error_record(err, e.kind(), e.what());
    return kExitInvalid;
  }
}

}  // namespace rlah::cli
