#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <new>
#include <numbers>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "satotate/bounds.hpp"
#include "satotate/coefficients.hpp"
#include "satotate/explicit_formula.hpp"
#include "satotate/numeric.hpp"
#include "satotate/primes.hpp"
#include "satotate/sato_tate.hpp"
#include "satotate/smoothing.hpp"
#include "satotate/sympower.hpp"

namespace satotate::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

enum class Format { Csv, Json };

struct RunConfig {
  std::string subcommand;

  // global
  std::string out;
  Format format = Format::Csv;
  unsigned threads = 1;
  std::string cache_dir = "satotate-cache";
  std::uint64_t seed = 1;

  // newform selector
  bool delta_form = false;
  std::string curve;
  std::string qexp;
  int weight = 0;
  std::uint64_t level = 0;
  std::string label;

  std::optional<double> x_max;
  std::vector<std::string> intervals;
  std::vector<double> xs;
  double x_min = 2.0;
  double ratio = 2.0;
  std::uint64_t fast_crossover = 10'000;
  std::string angles_in;
  std::string angles_out;

  unsigned n_min = 1;
  unsigned n_max = 8;
  unsigned sum_n_max = 32;
  std::optional<double> delta;
  unsigned R = 20;
  double tail_tolerance = kDefaultTailTolerance;
  std::size_t grid = 10'000;

  // budget
  std::optional<double> log_delta;
  double log_log_x = 100.0;
  bool sweep = false;
  std::vector<unsigned> R_list{13, 16, 24, 64};
  std::vector<double> log_log_x_list{10.0, 100.0, 1000.0};

  // explicit
  std::string mode = "compare";
  std::string zeros;
  std::optional<double> T;
  std::optional<std::size_t> zero_count;
  unsigned n = 1;
  double jitter = 0.5;

  // bound constants
  bool non_squarefree = false;
  BoundConstants constants;
};

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorKind::Input, what); }

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used == t.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  usage("invalid " + what + " '" + text + "'");
}

// Accepts decimals and multiples of pi such as "pi/2", "3pi/4", "2*pi/3".
double parse_angle(const std::string& text) {
  static const std::regex pi_form(R"(^\s*([0-9.]+)?\s*\*?\s*pi\s*(?:/\s*([0-9.]+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    const double num = m[1].matched ? parse_number(m[1].str(), "angle") : 1.0;
    const double den = m[2].matched ? parse_number(m[2].str(), "angle") : 1.0;
    if (den == 0.0) usage("invalid angle '" + text + "'");
    return num * kPi / den;
  }
  return parse_number(text, "angle");
}

Interval parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) usage("interval must be 'alpha,beta', got '" + text + "'");
  const double alpha = parse_angle(text.substr(0, comma));
  const double beta = parse_angle(text.substr(comma + 1));
  try {
    return Interval(alpha, beta);
  } catch (const Error& e) {
    usage(std::string("interval '") + text + "': " + e.what());
  }
}

std::vector<Interval> intervals_or(const RunConfig& cfg, std::vector<Interval> fallback) {
  if (cfg.intervals.empty()) return fallback;
  std::vector<Interval> out;
  for (const auto& text : cfg.intervals) out.push_back(parse_interval(text));
  return out;
}

std::vector<Interval> default_intervals() {
  return {Interval(0.0, kPi / 2), Interval(kPi / 4, 3 * kPi / 4), Interval(kPi / 3, 2 * kPi / 3)};
}

std::uint64_t as_bound(double x, const std::string& what) {
  if (!(x >= 1.0 && x <= 9.0e15) || x != std::floor(x))
    usage(what + " must be an integer in [1, 9e15]");
  return static_cast<std::uint64_t>(x);
}

WeierstrassCurve parse_curve(const std::string& text) {
  std::vector<std::int64_t> a;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double v = parse_number(item, "curve coefficient");
    if (v != std::floor(v) || std::fabs(v) > 1e15) usage("curve coefficients must be integers");
    a.push_back(static_cast<std::int64_t>(v));
  }
  if (a.size() != 5) usage("--curve needs five coefficients a1,a2,a3,a4,a6");
  return {a[0], a[1], a[2], a[3], a[4]};
}

NewformSpec resolve_newform(const RunConfig& cfg) {
  const int selectors = int{cfg.delta_form} + int{!cfg.curve.empty()} + int{!cfg.qexp.empty()};
  if (selectors != 1) usage("choose exactly one of --delta-form, --curve, --qexp");
  try {
    if (cfg.delta_form) {
      if (cfg.level > 1 || (cfg.weight != 0 && cfg.weight != 12))
        usage("--delta-form fixes weight 12 and level 1");
      return NewformSpec::eta_delta();
    }
    if (!cfg.curve.empty()) {
      if (cfg.level == 0) usage("--curve needs --level (the conductor)");
      if (cfg.weight != 0 && cfg.weight != 2) usage("--curve fixes weight 2");
      return NewformSpec::elliptic_curve(parse_curve(cfg.curve), cfg.level,
                                         cfg.label.empty() ? "curve" : cfg.label);
    }
    if (cfg.weight == 0 || cfg.level == 0) usage("--qexp needs --weight and --level");
    const fs::path path(cfg.qexp);
    return NewformSpec::qexp_file(path, cfg.weight, cfg.level,
                                  cfg.label.empty() ? path.stem().string() : cfg.label);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Domain) usage(e.what());
    throw;
  }
}

BoundParams resolve_bounds(const RunConfig& cfg, int weight, std::uint64_t level) {
  BoundParams params;
  params.weight = weight;
  params.level = level;
  params.squarefree = !cfg.non_squarefree;
  params.constants = cfg.constants;
  try {
    params.constants.validate();
  } catch (const Error& e) {
    usage(e.what());
  }
  if (params.squarefree && !is_squarefree(level))
    usage("level " + std::to_string(level) + " is not squarefree; pass --non-squarefree");
  return params;
}

std::string csv_number(double v) { return format_double(v); }

// Loads the angle table for statistics: an exported angle CSV when given,
// otherwise the coefficient cache, which must already exist.
AngleTable load_angles(const RunConfig& cfg, const NewformSpec& spec) {
  if (!cfg.angles_in.empty()) {
    std::ifstream in(cfg.angles_in);
    if (!in) throw Error(ErrorKind::Data, "cannot open angle table " + cfg.angles_in);
    const AngleTable loose =
        read_angle_csv(in, spec, std::numeric_limits<double>::infinity());
    double x_max = cfg.x_max.value_or(loose.empty() ? 1.0
                                                    : static_cast<double>(loose.records().back().p));
    std::vector<AngleRecord> records(loose.records().begin(), loose.records().end());
    return AngleTable(spec, std::move(records), x_max);
  }
  const fs::path path = cache_path(cfg.cache_dir, spec);
  if (!fs::exists(path))
    throw Error(ErrorKind::Data, "no coefficient cache at " + path.string() +
                                     "; run 'satotate coefficients' first");
  return AngleTable::from_coefficients(read_cache(path, spec));
}

std::vector<double> geometric_grid(double x_min, double ratio, double x_max) {
  std::vector<double> grid;
  for (double x = x_min; x < x_max; x *= ratio) grid.push_back(x);
  grid.push_back(x_max);
  return grid;
}

double report_x_max(const RunConfig& cfg, const AngleTable& angles) {
  const double x = cfg.x_max.value_or(angles.x_max());
  if (x > angles.x_max())
    throw Error(ErrorKind::Coverage, "x = " + format_double(x) + " exceeds table coverage " +
                                         format_double(angles.x_max()));
  return x;
}

// ---------------------------------------------------------------- commands

void cmd_coefficients(const RunConfig& cfg, std::ostream& out) {
  const NewformSpec spec = resolve_newform(cfg);
  if (!cfg.x_max) usage("coefficients needs --xmax");
  const std::uint64_t x_max = as_bound(*cfg.x_max, "--xmax");
  fs::create_directories(cfg.cache_dir);
  BuildOptions options;
  options.threads = cfg.threads;
  options.fast_crossover = cfg.fast_crossover;
  const CacheResult result = load_or_build(spec, x_max, cfg.cache_dir, options);

  std::size_t unramified = 0;
  std::vector<std::uint64_t> ramified;
  double max_ratio = 0.0;
  for (const auto& [p, a] : result.table.entries()) {
    if (spec.is_ramified(p)) {
      ramified.push_back(p);
      continue;
    }
    ++unramified;
    // |a_p| / (2 p^{(k-1)/2}) = |cos theta_p|
    max_ratio = std::max(max_ratio, std::fabs(std::cos(angle(a, p, spec.weight()))));
  }
  const auto coverage = result.table.x_max().value_or(0);

  if (cfg.format == Format::Json) {
    json j;
    j["label"] = spec.label();
    j["weight"] = spec.weight();
    j["level"] = spec.level();
    j["x_max"] = coverage;
    j["primes"] = result.table.size();
    j["unramified"] = unramified;
    j["ramified"] = ramified;
    j["max_hasse_ratio"] = max_ratio;
    j["cache_hit"] = result.cache_hit;
    j["cache"] = result.path.string();
    out << j.dump(2) << '\n';
    return;
  }
  out << "label,weight,level,x_max,primes,unramified,ramified,max_hasse_ratio,cache_hit,cache\n";
  std::string ramified_list;
  for (auto p : ramified) ramified_list += (ramified_list.empty() ? "" : ";") + std::to_string(p);
  out << spec.label() << ',' << spec.weight() << ',' << spec.level() << ',' << coverage << ','
      << result.table.size() << ',' << unramified << ',' << ramified_list << ','
      << csv_number(max_ratio) << ',' << (result.cache_hit ? 1 : 0) << ','
      << result.path.string() << '\n';
}

void cmd_satotate(const RunConfig& cfg, std::ostream& out) {
  const NewformSpec spec = resolve_newform(cfg);
  const auto intervals = intervals_or(cfg, default_intervals());
  if (!(cfg.ratio > 1.0)) usage("--ratio must exceed 1");
  if (!(cfg.x_min >= 1.0)) usage("--xmin must be at least 1");
  const AngleTable angles = load_angles(cfg, spec);
  const double x_max = report_x_max(cfg, angles);

  if (!cfg.angles_out.empty()) {
    std::ofstream file(cfg.angles_out);
    if (!file) throw Error(ErrorKind::Data, "cannot write " + cfg.angles_out);
    write_angle_csv(angles, file);
  }

  json rows = json::array();
  std::ostringstream csv;
  csv << "x,alpha,beta,pi_unram,count,expected,deviation,relative_deviation,discrepancy\n";
  for (double x : geometric_grid(std::min(cfg.x_min, x_max), cfg.ratio, x_max)) {
    const std::uint64_t total = unramified_prime_count(angles, x);
    const double disc = total > 0 ? discrepancy(angles, x) : std::nan("");
    for (const auto& interval : intervals) {
      const std::uint64_t count = count_in_interval(angles, interval, x);
      const double mu = st_measure(interval);
      const double expected = mu * static_cast<double>(total);
      const double deviation = static_cast<double>(count) - expected;
      const double relative =
          total > 0 ? static_cast<double>(count) / static_cast<double>(total) - mu : std::nan("");
      csv << csv_number(x) << ',' << csv_number(interval.alpha()) << ','
          << csv_number(interval.beta()) << ',' << total << ',' << count << ','
          << csv_number(expected) << ',' << csv_number(deviation) << ','
          << csv_number(relative) << ',' << csv_number(disc) << '\n';
      rows.push_back({{"x", x},
                      {"alpha", interval.alpha()},
                      {"beta", interval.beta()},
                      {"pi_unram", total},
                      {"count", count},
                      {"expected", expected},
                      {"deviation", deviation},
                      {"relative_deviation", relative},
                      {"discrepancy", disc}});
    }
  }
  if (cfg.format == Format::Json) {
    out << json{{"label", spec.label()}, {"rows", rows}}.dump(2) << '\n';
  } else {
    out << csv.str();
  }
}

// Sum over n > n_max of (1/n)(R/(n delta))^R (n+1) pi(x), bounded by the
// integral of (t^{-R} + t^{-R-1}) from n_max.
double chebyshev_tail_bound(unsigned n_max, unsigned R, double delta, double prime_count) {
  const double r = static_cast<double>(R);
  const double m = static_cast<double>(n_max);
  const double integral = std::pow(m, 1.0 - r) / (r - 1.0) + std::pow(m, -r) / r;
  return std::pow(r / delta, r) * integral * prime_count;
}

void cmd_chebsums(const RunConfig& cfg, std::ostream& out) {
  const NewformSpec spec = resolve_newform(cfg);
  if (cfg.n_min < 1 || cfg.n_min > cfg.n_max) usage("need 1 <= --n-min <= --n-max");
  if (cfg.delta) {
    if (!(*cfg.delta > 0.0 && *cfg.delta < 0.5)) usage("--delta must lie in (0, 1/2)");
    if (cfg.R < 2) usage("--R must be at least 2 for the tail bound");
    if (cfg.sum_n_max < 1) usage("--sum-n-max must be at least 1");
  }
  const auto intervals = intervals_or(cfg, {Interval(kPi / 3, 2 * kPi / 3)});
  if (cfg.delta) {
    for (const auto& interval : intervals)
      if (!(interval.length() > 2 * kPi * *cfg.delta))
        usage("interval too narrow: need beta - alpha > 2 pi delta");
  }
  const AngleTable angles = load_angles(cfg, spec);
  std::vector<double> xs = cfg.xs;
  if (xs.empty()) xs.push_back(report_x_max(cfg, angles));
  for (double x : xs)
    if (x > angles.x_max())
      throw Error(ErrorKind::Coverage, "x = " + format_double(x) + " exceeds table coverage");

  std::vector<SymPowerSumReport> reports;
  for (double x : xs)
    for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) reports.push_back(sym_power_report(x, n, angles));

  json estimate = json::array();
  std::ostringstream estimate_csv;
  if (cfg.delta) {
    const double delta = *cfg.delta;
    const double r = static_cast<double>(cfg.R);
    estimate_csv << "x,alpha,beta,delta,R,n_max,delta_term,chebyshev_sum,tail_bound,"
                    "observed_deviation\n";
    for (double x : xs) {
      const double total = static_cast<double>(unramified_prime_count(angles, x));
      CompensatedSum sum;
      for (unsigned n = 1; n <= cfg.sum_n_max; ++n) {
        const double nd = static_cast<double>(n);
        sum += std::pow(r / (nd * delta), r) / nd * std::fabs(phi_sum(x, n, angles));
      }
      const double delta_term = x > 1.0 ? delta * x / std::log(x) : 0.0;
      const double tail = chebyshev_tail_bound(cfg.sum_n_max, cfg.R, delta, total);
      for (const auto& interval : intervals) {
        const double observed = static_cast<double>(count_in_interval(angles, interval, x)) -
                                st_measure(interval) * total;
        estimate_csv << csv_number(x) << ',' << csv_number(interval.alpha()) << ','
                     << csv_number(interval.beta()) << ',' << csv_number(delta) << ',' << cfg.R
                     << ',' << cfg.sum_n_max << ',' << csv_number(delta_term) << ','
                     << csv_number(sum.value()) << ',' << csv_number(tail) << ','
                     << csv_number(observed) << '\n';
        estimate.push_back({{"x", x},
                            {"alpha", interval.alpha()},
                            {"beta", interval.beta()},
                            {"delta", delta},
                            {"R", cfg.R},
                            {"n_max", cfg.sum_n_max},
                            {"delta_term", delta_term},
                            {"chebyshev_sum", sum.value()},
                            {"tail_bound", tail},
                            {"observed_deviation", observed}});
      }
    }
  }

  if (cfg.format == Format::Json) {
    json sums = json::array();
    for (const auto& r : reports)
      sums.push_back({{"n", r.n},
                      {"x", r.x},
                      {"phi", r.phi},
                      {"psi", r.psi},
                      {"psi_weighted", r.psi_weighted},
                      {"correction_bound", r.correction_bound}});
    json j{{"label", spec.label()}, {"ramified_lambda", "zero"}, {"sums", sums}};
    if (cfg.delta) j["estimate"] = estimate;
    out << j.dump(2) << '\n';
    return;
  }
  out << "# lambda at ramified primes set to zero\n";
  write_report_csv(reports, out);
  if (cfg.delta) out << '\n' << estimate_csv.str();
}

struct SmoothChecks {
  bool envelope = true;
  bool sandwich = true;
  bool range = true;
  double c0_plus = 0.0;
  double c0_minus = 0.0;
  double mu = 0.0;
  bool constant_term = true;
};

SmoothChecks check_majorants(const MajorantPair& pair, std::size_t grid, double tol) {
  SmoothChecks checks;
  for (const SymmetrizedSeries* side : {&pair.plus, &pair.minus}) {
    const auto& kernel = side->kernel();
    for (std::size_t m = 1; m <= kernel.M(); ++m) {
      const double bound = kernel.envelope(m);
      if (std::fabs(kernel.cos_coeff(m)) > bound || std::fabs(kernel.sin_coeff(m)) > bound)
        checks.envelope = false;
    }
  }
  for (std::size_t i = 0; i < grid; ++i) {
    const double theta = kPi * static_cast<double>(i) / static_cast<double>(grid - 1);
    const double chi = pair.interval.contains(theta) ? 1.0 : 0.0;
    const double plus = pair.plus.evaluate(theta);
    const double minus = pair.minus.evaluate(theta);
    if (!(minus - tol <= chi && chi <= plus + tol)) checks.sandwich = false;
    for (double g : {plus, minus})
      if (!(g >= -tol && g <= 1.0 + tol)) checks.range = false;
  }
  checks.c0_plus = pair.cheb_plus.front();
  checks.c0_minus = pair.cheb_minus.front();
  checks.mu = st_measure(pair.interval);
  checks.constant_term = std::fabs(checks.c0_plus - checks.mu) <= 4 * pair.delta &&
                         std::fabs(checks.c0_minus - checks.mu) <= 4 * pair.delta;
  return checks;
}

void cmd_smooth(const RunConfig& cfg, std::ostream& out) {
  const auto intervals = intervals_or(cfg, {Interval(kPi / 3, 2 * kPi / 3)});
  if (intervals.size() != 1) usage("smooth takes a single --interval");
  if (!cfg.delta) usage("smooth needs --delta");
  if (cfg.R < 1) usage("--R must be at least 1");
  if (cfg.grid < 2) usage("--grid must be at least 2");
  MajorantPair pair = [&] {
    try {
      return build_majorants(intervals.front(), *cfg.delta, cfg.R, cfg.tail_tolerance);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Domain) usage(e.what());
      throw;
    }
  }();
  const SmoothChecks checks = check_majorants(pair, cfg.grid, cfg.tail_tolerance);

  if (cfg.format == Format::Json) {
    const auto side = [](const SymmetrizedSeries& s, const std::vector<double>& cheb) {
      const auto& k = s.kernel();
      return json{{"a", k.a()},
                  {"b", k.b()},
                  {"M", k.M()},
                  {"tail_bound", s.tail_bound()},
                  {"cos_coeffs", std::vector<double>(k.cos_coeffs().begin(), k.cos_coeffs().end())},
                  {"sin_coeffs", std::vector<double>(k.sin_coeffs().begin(), k.sin_coeffs().end())},
                  {"chebyshev", cheb}};
    };
    json j{{"alpha", pair.interval.alpha()},
           {"beta", pair.interval.beta()},
           {"delta", pair.delta},
           {"R", pair.R},
           {"checks",
            {{"envelope", checks.envelope},
             {"sandwich", checks.sandwich},
             {"range", checks.range},
             {"constant_term", checks.constant_term},
             {"c0_plus", checks.c0_plus},
             {"c0_minus", checks.c0_minus},
             {"mu_st", checks.mu}}},
           {"plus", side(pair.plus, pair.cheb_plus)},
           {"minus", side(pair.minus, pair.cheb_minus)}};
    out << j.dump(2) << '\n';
    return;
  }
  out << "# envelope=" << checks.envelope << " sandwich=" << checks.sandwich
      << " range=" << checks.range << " constant_term=" << checks.constant_term
      << " c0_plus=" << csv_number(checks.c0_plus) << " c0_minus=" << csv_number(checks.c0_minus)
      << " mu_st=" << csv_number(checks.mu) << '\n';
  out << "# side=plus\n";
  write_kernel_csv(pair.plus.kernel(), out);
  out << "# side=minus\n";
  write_kernel_csv(pair.minus.kernel(), out);
}

json budget_json(const BudgetParams& params, const BudgetReport& report, double log_log_x) {
  const double log_x = std::exp(log_log_x);
  const auto absolute = [&](double relative) { return log_x + relative; };
  return json{{"R", params.R},
              {"log_log_x", log_log_x},
              {"log_x", log_x},
              {"log_delta", params.delta.log()},
              {"log_term1", absolute(report.log_term1)},
              {"log_term2", absolute(report.log_term2)},
              {"log_term1_over_x", report.log_term1},
              {"log_term2_over_x", report.log_term2},
              {"log_total_over_x", report.log_total},
              {"exponent", final_exponent(params.R)},
              {"valid_delta", report.delta_below_half && report.interval_fits},
              {"interval_fits", report.interval_fits},
              {"R_valid", report.R_valid},
              {"kind", "bound surrogate"}};
}

void cmd_budget(const RunConfig& cfg, std::ostream& out) {
  std::optional<Interval> interval;
  if (!cfg.intervals.empty()) {
    const auto parsed = intervals_or(cfg, {});
    if (parsed.size() != 1) usage("budget takes at most one --interval");
    interval = parsed.front();
  }
  const BoundParams bounds = resolve_bounds(cfg, cfg.weight == 0 ? 2 : cfg.weight,
                                            cfg.level == 0 ? 1 : cfg.level);
  std::vector<unsigned> Rs = cfg.sweep ? cfg.R_list : std::vector<unsigned>{cfg.R};
  std::vector<double> lls = cfg.sweep ? cfg.log_log_x_list : std::vector<double>{cfg.log_log_x};
  for (unsigned R : Rs)
    if (R < 4) usage("R must be at least 4");
  if (cfg.sweep && cfg.log_delta) usage("--log-delta cannot be combined with --sweep");

  json rows = json::array();
  std::ostringstream csv;
  csv << "R,log_log_x,log_delta,log_term1_over_x,log_term2_over_x,log_total_over_x,exponent,"
         "valid_delta\n";
  for (unsigned R : Rs) {
    for (double ll : lls) {
      BudgetParams params;
      params.R = R;
      params.log_x = LogScaleReal::from_log(ll);
      params.delta = cfg.log_delta ? LogScaleReal::from_log(*cfg.log_delta)
                                   : optimal_delta(R, params.log_x);
      params.n_max = cfg.sum_n_max;
      params.bounds = bounds;
      params.interval = interval;
      const BudgetReport report = budget(params);
      rows.push_back(budget_json(params, report, ll));
      csv << R << ',' << csv_number(ll) << ',' << csv_number(params.delta.log()) << ','
          << csv_number(report.log_term1) << ',' << csv_number(report.log_term2) << ','
          << csv_number(report.log_total) << ',' << csv_number(final_exponent(R)) << ','
          << (report.delta_below_half && report.interval_fits ? 1 : 0) << '\n';
    }
  }
  if (cfg.format == Format::Json) {
    out << (rows.size() == 1 ? rows.front() : rows).dump(2) << '\n';
  } else {
    out << csv.str();
  }
}

void cmd_explicit(const RunConfig& cfg, std::ostream& out) {
  if (cfg.mode == "compare") {
    if (cfg.zeros.empty()) usage("explicit compare needs --zeros");
    if (cfg.xs.empty()) usage("explicit compare needs --x");
    for (double x : cfg.xs)
      if (!(x >= 2.0)) usage("--x must be at least 2");
    ZeroList zeros = ingest_zeros(cfg.zeros);
    if (cfg.zero_count) zeros = zeros.prefix(*cfg.zero_count);
    const double T = cfg.T.value_or(zeros.max_ordinate());
    if (!(T > 0.0)) usage("--T must be positive (or the zero list non-empty)");

    json rows = json::array();
    std::ostringstream csv;
    csv << "x,T,psi_direct,psi_explicit,residual,envelope\n";
    for (double x : cfg.xs) {
      const ZetaComparison cmp = zeta_psi_compare(x, T, zeros);
      const double log_x = std::log(x);
      const double envelope = 10.0 * x * log_x * log_x / T;
      rows.push_back({{"x", cmp.x},
                      {"T", cmp.T},
                      {"psi_direct", cmp.psi_direct},
                      {"psi_explicit", cmp.psi_explicit},
                      {"residual", cmp.residual},
                      {"envelope", envelope}});
      csv << csv_number(cmp.x) << ',' << csv_number(cmp.T) << ',' << csv_number(cmp.psi_direct)
          << ',' << csv_number(cmp.psi_explicit) << ',' << csv_number(cmp.residual) << ','
          << csv_number(envelope) << '\n';
    }
    if (cfg.format == Format::Json)
      out << (rows.size() == 1 ? rows.front() : rows).dump(2) << '\n';
    else
      out << csv.str();
    return;
  }

  const int weight = cfg.weight == 0 ? 2 : cfg.weight;
  const std::uint64_t level = cfg.level == 0 ? 1 : cfg.level;
  if (weight < 2 || weight % 2 != 0) usage("--weight must be even and at least 2");
  const BoundParams params = resolve_bounds(cfg, weight, level);
  if (cfg.n < 1) usage("--n must be at least 1");
  if (!(cfg.jitter >= 0.0 && cfg.jitter < 1.0)) usage("--jitter must lie in [0, 1)");
  SynthesisOptions options;
  options.jitter = cfg.jitter;

  if (cfg.mode == "synthesize") {
    if (!cfg.T) usage("explicit synthesize needs --T");
    if (!(*cfg.T > 1.0)) usage("--T must exceed 1");
    const ZeroList zeros = synthesize_zeros(cfg.n, params, *cfg.T, cfg.seed, options);
    const ZeroAudit audit = audit_zeros(zeros, cfg.n, params, *cfg.T);
    if (cfg.format == Format::Json) {
      json j{{"n", cfg.n},
             {"T", *cfg.T},
             {"seed", cfg.seed},
             {"count", zeros.size()},
             {"main_term", zero_count_main_term(*cfg.T, cfg.n, params)},
             {"audit",
              {{"max_count_deviation", audit.max_count_deviation},
               {"max_window_excess", audit.max_window_excess},
               {"within_window_bound", audit.within_window_bound}}},
             {"ordinates", zeros.ordinates()}};
      out << j.dump(2) << '\n';
      return;
    }
    out << "# synthetic zeros n=" << cfg.n << " T=" << csv_number(*cfg.T) << " seed=" << cfg.seed
        << " max_count_deviation=" << csv_number(audit.max_count_deviation)
        << " within_window_bound=" << audit.within_window_bound << '\n';
    for (double g : zeros.ordinates()) out << csv_number(g) << '\n';
    return;
  }

  if (cfg.mode == "bound-check") {
    if (cfg.xs.size() != 1) usage("explicit bound-check needs exactly one --x");
    const double x = cfg.xs.front();
    if (!(x > 1.0)) usage("--x must exceed 1");
    ZeroList zeros;
    if (!cfg.zeros.empty()) {
      zeros = ingest_zeros(cfg.zeros);
    } else {
      const double T = std::max(2.0, std::exp(std::sqrt(std::log(x))) + 1.0);
      zeros = synthesize_zeros(cfg.n, params, T, cfg.seed, options);
    }
    const BoundPathReport r = symn_psi_bound_check(x, cfg.n, zeros, params);
    if (cfg.format == Format::Json) {
      json j{{"x", r.x},
             {"T", r.T},
             {"n", r.n},
             {"zeros_used", r.zeros_used},
             {"zero_sum", r.zero_sum},
             {"chain_bound", r.chain_bound},
             {"phi_bound", r.phi_bound},
             {"zero_sum_within_chain", r.zero_sum_within_chain},
             {"within_phi_bound", r.within_phi_bound},
             {"kind", "bound surrogate"}};
      out << j.dump(2) << '\n';
      return;
    }
    out << "x,T,n,zeros_used,zero_sum,chain_bound,phi_bound,zero_sum_within_chain,"
           "within_phi_bound\n"
        << csv_number(r.x) << ',' << csv_number(r.T) << ',' << r.n << ',' << r.zeros_used << ','
        << csv_number(r.zero_sum) << ',' << csv_number(r.chain_bound) << ','
        << csv_number(r.phi_bound) << ',' << r.zero_sum_within_chain << ','
        << r.within_phi_bound << '\n';
    return;
  }
  usage("unknown --mode '" + cfg.mode + "'");
}

// ------------------------------------------------------------------ parser

void add_newform_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_flag("--delta-form", cfg.delta_form, "Ramanujan Delta (weight 12, level 1)");
  cmd->add_option("--curve", cfg.curve, "Weierstrass coefficients a1,a2,a3,a4,a6");
  cmd->add_option("--qexp", cfg.qexp, "q-expansion file \"n a(n)\"");
  cmd->add_option("--weight", cfg.weight, "Weight k");
  cmd->add_option("--level", cfg.level, "Level N (conductor for --curve)");
  cmd->add_option("--label", cfg.label, "Label used in the cache key");
}

void add_bound_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_flag("--non-squarefree", cfg.non_squarefree, "Use the c3 n^3 conductor surrogate");
  cmd->add_option("--c", cfg.constants.c, "Zero-free region constant");
  cmd->add_option("--c2", cfg.constants.c2, "Phi-bound constant, 0 < c2 < c");
  cmd->add_option("--c3", cfg.constants.conductor_c3, "Conductor surrogate constant");
  cmd->add_option("--window-constant", cfg.constants.zero_window, "Unit-window zero count constant");
  cmd->add_option("--implied-constant", cfg.constants.implied, "Implied constant of the Phi bound");
}

}  // namespace

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Input:
    case ErrorKind::Domain:
      return kExitUsage;
    case ErrorKind::Parse:
    case ErrorKind::Data:
    case ErrorKind::Coverage:
      return kExitData;
    case ErrorKind::Resource:
      return kExitResource;
  }
  return kExitData;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Effective Sato-Tate statistics for modular forms", "satotate"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "csv";
  app.add_option("--out", cfg.out, "Write the report to this file");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", cfg.threads, "Worker threads for coefficient generation")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--cache-dir", cfg.cache_dir, "Coefficient cache directory");
  app.add_option("--seed", cfg.seed, "Seed for synthetic zeros");

  auto* coefficients = app.add_subcommand("coefficients", "Generate and cache a(p)");
  add_newform_options(coefficients, cfg);
  coefficients->add_option("--xmax", cfg.x_max, "Largest prime bound");
  coefficients->add_option("--fast-crossover", cfg.fast_crossover,
                           "Prime above which point counts use baby-step giant-step");

  auto* satotate = app.add_subcommand("satotate", "Interval counts against the Sato-Tate measure");
  add_newform_options(satotate, cfg);
  satotate->add_option("--xmax", cfg.x_max, "Largest x in the grid");
  satotate->add_option("--xmin", cfg.x_min, "Smallest x in the grid");
  satotate->add_option("--ratio", cfg.ratio, "Geometric grid ratio");
  satotate->add_option("--interval", cfg.intervals, "alpha,beta (repeatable; pi/2 style allowed)");
  satotate->add_option("--angles-in", cfg.angles_in, "Read angles from an exported CSV");
  satotate->add_option("--angles-out", cfg.angles_out, "Export the angle table as CSV");

  auto* chebsums = app.add_subcommand("chebsums", "Symmetric-power Chebyshev sums");
  add_newform_options(chebsums, cfg);
  chebsums->add_option("--xmax", cfg.x_max, "Default x when --x is absent");
  chebsums->add_option("--x", cfg.xs, "Cutoff x (repeatable)");
  chebsums->add_option("--n-min", cfg.n_min, "Smallest symmetric power");
  chebsums->add_option("--n-max", cfg.n_max, "Largest symmetric power");
  chebsums->add_option("--interval", cfg.intervals, "alpha,beta for the smoothing estimate");
  chebsums->add_option("--delta", cfg.delta, "Smoothing width; enables the estimate rows");
  chebsums->add_option("--R", cfg.R, "Convolution order");
  chebsums->add_option("--sum-n-max", cfg.sum_n_max, "Truncation of the sum over n");
  chebsums->add_option("--angles-in", cfg.angles_in, "Read angles from an exported CSV");

  auto* smooth = app.add_subcommand("smooth", "Majorant/minorant kernels and checks");
  smooth->add_option("--interval", cfg.intervals, "alpha,beta");
  smooth->add_option("--delta", cfg.delta, "Smoothing width");
  smooth->add_option("--R", cfg.R, "Convolution order");
  smooth->add_option("--tol", cfg.tail_tolerance, "Series tail tolerance");
  smooth->add_option("--grid", cfg.grid, "Grid points on [0, pi] for the checks");

  auto* budget_cmd = app.add_subcommand("budget", "Error-term balancing in log space");
  budget_cmd->add_option("--R", cfg.R, "Convolution order (>= 4)");
  budget_cmd->add_option("--loglogx", cfg.log_log_x, "log log x");
  budget_cmd->add_option("--log-delta", cfg.log_delta, "log delta (default: balancing choice)");
  budget_cmd->add_option("--interval", cfg.intervals, "alpha,beta for the width check");
  budget_cmd->add_option("--n-max", cfg.sum_n_max, "Largest symmetric power");
  budget_cmd->add_flag("--sweep", cfg.sweep, "CSV sweep over --R-list x --loglogx-list");
  budget_cmd->add_option("--R-list", cfg.R_list, "R values for --sweep")->delimiter(',');
  budget_cmd->add_option("--loglogx-list", cfg.log_log_x_list, "log log x values for --sweep")
      ->delimiter(',');
  budget_cmd->add_option("--weight", cfg.weight, "Weight k");
  budget_cmd->add_option("--level", cfg.level, "Level N");
  add_bound_options(budget_cmd, cfg);

  auto* explicit_cmd = app.add_subcommand("explicit", "Truncated explicit formula");
  explicit_cmd->add_option("--mode", cfg.mode, "compare | synthesize | bound-check")
      ->check(CLI::IsMember({"compare", "synthesize", "bound-check"}));
  explicit_cmd->add_option("--zeros", cfg.zeros, "Zero ordinate file");
  explicit_cmd->add_option("--x", cfg.xs, "x (repeatable for compare)");
  explicit_cmd->add_option("--T", cfg.T, "Truncation height");
  explicit_cmd->add_option("--count", cfg.zero_count, "Use only the first COUNT zeros");
  explicit_cmd->add_option("--n", cfg.n, "Symmetric power for synthetic zeros");
  explicit_cmd->add_option("--jitter", cfg.jitter, "Jitter of synthetic ordinates");
  explicit_cmd->add_option("--weight", cfg.weight, "Weight k");
  explicit_cmd->add_option("--level", cfg.level, "Level N");
  add_bound_options(explicit_cmd, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  cfg.subcommand = app.get_subcommands().front()->get_name();

  std::ostringstream report;
  try {
    if (cfg.subcommand == "coefficients") cmd_coefficients(cfg, report);
    else if (cfg.subcommand == "satotate") cmd_satotate(cfg, report);
    else if (cfg.subcommand == "chebsums") cmd_chebsums(cfg, report);
    else if (cfg.subcommand == "smooth") cmd_smooth(cfg, report);
    else if (cfg.subcommand == "budget") cmd_budget(cfg, report);
    else cmd_explicit(cfg, report);

    if (cfg.out.empty()) {
      out << report.str();
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!(file << report.str()))
        throw Error(ErrorKind::Data, "cannot write " + cfg.out);
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    err << "error (resource): out of memory\n";
    return kExitResource;
  } catch (const fs::filesystem_error& e) {
    err << "error (data): " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace satotate::cli
