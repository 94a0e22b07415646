#include "satotate/sato_tate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "satotate/error.hpp"
#include "satotate/numeric.hpp"

namespace satotate {

Interval::Interval(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(0.0 <= alpha && alpha < beta && beta <= std::numbers::pi))
    throw Error(ErrorKind::Domain, "interval must satisfy 0 <= alpha < beta <= pi");
}

double angle(const Integer& a_p, std::uint64_t p, int weight) {
  if (!satisfies_hasse(a_p, p, weight))
    throw Error(ErrorKind::Domain, "a(p) exceeds 2 p^{(k-1)/2} at p = " + std::to_string(p));
  const long double scale =
      2.0L * std::pow(static_cast<long double>(p), static_cast<long double>(weight - 1) / 2.0L);
  long double ratio = a_p.convert_to<long double>() / scale;
  ratio = std::clamp(ratio, -1.0L, 1.0L);
  return static_cast<double>(std::acos(ratio));
}

double st_cdf(double theta) noexcept {
  return (theta - 0.5 * std::sin(2.0 * theta)) / std::numbers::pi;
}

double st_measure(const Interval& interval) noexcept {
  const double a = interval.alpha(), b = interval.beta();
  return ((b - a) - 0.5 * (std::sin(2.0 * b) - std::sin(2.0 * a))) / std::numbers::pi;
}

double chebyshev_U(unsigned n, double x) noexcept {
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 2.0 * x;
  for (unsigned m = 1; m < n; ++m) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

AngleTable::AngleTable(NewformSpec spec, std::vector<AngleRecord> records, double x_max)
    : spec_(std::move(spec)), records_(std::move(records)), x_max_(x_max) {
  std::uint64_t previous = 0;
  for (const auto& r : records_) {
    if (r.p <= previous) throw Error(ErrorKind::Data, "angle records must ascend in p");
    if (spec_.is_ramified(r.p))
      throw Error(ErrorKind::Data, "ramified prime " + std::to_string(r.p) + " in angle table");
    if (!(r.theta >= 0.0 && r.theta <= std::numbers::pi))
      throw Error(ErrorKind::Data, "angle outside [0, pi] at p = " + std::to_string(r.p));
    if (static_cast<double>(r.p) > x_max_)
      throw Error(ErrorKind::Data, "record beyond x_max at p = " + std::to_string(r.p));
    previous = r.p;
  }
}

AngleTable AngleTable::from_coefficients(const CoefficientTable& table) {
  std::vector<AngleRecord> records;
  records.reserve(table.size());
  const int k = table.spec().weight();
  for (const auto& [p, a] : table.entries()) {
    if (table.is_ramified(p)) continue;
    records.push_back({p, a, angle(a, p, k)});
  }
  const double x_max = static_cast<double>(table.x_max().value_or(1));
  return AngleTable(table.spec(), std::move(records), x_max);
}

std::span<const AngleRecord> AngleTable::records_up_to(double x) const {
  if (x >= 2.0 && x > x_max_)
    throw Error(ErrorKind::Coverage, "x = " + format_double(x) + " exceeds table x_max = " +
                                         format_double(x_max_));
  const auto end = std::upper_bound(
      records_.begin(), records_.end(), x,
      [](double bound, const AngleRecord& r) { return bound < static_cast<double>(r.p); });
  return {records_.data(), static_cast<std::size_t>(end - records_.begin())};
}

const AngleRecord* AngleTable::find(std::uint64_t p) const {
  const auto it = std::lower_bound(records_.begin(), records_.end(), p,
                                   [](const AngleRecord& r, std::uint64_t q) { return r.p < q; });
  return (it != records_.end() && it->p == p) ? &*it : nullptr;
}

std::uint64_t count_in_interval(const AngleTable& table, const Interval& interval, double x) {
  const auto records = table.records_up_to(x);
  return static_cast<std::uint64_t>(std::count_if(
      records.begin(), records.end(), [&](const AngleRecord& r) { return interval.contains(r.theta); }));
}

std::uint64_t unramified_prime_count(const AngleTable& table, double x) {
  return table.records_up_to(x).size();
}

double discrepancy(std::span<const double> thetas) {
  if (thetas.empty()) throw Error(ErrorKind::Domain, "discrepancy of an empty sample");
  std::vector<double> sorted(thetas.begin(), thetas.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> endpoints(sorted);
  endpoints.push_back(0.0);
  endpoints.push_back(std::numbers::pi);
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());

  // For [e_i, e_j]: count/n - mu = A_j - B_i with
  //   A_j = #{theta <= e_j}/n - F(e_j),  B_i = #{theta < e_i}/n - F(e_i).
  const double n = static_cast<double>(sorted.size());
  double min_b = INFINITY, max_b = -INFINITY, sup = 0.0;
  for (double e : endpoints) {
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), e) - sorted.begin();
    const auto upto = std::upper_bound(sorted.begin(), sorted.end(), e) - sorted.begin();
    const double F = st_cdf(e);
    const double b = static_cast<double>(below) / n - F;
    const double a = static_cast<double>(upto) / n - F;
    min_b = std::min(min_b, b);
    max_b = std::max(max_b, b);
    sup = std::max({sup, a - min_b, max_b - a});
  }
  return sup;
}

double discrepancy(const AngleTable& table, double x) {
  const auto records = table.records_up_to(x);
  std::vector<double> thetas;
  thetas.reserve(records.size());
  for (const auto& r : records) thetas.push_back(r.theta);
  return discrepancy(thetas);
}

void write_angle_csv(const AngleTable& table, std::ostream& out) {
  out << "p,a_p,theta\n";
  for (const auto& r : table.records())
    out << r.p << ',' << r.a_p << ',' << format_double(r.theta) << '\n';
}

AngleTable read_angle_csv(std::istream& in, const NewformSpec& spec, double x_max) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<AngleRecord> records;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (std::exchange(first, false) && line == "p,a_p,theta") continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw ParseError(line_no, "expected \"p,a_p,theta\"");
    AngleRecord r;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + c1, r.p);
    if (ec != std::errc() || ptr != line.data() + c1) throw ParseError(line_no, "invalid prime");
    try {
      r.a_p = Integer(line.substr(c1 + 1, c2 - c1 - 1));
      std::size_t used = 0;
      const std::string theta = line.substr(c2 + 1);
      r.theta = std::stod(theta, &used);
      if (used != theta.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(line_no, "invalid a_p or theta");
    }
    records.push_back(std::move(r));
  }
  return AngleTable(spec, std::move(records), x_max);
}

}  // namespace satotate
