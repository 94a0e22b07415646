#include "satotate/sympower.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "satotate/error.hpp"
#include "satotate/numeric.hpp"
#include "satotate/primes.hpp"

namespace satotate {

namespace {

struct Term {
  std::uint64_t j;
  double value;
};

enum class Weighting { VonMangoldt, OverLog };

// Unramified prime powers j <= x with their coefficient, ascending in j.
std::vector<Term> prime_power_terms(double x, unsigned n, const AngleTable& table,
                                    Weighting weighting) {
  std::vector<Term> terms;
  if (x < 2.0) return terms;
  const auto limit = static_cast<std::uint64_t>(std::floor(x));
  const auto records = table.records_up_to(x);
  terms.reserve(records.size() + 256);
  for (const auto& r : records) {
    const double log_p = std::log(static_cast<double>(r.p));
    std::uint64_t q = r.p;
    for (unsigned m = 1;; ++m) {
      const double u = chebyshev_U(n, std::cos(m * r.theta));
      // Lambda(p^m) / log(p^m) = U_n(cos m theta) / m
      terms.push_back({q, weighting == Weighting::VonMangoldt ? u * log_p : u / m});
      if (q > limit / r.p) break;
      q *= r.p;
    }
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.j < b.j; });
  return terms;
}

double sum_terms(const std::vector<Term>& terms) {
  CompensatedSum sum;
  for (const auto& t : terms) sum += t.value;
  return sum.value();
}

}  // namespace

double lambda_symn(std::uint64_t j, unsigned n, const AngleTable& table) {
  const auto pp = as_prime_power(j);
  if (!pp || table.spec().is_ramified(pp->prime)) return 0.0;
  const AngleRecord* record =
      static_cast<double>(pp->prime) <= table.x_max() ? table.find(pp->prime) : nullptr;
  if (!record)
    throw Error(ErrorKind::Coverage, "no angle for p = " + std::to_string(pp->prime));
  return chebyshev_U(n, std::cos(pp->exponent * record->theta)) *
         std::log(static_cast<double>(pp->prime));
}

double psi_symn(double x, unsigned n, const AngleTable& table) {
  return sum_terms(prime_power_terms(x, n, table, Weighting::VonMangoldt));
}

double psi_weighted(double x, unsigned n, const AngleTable& table) {
  return sum_terms(prime_power_terms(x, n, table, Weighting::OverLog));
}

double phi_sum(double x, unsigned n, const AngleTable& table) {
  if (x < 2.0) return 0.0;
  CompensatedSum sum;
  for (const auto& r : table.records_up_to(x)) sum += chebyshev_U(n, std::cos(r.theta));
  return sum.value();
}

double correction_bound(double x, unsigned n, std::uint64_t level) {
  const std::uint64_t higher =
      x < 4.0 ? 0 : count_higher_prime_powers(static_cast<std::uint64_t>(std::floor(x)));
  const auto ramified = prime_divisors(level).size();
  return static_cast<double>(n + 1) * static_cast<double>(higher + ramified);
}

bool SymPowerSumReport::within_correction() const noexcept {
  return std::fabs(phi - psi_weighted) <= correction_bound;
}

SymPowerSumReport sym_power_report(double x, unsigned n, const AngleTable& table) {
  SymPowerSumReport report;
  report.n = n;
  report.x = x;
  report.phi = phi_sum(x, n, table);
  report.psi = psi_symn(x, n, table);
  report.psi_weighted = psi_weighted(x, n, table);
  report.correction_bound = correction_bound(x, n, table.spec().level());
  return report;
}

void write_report_csv(std::span<const SymPowerSumReport> reports, std::ostream& out) {
  out << "n,x,phi,psi,psi_weighted,correction_bound\n";
  for (const auto& r : reports)
    out << r.n << ',' << format_double(r.x) << ',' << format_double(r.phi) << ','
        << format_double(r.psi) << ',' << format_double(r.psi_weighted) << ','
        << format_double(r.correction_bound) << '\n';
}

}  // namespace satotate
