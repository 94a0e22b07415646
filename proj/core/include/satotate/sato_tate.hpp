#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "satotate/coefficients.hpp"

namespace satotate {

/// Closed subinterval [alpha, beta] of [0, pi].
class Interval {
 public:
  /// Throws ErrorKind::Domain unless 0 <= alpha < beta <= pi.
  Interval(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double length() const noexcept { return beta_ - alpha_; }
  bool contains(double theta) const noexcept {
    return alpha_ <= theta && theta <= beta_;
  }

 private:
  double alpha_;
  double beta_;
};

/// theta_p = arccos(a_p / (2 p^{(k-1)/2})) in [0, pi].
/// Throws ErrorKind::Domain on a Hasse violation.
double angle(const Integer& a_p, std::uint64_t p, int weight);

/// mu_ST([0, theta]) for theta in [0, pi].
double st_cdf(double theta) noexcept;

/// mu_ST(I) with d mu_ST = (2/pi) sin^2 theta d theta.
double st_measure(const Interval& interval) noexcept;

/// Chebyshev polynomial of the second kind by the three-term recurrence.
double chebyshev_U(unsigned n, double x) noexcept;

struct AngleRecord {
  std::uint64_t p = 0;
  Integer a_p;
  double theta = 0.0;
};

/// Sato-Tate angles of the unramified primes of a coefficient table.
/// Immutable once built.
class AngleTable {
 public:
  /// Records must be strictly ascending in p with no ramified primes.
  AngleTable(NewformSpec spec, std::vector<AngleRecord> records, double x_max);

  static AngleTable from_coefficients(const CoefficientTable& table);

  const NewformSpec& spec() const noexcept { return spec_; }
  std::span<const AngleRecord> records() const noexcept { return records_; }
  double x_max() const noexcept { return x_max_; }
  bool empty() const noexcept { return records_.empty(); }

  /// Records with p <= x. Throws ErrorKind::Coverage when x exceeds x_max
  /// (x < 2 is always covered).
  std::span<const AngleRecord> records_up_to(double x) const;

  /// Record for prime p, or nullptr.
  const AngleRecord* find(std::uint64_t p) const;

 private:
  NewformSpec spec_;
  std::vector<AngleRecord> records_;
  double x_max_;
};

/// pi_{f,I}(x) = #{p <= x unramified : theta_p in I}.
std::uint64_t count_in_interval(const AngleTable& table, const Interval& interval,
                                double x);

/// Number of unramified primes p <= x.
std::uint64_t unramified_prime_count(const AngleTable& table, double x);

/// Two-sided Kolmogorov-style discrepancy over closed intervals whose
/// endpoints lie in {0, pi} and the given angles. Throws ErrorKind::Domain
/// when there are no angles.
double discrepancy(std::span<const double> thetas);
double discrepancy(const AngleTable& table, double x);

/// CSV "p,a_p,theta", thetas with 17 significant digits.
void write_angle_csv(const AngleTable& table, std::ostream& out);
AngleTable read_angle_csv(std::istream& in, const NewformSpec& spec, double x_max);

}  // namespace satotate
