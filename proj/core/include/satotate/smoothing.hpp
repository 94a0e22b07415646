#pragma once

#include <cstddef>
#include <iosfwd>
#include <numbers>
#include <span>
#include <vector>

#include "satotate/sato_tate.hpp"

namespace satotate {

inline constexpr double kDefaultTailTolerance = 1e-6;
inline constexpr std::size_t kMaxKernelTerms = 20'000'000;

/// Fourier data of the period-1 smoothing function
///
///   g = 1_[a,b] * u * ... * u   (R factors),
///
/// u the uniform density on [-delta/(2R), delta/(2R)]. g equals 1 on
/// [a + delta/2, b - delta/2], vanishes outside [a - delta/2, b + delta/2]
/// (mod 1) and
///
///   g(y) = (b - a) + sum_{m >= 1} a_m cos(2 pi m y) + b_m sin(2 pi m y)
///
/// with a_m, b_m the indicator coefficients damped by sinc(pi m delta/R)^R.
/// The series is truncated at the smallest M for which twice the analytic
/// tail bound is within tail_tolerance.
class SmoothingKernel {
 public:
  /// Throws ErrorKind::Domain unless 0 < delta < 1/2,
  /// delta <= b - a <= 1 - delta and R >= 1; ErrorKind::Resource when M
  /// would exceed kMaxKernelTerms.
  SmoothingKernel(double a, double b, double delta, unsigned R,
                  double tail_tolerance = kDefaultTailTolerance);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double delta() const noexcept { return delta_; }
  unsigned R() const noexcept { return R_; }
  std::size_t M() const noexcept { return cos_.size(); }
  double constant() const noexcept { return b_ - a_; }

  /// a_1..a_M and b_1..b_M (index 0 holds m = 1).
  std::span<const double> cos_coeffs() const noexcept { return cos_; }
  std::span<const double> sin_coeffs() const noexcept { return sin_; }

  /// a_m, b_m of the truncated series: zero for m > M.
  double cos_coeff(std::size_t m) const noexcept;
  double sin_coeff(std::size_t m) const noexcept;

  /// min{2(b-a), 2/(m pi), (2/(m pi)) (R/(pi m delta))^R}.
  double envelope(std::size_t m) const noexcept;

  /// Upper bound for sum_{m > M} (2/(m pi)) (R/(pi m delta))^R.
  double tail_bound() const noexcept;

  /// Truncated Fourier series at y.
  double evaluate(double y) const noexcept;

 private:
  static double harmonic_bound(double m) noexcept { return 2.0 / (std::numbers::pi * m); }
  double damping_arg(double m) const noexcept;

  double a_, b_, delta_;
  unsigned R_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Upper bound for the envelope tail sum beyond M (integral comparison).
double kernel_tail_bound(double delta, unsigned R, std::size_t M) noexcept;

/// theta -> g(theta/2pi) + g(-theta/2pi) on [0, pi] as a cosine series
///
///   G(theta) = A_0 + 2 sum_{n >= 1} A_n cos(n theta),
///
/// A_0 = 2(b - a), A_n = a_n (the kernel's cosine coefficients).
class SymmetrizedSeries {
 public:
  explicit SymmetrizedSeries(SmoothingKernel kernel);

  const SmoothingKernel& kernel() const noexcept { return kernel_; }
  std::size_t M() const noexcept { return kernel_.M(); }

  /// A_n; zero beyond M.
  double cosine_coeff(std::size_t n) const noexcept;

  double evaluate(double theta) const noexcept;

  /// Truncation error bound of evaluate(): twice the kernel tail.
  double tail_bound() const noexcept { return 2.0 * kernel_.tail_bound(); }

 private:
  SmoothingKernel kernel_;
};

/// c_0 = A_0 - A_2, c_n = A_n - A_{n+2} (1 <= n <= M): the expansion of the
/// series in U_n(cos theta).
std::vector<double> chebyshev_coeffs(const SymmetrizedSeries& series);

/// sum_n c_n U_n(cos theta) by Clenshaw's recurrence.
double evaluate_chebyshev(std::span<const double> coeffs, double theta) noexcept;

/// Majorant g^+ >= 1_I and minorant g^- <= 1_I on [0, pi].
struct MajorantPair {
  Interval interval;
  double delta;
  unsigned R;
  SymmetrizedSeries plus;
  SymmetrizedSeries minus;
  std::vector<double> cheb_plus;
  std::vector<double> cheb_minus;
};

/// g^+ from the kernel on [alpha/2pi - delta/2, beta/2pi + delta/2],
/// g^- from the kernel on [alpha/2pi + delta/2, beta/2pi - delta/2].
/// Throws ErrorKind::Domain when beta - alpha <= 2 pi delta, or when the
/// minorant window is shorter than delta (beta - alpha < 4 pi delta).
MajorantPair build_majorants(const Interval& interval, double delta, unsigned R,
                             double tail_tolerance = kDefaultTailTolerance);

/// CSV kernel export: "# a=..,b=..,delta=..,R=..,M=.." then "m,a_m,b_m".
void write_kernel_csv(const SmoothingKernel& kernel, std::ostream& out);

}  // namespace satotate
