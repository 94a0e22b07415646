#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "satotate/sato_tate.hpp"

namespace satotate {

// Numeric surrogates for the analytic estimates. Every unspecified absolute
// constant is configurable; outputs are bound surrogates, not theorems.

/// A positive quantity stored as its natural logarithm.
class LogScaleReal {
 public:
  constexpr LogScaleReal() = default;
  static constexpr LogScaleReal from_log(double log_value) noexcept {
    LogScaleReal r;
    r.log_ = log_value;
    return r;
  }
  /// Throws ErrorKind::Domain for value <= 0.
  static LogScaleReal from_value(double value);

  constexpr double log() const noexcept { return log_; }
  /// exp(log); may overflow to infinity.
  double value() const noexcept;

  friend constexpr LogScaleReal operator*(LogScaleReal x, LogScaleReal y) noexcept {
    return from_log(x.log_ + y.log_);
  }
  friend constexpr LogScaleReal operator/(LogScaleReal x, LogScaleReal y) noexcept {
    return from_log(x.log_ - y.log_);
  }
  /// Stable log-sum-exp.
  friend LogScaleReal operator+(LogScaleReal x, LogScaleReal y) noexcept;

  constexpr LogScaleReal pow(double exponent) const noexcept {
    return from_log(log_ * exponent);
  }

  friend constexpr auto operator<=>(LogScaleReal x, LogScaleReal y) noexcept {
    return x.log_ <=> y.log_;
  }
  friend constexpr bool operator==(LogScaleReal, LogScaleReal) noexcept = default;

 private:
  double log_ = 0.0;
};

struct BoundConstants {
  double c = 1.0;             // zero-free region
  double c2 = 0.5;            // Phi bound, 0 < c2 < c
  double conductor_c3 = 1.0;  // log q <= c3 n^3 for non-squarefree level
  double zero_window = 1.0;   // N(T+1) - N(T) <= zero_window (n^3 + n log T)
  double implied = 1.0;       // implied constant of the Phi bound

  /// Throws ErrorKind::Domain unless 0 < c2 < c and the rest are positive.
  void validate() const;
};

struct BoundParams {
  int weight = 2;
  std::uint64_t level = 1;
  bool squarefree = true;
  BoundConstants constants;
};

/// Gamma-factor shift kappa, a half-integer stored as 2 kappa.
struct GammaShift {
  std::int64_t twice = 0;

  constexpr double value() const noexcept { return 0.5 * static_cast<double>(twice); }
  friend constexpr auto operator<=>(GammaShift, GammaShift) = default;
};

/// The n+1 shifts kappa_j with gamma(Sym^n f, s) ~ prod Gamma_R(s + kappa_j).
/// Throws ErrorKind::Domain unless n >= 1 and k is even, k >= 2.
std::vector<GammaShift> gamma_shifts(unsigned n, int weight);

/// n log N when the level is squarefree, else the surrogate c3 n^3.
double log_conductor(unsigned n, std::uint64_t level, bool squarefree, double c3);

/// log q + sum_kappa log(|s + kappa| + 3).
double log_analytic_conductor(unsigned n, const BoundParams& params,
                              std::complex<double> s);

/// c / ((n+1)^4 log(q(0) (|t| + 3))).
double zero_free_width(unsigned n, double t, const BoundParams& params);

/// (T/pi) (log q + (n+1)(log T - log(2 pi e))): counts zeros with |gamma| <= T.
double zero_count_main_term(double T, unsigned n, const BoundParams& params);

/// zero_window * (n^3 + n log T).
double zero_window_bound(double T, unsigned n, const BoundParams& params);

/// log of implied * n^3 x exp(-c2 log x / (n^4 (sqrt(log x) + n^3))).
LogScaleReal phi_bound(unsigned n, LogScaleReal x, const BoundParams& params);

/// log T of the balancing choice T = exp(sqrt(log x)).
double balanced_log_T(LogScaleReal x) noexcept;

/// Exponent -c2 log x / (n^4 (log T + n^3)) of the zero-sum estimate before T
/// is fixed; at log T = sqrt(log x) it is the exponent inside phi_bound.
double zero_sum_exponent(unsigned n, LogScaleReal x, double log_T,
                         const BoundParams& params);

/// log of (n^3 x / T)(log x)^2, the truncation error term for given T.
double explicit_error_log(unsigned n, LogScaleReal x, double log_T);

/// log delta = (5/4) log R + (3/(2R) - 1/8) log log x.
/// `log_x` is the quantity log x. Throws ErrorKind::Domain for R < 4.
LogScaleReal optimal_delta(unsigned R, LogScaleReal log_x);

/// 9/8 - 3/(2R). Throws ErrorKind::Domain for R < 4.
double final_exponent(unsigned R);

struct BudgetParams {
  LogScaleReal log_x;  // the quantity log x, stored by its log
  LogScaleReal delta;
  unsigned R = 4;
  unsigned n_max = 32;
  BoundParams bounds;
  std::optional<Interval> interval;
};

/// Terms of delta x / log x + R^{5R/4} delta^{-R} x (log x)^{-(R-3)/8}.
/// x itself is rarely representable, so every log is taken of term / x.
struct BudgetReport {
  double log_term1 = 0.0;
  double log_term2 = 0.0;
  double log_total = 0.0;
  bool delta_below_half = false;
  bool interval_fits = true;  // beta - alpha > 2 pi delta, when an interval is given
  bool R_valid = false;
};

BudgetReport budget(const BudgetParams& params);

}  // namespace satotate
