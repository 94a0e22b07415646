#include "satotate/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "satotate/error.hpp"

namespace satotate {

namespace {

constexpr double kPi = std::numbers::pi;

void require_power(unsigned n) {
  if (n < 1) throw Error(ErrorKind::Domain, "symmetric power n must be at least 1");
}

void require_R(unsigned R) {
  if (R < 4) throw Error(ErrorKind::Domain, "R must be at least 4 for absolute convergence");
}

double log_q(unsigned n, const BoundParams& params) {
  return log_conductor(n, params.level, params.squarefree, params.constants.conductor_c3);
}

}  // namespace

LogScaleReal LogScaleReal::from_value(double value) {
  if (!(value > 0.0)) throw Error(ErrorKind::Domain, "LogScaleReal needs a positive value");
  return from_log(std::log(value));
}

double LogScaleReal::value() const noexcept { return std::exp(log_); }

LogScaleReal operator+(LogScaleReal x, LogScaleReal y) noexcept {
  const double hi = std::max(x.log_, y.log_);
  const double lo = std::min(x.log_, y.log_);
  if (std::isinf(hi)) return LogScaleReal::from_log(hi);
  return LogScaleReal::from_log(hi + std::log1p(std::exp(lo - hi)));
}

void BoundConstants::validate() const {
  if (!(c > 0.0 && c2 > 0.0 && c2 < c))
    throw Error(ErrorKind::Domain, "bound constants need 0 < c2 < c");
  if (!(conductor_c3 > 0.0 && zero_window > 0.0 && implied > 0.0))
    throw Error(ErrorKind::Domain, "bound constants must be positive");
}

std::vector<GammaShift> gamma_shifts(unsigned n, int weight) {
  require_power(n);
  if (weight < 2 || weight % 2 != 0)
    throw Error(ErrorKind::Domain, "weight must be even and at least 2");
  const std::int64_t k1 = weight - 1;
  const auto half = static_cast<std::int64_t>(n / 2);
  std::vector<GammaShift> shifts;
  shifts.reserve(n + 1);
  // Gamma_C(s + kappa) = Gamma_R(s + kappa) Gamma_R(s + kappa + 1)
  if (n % 2 == 1) {
    for (std::int64_t j = 0; j <= half; ++j) {
      const std::int64_t twice = (2 * j + 1) * k1;  // 2 (j + 1/2)(k - 1)
      shifts.push_back({twice});
      shifts.push_back({twice + 2});
    }
  } else {
    const std::int64_t r = half % 2 == 1 ? 1 : 0;
    shifts.push_back({2 * r});
    for (std::int64_t j = 1; j <= half; ++j) {
      shifts.push_back({2 * j * k1});
      shifts.push_back({2 * j * k1 + 2});
    }
  }
  std::sort(shifts.begin(), shifts.end());
  return shifts;
}

double log_conductor(unsigned n, std::uint64_t level, bool squarefree, double c3) {
  require_power(n);
  const double nd = static_cast<double>(n);
  return squarefree ? nd * std::log(static_cast<double>(level)) : c3 * nd * nd * nd;
}

double log_analytic_conductor(unsigned n, const BoundParams& params, std::complex<double> s) {
  double total = log_q(n, params);
  for (const auto kappa : gamma_shifts(n, params.weight))
    total += std::log(std::abs(s + kappa.value()) + 3.0);
  return total;
}

double zero_free_width(unsigned n, double t, const BoundParams& params) {
  const double n1 = static_cast<double>(n) + 1.0;
  const double log_cond = log_analytic_conductor(n, params, 0.0) + std::log(std::fabs(t) + 3.0);
  return params.constants.c / (n1 * n1 * n1 * n1 * log_cond);
}

double zero_count_main_term(double T, unsigned n, const BoundParams& params) {
  if (!(T >= 1.0)) throw Error(ErrorKind::Domain, "zero counting needs T >= 1");
  const double d = static_cast<double>(n) + 1.0;
  return (T / kPi) * (log_q(n, params) + d * (std::log(T) - std::log(2.0 * kPi * std::numbers::e)));
}

double zero_window_bound(double T, unsigned n, const BoundParams& params) {
  const double nd = static_cast<double>(n);
  return params.constants.zero_window * (nd * nd * nd + nd * std::log(std::max(T, 1.0)));
}

LogScaleReal phi_bound(unsigned n, LogScaleReal x, const BoundParams& params) {
  require_power(n);
  const double log_x = x.log();
  if (!(log_x > 0.0)) throw Error(ErrorKind::Domain, "phi_bound needs x > 1");
  const double nd = static_cast<double>(n);
  const double n3 = nd * nd * nd;
  const double decay = params.constants.c2 * log_x / (nd * n3 * (std::sqrt(log_x) + n3));
  return LogScaleReal::from_log(std::log(params.constants.implied) + 3.0 * std::log(nd) +
                                log_x - decay);
}

double balanced_log_T(LogScaleReal x) noexcept { return std::sqrt(x.log()); }

double zero_sum_exponent(unsigned n, LogScaleReal x, double log_T, const BoundParams& params) {
  const double nd = static_cast<double>(n);
  const double n3 = nd * nd * nd;
  return -params.constants.c2 * x.log() / (nd * n3 * (log_T + n3));
}

double explicit_error_log(unsigned n, LogScaleReal x, double log_T) {
  return 3.0 * std::log(static_cast<double>(n)) + x.log() + 2.0 * std::log(x.log()) - log_T;
}

LogScaleReal optimal_delta(unsigned R, LogScaleReal log_x) {
  require_R(R);
  const double r = static_cast<double>(R);
  return LogScaleReal::from_log(1.25 * std::log(r) + (1.5 / r - 0.125) * log_x.log());
}

double final_exponent(unsigned R) {
  require_R(R);
  return 1.125 - 1.5 / static_cast<double>(R);
}

BudgetReport budget(const BudgetParams& params) {
  BudgetReport report;
  report.R_valid = params.R >= 4;
  const double r = static_cast<double>(params.R);
  const double log_log_x = params.log_x.log();
  const double log_delta = params.delta.log();
  // term1 / x = delta / log x
  report.log_term1 = log_delta - log_log_x;
  // term2 / x = R^{5R/4} delta^{-R} (log x)^{-(R-3)/8}
  report.log_term2 = 1.25 * r * std::log(r) - r * log_delta - (r - 3.0) / 8.0 * log_log_x;
  report.log_total = (LogScaleReal::from_log(report.log_term1) +
                      LogScaleReal::from_log(report.log_term2))
                         .log();
  report.delta_below_half = log_delta < std::log(0.5);
  if (params.interval)
    report.interval_fits = params.interval->length() > 2.0 * kPi * params.delta.value();
  return report;
}

}  // namespace satotate
