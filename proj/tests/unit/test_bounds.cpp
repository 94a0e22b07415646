#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "satotate/bounds.hpp"
#include "satotate/error.hpp"

using namespace satotate;

namespace {

constexpr double kPi = std::numbers::pi;

BoundParams params(int weight, std::uint64_t level, bool squarefree = true) {
  BoundParams p;
  p.weight = weight;
  p.level = level;
  p.squarefree = squarefree;
  return p;
}

std::vector<std::int64_t> twice(const std::vector<GammaShift>& shifts) {
  std::vector<std::int64_t> out;
  for (auto s : shifts) out.push_back(s.twice);
  return out;
}

}  // namespace

TEST(LogScaleReal, Arithmetic) {
  const auto a = LogScaleReal::from_value(3.0), b = LogScaleReal::from_value(5.0);
  EXPECT_NEAR((a * b).value(), 15.0, 1e-13);
  EXPECT_NEAR((b / a).value(), 5.0 / 3.0, 1e-15);
  EXPECT_NEAR((a + b).value(), 8.0, 1e-13);
  EXPECT_NEAR(a.pow(3).value(), 27.0, 1e-12);
  EXPECT_LT(a, b);
  const auto huge = LogScaleReal::from_log(1e6);
  EXPECT_DOUBLE_EQ((huge + huge).log(), 1e6 + std::log(2.0));
  EXPECT_DOUBLE_EQ((huge + a).log(), 1e6);
  EXPECT_THROW(LogScaleReal::from_value(0.0), Error);
}

TEST(BoundConstants, Validation) {
  BoundConstants c;
  EXPECT_NO_THROW(c.validate());
  c.c2 = c.c;
  EXPECT_THROW(c.validate(), Error);
  c = BoundConstants{};
  c.zero_window = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(GammaShifts, Examples) {
  EXPECT_EQ(twice(gamma_shifts(1, 12)), (std::vector<std::int64_t>{11, 13}));
  EXPECT_EQ(twice(gamma_shifts(2, 2)), (std::vector<std::int64_t>{2, 2, 4}));
  EXPECT_EQ(twice(gamma_shifts(4, 2)), (std::vector<std::int64_t>{0, 2, 4, 4, 6}));
  EXPECT_EQ(twice(gamma_shifts(3, 2)), (std::vector<std::int64_t>{1, 3, 3, 5}));
}

TEST(GammaShifts, DegreeAndSize) {
  for (int k : {2, 4, 12, 24})
    for (unsigned n = 1; n <= 25; ++n) {
      const auto shifts = gamma_shifts(n, k);
      EXPECT_EQ(shifts.size(), n + 1);
      const double top_n1 = gamma_shifts(1, k).back().value();
      for (auto s : shifts) EXPECT_LE(std::fabs(s.value()), (n + 1) * top_n1);
    }
}

TEST(GammaShifts, InvalidArguments) {
  EXPECT_THROW(gamma_shifts(0, 2), Error);
  EXPECT_THROW(gamma_shifts(1, 3), Error);
  EXPECT_THROW(gamma_shifts(1, 0), Error);
}

TEST(LogConductor, Examples) {
  EXPECT_NEAR(log_conductor(3, 11, true, 1), 3 * std::log(11.0), 1e-15);
  EXPECT_NEAR(log_conductor(3, 11, true, 1), 7.1936, 1e-4);
  EXPECT_EQ(log_conductor(5, 1, true, 1), 0.0);
  EXPECT_EQ(log_conductor(2, 12, false, 1), 8.0);
}

TEST(LogAnalyticConductor, Examples) {
  const double v = log_analytic_conductor(1, params(2, 11), 0.0);
  EXPECT_NEAR(v, std::log(11.0) + std::log(3.5) + std::log(4.5), 1e-14);
  EXPECT_NEAR(v, 5.1548, 1e-4);
  EXPECT_NEAR(log_analytic_conductor(1, params(12, 1), 0.0), 4.3914, 1e-4);
}

TEST(LogAnalyticConductor, GrowthAlongImaginaryAxis) {
  for (unsigned n : {1u, 3u, 6u}) {
    const auto p = params(2, 11);
    const double lo = log_analytic_conductor(n, p, {0.0, 1e6});
    const double hi = log_analytic_conductor(n, p, {0.0, 1e9});
    EXPECT_NEAR((hi - lo) / std::log(1000.0), n + 1.0, 1e-4);
  }
}

TEST(ZeroFreeWidth, ExampleAndInverse) {
  const auto p = params(2, 11);
  EXPECT_NEAR(zero_free_width(1, 0, p), 1 / (16 * (std::log(11 * 3.5 * 4.5) + std::log(3.0))), 1e-15);
  EXPECT_NEAR(zero_free_width(1, 0, p), 0.009995, 1e-6);
  for (unsigned n : {1u, 2u, 7u})
    for (double t : {0.0, 5.0, -40.0, 1e5}) {
      const double w = zero_free_width(n, t, p);
      const double denom = std::pow(n + 1.0, 4) *
                           (log_analytic_conductor(n, p, 0.0) + std::log(std::fabs(t) + 3));
      EXPECT_NEAR(w * denom, p.constants.c, 1e-14);
    }
}

TEST(ZeroFreeWidth, Monotone) {
  const auto p = params(12, 1);
  for (unsigned n = 1; n < 10; ++n) EXPECT_GT(zero_free_width(n, 10, p), zero_free_width(n + 1, 10, p));
  for (double t = 0; t < 1000; t += 37) EXPECT_GT(zero_free_width(2, t, p), zero_free_width(2, t + 1, p));
}

TEST(ZeroCountMainTerm, Examples) {
  EXPECT_NEAR(zero_count_main_term(2 * kPi * std::numbers::e, 1, params(12, 1)), 0.0, 1e-12);
  EXPECT_NEAR(zero_count_main_term(100, 1, params(2, 11)), 188.84, 0.01);
  EXPECT_THROW(zero_count_main_term(0.5, 1, params(2, 11)), Error);
  // slope (1/pi)(log q + (n+1)(log T - log 2 pi)) at large T
  const auto p = params(2, 11);
  const double T = 1e6, h = 1e-2;
  const double slope = (zero_count_main_term(T + h, 2, p) - zero_count_main_term(T - h, 2, p)) / (2 * h);
  EXPECT_NEAR(slope, (log_conductor(2, 11, true, 1) + 3 * (std::log(T) - std::log(2 * kPi))) / kPi,
              1e-5);
}

TEST(ZeroWindowBound, Shape) {
  auto p = params(2, 11);
  EXPECT_DOUBLE_EQ(zero_window_bound(100, 2, p), 8 + 2 * std::log(100.0));
  p.constants.zero_window = 3;
  EXPECT_DOUBLE_EQ(zero_window_bound(100, 2, p), 3 * (8 + 2 * std::log(100.0)));
}

TEST(PhiBound, Example) {
  auto p = params(2, 11);
  p.constants.c = 2;
  p.constants.c2 = 1;
  EXPECT_NEAR(phi_bound(1, LogScaleReal::from_log(1e4), p).log(), 1e4 - 1e4 / 101, 1e-9);
  EXPECT_NEAR(phi_bound(1, LogScaleReal::from_log(1e4), p).log(), 9900.99, 1e-2);
}

TEST(PhiBound, IncreasingInNAndSubExponentialDeficit) {
  const auto p = params(2, 11);
  const auto x = LogScaleReal::from_log(500);
  for (unsigned n = 1; n < 8; ++n) EXPECT_LT(phi_bound(n, x, p), phi_bound(n + 1, x, p));
  // deficit / sqrt(log x) -> c2 / n^4
  const double L = 1e12;
  const double deficit = L - phi_bound(1, LogScaleReal::from_log(L), p).log();
  EXPECT_NEAR(deficit / std::sqrt(L), p.constants.c2, 1e-5);
  EXPECT_THROW(phi_bound(1, LogScaleReal::from_log(-1), p), Error);
}

TEST(PhiBound, BalancedTruncationReproducesExponent) {
  const auto p = params(2, 11);
  for (unsigned n : {1u, 2u, 5u})
    for (double L : {10.0, 1e3, 1e8}) {
      const auto x = LogScaleReal::from_log(L);
      const double shape = phi_bound(n, x, p).log() - (std::log(p.constants.implied) + 3 * std::log(n) + L);
      EXPECT_NEAR(zero_sum_exponent(n, x, balanced_log_T(x), p), shape, 1e-9 * (1 + std::fabs(shape)));
    }
}

TEST(ExplicitErrorLog, DecreasesWithT) {
  const auto x = LogScaleReal::from_log(100);
  EXPECT_NEAR(explicit_error_log(2, x, 3.0) - explicit_error_log(2, x, 5.0), 2.0, 1e-12);
}

TEST(OptimalDelta, Examples) {
  const auto ll = [](double v) { return LogScaleReal::from_log(v); };
  EXPECT_NEAR(optimal_delta(13, ll(400)).log(), 1.25 * std::log(13.0) + (3.0 / 26 - 0.125) * 400, 1e-12);
  EXPECT_NEAR(optimal_delta(13, ll(400)).log(), -0.6398, 5e-4);
  EXPECT_GT(optimal_delta(13, ll(400)).value(), 0.5);
  // R = 24: exponent of log x is -1/16
  EXPECT_NEAR(optimal_delta(24, ll(200)).log() - optimal_delta(24, ll(100)).log(), -100.0 / 16, 1e-12);
  // exponent negative iff R > 12
  EXPECT_GT(optimal_delta(12, ll(200)).log(), optimal_delta(12, ll(100)).log() - 1e-12);
  EXPECT_LT(optimal_delta(13, ll(200)).log(), optimal_delta(13, ll(100)).log());
  EXPECT_THROW(optimal_delta(3, ll(10)), Error);
}

TEST(FinalExponent, Values) {
  EXPECT_DOUBLE_EQ(final_exponent(24), 1.0625);
  EXPECT_NEAR(final_exponent(13), 1.009615, 1e-6);
  double last = final_exponent(4);
  for (unsigned R = 5; R < 5000; ++R) {
    const double e = final_exponent(R);
    EXPECT_GT(e, last);
    EXPECT_LT(e, 1.125);
    last = e;
  }
  EXPECT_NEAR(final_exponent(1'000'000), 1.125, 2e-6);
  EXPECT_THROW(final_exponent(3), Error);
}

TEST(Budget, TermOneDominatesAtBalancedDelta) {
  for (unsigned R = 13; R <= 64; ++R)
    for (double ll : {10.0, 31.6, 100.0, 316.0, 1000.0}) {
      BudgetParams b;
      b.R = R;
      b.log_x = LogScaleReal::from_log(ll);
      b.delta = optimal_delta(R, b.log_x);
      const auto r = budget(b);
      const double diff = r.log_term1 - r.log_term2;
      EXPECT_NEAR(diff, 1.25 * std::log(R) + 1.5 / R * ll, 1e-9 * std::max(1.0, std::fabs(diff)));
      EXPECT_GE(diff, 0.0);
      EXPECT_NEAR(r.log_term1, -final_exponent(R) * ll + 1.25 * std::log(R), 1e-9 * ll);
      EXPECT_GE(r.log_total, r.log_term1);
      EXPECT_TRUE(r.R_valid);
    }
}

TEST(Budget, DoublingDelta) {
  BudgetParams b;
  b.R = 16;
  b.log_x = LogScaleReal::from_log(50);
  b.delta = optimal_delta(16, b.log_x);
  const auto base = budget(b);
  b.delta = b.delta * LogScaleReal::from_value(2.0);
  const auto doubled = budget(b);
  EXPECT_NEAR(doubled.log_term1 - base.log_term1, std::log(2.0), 1e-12);
  EXPECT_NEAR(base.log_term2 - doubled.log_term2, 16 * std::log(2.0), 1e-9);
}

TEST(Budget, ValidityFlags) {
  BudgetParams b;
  b.R = 13;
  b.log_x = LogScaleReal::from_log(400);
  b.delta = optimal_delta(13, b.log_x);
  EXPECT_FALSE(budget(b).delta_below_half);  // delta ~ 0.527
  b.log_x = LogScaleReal::from_log(1000);
  b.delta = optimal_delta(13, b.log_x);
  EXPECT_TRUE(budget(b).delta_below_half);
  b.interval = Interval(1.0, 1.0 + 2 * kPi * b.delta.value() * 0.9);
  EXPECT_FALSE(budget(b).interval_fits);
  b.interval = Interval(0.0, kPi);
  EXPECT_TRUE(budget(b).interval_fits);
  b.R = 3;
  EXPECT_FALSE(budget(b).R_valid);
}
