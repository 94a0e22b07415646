#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "satotate/error.hpp"
#include "satotate/primes.hpp"
#include "satotate/sympower.hpp"

using namespace satotate;

namespace {

const AngleTable& delta_table() {
  static const AngleTable table =
      AngleTable::from_coefficients(build_coefficients(NewformSpec::eta_delta(), 20'000));
  return table;
}

const AngleTable& curve_table() {
  static const AngleTable table = AngleTable::from_coefficients(build_coefficients(
      NewformSpec::elliptic_curve({0, -1, 1, -10, -20}, 11, "11a1"), 20'000));
  return table;
}

// 2 cos(theta_p) = tau(p) / p^{11/2}
double two_cos_delta(double tau_p, double p) { return tau_p / std::pow(p, 5.5); }

// Abel summation with psi_symn constant between consecutive prime powers:
// the integral of dt / (t log^2 t) over [u, v] is 1/log u - 1/log v.
double abel_weighted(double x, unsigned n, const AngleTable& table) {
  const auto terms = prime_powers_up_to(static_cast<std::uint64_t>(x));
  double integral = 0.0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double u = static_cast<double>(terms[i].value);
    const double v = i + 1 < terms.size() ? static_cast<double>(terms[i + 1].value) : x;
    if (v <= u) continue;
    integral += psi_symn(u, n, table) * (1 / std::log(u) - 1 / std::log(v));
  }
  return psi_symn(x, n, table) / std::log(x) + integral;
}

}  // namespace

TEST(LambdaSymn, NonPrimePowersVanish) {
  EXPECT_EQ(lambda_symn(1, 1, delta_table()), 0.0);
  EXPECT_EQ(lambda_symn(6, 1, delta_table()), 0.0);
  EXPECT_EQ(lambda_symn(100, 3, delta_table()), 0.0);
}

TEST(LambdaSymn, DeltaAtFour) {
  // cos(2 theta_2) = 2 (24 / 2^{6.5})^2 - 1 = 1152/8192 - 1
  const double expected = 2 * (1152.0 / 8192.0 - 1) * std::log(2.0);
  EXPECT_NEAR(lambda_symn(4, 1, delta_table()), expected, 1e-14);
  EXPECT_NEAR(lambda_symn(4, 1, delta_table()), -1.191347, 1e-6);
}

TEST(LambdaSymn, RamifiedPrimesVanish) {
  EXPECT_EQ(lambda_symn(11, 2, curve_table()), 0.0);
  EXPECT_EQ(lambda_symn(121, 2, curve_table()), 0.0);
}

TEST(LambdaSymn, MissingAngleIsCoverageError) {
  try {
    lambda_symn(20'011, 1, delta_table());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Coverage);
  }
}

TEST(LambdaSymn, EnvelopeAgainstClassicalVonMangoldt) {
  const auto lambda = von_mangoldt_table(20'000);
  for (const auto* table : {&delta_table(), &curve_table()})
    for (unsigned n = 1; n <= 10; ++n)
      for (std::uint64_t j = 1; j <= 20'000; ++j)
        ASSERT_LE(std::fabs(lambda_symn(j, n, *table)), (n + 1) * lambda[j]) << j << " " << n;
}

TEST(PsiSymn, Examples) {
  EXPECT_EQ(psi_symn(1.9, 1, delta_table()), 0.0);
  const double expected =
      two_cos_delta(-24, 2) * std::log(2.0) + two_cos_delta(252, 3) * std::log(3.0);
  EXPECT_NEAR(psi_symn(3, 1, delta_table()), expected, 1e-14);
  for (unsigned n = 1; n <= 6; ++n)
    EXPECT_DOUBLE_EQ(psi_symn(2, n, delta_table()), lambda_symn(2, n, delta_table()));
}

TEST(PsiWeighted, Examples) {
  EXPECT_EQ(psi_weighted(1, 1, delta_table()), 0.0);
  EXPECT_NEAR(psi_weighted(2, 1, delta_table()), two_cos_delta(-24, 2), 1e-15);
  EXPECT_NEAR(psi_weighted(2, 1, delta_table()), -0.530330, 1e-6);
  EXPECT_NEAR(psi_weighted(2, 2, delta_table()), -0.71875, 1e-15);
}

TEST(PsiWeighted, AbelSummationIdentity) {
  for (const auto* table : {&delta_table(), &curve_table()})
    for (unsigned n : {1u, 2u, 5u})
      for (double x : {10.0, 257.5, 1000.0, 10'000.0})
        EXPECT_NEAR(psi_weighted(x, n, *table), abel_weighted(x, n, *table),
                    1e-6 * (n + 1) * std::sqrt(x))
            << n << " " << x;
}

TEST(PhiSum, Examples) {
  EXPECT_EQ(phi_sum(1, 3, curve_table()), 0.0);
  const double expected = -2 / std::sqrt(2.0) - 1 / std::sqrt(3.0) + 1 / std::sqrt(5.0) -
                          2 / std::sqrt(7.0);
  EXPECT_NEAR(phi_sum(10, 1, curve_table()), expected, 1e-14);
  EXPECT_NEAR(phi_sum(10, 1, curve_table()), -2.300279, 1e-6);
  for (unsigned n = 1; n <= 8; ++n)
    EXPECT_DOUBLE_EQ(phi_sum(2, n, curve_table()),
                     chebyshev_U(n, std::cos(curve_table().find(2)->theta)));
}

TEST(PhiSum, CoverageError) {
  EXPECT_THROW(phi_sum(30'000, 1, curve_table()), Error);
}

TEST(CorrectionBound, DefinitionAndInequality) {
  EXPECT_DOUBLE_EQ(correction_bound(10, 1, 11), 2.0 * (3 + 1));  // 4, 8, 9 and p = 11
  for (const auto* table : {&delta_table(), &curve_table()})
    for (unsigned n = 1; n <= 10; ++n)
      for (double x : {2.0, 30.0, 100.0, 1000.0, 20'000.0}) {
        const auto r = sym_power_report(x, n, *table);
        EXPECT_TRUE(r.within_correction()) << n << " " << x;
        EXPECT_LE(std::fabs(r.phi - r.psi_weighted), r.correction_bound);
      }
}

TEST(SymPowerReport, CsvHeader) {
  std::ostringstream out;
  const std::vector<SymPowerSumReport> reports{sym_power_report(10, 1, curve_table())};
  write_report_csv(reports, out);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "n,x,phi,psi,psi_weighted,correction_bound");
}
