#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "satotate/coefficients.hpp"
#include "satotate/error.hpp"
#include "satotate/primes.hpp"

using namespace satotate;
namespace fs = std::filesystem;

namespace {

const WeierstrassCurve k11a1{0, -1, 1, -10, -20};
const WeierstrassCurve k37a1{0, 0, 1, -1, 0};
const WeierstrassCurve k14a1{1, 0, 1, 4, -6};

NewformSpec curve_11a1() { return NewformSpec::elliptic_curve(k11a1, 11, "11a1"); }

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("satotate_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(ApElliptic, SmallPrimesOf11a1) {
  EXPECT_EQ(ap_elliptic(k11a1, 2), -2);
  EXPECT_EQ(ap_elliptic(k11a1, 3), -1);
  EXPECT_EQ(ap_elliptic(k11a1, 5), 1);
  EXPECT_EQ(ap_elliptic(k11a1, 7), -2);
}

TEST(ApElliptic, MatchesExhaustivePointCount) {
  for (const auto& curve : {k11a1, k37a1, k14a1})
    for (std::uint64_t p : primes_up_to(400))
      EXPECT_EQ(ap_elliptic(curve, p), oracle::ap_brute(curve, p)) << "p=" << p;
}

TEST(ApElliptic, RejectsComposite) {
  try {
    ap_elliptic(k11a1, 9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Input);
  }
  EXPECT_THROW(ap_elliptic_fast(k11a1, 1), Error);
}

TEST(ApElliptic, BadReduction) {
  EXPECT_TRUE(has_bad_reduction(k11a1, 11));
  EXPECT_FALSE(has_bad_reduction(k11a1, 13));
  EXPECT_TRUE(has_bad_reduction(k37a1, 37));
  EXPECT_TRUE(has_bad_reduction(k14a1, 2));
  EXPECT_TRUE(has_bad_reduction(k14a1, 7));
}

TEST(ApEllipticFast, AgreesWithNaiveCount) {
  for (std::uint64_t p : {2ull, 3ull, 11ull, 229ull, 233ull, 1009ull, 10007ull, 100'003ull})
    for (const auto& curve : {k11a1, k37a1, k14a1})
      EXPECT_EQ(ap_elliptic_fast(curve, p), ap_elliptic(curve, p)) << "p=" << p;
}

TEST(ApEllipticFast, AgreesOnPrimeRangeForSeveralCurves) {
  const std::vector<WeierstrassCurve> curves{k37a1, k14a1, {0, 1, 1, -2, 0}, {1, -1, 0, -4, 4}};
  for (const auto& curve : curves)
    for (std::uint64_t p : primes_up_to(3000))
      if (p > 229) ASSERT_EQ(ap_elliptic_fast(curve, p), ap_elliptic(curve, p)) << "p=" << p;
}

TEST(TauTable, SmallValues) {
  EXPECT_EQ(tau_table(1), std::vector<Integer>{1});
  EXPECT_EQ(tau_table(3), (std::vector<Integer>{1, -24, 252}));
  EXPECT_EQ(tau_table(6), (std::vector<Integer>{1, -24, 252, -1472, 4830, -6048}));
}

TEST(TauTable, MatchesDirectProduct) {
  const auto fast = tau_table(600);
  const auto direct = oracle::tau_direct(600);
  ASSERT_EQ(fast.size(), direct.size());
  for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_EQ(fast[i], direct[i]) << "n=" << i + 1;
}

TEST(TauTable, PrefixStable) {
  const auto big = tau_table(5000);
  for (std::size_t m : {1u, 2u, 17u, 1000u, 4096u}) {
    const auto small = tau_table(m);
    EXPECT_TRUE(std::equal(small.begin(), small.end(), big.begin())) << m;
  }
}

TEST(TauTable, HasseAtPrimes) {
  const auto tau = tau_table(20'000);
  for (std::uint64_t p : primes_up_to(20'000)) EXPECT_TRUE(satisfies_hasse(tau[p - 1], p, 12)) << p;
}

TEST(TauTable, MultiplicativeAtCoprimeIndices) {
  const auto tau = tau_table(3000);
  for (std::size_t m = 1; m < 50; ++m)
    for (std::size_t n = 1; n < 50; ++n)
      if (std::gcd(m, n) == 1) EXPECT_EQ(tau[m * n - 1], tau[m - 1] * tau[n - 1]);
}

TEST(TauTable, Errors) {
  try {
    tau_table(1000, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Resource);
  }
  EXPECT_THROW(tau_table(0), Error);
}

TEST(Hasse, ExactIntegerCheck) {
  EXPECT_TRUE(satisfies_hasse(Integer(2), 1, 2));
  EXPECT_TRUE(satisfies_hasse(Integer(-2), 1, 2));
  EXPECT_FALSE(satisfies_hasse(Integer(3), 2, 2));  // 9 > 8
  EXPECT_TRUE(satisfies_hasse(Integer(-24), 2, 12));
  EXPECT_FALSE(satisfies_hasse(Integer(1'000'000), 2, 12));
  // 2 * 3^{11/2} = 841.8...
  EXPECT_TRUE(satisfies_hasse(Integer(841), 3, 12));
  EXPECT_FALSE(satisfies_hasse(Integer(-842), 3, 12));
}

TEST(NewformSpec, Validation) {
  EXPECT_EQ(NewformSpec::eta_delta().weight(), 12);
  EXPECT_EQ(NewformSpec::eta_delta().level(), 1u);
  EXPECT_EQ(curve_11a1().weight(), 2);
  EXPECT_TRUE(curve_11a1().is_ramified(11));
  EXPECT_FALSE(curve_11a1().is_ramified(13));
  EXPECT_THROW(NewformSpec::qexp_file("f", 3, 1, "f"), Error);
  EXPECT_THROW(NewformSpec::qexp_file("f", 12, 0, "f"), Error);
  EXPECT_THROW(NewformSpec::elliptic_curve(k11a1, 11, "bad label"), Error);
}

TEST(IngestQexp, PrimeEntriesOnly) {
  std::istringstream in("# tau\n1 1\n2 -24\n3 252\n4 -1472\n5 4830\n");
  const auto table = read_qexp(in, NewformSpec::eta_delta());
  ASSERT_EQ(table.size(), 3u);
  EXPECT_EQ(*table.find(2), -24);
  EXPECT_EQ(*table.find(3), 252);
  EXPECT_EQ(*table.find(5), 4830);
  EXPECT_EQ(table.find(4), nullptr);
  EXPECT_EQ(table.x_max(), 5u);
}

TEST(IngestQexp, EmptyFileHasNoCoverage) {
  std::istringstream in("");
  const auto table = read_qexp(in, NewformSpec::eta_delta());
  EXPECT_TRUE(table.empty());
  EXPECT_FALSE(table.x_max().has_value());
}

TEST(IngestQexp, HasseViolationNamesPrime) {
  std::istringstream in("2 1000000\n");
  try {
    read_qexp(in, NewformSpec::eta_delta());
    FAIL();
  } catch (const HasseViolation& e) {
    EXPECT_EQ(e.prime(), 2u);
    EXPECT_EQ(e.kind(), ErrorKind::Data);
  }
}

TEST(IngestQexp, RamifiedPrimesSkipHasse) {
  std::istringstream in("2 -2\n11 100\n");
  const auto table = read_qexp(in, curve_11a1());
  EXPECT_EQ(table.unramified_count(), 1u);
  EXPECT_TRUE(table.is_ramified(11));
}

TEST(IngestQexp, MalformedLinesReportLineNumber) {
  for (const auto& [text, line] : std::vector<std::pair<std::string, std::size_t>>{
           {"2 -24\n3  252\n", 2},
           {"2 -24\n# ok\nthree 252\n", 3},
           {"2 -24\n3 2x\n", 2},
           {"3 252\n2 -24\n", 2},
           {"2\n", 1}}) {
    std::istringstream in(text);
    try {
      read_qexp(in, NewformSpec::eta_delta());
      FAIL() << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << text;
      EXPECT_EQ(e.kind(), ErrorKind::Parse);
    }
  }
}

TEST(Build, DeltaAndCurveTables) {
  const auto delta = build_coefficients(NewformSpec::eta_delta(), 100);
  EXPECT_EQ(delta.size(), 25u);
  EXPECT_EQ(delta.x_max(), 100u);
  EXPECT_EQ(*delta.find(97), tau_table(97).back());

  const auto curve = build_coefficients(curve_11a1(), 100);
  EXPECT_EQ(curve.size(), 25u);
  EXPECT_EQ(curve.unramified_count(), 24u);
  for (const auto& [p, a] : curve.entries()) EXPECT_EQ(a, ap_elliptic(k11a1, p));
}

TEST(Build, ExtendMatchesFullBuild) {
  BuildOptions options;
  options.fast_crossover = 500;
  auto table = build_coefficients(curve_11a1(), 1000, options);
  extend_coefficients(table, 5000, options);
  const auto full = build_coefficients(curve_11a1(), 5000, options);
  EXPECT_EQ(table.entries(), full.entries());
  EXPECT_EQ(table.x_max(), 5000u);
}

TEST(Build, ThreadCountDoesNotChangeResult) {
  BuildOptions one, four;
  one.fast_crossover = four.fast_crossover = 1000;
  four.threads = 4;
  EXPECT_EQ(build_coefficients(curve_11a1(), 20'000, one).entries(),
            build_coefficients(curve_11a1(), 20'000, four).entries());
}

TEST(Build, QexpSourceRequiresCoverage) {
  const auto dir = scratch_dir("qexp_cov");
  const auto file = dir / "tau.txt";
  {
    std::ofstream out(file);
    out << "2 -24\n3 252\n5 4830\n";
  }
  const auto spec = NewformSpec::qexp_file(file, 12, 1, "tau");
  EXPECT_EQ(build_coefficients(spec, 5).size(), 3u);
  try {
    build_coefficients(spec, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Coverage);
  }
}

TEST(Cache, RoundTripAndHit) {
  const auto dir = scratch_dir("cache");
  const auto spec = curve_11a1();
  const auto first = load_or_build(spec, 300, dir);
  EXPECT_FALSE(first.cache_hit);
  EXPECT_EQ(first.path, cache_path(dir, spec));
  const std::string bytes = slurp(first.path);
  EXPECT_EQ(bytes.substr(0, bytes.find('\n')), "# 11a1 2 11 300");

  const auto second = load_or_build(spec, 300, dir);
  EXPECT_TRUE(second.cache_hit);
  EXPECT_EQ(second.table.entries(), first.table.entries());
  EXPECT_EQ(slurp(second.path), bytes);

  const auto smaller = load_or_build(spec, 100, dir);
  EXPECT_TRUE(smaller.cache_hit);

  const auto extended = load_or_build(spec, 400, dir);
  EXPECT_FALSE(extended.cache_hit);
  EXPECT_EQ(extended.table.x_max(), 400u);
  EXPECT_EQ(extended.table.entries(), build_coefficients(spec, 400).entries());
}

TEST(Cache, HeaderMustMatchSpec) {
  std::istringstream in("# 11a1 2 11 10\n2 -2\n");
  EXPECT_THROW(read_cache(in, NewformSpec::eta_delta()), Error);
  std::istringstream bad("2 -2\n");
  EXPECT_THROW(read_cache(bad, curve_11a1()), ParseError);
}

TEST(Cache, KeyDependsOnSource) {
  const auto a = NewformSpec::elliptic_curve(k11a1, 11, "e");
  const auto b = NewformSpec::elliptic_curve(k37a1, 11, "e");
  EXPECT_NE(source_hash(a), source_hash(b));
  EXPECT_EQ(source_hash(a), source_hash(NewformSpec::elliptic_curve(k11a1, 11, "e")));
  EXPECT_NE(cache_path("c", a), cache_path("c", b));
}
