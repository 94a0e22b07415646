#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace satotate {

/// Hecke eigenvalues outgrow 64 bits quickly (tau(p) ~ p^{11/2}).
using Integer = boost::multiprecision::cpp_int;

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct WeierstrassCurve {
  std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

  friend bool operator==(const WeierstrassCurve&, const WeierstrassCurve&) = default;
};

struct EllipticCurveSource {
  WeierstrassCurve curve;
};
struct EtaDeltaSource {};
struct QExpansionFileSource {
  std::filesystem::path path;
};

using CoefficientSource =
    std::variant<EllipticCurveSource, EtaDeltaSource, QExpansionFileSource>;

/// Identifies a newform f in S_k^new(Gamma_0(N)) together with where its
/// coefficients come from.
class NewformSpec {
 public:
  /// k = 2; the conductor is declared by the caller, never derived.
  static NewformSpec elliptic_curve(const WeierstrassCurve& curve,
                                    std::uint64_t conductor, std::string label);
  /// Delta = q prod (1 - q^n)^24, weight 12, level 1.
  static NewformSpec eta_delta();
  static NewformSpec qexp_file(std::filesystem::path path, int weight,
                               std::uint64_t level, std::string label);

  int weight() const noexcept { return weight_; }
  std::uint64_t level() const noexcept { return level_; }
  const std::string& label() const noexcept { return label_; }
  const CoefficientSource& source() const noexcept { return source_; }

  bool is_ramified(std::uint64_t p) const noexcept { return level_ % p == 0; }

 private:
  NewformSpec(int weight, std::uint64_t level, std::string label,
              CoefficientSource source);

  int weight_;
  std::uint64_t level_;
  std::string label_;
  CoefficientSource source_;
};

/// a(p) for primes p <= x_max. Ramified primes (p | N) are stored too; the
/// spec's level decides which entries are flagged.
class CoefficientTable {
 public:
  explicit CoefficientTable(NewformSpec spec) : spec_(std::move(spec)) {}

  const NewformSpec& spec() const noexcept { return spec_; }
  const std::map<std::uint64_t, Integer>& entries() const noexcept {
    return entries_;
  }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Bound such that every prime p <= x_max has an entry; empty when the
  /// table holds no data.
  std::optional<std::uint64_t> x_max() const noexcept { return x_max_; }
  void set_x_max(std::optional<std::uint64_t> x_max) noexcept { x_max_ = x_max; }

  const Integer* find(std::uint64_t p) const;
  bool is_ramified(std::uint64_t p) const noexcept { return spec_.is_ramified(p); }

  /// Inserts a(p); checks the Hasse bound when p does not divide N.
  void insert(std::uint64_t p, Integer a);

  std::size_t unramified_count() const;

 private:
  NewformSpec spec_;
  std::map<std::uint64_t, Integer> entries_;
  std::optional<std::uint64_t> x_max_;
};

/// Exact integer form of |a| <= 2 p^{(k-1)/2}, i.e. a^2 <= 4 p^{k-1}.
bool satisfies_hasse(const Integer& a, std::uint64_t p, int weight);

/// p + 1 - #E(F_p), counting projective points of the reduction (singular or
/// not). Throws ErrorKind::Input when p is not prime.
std::int64_t ap_elliptic(const WeierstrassCurve& curve, std::uint64_t p);

/// Same value as ap_elliptic, via baby-step/giant-step on E and its quadratic
/// twist. Falls back to the naive count for p <= 229, bad reduction, or when
/// the group order is not pinned down uniquely in the Hasse interval.
std::int64_t ap_elliptic_fast(const WeierstrassCurve& curve, std::uint64_t p);

/// True when the curve's discriminant vanishes mod p.
bool has_bad_reduction(const WeierstrassCurve& curve, std::uint64_t p);

inline constexpr std::size_t kTauDefaultMaxTerms = std::size_t{1} << 22;

/// tau(1..M): coefficients of Delta = q prod (1 - q^n)^24, exact.
/// Throws ErrorKind::Resource when M exceeds max_terms.
std::vector<Integer> tau_table(std::size_t M,
                               std::size_t max_terms = kTauDefaultMaxTerms);

/// Reads the "n a(n)" q-expansion format, keeping prime indices only.
CoefficientTable read_qexp(std::istream& in, const NewformSpec& spec);
CoefficientTable ingest_qexp(const std::filesystem::path& path,
                             const NewformSpec& spec);

struct BuildOptions {
  /// Primes above this use ap_elliptic_fast.
  std::uint64_t fast_crossover = 10'000;
  unsigned threads = 1;
};

/// Coefficient table covering every prime p <= x_max.
CoefficientTable build_coefficients(const NewformSpec& spec, std::uint64_t x_max,
                                    const BuildOptions& options = {});

/// Adds entries for primes in (table.x_max(), x_max]. Elliptic sources only
/// compute the new primes; other sources are regenerated.
void extend_coefficients(CoefficientTable& table, std::uint64_t x_max,
                         const BuildOptions& options = {});

// Cache files: "# label k N x_max" followed by "p a(p)" lines.

std::string source_hash(const NewformSpec& spec);
std::filesystem::path cache_path(const std::filesystem::path& cache_dir,
                                 const NewformSpec& spec);
void write_cache(const CoefficientTable& table, std::ostream& out);
void write_cache(const CoefficientTable& table, const std::filesystem::path& path);
CoefficientTable read_cache(std::istream& in, const NewformSpec& spec);
CoefficientTable read_cache(const std::filesystem::path& path, const NewformSpec& spec);

struct CacheResult {
  CoefficientTable table;
  bool cache_hit = false;
  std::filesystem::path path;
};

/// Uses the cache when it covers x_max; otherwise builds or extends the
/// table and rewrites the cache file.
CacheResult load_or_build(const NewformSpec& spec, std::uint64_t x_max,
                          const std::filesystem::path& cache_dir,
                          const BuildOptions& options = {});

}  // namespace satotate
