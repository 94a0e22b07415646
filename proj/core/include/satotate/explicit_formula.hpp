#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <variant>
#include <vector>

#include "satotate/bounds.hpp"

namespace satotate {

struct FileZeroSource {
  std::filesystem::path path;
};
struct SyntheticZeroSource {
  std::uint64_t seed = 0;
  unsigned n = 0;
  double T = 0.0;
};
using ZeroSource = std::variant<FileZeroSource, SyntheticZeroSource>;

/// Ascending positive ordinates gamma; each stands for the conjugate pair
/// 1/2 +- i gamma.
class ZeroList {
 public:
  ZeroList() = default;
  /// Throws ErrorKind::Domain when ordinates are not strictly ascending and
  /// positive.
  ZeroList(std::vector<double> ordinates, ZeroSource source);

  const std::vector<double>& ordinates() const noexcept { return ordinates_; }
  const ZeroSource& source() const noexcept { return source_; }
  std::size_t size() const noexcept { return ordinates_.size(); }
  bool empty() const noexcept { return ordinates_.empty(); }
  double max_ordinate() const noexcept {
    return ordinates_.empty() ? 0.0 : ordinates_.back();
  }

  ZeroList prefix(std::size_t count) const;

 private:
  std::vector<double> ordinates_;
  ZeroSource source_;
};

ZeroList read_zeros(std::istream& in);
ZeroList ingest_zeros(const std::filesystem::path& path);

/// -sum_{gamma <= T} 2 Re(x^rho / rho), rho = 1/2 + i gamma.
/// Throws ErrorKind::Domain unless x > 1 and T > 0.
double truncated_zero_sum(double x, double T, const ZeroList& zeros);

struct ZetaComparison {
  double x = 0.0;
  double T = 0.0;
  double psi_direct = 0.0;
  double psi_explicit = 0.0;
  double residual = 0.0;  // psi_direct - psi_explicit
};

/// Riemann zeta sandbox: psi(x) against
///   x + truncated_zero_sum - log(2 pi) - log(1 - x^{-2}) / 2.
ZetaComparison zeta_psi_compare(double x, double T, const ZeroList& zeros);

/// JSON {x, T, psi_direct, psi_explicit, residual}.
void write_comparison_json(const ZetaComparison& cmp, std::ostream& out);

struct SynthesisOptions {
  /// Ordinate i sits where the positive-ordinate count main/2 reaches
  /// i - 1/2 + jitter * u, u uniform in (-1/2, 1/2).
  double jitter = 0.5;
};

/// Deterministic pseudo-zeros whose pair count tracks zero_count_main_term.
/// Throws ErrorKind::Domain when T <= 1 or the main-term density at T
/// exceeds the zero-window bound.
ZeroList synthesize_zeros(unsigned n, const BoundParams& params, double T,
                          std::uint64_t seed, const SynthesisOptions& options = {});

struct ZeroAudit {
  double max_count_deviation = 0.0;  // max |2 #{gamma <= t} - main(t)|
  double max_window_excess = 0.0;    // max (2 #{t < gamma <= t+1} - bound(t))
  bool within_window_bound = true;
};

/// Scans unit windows [t, t+1], t = 1, 2, ..., up to T.
ZeroAudit audit_zeros(const ZeroList& zeros, unsigned n, const BoundParams& params,
                      double T);

struct BoundPathReport {
  double x = 0.0;
  double T = 0.0;
  unsigned n = 0;
  std::size_t zeros_used = 0;
  double zero_sum = 0.0;     // sum over gamma <= T of 2 |x^beta / rho|
  double chain_bound = 0.0;  // x^{1 - w(T)} sum_{j <= T} window(j) / j
  double phi_bound = 0.0;
  bool zero_sum_within_chain = false;
  bool within_phi_bound = false;
};

/// Worst-case zeros beta = 1 - zero_free_width(n, gamma) along the estimate
/// for the sum over zeros, with T = exp(sqrt(log x)).
BoundPathReport symn_psi_bound_check(double x, unsigned n, const ZeroList& zeros,
                                     const BoundParams& params);

}  // namespace satotate
