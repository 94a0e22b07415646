#include "satotate/explicit_formula.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "satotate/error.hpp"
#include "satotate/numeric.hpp"
#include "satotate/primes.hpp"

namespace satotate {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_ordinates(const std::vector<double>& ordinates) {
  double previous = 0.0;
  for (std::size_t i = 0; i < ordinates.size(); ++i) {
    if (!(ordinates[i] > previous))
      throw Error(ErrorKind::Domain, "zero ordinates must be positive and strictly ascending (entry " +
                                         std::to_string(i + 1) + ")");
    previous = ordinates[i];
  }
}

}  // namespace

ZeroList::ZeroList(std::vector<double> ordinates, ZeroSource source)
    : ordinates_(std::move(ordinates)), source_(std::move(source)) {
  validate_ordinates(ordinates_);
}

ZeroList ZeroList::prefix(std::size_t count) const {
  ZeroList out;
  out.ordinates_.assign(ordinates_.begin(),
                        ordinates_.begin() + static_cast<std::ptrdiff_t>(std::min(count, size())));
  out.source_ = source_;
  return out;
}

ZeroList read_zeros(std::istream& in) {
  std::vector<double> ordinates;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    double gamma = 0.0;
    try {
      std::size_t used = 0;
      gamma = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParseError(line_no, "invalid ordinate '" + token + "'");
    }
    if (!(gamma > 0.0)) throw ParseError(line_no, "ordinate must be positive");
    if (!ordinates.empty() && !(gamma > ordinates.back()))
      throw ParseError(line_no, "ordinates must be strictly ascending");
    ordinates.push_back(gamma);
  }
  return ZeroList(std::move(ordinates), FileZeroSource{});
}

ZeroList ingest_zeros(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Data, "cannot open zero list " + path.string());
  ZeroList zeros = read_zeros(in);
  return ZeroList(zeros.ordinates(), FileZeroSource{path});
}

double truncated_zero_sum(double x, double T, const ZeroList& zeros) {
  if (!(x > 1.0)) throw Error(ErrorKind::Domain, "truncated zero sum needs x > 1");
  if (!(T > 0.0)) throw Error(ErrorKind::Domain, "truncated zero sum needs T > 0");
  const double log_x = std::log(x);
  const double root_x = std::sqrt(x);
  CompensatedSum sum;
  // 2 Re(x^rho / rho) = 2 sqrt(x) (cos(g L)/2 + g sin(g L)) / (1/4 + g^2)
  for (double gamma : zeros.ordinates()) {
    if (gamma > T) break;
    const double phase = gamma * log_x;
    sum += 2.0 * root_x * (0.5 * std::cos(phase) + gamma * std::sin(phase)) /
           (0.25 + gamma * gamma);
  }
  return -sum.value();
}

ZetaComparison zeta_psi_compare(double x, double T, const ZeroList& zeros) {
  if (!(x >= 2.0)) throw Error(ErrorKind::Domain, "zeta comparison needs x >= 2");
  ZetaComparison cmp;
  cmp.x = x;
  cmp.T = T;
  cmp.psi_direct = chebyshev_psi(x);
  cmp.psi_explicit = x + truncated_zero_sum(x, T, zeros) - std::log(2.0 * kPi) -
                     0.5 * std::log1p(-1.0 / (x * x));
  cmp.residual = cmp.psi_direct - cmp.psi_explicit;
  return cmp;
}

void write_comparison_json(const ZetaComparison& cmp, std::ostream& out) {
  out << "{\"x\": " << format_double(cmp.x) << ", \"T\": " << format_double(cmp.T)
      << ", \"psi_direct\": " << format_double(cmp.psi_direct)
      << ", \"psi_explicit\": " << format_double(cmp.psi_explicit)
      << ", \"residual\": " << format_double(cmp.residual) << "}\n";
}

ZeroList synthesize_zeros(unsigned n, const BoundParams& params, double T, std::uint64_t seed,
                          const SynthesisOptions& options) {
  if (!(T > 1.0)) throw Error(ErrorKind::Domain, "zero synthesis needs T > 1");
  if (!(options.jitter >= 0.0 && options.jitter < 1.0))
    throw Error(ErrorKind::Domain, "jitter must lie in [0, 1)");

  // Positive ordinates follow half the main term; it increases from its root
  // t0 on, so each target level is met at exactly one t.
  const auto half_main = [&](double t) { return 0.5 * zero_count_main_term(t, n, params); };
  const double d = static_cast<double>(n) + 1.0;
  const double log_q =
      log_conductor(n, params.level, params.squarefree, params.constants.conductor_c3);
  const double t0 = 2.0 * kPi * std::numbers::e * std::exp(-log_q / d);
  const double start = std::max(1.0, t0);
  const double start_level = std::max(0.0, half_main(start));
  const double end_level = half_main(T);

  std::mt19937_64 rng(seed);
  std::vector<double> ordinates;
  for (std::size_t i = 1;; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    const double level = static_cast<double>(i) - 0.5 + options.jitter * u;
    if (level > end_level) break;
    double t;
    if (level <= start_level) {
      // below t = 1 the main term is not defined; spread linearly on (0, 1]
      t = start * level / start_level;
    } else {
      double lo = start, hi = T;
      for (int iter = 0; iter < 200 && hi - lo > 1e-13 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (half_main(mid) < level ? lo : hi) = mid;
      }
      t = 0.5 * (lo + hi);
    }
    if (!ordinates.empty() && !(t > ordinates.back())) continue;
    ordinates.push_back(t);
  }

  ZeroList zeros(std::move(ordinates), SyntheticZeroSource{seed, n, T});
  const ZeroAudit audit = audit_zeros(zeros, n, params, T);
  if (!audit.within_window_bound)
    throw Error(ErrorKind::Domain,
                "zero density exceeds the zero-window bound; raise the window constant");
  return zeros;
}

ZeroAudit audit_zeros(const ZeroList& zeros, unsigned n, const BoundParams& params, double T) {
  ZeroAudit audit;
  const auto& g = zeros.ordinates();
  std::size_t below = 0;  // #{gamma <= t}
  const auto last = static_cast<std::uint64_t>(std::floor(T));
  for (std::uint64_t ti = 1; ti <= last; ++ti) {
    const double t = static_cast<double>(ti);
    while (below < g.size() && g[below] <= t) ++below;
    std::size_t upto = below;  // #{gamma <= t + 1}
    while (upto < g.size() && g[upto] <= t + 1.0) ++upto;

    const double main = std::max(0.0, zero_count_main_term(t, n, params));
    const double bound = zero_window_bound(t, n, params);
    audit.max_count_deviation =
        std::max(audit.max_count_deviation, std::fabs(2.0 * static_cast<double>(below) - main));
    const double window = 2.0 * static_cast<double>(upto - below);
    audit.max_window_excess = std::max(audit.max_window_excess, window - bound);
    if (window > bound || std::fabs(2.0 * static_cast<double>(below) - main) > bound)
      audit.within_window_bound = false;
  }
  return audit;
}

BoundPathReport symn_psi_bound_check(double x, unsigned n, const ZeroList& zeros,
                                     const BoundParams& params) {
  if (!(x > 1.0)) throw Error(ErrorKind::Domain, "bound check needs x > 1");
  BoundPathReport report;
  report.x = x;
  report.n = n;
  const LogScaleReal x_scaled = LogScaleReal::from_value(x);
  const double log_T = balanced_log_T(x_scaled);
  report.T = std::exp(log_T);

  CompensatedSum sum;
  for (double gamma : zeros.ordinates()) {
    if (gamma > report.T) break;
    const double beta = 1.0 - zero_free_width(n, gamma, params);
    sum += 2.0 * std::pow(x, beta) / std::hypot(beta, gamma);
    ++report.zeros_used;
  }
  report.zero_sum = sum.value();

  // |x^rho| <= x^{1 - w(T)} for gamma <= T; 1/|rho| <= 1/j on (j, j+1].
  CompensatedSum windows;
  const auto last = static_cast<std::uint64_t>(std::floor(report.T));
  for (std::uint64_t j = 1; j <= last; ++j)
    windows += zero_window_bound(static_cast<double>(j), n, params) / static_cast<double>(j);
  report.chain_bound = std::pow(x, 1.0 - zero_free_width(n, report.T, params)) * windows.value();

  report.phi_bound = phi_bound(n, x_scaled, params).value();
  report.zero_sum_within_chain = report.zero_sum <= report.chain_bound;
  report.within_phi_bound = report.zero_sum <= report.phi_bound;
  return report;
}

}  // namespace satotate
