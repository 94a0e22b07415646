#include "satotate/smoothing.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>

#include "satotate/error.hpp"
#include "satotate/numeric.hpp"

namespace satotate {

namespace {

constexpr double kPi = std::numbers::pi;

double log_kernel_tail(double delta, unsigned R, double M) noexcept {
  const double r = static_cast<double>(R);
  return std::log(2.0 / (kPi * r)) + r * (std::log(r / (kPi * delta)) - std::log(M));
}

std::size_t truncation_length(double delta, unsigned R, double tolerance) {
  // smallest M >= 1 with 2 * tail(M) <= tolerance
  const double target = std::log(0.5 * tolerance);
  const double r = static_cast<double>(R);
  const double estimate =
      (r / (kPi * delta)) * std::exp((std::log(2.0 / (kPi * r)) - target) / r);
  if (!(estimate < static_cast<double>(kMaxKernelTerms)))
    throw Error(ErrorKind::Resource, "smoothing kernel needs more than " +
                                         std::to_string(kMaxKernelTerms) + " terms");
  auto M = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(estimate)));
  while (M > 1 && log_kernel_tail(delta, R, static_cast<double>(M - 1)) <= target) --M;
  while (log_kernel_tail(delta, R, static_cast<double>(M)) > target) ++M;
  return M;
}

}  // namespace

double kernel_tail_bound(double delta, unsigned R, std::size_t M) noexcept {
  if (M == 0) return INFINITY;
  return std::exp(log_kernel_tail(delta, R, static_cast<double>(M)));
}

SmoothingKernel::SmoothingKernel(double a, double b, double delta, unsigned R,
                                 double tail_tolerance)
    : a_(a), b_(b), delta_(delta), R_(R) {
  if (!(delta > 0.0 && delta < 0.5))
    throw Error(ErrorKind::Domain, "smoothing kernel needs 0 < delta < 1/2");
  if (!(delta <= b - a && b - a <= 1.0 - delta))
    throw Error(ErrorKind::Domain, "smoothing kernel needs delta <= b - a <= 1 - delta");
  if (R == 0) throw Error(ErrorKind::Domain, "smoothing kernel needs R >= 1");
  if (!(tail_tolerance > 0.0)) throw Error(ErrorKind::Domain, "tail tolerance must be positive");

  const std::size_t M = truncation_length(delta, R, tail_tolerance);
  cos_.resize(M);
  sin_.resize(M);
  for (std::size_t m = 1; m <= M; ++m) {
    const double md = static_cast<double>(m);
    // 1_[a,b]: a_m = 2 cos(pi m (a+b)) sin(pi m (b-a)) / (pi m),
    //          b_m = 2 sin(pi m (a+b)) sin(pi m (b-a)) / (pi m)
    // Built as harmonic * |trig| * |sinc|^R so that rounding is monotone
    // against envelope(), which uses the same factors with |trig| = 1.
    const double s = harmonic_bound(md) * std::sin(kPi * md * (b - a));
    const double arg = damping_arg(md);
    const double sn = std::sin(arg);
    const double damp = std::pow(std::fabs(sn) / arg, static_cast<double>(R));
    const double sign = (sn < 0.0 && R % 2 == 1) ? -1.0 : 1.0;
    cos_[m - 1] = sign * ((s * std::cos(kPi * md * (a + b))) * damp);
    sin_[m - 1] = sign * ((s * std::sin(kPi * md * (a + b))) * damp);
  }
}

double SmoothingKernel::cos_coeff(std::size_t m) const noexcept {
  return (m >= 1 && m <= cos_.size()) ? cos_[m - 1] : 0.0;
}

double SmoothingKernel::sin_coeff(std::size_t m) const noexcept {
  return (m >= 1 && m <= sin_.size()) ? sin_[m - 1] : 0.0;
}

double SmoothingKernel::envelope(std::size_t m) const noexcept {
  const double md = static_cast<double>(m);
  const double harmonic = harmonic_bound(md);
  const double decay =
      harmonic * std::pow(1.0 / damping_arg(md), static_cast<double>(R_));
  return std::min({2.0 * (b_ - a_), harmonic, decay});
}

double SmoothingKernel::damping_arg(double m) const noexcept {
  return kPi * m * (delta_ / static_cast<double>(R_));
}

double SmoothingKernel::tail_bound() const noexcept {
  return kernel_tail_bound(delta_, R_, M());
}

double SmoothingKernel::evaluate(double y) const noexcept {
  const std::complex<double> step = std::polar(1.0, 2.0 * kPi * y);
  std::complex<double> z = step;
  CompensatedSum sum;
  sum += b_ - a_;
  for (std::size_t m = 0; m < cos_.size(); ++m) {
    sum += cos_[m] * z.real() + sin_[m] * z.imag();
    z *= step;
  }
  return sum.value();
}

SymmetrizedSeries::SymmetrizedSeries(SmoothingKernel kernel) : kernel_(std::move(kernel)) {}

double SymmetrizedSeries::cosine_coeff(std::size_t n) const noexcept {
  return n == 0 ? 2.0 * kernel_.constant() : kernel_.cos_coeff(n);
}

double SymmetrizedSeries::evaluate(double theta) const noexcept {
  // Clenshaw for sum d_n T_n(x), d_0 = A_0, d_n = 2 A_n.
  const double x = std::cos(theta);
  double b1 = 0.0, b2 = 0.0;
  const auto coeffs = kernel_.cos_coeffs();
  for (std::size_t n = coeffs.size(); n >= 1; --n) {
    const double b0 = 2.0 * coeffs[n - 1] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  const double b0 = cosine_coeff(0) + 2.0 * x * b1 - b2;
  return b0 - x * b1;
}

std::vector<double> chebyshev_coeffs(const SymmetrizedSeries& series) {
  const std::size_t M = series.M();
  std::vector<double> c(M + 1);
  for (std::size_t n = 0; n <= M; ++n)
    c[n] = series.cosine_coeff(n) - series.cosine_coeff(n + 2);
  return c;
}

double evaluate_chebyshev(std::span<const double> coeffs, double theta) noexcept {
  const double x = std::cos(theta);
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t n = coeffs.size(); n-- > 0;) {
    const double b0 = coeffs[n] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return b1;
}

MajorantPair build_majorants(const Interval& interval, double delta, unsigned R,
                             double tail_tolerance) {
  const double width = interval.length();
  if (!(width > 2.0 * kPi * delta))
    throw Error(ErrorKind::Domain,
                "interval too narrow for delta: need beta - alpha > 2 pi delta");
  if (width < 4.0 * kPi * delta)
    throw Error(ErrorKind::Domain,
                "minorant window shorter than delta: need beta - alpha >= 4 pi delta");
  const double lo = interval.alpha() / (2.0 * kPi);
  const double hi = interval.beta() / (2.0 * kPi);
  SymmetrizedSeries plus(SmoothingKernel(lo - delta / 2, hi + delta / 2, delta, R, tail_tolerance));
  SymmetrizedSeries minus(SmoothingKernel(lo + delta / 2, hi - delta / 2, delta, R, tail_tolerance));
  auto cheb_plus = chebyshev_coeffs(plus);
  auto cheb_minus = chebyshev_coeffs(minus);
  return MajorantPair{interval,         delta,
                      R,                std::move(plus),
                      std::move(minus), std::move(cheb_plus),
                      std::move(cheb_minus)};
}

void write_kernel_csv(const SmoothingKernel& kernel, std::ostream& out) {
  out << "# a=" << format_double(kernel.a()) << ",b=" << format_double(kernel.b())
      << ",delta=" << format_double(kernel.delta()) << ",R=" << kernel.R()
      << ",M=" << kernel.M() << '\n';
  out << "m,a_m,b_m\n";
  for (std::size_t m = 1; m <= kernel.M(); ++m)
    out << m << ',' << format_double(kernel.cos_coeff(m)) << ','
        << format_double(kernel.sin_coeff(m)) << '\n';
}

}  // namespace satotate
