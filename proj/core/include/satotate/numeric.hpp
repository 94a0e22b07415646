#pragma once

#include <cmath>
#include <string>

namespace satotate {

/// Neumaier's variant of Kahan summation. Adding terms in a fixed order
/// gives bit-identical results run to run.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double term) noexcept {
    const double t = sum_ + term;
    if (std::fabs(sum_) >= std::fabs(term))
      compensation_ += (sum_ - t) + term;
    else
      compensation_ += (term - t) + sum_;
    sum_ = t;
    return *this;
  }

  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Shortest-safe textual form: 17 significant digits, enough to round-trip
/// any double.
std::string format_double(double value);

}  // namespace satotate
