#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>

#include "satotate/sato_tate.hpp"

namespace satotate {

// Dirichlet coefficients of -L'/L(Sym^n f, s) and their summatory functions.
// At ramified primes (p | N) the coefficients are taken to be zero; the
// Satake parameters there are not determined by a(p), only bounded.

/// U_n(cos(m theta_p)) log p for j = p^m, p unramified; zero otherwise.
double lambda_symn(std::uint64_t j, unsigned n, const AngleTable& table);

/// psi_{Sym^n f}(x) = sum_{j <= x} Lambda_{Sym^n f}(j).
double psi_symn(double x, unsigned n, const AngleTable& table);

/// Psi_{Sym^n f}(x) = sum_{j <= x} Lambda_{Sym^n f}(j) / log j.
double psi_weighted(double x, unsigned n, const AngleTable& table);

/// Phi_{Sym^n f}(x) = sum_{p <= x} U_n(cos theta_p) over unramified p.
double phi_sum(double x, unsigned n, const AngleTable& table);

/// (n+1) * (#{p^m <= x : m >= 2} + #{p | N}).
double correction_bound(double x, unsigned n, std::uint64_t level);

struct SymPowerSumReport {
  unsigned n = 0;
  double x = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  double psi_weighted = 0.0;
  double correction_bound = 0.0;

  bool within_correction() const noexcept;
};

SymPowerSumReport sym_power_report(double x, unsigned n, const AngleTable& table);

/// CSV "n,x,phi,psi,psi_weighted,correction_bound".
void write_report_csv(std::span<const SymPowerSumReport> reports, std::ostream& out);

}  // namespace satotate
