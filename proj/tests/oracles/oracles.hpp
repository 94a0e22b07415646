#pragma once

// Slow, independent reference computations used only by tests.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "satotate/coefficients.hpp"

namespace oracle {

/// tau(1..M) from q * prod_{n<=M} (1 - q^n)^24 by repeated truncated
/// multiplication.
std::vector<satotate::Integer> tau_direct(std::size_t M);

/// p + 1 - #E(F_p), counting every (x, y) in F_p^2 plus infinity.
std::int64_t ap_brute(const satotate::WeierstrassCurve& curve, std::uint64_t p);

/// Primes by trial division.
bool is_prime_trial(std::uint64_t n);
std::vector<std::uint64_t> primes_trial(std::uint64_t limit);

/// Classical von Mangoldt Lambda(j) by trial factorization.
double von_mangoldt(std::uint64_t j);

/// max over endpoint pairs u <= v in {0, pi} U {theta} of
/// |#{u <= theta <= v}/m - mu_ST([u, v])|, counted directly.
double discrepancy_brute(std::span<const double> thetas);

/// Sato-Tate measure of [alpha, beta] by adaptive Gauss-Kronrod quadrature.
double st_measure_quadrature(double alpha, double beta);

/// U_n(cos theta) = sin((n+1) theta) / sin theta, with the limit at 0 and pi.
double chebyshev_U_trig(unsigned n, double theta);

/// Integral over [0, pi] of f(theta) (2/pi) sin^2 theta d theta by 30-point
/// Gauss-Legendre panels no wider than `max_panel`, split at `breaks` (points
/// where f is not smooth).
double integrate_st(const std::function<double(double)>& f, std::vector<double> breaks = {},
                    double max_panel = 0.2);

/// Angles in [0, pi] where the symmetrized kernel changes polynomial piece.
std::vector<double> kernel_breaks(double a, double b, double delta, unsigned R);

/// The smoothing kernel g: indicator of [a, b] (mod 1) convolved with R
/// uniform densities of width delta/R, evaluated through the Irwin-Hall
/// distribution function in extended precision.
double kernel_direct(double a, double b, double delta, unsigned R, double y);

/// g(theta / 2 pi) + g(-theta / 2 pi).
double symmetrized_direct(double a, double b, double delta, unsigned R, double theta);

/// -sum_{gamma <= T} 2 Re(x^rho / rho) in complex long double arithmetic.
double zero_sum_complex(double x, double T, std::span<const double> ordinates);

}  // namespace oracle
