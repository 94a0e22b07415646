#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace satotate {

/// All primes p <= limit in ascending order (segmented sieve of Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Returns (p, m) when j = p^m with m >= 1, otherwise nothing.
std::optional<PrimePower> as_prime_power(std::uint64_t j);

struct PrimePowerTerm {
  std::uint64_t value = 0;  // p^m
  std::uint64_t prime = 0;
  unsigned exponent = 0;
};

/// Every prime power p^m <= limit (m >= 1), ascending in p^m.
std::vector<PrimePowerTerm> prime_powers_up_to(std::uint64_t limit);

/// Number of prime powers p^m <= limit with m >= 2.
std::uint64_t count_higher_prime_powers(std::uint64_t limit);

/// Classical von Mangoldt function Lambda(j) for 0 <= j <= limit, by sieve.
/// Entries 0 and 1 are zero.
std::vector<double> von_mangoldt_table(std::uint64_t limit);

/// psi(x) = sum_{j <= x} Lambda(j).
double chebyshev_psi(double x);

/// Distinct prime divisors of n, ascending.
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

bool is_squarefree(std::uint64_t n);

}  // namespace satotate
