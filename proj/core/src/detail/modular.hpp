#pragma once

#include <cstdint>

namespace satotate::detail {

__extension__ typedef unsigned __int128 uint128;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  const std::uint64_t s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

/// Inverse of a modulo prime-or-coprime m; a must be nonzero mod m.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) noexcept {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

/// Reduces a signed integer into [0, m).
inline std::uint64_t reduce(std::int64_t v, std::uint64_t m) noexcept {
  const std::int64_t mm = static_cast<std::int64_t>(m);
  std::int64_t r = v % mm;
  if (r < 0) r += mm;
  return static_cast<std::uint64_t>(r);
}

/// Legendre symbol (a/p) for odd prime p via Euler's criterion.
inline int legendre(std::uint64_t a, std::uint64_t p) noexcept {
  a %= p;
  if (a == 0) return 0;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) noexcept;

}  // namespace satotate::detail
