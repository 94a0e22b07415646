#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace satotate::detail {

/// Number-theoretic transform over Z/Mod for Mod = c 2^k + 1 with primitive
/// root Root. The modulus is a template argument so the reductions compile
/// to multiply-shift sequences.
template <std::uint32_t Mod, std::uint32_t Root>
struct Ntt {
  static constexpr std::uint32_t modulus = Mod;

  static constexpr std::uint32_t two_adicity() {
    std::uint32_t k = 0;
    for (std::uint32_t m = Mod - 1; (m & 1) == 0; m >>= 1) ++k;
    return k;
  }

  static std::uint32_t mul(std::uint32_t a, std::uint32_t b) noexcept {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % Mod);
  }

  static std::uint32_t pow(std::uint32_t b, std::uint64_t e) noexcept {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  /// In-place iterative transform; size must be a power of two no larger
  /// than 2^two_adicity().
  static void transform(std::vector<std::uint32_t>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<std::uint32_t> twiddles(n / 2 + 1);
    for (std::size_t len = 2; len <= n; len <<= 1) {
      std::uint32_t w = pow(Root, (Mod - 1) / len);
      if (inverse) w = pow(w, Mod - 2);
      const std::size_t half = len / 2;
      twiddles[0] = 1;
      for (std::size_t k = 1; k < half; ++k) twiddles[k] = mul(twiddles[k - 1], w);
      for (std::size_t i = 0; i < n; i += len) {
        for (std::size_t k = 0; k < half; ++k) {
          const std::uint32_t u = a[i + k];
          const std::uint32_t v = mul(a[i + k + half], twiddles[k]);
          const std::uint32_t s = u + v;
          a[i + k] = s >= Mod ? s - Mod : s;
          a[i + k + half] = u >= v ? u - v : u + Mod - v;
        }
      }
    }
    if (inverse) {
      const std::uint32_t n_inv = pow(static_cast<std::uint32_t>(n % Mod), Mod - 2);
      for (auto& x : a) x = mul(x, n_inv);
    }
  }

  /// a^2 truncated to a.size() terms.
  static std::vector<std::uint32_t> square_truncated(const std::vector<std::uint32_t>& a) {
    const std::size_t len = a.size();
    std::size_t size = 1;
    while (size < 2 * len - 1) size <<= 1;
    std::vector<std::uint32_t> f(a);
    f.resize(size, 0);
    transform(f, false);
    for (auto& x : f) x = mul(x, x);
    transform(f, true);
    f.resize(len);
    return f;
  }
};

}  // namespace satotate::detail
