#include "satotate/primes.hpp"

#include <algorithm>
#include <cmath>

#include "detail/modular.hpp"
#include "satotate/numeric.hpp"

namespace satotate {

namespace {

std::uint64_t isqrt(std::uint64_t n) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

constexpr std::size_t kSegmentSize = 1 << 15;

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  if (limit >= 1000) {
    const double l = static_cast<double>(limit);
    primes.reserve(static_cast<std::size_t>(1.26 * l / std::log(l)));
  }

  const std::uint64_t root = isqrt(limit);
  std::vector<char> small(root + 1, 1);
  for (std::uint64_t i = 2; i * i <= root; ++i)
    if (small[i])
      for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;

  std::vector<std::uint64_t> sieving;
  std::vector<std::uint64_t> next;
  std::vector<char> segment(kSegmentSize);
  std::uint64_t s = 3;
  std::uint64_t n = 3;
  primes.push_back(2);

  for (std::uint64_t low = 0; low <= limit; low += kSegmentSize) {
    std::fill(segment.begin(), segment.end(), 1);
    const std::uint64_t high = std::min<std::uint64_t>(low + kSegmentSize - 1, limit);

    // odd sieving primes whose square falls in this segment
    for (; s * s <= high; s += 2) {
      if (small[s]) {
        sieving.push_back(s);
        next.push_back(s * s - low);
      }
    }
    for (std::size_t i = 0; i < sieving.size(); ++i) {
      std::uint64_t j = next[i];
      for (const std::uint64_t step = 2 * sieving[i]; j < kSegmentSize; j += step)
        segment[j] = 0;
      next[i] = j - kSegmentSize;
    }
    for (; n <= high; n += 2)
      if (segment[n - low]) primes.push_back(n);
  }
  return primes;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These bases are a deterministic witness set below 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<PrimePower> as_prime_power(std::uint64_t j) {
  if (j < 2) return std::nullopt;
  std::uint64_t p = 0;
  if (j % 2 == 0) {
    p = 2;
  } else {
    for (std::uint64_t d = 3; d * d <= j; d += 2) {
      if (j % d == 0) {
        p = d;
        break;
      }
    }
    if (p == 0) return PrimePower{j, 1};
  }
  unsigned m = 0;
  while (j % p == 0) {
    j /= p;
    ++m;
  }
  if (j != 1) return std::nullopt;
  return PrimePower{p, m};
}

std::vector<PrimePowerTerm> prime_powers_up_to(std::uint64_t limit) {
  std::vector<PrimePowerTerm> terms;
  const auto primes = primes_up_to(limit);
  terms.reserve(primes.size() + 64);
  for (std::uint64_t p : primes) {
    terms.push_back({p, p, 1});
    if (p > limit / p) continue;
    std::uint64_t q = p * p;
    for (unsigned m = 2;; ++m) {
      terms.push_back({q, p, m});
      if (q > limit / p) break;
      q *= p;
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const PrimePowerTerm& l, const PrimePowerTerm& r) { return l.value < r.value; });
  return terms;
}

std::uint64_t count_higher_prime_powers(std::uint64_t limit) {
  std::uint64_t count = 0;
  for (std::uint64_t p : primes_up_to(isqrt(limit))) {
    for (std::uint64_t q = p; q <= limit / p;) {
      q *= p;
      ++count;
    }
  }
  return count;
}

std::vector<double> von_mangoldt_table(std::uint64_t limit) {
  std::vector<double> lambda(limit + 1, 0.0);
  std::vector<char> composite(limit + 1, 0);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    if (p <= limit / p)
      for (std::uint64_t j = p * p; j <= limit; j += p) composite[j] = 1;
    const double lp = std::log(static_cast<double>(p));
    for (std::uint64_t q = p;; q *= p) {
      lambda[q] = lp;
      if (q > limit / p) break;
    }
  }
  return lambda;
}

double chebyshev_psi(double x) {
  if (x < 2.0) return 0.0;
  CompensatedSum sum;
  for (const auto& term : prime_powers_up_to(static_cast<std::uint64_t>(std::floor(x))))
    sum += std::log(static_cast<double>(term.prime));
  return sum.value();
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    divisors.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) divisors.push_back(n);
  return divisors;
}

bool is_squarefree(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % (d * d) == 0) return false;
  }
  return n != 0;
}

}  // namespace satotate
