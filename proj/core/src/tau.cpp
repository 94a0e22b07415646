#include <array>
#include <cstdint>
#include <vector>

#include "detail/ntt.hpp"
#include "satotate/coefficients.hpp"
#include "satotate/error.hpp"

namespace satotate {

namespace {

// prod (1 - q^n)^3 = sum_{k >= 0} (-1)^k (2k + 1) q^{k(k+1)/2}, so
// Delta = q J^8 with J the Jacobi series. J^2 is formed directly from the
// sparse terms; two NTT squarings give J^8 modulo each prime, and Garner's
// algorithm lifts the residues back to exact integers.

struct SparseTerm {
  std::size_t degree;
  std::int64_t coeff;
};

std::vector<SparseTerm> jacobi_terms(std::size_t len) {
  std::vector<SparseTerm> terms;
  for (std::size_t k = 0; k * (k + 1) / 2 < len; ++k) {
    const auto c = static_cast<std::int64_t>(2 * k + 1);
    terms.push_back({k * (k + 1) / 2, (k % 2 == 0) ? c : -c});
  }
  return terms;
}

template <class Field>
std::vector<std::uint32_t> jacobi_eighth_power(const std::vector<SparseTerm>& terms,
                                               std::size_t len) {
  constexpr auto mod = static_cast<std::int64_t>(Field::modulus);
  std::vector<std::uint32_t> sq(len, 0);
  for (const auto& s : terms) {
    for (const auto& t : terms) {
      const std::size_t d = s.degree + t.degree;
      if (d >= len) break;
      std::int64_t prod = (s.coeff * t.coeff) % mod;
      if (prod < 0) prod += mod;
      const std::uint64_t v = sq[d] + static_cast<std::uint64_t>(prod);
      sq[d] = static_cast<std::uint32_t>(v % Field::modulus);
    }
  }
  return Field::square_truncated(Field::square_truncated(sq));
}

using F0 = detail::Ntt<998244353u, 3u>;
using F1 = detail::Ntt<167772161u, 3u>;
using F2 = detail::Ntt<469762049u, 3u>;
using F3 = detail::Ntt<754974721u, 11u>;
using F4 = detail::Ntt<2013265921u, 31u>;

constexpr std::array<std::uint64_t, 5> kModuli = {F0::modulus, F1::modulus, F2::modulus,
                                                  F3::modulus, F4::modulus};

std::uint64_t inverse(std::uint64_t a, std::uint64_t m) {
  std::uint64_t r = 1, e = m - 2;
  a %= m;
  while (e) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<Integer> tau_table(std::size_t M, std::size_t max_terms) {
  if (M == 0) throw Error(ErrorKind::Domain, "tau_table: M must be positive");
  if (M > max_terms)
    throw Error(ErrorKind::Resource, "tau_table: M = " + std::to_string(M) +
                                         " exceeds the budget of " +
                                         std::to_string(max_terms) + " terms");
  // the smallest two-adicity (2^23) bounds the transform length
  if (2 * M - 1 > (std::size_t{1} << F0::two_adicity()))
    throw Error(ErrorKind::Resource, "tau_table: M too large for the transform");

  const auto terms = jacobi_terms(M);
  const std::array<std::vector<std::uint32_t>, 5> residues = {
      jacobi_eighth_power<F0>(terms, M), jacobi_eighth_power<F1>(terms, M),
      jacobi_eighth_power<F2>(terms, M), jacobi_eighth_power<F3>(terms, M),
      jacobi_eighth_power<F4>(terms, M)};

  // Garner constants: inv[i][j] = m_j^{-1} mod m_i for j < i.
  std::array<std::array<std::uint64_t, 5>, 5> inv{};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < i; ++j) inv[i][j] = inverse(kModuli[j], kModuli[i]);

  Integer product = 1;
  for (auto m : kModuli) product *= m;
  const Integer half = product / 2;

  std::vector<Integer> tau(M);
  std::array<std::uint64_t, 5> digit{};
  for (std::size_t n = 0; n < M; ++n) {
    for (std::size_t i = 0; i < 5; ++i) {
      std::uint64_t x = residues[i][n];
      for (std::size_t j = 0; j < i; ++j) {
        x = (x + kModuli[i] - digit[j] % kModuli[i]) % kModuli[i];
        x = x * inv[i][j] % kModuli[i];
      }
      digit[i] = x;
    }
    Integer value = digit[4];
    for (std::size_t i = 4; i-- > 0;) value = value * kModuli[i] + digit[i];
    if (value > half) value -= product;
    tau[n] = std::move(value);
  }
  return tau;
}

}  // namespace satotate
