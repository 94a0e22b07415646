#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "detail/modular.hpp"
#include "satotate/coefficients.hpp"
#include "satotate/error.hpp"
#include "satotate/primes.hpp"

namespace satotate {

namespace detail {

std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p) noexcept {
  a %= p;
  if (a == 0 || p == 2) return a;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (legendre(z, p) != -1) ++z;
  std::uint64_t c = pow_mod(z, q, p);
  std::uint64_t r = pow_mod(a, (q + 1) / 2, p);
  std::uint64_t t = pow_mod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    for (std::uint64_t tt = t; tt != 1; tt = mul_mod(tt, tt, p)) ++i;
    std::uint64_t b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
    r = mul_mod(r, b, p);
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    m = i;
  }
  return r;
}

}  // namespace detail

namespace {

using detail::add_mod;
using detail::inv_mod;
using detail::mul_mod;
using detail::reduce;
using detail::sub_mod;

struct BInvariants {
  std::int64_t b2, b4, b6;
};

BInvariants b_invariants(const WeierstrassCurve& e) {
  return {e.a1 * e.a1 + 4 * e.a2, 2 * e.a4 + e.a1 * e.a3, e.a3 * e.a3 + 4 * e.a6};
}

/// Brute force over F_2 x F_2.
std::int64_t ap_char2(const WeierstrassCurve& e) {
  const auto r = [](std::int64_t v) { return static_cast<int>(reduce(v, 2)); };
  const int a1 = r(e.a1), a2 = r(e.a2), a3 = r(e.a3), a4 = r(e.a4), a6 = r(e.a6);
  std::int64_t points = 1;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      if ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % 2 == 0)
        ++points;
  return 3 - points;
}

// Short Weierstrass arithmetic over F_p, p >= 5.
struct Point {
  std::uint64_t x = 0, y = 0;
  bool infinity = true;

  friend bool operator==(const Point&, const Point&) = default;
};

class ShortCurve {
 public:
  ShortCurve(std::uint64_t A, std::uint64_t B, std::uint64_t p) : A_(A), B_(B), p_(p) {}

  std::uint64_t p() const noexcept { return p_; }

  std::uint64_t rhs(std::uint64_t x) const noexcept {
    return add_mod(add_mod(mul_mod(mul_mod(x, x, p_), x, p_), mul_mod(A_, x, p_), p_), B_, p_);
  }

  Point negate(const Point& P) const noexcept {
    if (P.infinity) return P;
    return {P.x, P.y == 0 ? 0 : p_ - P.y, false};
  }

  Point add(const Point& P, const Point& Q) const noexcept {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    std::uint64_t lambda;
    if (P.x == Q.x) {
      if (add_mod(P.y, Q.y, p_) == 0) return {};
      const std::uint64_t num = add_mod(mul_mod(3, mul_mod(P.x, P.x, p_), p_), A_, p_);
      lambda = mul_mod(num, inv_mod(add_mod(P.y, P.y, p_), p_), p_);
    } else {
      lambda = mul_mod(sub_mod(Q.y, P.y, p_), inv_mod(sub_mod(Q.x, P.x, p_), p_), p_);
    }
    const std::uint64_t x3 = sub_mod(sub_mod(mul_mod(lambda, lambda, p_), P.x, p_), Q.x, p_);
    const std::uint64_t y3 = sub_mod(mul_mod(lambda, sub_mod(P.x, x3, p_), p_), P.y, p_);
    return {x3, y3, false};
  }

  Point multiply(Point P, std::uint64_t k) const noexcept {
    Point result;
    while (k) {
      if (k & 1) result = add(result, P);
      P = add(P, P);
      k >>= 1;
    }
    return result;
  }

 private:
  std::uint64_t A_, B_, p_;
};

/// splitmix64: fixed, platform-independent sampling sequence per prime.
struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

Point random_point(const ShortCurve& E, SplitMix& rng) {
  const std::uint64_t p = E.p();
  for (;;) {
    const std::uint64_t x = rng.next() % p;
    const std::uint64_t f = E.rhs(x);
    if (f == 0) continue;  // 2-torsion carries no information
    if (detail::legendre(f, p) != 1) continue;
    return {x, detail::sqrt_mod(f, p), false};
  }
}

/// All m in [lo, hi] with mP = O, by baby-step/giant-step.
std::vector<std::uint64_t> annihilating_multiples(const ShortCurve& E, const Point& P,
                                                  std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t width = hi - lo + 1;
  auto s = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(width))));
  if (s == 0) s = 1;

  struct Baby {
    std::uint64_t x, y, j;
  };
  std::vector<Baby> babies;
  babies.reserve(s);
  Point jP = P;
  for (std::uint64_t j = 1; j < s; ++j) {
    if (!jP.infinity) babies.push_back({jP.x, jP.y, j});
    jP = E.add(jP, P);
  }
  std::sort(babies.begin(), babies.end(),
            [](const Baby& l, const Baby& r) { return l.x != r.x ? l.x < r.x : l.j < r.j; });

  std::vector<std::uint64_t> multiples;
  const Point giant = E.multiply(P, s);
  Point R = E.multiply(P, lo);
  for (std::uint64_t base = lo; base <= hi; base += s) {
    // (base + j) P = O  <=>  jP = -R
    if (R.infinity) multiples.push_back(base);
    else {
      const Point target = E.negate(R);
      auto it = std::lower_bound(babies.begin(), babies.end(), target.x,
                                 [](const Baby& b, std::uint64_t x) { return b.x < x; });
      for (; it != babies.end() && it->x == target.x; ++it)
        if (it->y == target.y && base + it->j <= hi) multiples.push_back(base + it->j);
    }
    R = E.add(R, giant);
  }
  std::sort(multiples.begin(), multiples.end());
  return multiples;
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

constexpr std::uint64_t kFastThreshold = 229;
constexpr int kMaxRounds = 12;

std::optional<std::int64_t> ap_bsgs(const WeierstrassCurve& e, std::uint64_t p) {
  const auto [b2, b4, b6] = b_invariants(e);
  const std::uint64_t B2 = reduce(b2, p), B4 = reduce(b4, p), B6 = reduce(b6, p);
  // c4 = b2^2 - 24 b4, c6 = -b2^3 + 36 b2 b4 - 216 b6
  const std::uint64_t c4 = sub_mod(mul_mod(B2, B2, p), mul_mod(24, B4, p), p);
  const std::uint64_t c6 = sub_mod(
      mul_mod(36, mul_mod(B2, B4, p), p),
      add_mod(mul_mod(mul_mod(B2, B2, p), B2, p), mul_mod(216, B6, p), p), p);
  // E ~ y^2 = x^3 - 27 c4 x - 54 c6
  const std::uint64_t A = sub_mod(0, mul_mod(27, c4, p), p);
  const std::uint64_t B = sub_mod(0, mul_mod(54, c6, p), p);
  const std::uint64_t disc = add_mod(mul_mod(4, mul_mod(mul_mod(A, A, p), A, p), p),
                                     mul_mod(27, mul_mod(B, B, p), p), p);
  if (disc == 0) return std::nullopt;

  std::uint64_t d = 2;
  while (detail::legendre(d, p) != -1) ++d;
  const std::uint64_t d2 = mul_mod(d, d, p);
  const ShortCurve curve(A, B, p);
  const ShortCurve twist(mul_mod(A, d2, p), mul_mod(B, mul_mod(d2, d, p), p), p);

  const std::uint64_t bound = isqrt(4 * p);
  const std::uint64_t lo = p + 1 - bound, hi = p + 1 + bound;
  SplitMix rng{p};

  std::vector<std::uint64_t> candidates =
      annihilating_multiples(curve, random_point(curve, rng), lo, hi);
  for (int round = 0; round < kMaxRounds && candidates.size() > 1; ++round) {
    const bool use_twist = round % 2 == 0;
    const ShortCurve& E = use_twist ? twist : curve;
    const Point P = random_point(E, rng);
    std::erase_if(candidates, [&](std::uint64_t order) {
      const std::uint64_t k = use_twist ? 2 * p + 2 - order : order;
      return !E.multiply(P, k).infinity;
    });
  }
  if (candidates.size() != 1) return std::nullopt;
  return static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(candidates.front());
}

}  // namespace

bool has_bad_reduction(const WeierstrassCurve& e, std::uint64_t p) {
  const auto [b2, b4, b6] = b_invariants(e);
  const std::uint64_t B2 = reduce(b2, p), B4 = reduce(b4, p), B6 = reduce(b6, p);
  // b8 = a1^2 a6 + 4 a2 a6 - a1 a3 a4 + a2 a3^2 - a4^2
  const std::uint64_t a1 = reduce(e.a1, p), a2 = reduce(e.a2, p), a3 = reduce(e.a3, p),
                      a4 = reduce(e.a4, p), a6 = reduce(e.a6, p);
  std::uint64_t B8 = add_mod(mul_mod(mul_mod(a1, a1, p), a6, p), mul_mod(4 % p, mul_mod(a2, a6, p), p), p);
  B8 = sub_mod(B8, mul_mod(mul_mod(a1, a3, p), a4, p), p);
  B8 = add_mod(B8, mul_mod(a2, mul_mod(a3, a3, p), p), p);
  B8 = sub_mod(B8, mul_mod(a4, a4, p), p);
  // Delta = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
  std::uint64_t disc = mul_mod(9 % p, mul_mod(mul_mod(B2, B4, p), B6, p), p);
  disc = sub_mod(disc, mul_mod(mul_mod(B2, B2, p), B8, p), p);
  disc = sub_mod(disc, mul_mod(8 % p, mul_mod(mul_mod(B4, B4, p), B4, p), p), p);
  disc = sub_mod(disc, mul_mod(27 % p, mul_mod(B6, B6, p), p), p);
  return disc == 0;
}

std::int64_t ap_elliptic(const WeierstrassCurve& e, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::Input, std::to_string(p) + " is not prime");
  if (p == 2) return ap_char2(e);

  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, so each x contributes
  // 1 + (D(x)/p) affine points.
  const auto [b2, b4, b6] = b_invariants(e);
  const std::uint64_t B2 = reduce(b2, p), B4 = reduce(2 * b4, p), B6 = reduce(b6, p);

  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t i = 1; i <= p / 2; ++i) chi[mul_mod(i, i, p)] = 1;

  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    // Horner: ((4x + b2) x + 2 b4) x + b6
    std::uint64_t v = add_mod(mul_mod(4 % p, x, p), B2, p);
    v = add_mod(mul_mod(v, x, p), B4, p);
    v = add_mod(mul_mod(v, x, p), B6, p);
    sum += chi[v];
  }
  return -sum;
}

std::int64_t ap_elliptic_fast(const WeierstrassCurve& e, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::Input, std::to_string(p) + " is not prime");
  if (p <= kFastThreshold || has_bad_reduction(e, p)) return ap_elliptic(e, p);
  if (auto ap = ap_bsgs(e, p)) return *ap;
  return ap_elliptic(e, p);
}

}  // namespace satotate
