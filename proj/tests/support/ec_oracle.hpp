#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "cmt/divpoly.hpp"
#include "cmt/integer.hpp"

namespace cmt::testing {

// Affine points on y^2 = x^3 + a4 x + a6 over F_q; nullopt is the identity.
struct ModCurve {
  std::uint64_t q, a4, a6;

  using Pt = std::optional<std::pair<std::uint64_t, std::uint64_t>>;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % q; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + q - b) % q; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mulmod64(a, b, q); }
  std::uint64_t inv(std::uint64_t a) const { return invmod64(a, q); }
  std::uint64_t rhs(std::uint64_t x) const { return add(add(mul(mul(x, x), x), mul(a4, x)), a6); }

  Pt plus(const Pt& P, const Pt& Q) const {
    if (!P) return Q;
    if (!Q) return P;
    auto [x1, y1] = *P;
    auto [x2, y2] = *Q;
    std::uint64_t lam;
    if (x1 == x2) {
      if (add(y1, y2) == 0) return std::nullopt;
      lam = mul(add(mul(3, mul(x1, x1)), a4), inv(mul(2, y1)));
    } else {
      lam = mul(sub(y2, y1), inv(sub(x2, x1)));
    }
    std::uint64_t x3 = sub(sub(mul(lam, lam), x1), x2);
    return std::make_pair(x3, sub(mul(lam, sub(x1, x3)), y1));
  }

  std::optional<std::uint64_t> sqrt(std::uint64_t a) const {
    if (a == 0) return 0;
    if (powmod64(a, (q - 1) / 2, q) != 1) return std::nullopt;
    std::uint64_t s = 0, d = q - 1;
    while (d % 2 == 0) d /= 2, ++s;
    std::uint64_t z = 2;
    while (powmod64(z, (q - 1) / 2, q) == 1) ++z;
    std::uint64_t m = s, c = powmod64(z, d, q), t = powmod64(a, d, q), r = powmod64(a, (d + 1) / 2, q);
    while (t != 1) {
      std::uint64_t i = 0, tt = t;
      while (tt != 1) tt = mul(tt, tt), ++i;
      std::uint64_t b = c;
      for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
    return r;
  }

  Pt random_point(std::mt19937_64& g) const {
    for (;;) {
      std::uint64_t x = g() % q;
      auto y = sqrt(rhs(x));
      if (y && *y != 0) return std::make_pair(x, (g() & 1) ? *y : sub(0, *y));
    }
  }
};

inline std::uint64_t eval_mod(const IntPoly& p, std::uint64_t x, std::uint64_t q) {
  std::uint64_t r = 0;
  for (int i = p.degree(); i >= 0; --i) r = (mulmod64(r, x, q) + mod_u64(p.coeffs()[i], q)) % q;
  return r;
}

inline std::uint64_t eval_psi(const PsiPoly& p, std::uint64_t x, std::uint64_t y, std::uint64_t q) {
  std::uint64_t v = eval_mod(p.P, x, q);
  return p.ypow ? mulmod64(v, y, q) : v;
}

}  // namespace cmt::testing
