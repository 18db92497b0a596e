#pragma once

#include <utility>
#include <vector>

#include "cmt/errors.hpp"
#include "cmt/poly.hpp"

namespace cmt {

// Polynomial in X with coefficients in Z[Y]; entry i is the coefficient of X^i.
using BiPoly = std::vector<IntPoly>;

Integer resultant(const IntPoly& a, const IntPoly& b);
// Eliminates X.
IntPoly resultant_x(const BiPoly& a, const BiPoly& b);

namespace detail {

inline bool ring_zero(const Integer& a) { return a == 0; }
inline bool ring_zero(const IntPoly& a) { return a.is_zero(); }
inline Integer ring_div(const Integer& a, const Integer& b) {
  if (b == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) raise(ErrorKind::NonExactDivision, "ring division");
  Integer r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}
inline IntPoly ring_div(const IntPoly& a, const IntPoly& b) { return poly_exact_div(a, b); }
inline void ring_one(Integer& a) { a = 1; }
inline void ring_one(IntPoly& a) { a = IntPoly::constant(1); }

template <class R>
R ring_pow(const R& b, unsigned e) {
  R r;
  ring_one(r);
  R x = b;
  while (e) {
    if (e & 1) r = r * x;
    e >>= 1;
    if (e) x = x * x;
  }
  return r;
}

template <class R>
void rtrim(std::vector<R>& a) {
  while (!a.empty() && ring_zero(a.back())) a.pop_back();
}

template <class R>
std::vector<R> prem(const std::vector<R>& a, const std::vector<R>& b) {
  int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
  std::vector<R> r = a;
  const R& lb = b.back();
  int steps = da - db + 1;
  for (int k = da - db; k >= 0; --k) {
    R t = r[k + db];
    for (auto& c : r) c = c * lb;
    for (int j = 0; j <= db; ++j) r[k + j] = r[k + j] - t * b[j];
    --steps;
  }
  r.resize(db);
  rtrim(r);
  return r;
}

template <class R>
R subresultant(std::vector<R> A, std::vector<R> B) {
  rtrim(A);
  rtrim(B);
  R zero{};
  if (A.empty() || B.empty()) return zero;
  R s;
  ring_one(s);
  int dA = static_cast<int>(A.size()) - 1, dB = static_cast<int>(B.size()) - 1;
  if (dA < dB) {
    std::swap(A, B);
    std::swap(dA, dB);
    if ((dA & 1) && (dB & 1)) s = R{} - s;
  }
  if (dB == 0) return s * ring_pow(B[0], dA);
  R g, h;
  ring_one(g);
  ring_one(h);
  for (;;) {
    dA = static_cast<int>(A.size()) - 1;
    dB = static_cast<int>(B.size()) - 1;
    unsigned delta = dA - dB;
    if ((dA & 1) && (dB & 1)) s = R{} - s;
    std::vector<R> r = prem(A, B);
    A = std::move(B);
    if (r.empty()) return zero;
    R den = g * ring_pow(h, delta);
    for (auto& c : r) c = ring_div(c, den);
    B = std::move(r);
    g = A.back();
    if (delta >= 1) h = ring_div(ring_pow(g, delta), ring_pow(h, delta - 1));
    int nB = static_cast<int>(B.size()) - 1;
    if (nB == 0) {
      int nA = static_cast<int>(A.size()) - 1;
      R out = ring_div(ring_pow(B[0], nA), ring_pow(h, nA - 1));
      return s * out;
    }
  }
}

}  // namespace detail

}  // namespace cmt
