#pragma once

#include <random>

#include "cmt/poly.hpp"

namespace cmt::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240601);
  return g;
}

inline long rand_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline IntPoly rand_poly(int deg, long bound) {
  std::vector<Integer> c(deg + 1);
  for (auto& x : c) x = rand_int(-bound, bound);
  if (c.back() == 0) c.back() = 1;
  return IntPoly(c);
}

// Sylvester determinant by fraction-free elimination.
inline Integer sylvester_resultant(const IntPoly& a, const IntPoly& b) {
  int m = a.degree(), n = b.degree();
  int N = m + n;
  std::vector<std::vector<Integer>> M(N, std::vector<Integer>(N));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = a.coeffs()[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = b.coeffs()[n - j];
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k] == 0) {
      int r = k + 1;
      while (r < N && M[r][k] == 0) ++r;
      if (r == N) return 0;
      std::swap(M[r], M[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i)
      for (int j = k + 1; j < N; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  return sign * M[N - 1][N - 1];
}

}  // namespace cmt::testing
