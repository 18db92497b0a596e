#include "cmt/rootno.hpp"

#include "cmt/errors.hpp"

namespace cmt {

namespace {

// Legendre symbol (a/p), p an odd prime not dividing a.
int legendre(long a, const Integer& p) { return jacobi(Integer(a), p); }

// Row v = v2(D), column (D/2^v mod 16 - 1)/2.
constexpr int kQuartic2[4][8] = {
    {-1, -1, -1, -1, 1, -1, 1, -1},
    {1, 1, -1, -1, 1, 1, -1, -1},
    {-1, 1, -1, 1, -1, -1, -1, -1},
    {-1, -1, 1, 1, -1, -1, 1, 1},
};

// Row a = v2(A), column (A/2^a mod 8 - 1)/2.
constexpr int kSextic2[6][4] = {
    {-1, -1, -1, -1}, {1, -1, 1, -1}, {-1, -1, -1, -1}, {1, -1, 1, -1}, {1, -1, 1, -1}, {1, -1, 1, -1},
};

// Row b = v3(A), columns for A/3^b mod 9 in 1, 2, 4, 5, 7, 8.
constexpr int kSextic3[6][6] = {
    {1, 1, 1, -1, -1, 1}, {-1, 1, -1, 1, -1, 1}, {-1, 1, -1, 1, -1, 1},
    {1, -1, -1, 1, 1, 1}, {1, -1, 1, -1, 1, -1}, {1, -1, 1, -1, 1, -1},
};

int sextic3_col(long u) {
  static const int idx[9] = {-1, 0, 1, -1, 2, 3, -1, 4, 5};
  return idx[u];
}

void finish(RootNumber& r) {
  r.value = 1;
  for (auto& [place, w] : r.local) r.value *= w;
}

}  // namespace

RootNumber root_number_quartic(const Integer& D) {
  if (D == 0) raise(ErrorKind::InvalidArgument, "D must be nonzero");
  return root_number_quartic(factor_int(D));
}

RootNumber root_number_quartic(const Factorization& full) {
  Factorization f;
  f.sign = full.sign;
  for (const auto& [p, e] : full.factors)
    if (e % 4) f.factors.emplace_back(p, e % 4);
  Integer d = f.value();
  RootNumber r;
  r.local.emplace_back("inf", -1);
  unsigned v = f.exponent(2);
  Integer odd = d;
  mpz_fdiv_q_2exp(odd.get_mpz_t(), d.get_mpz_t(), v);
  long u = mod(odd, 16).get_si();
  r.local.emplace_back("2", kQuartic2[v][(u - 1) / 2]);
  for (const auto& [p, e] : f.factors) {
    if (p == 2) continue;
    r.local.emplace_back(p.get_str(), e % 2 ? legendre(-2, p) : legendre(-1, p));
  }
  finish(r);
  return r;
}

RootNumber root_number_sextic(const Integer& A) {
  if (A == 0) raise(ErrorKind::InvalidArgument, "A must be nonzero");
  Integer a = power_free_part(A, 6);
  Factorization f = factor_int(a);
  RootNumber r;
  r.local.emplace_back("inf", -1);
  unsigned v2 = f.exponent(2), v3 = f.exponent(3);
  Integer u = a;
  mpz_fdiv_q_2exp(u.get_mpz_t(), a.get_mpz_t(), v2);
  r.local.emplace_back("2", kSextic2[v2][(mod(u, 8).get_si() - 1) / 2]);
  Integer w = remove_factor(a, 3);
  r.local.emplace_back("3", kSextic3[v3][sextic3_col(mod(w, 9).get_si())]);
  for (const auto& [p, e] : f.factors) {
    if (p < 5) continue;
    r.local.emplace_back(p.get_str(), e % 2 ? legendre(-1, p) : legendre(-3, p));
  }
  finish(r);
  return r;
}

int omega_congruent(const Integer& n) {
  if (n < 1 || !is_squarefree(n)) raise(ErrorKind::NotSquarefree, n.get_str() + " is not a squarefree positive integer");
  long r = mod(n, 8).get_si();
  return (r == 1 || r == 2 || r == 3) ? 1 : -1;
}

}  // namespace cmt
