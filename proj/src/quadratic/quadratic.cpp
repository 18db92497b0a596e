#include "cmt/quadratic.hpp"

#include <algorithm>
#include <vector>

#include "cmt/errors.hpp"

namespace cmt {

namespace {

// Nearest integer to n/d, d > 0.
Integer round_div(const Integer& n, const Integer& d) {
  Integer r;
  Integer t = 2 * n + d;
  Integer dd = 2 * d;
  mpz_fdiv_q(r.get_mpz_t(), t.get_mpz_t(), dd.get_mpz_t());
  return r;
}

GaussInt gauss_gcd(GaussInt x, GaussInt y) {
  while (y.norm() != 0) {
    GaussInt num = x * y.conj();
    Integer n = y.norm();
    GaussInt q{round_div(num.a, n), round_div(num.b, n)};
    GaussInt r = x - q * y;
    x = y;
    y = r;
  }
  return x;
}

EisensteinInt eisenstein_gcd(EisensteinInt x, EisensteinInt y) {
  while (y.norm() != 0) {
    EisensteinInt num = x * y.conj();
    Integer n = y.norm();
    EisensteinInt q{round_div(num.a, n), round_div(num.b, n)};
    EisensteinInt r = x - q * y;
    x = y;
    y = r;
  }
  return x;
}

void require_prime(const Integer& p) {
  if (!is_prime(p)) raise(ErrorKind::NotPrime, p.get_str() + " is not prime");
}

Integer inverse_mod(const Integer& a, const Integer& p) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
    raise(ErrorKind::NotCoprime, "no inverse of " + a.get_str() + " mod " + p.get_str());
  return r;
}

// Smallest quadratic non-residue, then its power of order k.
Integer root_of_unity(const Integer& p, unsigned k) {
  for (unsigned long c = 2;; ++c) {
    Integer g = powmod(Integer(c), (p - 1) / k, p);
    bool primitive = true;
    for (unsigned d = 1; d < k; ++d)
      if (k % d == 0 && powmod(g, Integer(d), p) == 1) primitive = false;
    if (primitive) return g;
  }
}

std::string two_part(const Integer& a, const Integer& b, const std::string& unit) {
  std::string s = a.get_str();
  if (b >= 0) s += "+";
  return s + b.get_str() + "*" + unit;
}

}  // namespace

std::string GaussInt::to_string() const { return two_part(a, b, "i"); }
std::string EisensteinInt::to_string() const { return two_part(a, b, "zeta3"); }

GaussInt gauss_unit(int k) {
  static const GaussInt u[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return u[((k % 4) + 4) % 4];
}

EisensteinInt eisenstein_unit(int k) {
  static const EisensteinInt u[6] = {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
  return u[((k % 6) + 6) % 6];
}

bool gauss_is_primary(const GaussInt& pi) {
  // (pi - 1)/(2+2i) = ((a-1+b) + (b-a+1) i)/4
  Integer x = pi.a - 1 + pi.b, y = pi.b - pi.a + 1;
  return mpz_divisible_ui_p(x.get_mpz_t(), 4) && mpz_divisible_ui_p(y.get_mpz_t(), 4);
}

bool eisenstein_is_primary(const EisensteinInt& pi) { return mod(pi.a, 3) == 2 && mod(pi.b, 3) == 0; }

GaussInt split_prime_gauss(const Integer& p) {
  require_prime(p);
  if (mod(p, 4) != 1) raise(ErrorKind::NotSplit, p.get_str() + " is not 1 mod 4");
  Integer r = root_of_unity(p, 4);
  GaussInt g = gauss_gcd({p, 0}, {r, -1});
  if (g.norm() != p) raise(ErrorKind::Internal, "gaussian gcd failed");
  for (int k = 0; k < 4; ++k) {
    for (bool c : {false, true}) {
      GaussInt cand = gauss_unit(k) * (c ? g.conj() : g);
      if (gauss_is_primary(cand) && cand.b > 0) return cand;
    }
  }
  raise(ErrorKind::Internal, "no primary associate");
}

EisensteinInt split_prime_eisenstein(const Integer& p) {
  require_prime(p);
  if (p == 3 || mod(p, 3) != 1) raise(ErrorKind::NotSplit, p.get_str() + " is not 1 mod 3");
  Integer s = root_of_unity(p, 3);
  EisensteinInt g = eisenstein_gcd({p, 0}, {s, -1});
  if (g.norm() != p) raise(ErrorKind::Internal, "eisenstein gcd failed");
  for (int k = 0; k < 6; ++k) {
    for (bool c : {false, true}) {
      EisensteinInt cand = eisenstein_unit(k) * (c ? g.conj() : g);
      if (eisenstein_is_primary(cand) && cand.b < 0) return cand;
    }
  }
  raise(ErrorKind::Internal, "no primary associate");
}

std::pair<Integer, Integer> eisenstein_ab(const Integer& p) {
  EisensteinInt pi = split_prime_eisenstein(p);
  std::vector<std::pair<Integer, Integer>> cands;
  // N(a - b zeta3) = a^2 + ab + b^2.
  for (int k = 0; k < 6; ++k)
    for (bool c : {false, true}) {
      EisensteinInt e = eisenstein_unit(k) * (c ? pi.conj() : pi);
      Integer a = e.a, b = -e.b;
      if (a > 0 && b > 0 && mpz_odd_p(a.get_mpz_t())) cands.emplace_back(a, b);
    }
  if (cands.empty()) raise(ErrorKind::Internal, "no (a,b) decomposition");
  return *std::min_element(cands.begin(), cands.end());
}

Integer gauss_residue_root(const GaussInt& pi) {
  Integer p = pi.norm();
  Integer r = mod(-pi.a * inverse_mod(mod(pi.b, p), p), p);
  if (mod(r * r + 1, p) != 0) raise(ErrorKind::Internal, "residue root of -1");
  return r;
}

Integer eisenstein_residue_root(const EisensteinInt& pi) {
  Integer p = pi.norm();
  Integer s = mod(-pi.a * inverse_mod(mod(pi.b, p), p), p);
  if (mod(s * s + s + 1, p) != 0) raise(ErrorKind::Internal, "residue cube root of unity");
  return s;
}

UnitPower quartic_symbol(const Integer& x, const GaussInt& pi) {
  Integer p = pi.norm();
  if (mod(p, 4) != 1 || !is_prime(p)) raise(ErrorKind::InvalidArgument, "norm of pi must be a prime 1 mod 4");
  if (mod(x, p) == 0) raise(ErrorKind::NotCoprime, x.get_str() + " is divisible by " + p.get_str());
  Integer r = gauss_residue_root(pi);
  Integer t = powmod(mod(x, p), (p - 1) / 4, p);
  Integer u = 1;
  for (int k = 0; k < 4; ++k) {
    if (u == t) return {UnitRing::Gauss, k};
    u = u * r % p;
  }
  raise(ErrorKind::Internal, "quartic symbol not a unit power");
}

UnitPower sextic_symbol(const Integer& x, const EisensteinInt& pi) {
  Integer p = pi.norm();
  if (mod(p, 6) != 1 || !is_prime(p)) raise(ErrorKind::InvalidArgument, "norm of pi must be a prime 1 mod 6");
  if (mod(x, p) == 0) raise(ErrorKind::NotCoprime, x.get_str() + " is divisible by " + p.get_str());
  Integer z6 = (1 + eisenstein_residue_root(pi)) % p;
  Integer t = powmod(mod(x, p), (p - 1) / 6, p);
  Integer u = 1;
  for (int k = 0; k < 6; ++k) {
    if (u == t) return {UnitRing::Eisenstein, k};
    u = u * z6 % p;
  }
  raise(ErrorKind::Internal, "sextic symbol not a unit power");
}

GaussInt pi_twisted_quartic(const Integer& D, const GaussInt& pi) {
  UnitPower s = quartic_symbol(D, pi);
  return gauss_unit(s.conj().k) * pi;
}

EisensteinInt pi_twisted_sextic(const Integer& A, const EisensteinInt& pi) {
  UnitPower s = sextic_symbol(4 * A, pi);
  EisensteinInt r = eisenstein_unit(s.conj().k) * pi;
  return {-r.a, -r.b};
}

}  // namespace cmt
