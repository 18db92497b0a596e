#pragma once

#include <string>
#include <utility>

#include "cmt/integer.hpp"

namespace cmt {

// a + b*i
struct GaussInt {
  Integer a, b;

  Integer norm() const { return a * a + b * b; }
  GaussInt conj() const { return {a, -b}; }
  friend GaussInt operator+(const GaussInt& x, const GaussInt& y) { return {x.a + y.a, x.b + y.b}; }
  friend GaussInt operator-(const GaussInt& x, const GaussInt& y) { return {x.a - y.a, x.b - y.b}; }
  friend GaussInt operator*(const GaussInt& x, const GaussInt& y) {
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend bool operator==(const GaussInt& x, const GaussInt& y) { return x.a == y.a && x.b == y.b; }
  std::string to_string() const;
};

// a + b*zeta3, zeta3^2 = -1 - zeta3
struct EisensteinInt {
  Integer a, b;

  Integer norm() const { return a * a - a * b + b * b; }
  EisensteinInt conj() const { return {a - b, -b}; }
  friend EisensteinInt operator+(const EisensteinInt& x, const EisensteinInt& y) { return {x.a + y.a, x.b + y.b}; }
  friend EisensteinInt operator-(const EisensteinInt& x, const EisensteinInt& y) { return {x.a - y.a, x.b - y.b}; }
  friend EisensteinInt operator*(const EisensteinInt& x, const EisensteinInt& y) {
    Integer bd = x.b * y.b;
    return {x.a * y.a - bd, x.a * y.b + x.b * y.a - bd};
  }
  friend bool operator==(const EisensteinInt& x, const EisensteinInt& y) { return x.a == y.a && x.b == y.b; }
  std::string to_string() const;
};

enum class UnitRing { Gauss, Eisenstein };

// i^k (k mod 4) or zeta6^k (k mod 6).
struct UnitPower {
  UnitRing ring = UnitRing::Gauss;
  int k = 0;

  int order() const { return ring == UnitRing::Gauss ? 4 : 6; }
  UnitPower operator*(const UnitPower& o) const { return {ring, (k + o.k) % order()}; }
  UnitPower conj() const { return {ring, (order() - k) % order()}; }
  friend bool operator==(const UnitPower& x, const UnitPower& y) { return x.ring == y.ring && x.k == y.k; }
};

GaussInt gauss_unit(int k);
EisensteinInt eisenstein_unit(int k);  // zeta6^k, zeta6 = 1 + zeta3

// pi with N(pi) = p, pi = 1 mod (2+2i), b > 0.
GaussInt split_prime_gauss(const Integer& p);
// pi with N(pi) = p, pi = 2 mod 3, b < 0.
EisensteinInt split_prime_eisenstein(const Integer& p);
// (a, b) in N^2 with a odd and a^2 + ab + b^2 = p; a < b when both are odd.
std::pair<Integer, Integer> eisenstein_ab(const Integer& p);

bool gauss_is_primary(const GaussInt& pi);
bool eisenstein_is_primary(const EisensteinInt& pi);

// Image of i (resp. zeta3) in F_p under Z[i]/(pi) = F_p.
Integer gauss_residue_root(const GaussInt& pi);
Integer eisenstein_residue_root(const EisensteinInt& pi);

UnitPower quartic_symbol(const Integer& x, const GaussInt& pi);
UnitPower sextic_symbol(const Integer& x, const EisensteinInt& pi);

GaussInt pi_twisted_quartic(const Integer& D, const GaussInt& pi);
EisensteinInt pi_twisted_sextic(const Integer& A, const EisensteinInt& pi);

}  // namespace cmt
