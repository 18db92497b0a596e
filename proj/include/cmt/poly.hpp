#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "cmt/integer.hpp"

namespace cmt {

// Dense univariate polynomial, coefficients ascending.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const Integer& c);
  static IntPoly monomial(const Integer& c, int deg);
  static IntPoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Integer>& coeffs() const { return c_; }
  Integer coeff(int i) const;
  const Integer& lead() const;
  Integer eval(const Integer& x) const;
  Rational eval(const Rational& x) const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const Integer& k);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const Integer& k) { return a *= k; }
  friend IntPoly operator*(const Integer& k, IntPoly a) { return a *= k; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();
  std::vector<Integer> c_;
};

IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
IntPoly poly_pow(const IntPoly& a, unsigned e);
// Throws NonExactDivision unless b divides a in Z[X].
IntPoly poly_exact_div(const IntPoly& a, const IntPoly& b);
IntPoly poly_exact_div(const IntPoly& a, const Integer& k);
// lc(b)^(deg a - deg b + 1) * a = q*b + r
void poly_pseudo_divrem(const IntPoly& a, const IntPoly& b, IntPoly* q, IntPoly* r);
// Throws NotASquare.
IntPoly poly_sqrt(const IntPoly& p);

Integer content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);
// Primitive with positive leading coefficient.
IntPoly normalize(const IntPoly& p);
IntPoly derivative(const IntPoly& p);
IntPoly compose(const IntPoly& p, const IntPoly& q);  // p(q(X))
IntPoly inflate(const IntPoly& p, unsigned k);          // p(X^k)
IntPoly scale_var(const IntPoly& p, const Integer& c);  // p(cX)
IntPoly shift_var(const IntPoly& p, const Integer& c);  // p(X + c)
IntPoly reverse(const IntPoly& p);
// Gcd in Z[X], primitive with positive leading coefficient.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);
// Only even powers present; returns q with q(X^2) = p.
bool is_even_poly(const IntPoly& p);
IntPoly deflate2(const IntPoly& p);
Integer norm2_bound(const IntPoly& p);  // ceil of the euclidean norm

// Homogeneous polynomial sum_j c_j Z^(s-j) W^j.
class BiHomPoly {
 public:
  BiHomPoly() = default;
  BiHomPoly(int degree, std::vector<Integer> coeffs);

  static BiHomPoly zero(int degree);
  static BiHomPoly one() { return BiHomPoly(0, {Integer(1)}); }
  static BiHomPoly Z() { return BiHomPoly(1, {Integer(1), Integer(0)}); }
  static BiHomPoly W() { return BiHomPoly(1, {Integer(0), Integer(1)}); }
  // From p(Z) = f(Z, 1); requires deg p <= s.
  static BiHomPoly homogenize(const IntPoly& p, int s);

  int degree() const { return s_; }
  const std::vector<Integer>& coeffs() const { return c_; }
  const Integer& coeff(int j) const { return c_[j]; }  // of Z^(s-j) W^j
  bool is_zero() const;
  Integer eval(const Integer& z, const Integer& w) const;
  Integer eval_mod(const Integer& z, const Integer& w, const Integer& m) const;
  // f(Z, 1) as a polynomial in Z.
  IntPoly dehomogenize() const;
  // f(z(X), w(X)).
  IntPoly substitute(const IntPoly& z, const IntPoly& w) const;

  BiHomPoly& operator+=(const BiHomPoly& o);
  BiHomPoly& operator-=(const BiHomPoly& o);
  BiHomPoly& operator*=(const Integer& k);
  friend BiHomPoly operator+(BiHomPoly a, const BiHomPoly& b) { return a += b; }
  friend BiHomPoly operator-(BiHomPoly a, const BiHomPoly& b) { return a -= b; }
  friend BiHomPoly operator*(const BiHomPoly& a, const BiHomPoly& b);
  friend BiHomPoly operator*(BiHomPoly a, const Integer& k) { return a *= k; }
  friend BiHomPoly operator*(const Integer& k, BiHomPoly a) { return a *= k; }
  friend bool operator==(const BiHomPoly& a, const BiHomPoly& b) { return a.s_ == b.s_ && a.c_ == b.c_; }

  std::string to_string() const;

 private:
  int s_ = 0;
  std::vector<Integer> c_{Integer(0)};
};

BiHomPoly bihom_pow(const BiHomPoly& a, unsigned e);
BiHomPoly bihom_exact_div(const BiHomPoly& a, const BiHomPoly& b);
BiHomPoly bihom_exact_div(const BiHomPoly& a, const Integer& k);
BiHomPoly bihom_sqrt(const BiHomPoly& a);  // positive leading Z-side coefficient

}  // namespace cmt
