#pragma once

#include <vector>

#include "cmt/poly.hpp"

namespace cmt {

// y^ypow * P(x) on y^2 = x^3 + a4 x + a6.
struct PsiPoly {
  IntPoly P;
  int ypow = 0;
  friend bool operator==(const PsiPoly& a, const PsiPoly& b) { return a.P == b.P && a.ypow == b.ypow; }
};

struct CurveQuartic {
  Integer D;
};
struct CurveSextic {
  Integer A;
};

IntPoly curve_rhs(const Integer& a4, const Integer& a6);  // x^3 + a4 x + a6

// psi_0 .. psi_n.
std::vector<PsiPoly> psi_generic_table(int n, const Integer& a4, const Integer& a6);
PsiPoly psi_generic(int n, const Integer& a4, const Integer& a6);
// phi_n = x psi_n^2 - psi_{n-1} psi_{n+1}, y^2 eliminated.
IntPoly phi_generic(int n, const Integer& a4, const Integer& a6);
// From 4 y omega_n = psi_{n+2} psi_{n-1}^2 - psi_{n-2} psi_{n+1}^2.
PsiPoly omega_generic(int n, const Integer& a4, const Integer& a6);

// Values P_k(x) of psi_k = y^(k even) P_k(x) for k = 0..n, by the same recursion on numbers.
std::vector<Integer> psi_generic_values(int n, const Integer& a4, const Integer& a6, const Integer& x);

// Homogeneous forms for y^2 = x^3 - D x (Z = x^2, W = D).
BiHomPoly f_quartic(int n);
BiHomPoly g_quartic(int n);
// Homogeneous forms for y^2 = x^3 + A (Z = y^2, W = A).
BiHomPoly f_sextic(int n);

// Degree laws.
int quartic_f_degree(int n);
int quartic_g_degree(int n);
int sextic_f_degree(int n);

// f_n(X, D), g_n(X, D), f_n(X, A) as polynomials in X.
IntPoly f_quartic_at(int n, const Integer& D);
IntPoly g_quartic_at(int n, const Integer& D);
IntPoly f_sextic_at(int n, const Integer& A);

// psi_n of y^2 = x^3 - D x rebuilt from f_quartic: f_n(x^2, D) (ypow 0) or 2 f_n(x^2, D) (ypow 1).
PsiPoly psi_from_quartic(int n, const Integer& D);
// psi_n of y^2 = x^3 + A rebuilt from f_sextic with the prefactor x^(3|n) (2y)^(2|n).
PsiPoly psi_from_sextic(int n, const Integer& A);

}  // namespace cmt
