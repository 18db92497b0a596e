#include "cmt/divpoly.hpp"

#include <mutex>
#include <optional>

#include "cmt/errors.hpp"

namespace cmt {

namespace {

void require_index(int n, int min) {
  if (n < min) raise(ErrorKind::InvalidArgument, "index " + std::to_string(n) + " below " + std::to_string(min));
}

IntPoly times_rhs_sq(const IntPoly& p, const IntPoly& F) { return p * F * F; }

// y-free part of psi_k for k >= -1.
const IntPoly& part(const std::vector<PsiPoly>& t, int k, const IntPoly& minus_one) {
  return k < 0 ? minus_one : t[k].P;
}

}  // namespace

IntPoly curve_rhs(const Integer& a4, const Integer& a6) { return IntPoly(std::vector<Integer>{a6, a4, 0, 1}); }

std::vector<PsiPoly> psi_generic_table(int n, const Integer& a4, const Integer& a6) {
  require_index(n, 0);
  IntPoly F = curve_rhs(a4, a6);
  std::vector<PsiPoly> t;
  t.push_back({IntPoly(), 0});
  t.push_back({IntPoly::constant(1), 0});
  t.push_back({IntPoly::constant(2), 1});
  t.push_back({IntPoly(std::vector<Integer>{-a4 * a4, 12 * a6, 6 * a4, 0, 3}), 0});
  t.push_back({IntPoly(std::vector<Integer>{-8 * a6 * a6 - a4 * a4 * a4, -4 * a4 * a6, -5 * a4 * a4, 20 * a6,
                                            5 * a4, 0, 1}) *
                   Integer(4),
               1});
  for (int k = 5; k <= n; ++k) {
    int m = k / 2;
    const IntPoly& a = t[m + 2].P;
    const IntPoly& b = t[m].P;
    const IntPoly& c = t[m - 1].P;
    const IntPoly& d = t[m + 1].P;
    if (k % 2 == 1) {
      IntPoly l = a * b * b * b, r = c * d * d * d;
      if (m % 2 == 0)
        l = times_rhs_sq(l, F);
      else
        r = times_rhs_sq(r, F);
      t.push_back({l - r, 0});
    } else {
      IntPoly e = t[m - 2].P;
      IntPoly inner = a * c * c - e * d * d;
      t.push_back({poly_exact_div(b * inner, Integer(2)), 1});
    }
  }
  t.resize(n + 1);
  return t;
}

PsiPoly psi_generic(int n, const Integer& a4, const Integer& a6) { return psi_generic_table(n, a4, a6)[n]; }

IntPoly phi_generic(int n, const Integer& a4, const Integer& a6) {
  require_index(n, 1);
  auto t = psi_generic_table(n + 1, a4, a6);
  IntPoly F = curve_rhs(a4, a6);
  IntPoly x = IntPoly::x();
  if (n % 2 == 1) return x * t[n].P * t[n].P - F * t[n - 1].P * t[n + 1].P;
  return x * F * t[n].P * t[n].P - t[n - 1].P * t[n + 1].P;
}

PsiPoly omega_generic(int n, const Integer& a4, const Integer& a6) {
  require_index(n, 1);
  auto t = psi_generic_table(n + 2, a4, a6);
  IntPoly F = curve_rhs(a4, a6);
  IntPoly minus_one = IntPoly::constant(-1);
  const IntPoly& a = part(t, n + 2, minus_one);
  const IntPoly& b = part(t, n - 1, minus_one);
  const IntPoly& c = part(t, n - 2, minus_one);
  const IntPoly& d = part(t, n + 1, minus_one);
  IntPoly q = a * b * b - c * d * d;
  if (n % 2 == 1) {
    // psi_{n+-1} carry y: 4 y omega = y^2 q.
    return {poly_exact_div(q, Integer(4)), 1};
  }
  // psi_{n+-2} carry y: 4 y omega = y q.
  return {poly_exact_div(q, Integer(4)), 0};
}

std::vector<Integer> psi_generic_values(int n, const Integer& a4, const Integer& a6, const Integer& x) {
  require_index(n, 0);
  Integer F = x * x * x + a4 * x + a6;
  Integer F2 = F * F;
  Integer x2 = x * x;
  std::vector<Integer> v(std::max(n + 1, 5));
  v[0] = 0;
  v[1] = 1;
  v[2] = 2;
  v[3] = 3 * x2 * x2 + 6 * a4 * x2 + 12 * a6 * x - a4 * a4;
  v[4] = 4 * (x2 * x2 * x2 + 5 * a4 * x2 * x2 + 20 * a6 * x2 * x - 5 * a4 * a4 * x2 - 4 * a4 * a6 * x - 8 * a6 * a6 -
              a4 * a4 * a4);
  for (int k = 5; k <= n; ++k) {
    int m = k / 2;
    if (k % 2 == 1) {
      Integer l = v[m + 2] * v[m] * v[m] * v[m], r = v[m - 1] * v[m + 1] * v[m + 1] * v[m + 1];
      if (m % 2 == 0)
        l *= F2;
      else
        r *= F2;
      v[k] = l - r;
    } else {
      Integer inner = v[m + 2] * v[m - 1] * v[m - 1] - v[m - 2] * v[m + 1] * v[m + 1];
      v[k] = v[m] * inner;
      mpz_divexact_ui(v[k].get_mpz_t(), v[k].get_mpz_t(), 2);
    }
  }
  v.resize(n + 1);
  return v;
}

int quartic_f_degree(int n) { return n % 2 ? (n * n - 1) / 4 : (n * n - 4) / 4; }
int quartic_g_degree(int n) { return n % 2 ? (n * n - 1) / 4 : n * n / 4; }
int sextic_f_degree(int n) {
  switch (n % 6) {
    case 1:
    case 5:
      return (n * n - 1) / 6;
    case 3:
      return (n * n - 3) / 6;
    case 2:
    case 4:
      return (n * n - 4) / 6;
    default:
      return (n * n - 6) / 6;
  }
}

namespace {

std::mutex quartic_mu, sextic_mu;
std::vector<std::optional<BiHomPoly>> quartic_memo, quartic_g_memo;

const BiHomPoly& sixteen_z_zw2() {
  static const BiHomPoly v = Integer(16) * BiHomPoly::Z() * bihom_pow(BiHomPoly::Z() - BiHomPoly::W(), 2);
  return v;
}

BiHomPoly cube(const BiHomPoly& a) { return a * a * a; }

const BiHomPoly& fq(int n) {
  if (static_cast<int>(quartic_memo.size()) <= n) quartic_memo.resize(n + 1);
  if (quartic_memo[n]) return *quartic_memo[n];
  BiHomPoly r;
  switch (n) {
    case 1:
    case 2:
      r = BiHomPoly::one();
      break;
    case 3:
      r = BiHomPoly(2, {3, -6, -1});
      break;
    case 4:
      r = BiHomPoly(3, {2, -10, -10, 2});
      break;
    default:
      if (n % 4 == 1) {
        int m = (n - 1) / 4;
        r = sixteen_z_zw2() * fq(2 * m + 2) * cube(fq(2 * m)) - fq(2 * m - 1) * cube(fq(2 * m + 1));
      } else if (n % 4 == 3) {
        int m = (n - 3) / 4;
        r = fq(2 * m + 3) * cube(fq(2 * m + 1)) - sixteen_z_zw2() * fq(2 * m) * cube(fq(2 * m + 2));
      } else {
        int m = n / 2;
        r = fq(m) * (fq(m + 2) * fq(m - 1) * fq(m - 1) - fq(m - 2) * fq(m + 1) * fq(m + 1));
      }
  }
  quartic_memo[n] = std::move(r);
  return *quartic_memo[n];
}

// psi_n = x^alpha (2y)^beta F(Z, W), Z = y^2, x^3 = Z - W.
struct SexticTerm {
  int alpha = 0;
  int beta = 0;
  BiHomPoly F;
};

SexticTerm smul(const SexticTerm& a, const SexticTerm& b) {
  SexticTerm r{a.alpha + b.alpha, a.beta + b.beta, a.F * b.F};
  if (r.alpha >= 3) {
    r.alpha -= 3;
    r.F = r.F * (BiHomPoly::Z() - BiHomPoly::W());
  }
  if (r.beta >= 2) {
    r.beta -= 2;
    r.F = Integer(4) * BiHomPoly::Z() * r.F;
  }
  return r;
}

SexticTerm ssub(const SexticTerm& a, const SexticTerm& b) {
  if (a.alpha != b.alpha || a.beta != b.beta) raise(ErrorKind::Internal, "sextic recursion prefactor mismatch");
  return {a.alpha, a.beta, a.F - b.F};
}

SexticTerm sdiv_psi2(const SexticTerm& a) {
  if (a.beta == 1) return {a.alpha, 0, a.F};
  return {a.alpha, 1, bihom_exact_div(a.F, Integer(4) * BiHomPoly::Z())};
}

std::vector<std::optional<SexticTerm>> sextic_memo;

const SexticTerm& fs(int n) {
  if (static_cast<int>(sextic_memo.size()) <= n) sextic_memo.resize(n + 1);
  if (sextic_memo[n]) return *sextic_memo[n];
  SexticTerm r;
  switch (n) {
    case 1:
      r = {0, 0, BiHomPoly::one()};
      break;
    case 2:
      r = {0, 1, BiHomPoly::one()};
      break;
    case 3:
      r = {1, 0, BiHomPoly(1, {3, 9})};
      break;
    case 4:
      r = {0, 1, BiHomPoly(2, {2, 36, -54})};
      break;
    default: {
      int m = n / 2;
      auto sq = [](const SexticTerm& a) { return smul(a, a); };
      if (n % 2 == 1) {
        r = ssub(smul(fs(m + 2), smul(fs(m), sq(fs(m)))), smul(fs(m - 1), smul(fs(m + 1), sq(fs(m + 1)))));
      } else {
        SexticTerm inner = ssub(smul(fs(m + 2), sq(fs(m - 1))), smul(fs(m - 2), sq(fs(m + 1))));
        r = sdiv_psi2(smul(fs(m), inner));
      }
    }
  }
  sextic_memo[n] = std::move(r);
  return *sextic_memo[n];
}

}  // namespace

BiHomPoly f_quartic(int n) {
  require_index(n, 1);
  std::lock_guard<std::mutex> lock(quartic_mu);
  return fq(n);
}

BiHomPoly g_quartic(int n) {
  require_index(n, 1);
  std::lock_guard<std::mutex> lock(quartic_mu);
  if (static_cast<int>(quartic_g_memo.size()) <= n) quartic_g_memo.resize(n + 1);
  if (quartic_g_memo[n]) return *quartic_g_memo[n];
  BiHomPoly sq;
  if (n == 1) {
    sq = BiHomPoly::one();
  } else if (n % 2 == 1) {
    sq = fq(n) * fq(n) - Integer(4) * (BiHomPoly::Z() - BiHomPoly::W()) * fq(n - 1) * fq(n + 1);
  } else {
    sq = Integer(4) * BiHomPoly::Z() * (BiHomPoly::Z() - BiHomPoly::W()) * fq(n) * fq(n) - fq(n - 1) * fq(n + 1);
  }
  BiHomPoly g;
  try {
    g = bihom_sqrt(sq);
  } catch (const Error& e) {
    raise(ErrorKind::Internal, "phi_" + std::to_string(n) + " is not a square: " + e.what());
  }
  if (g.coeff(0) != 1) raise(ErrorKind::Internal, "g_" + std::to_string(n) + " is not monic");
  quartic_g_memo[n] = g;
  return g;
}

BiHomPoly f_sextic(int n) {
  require_index(n, 1);
  std::lock_guard<std::mutex> lock(sextic_mu);
  const SexticTerm& t = fs(n);
  if (t.alpha != (n % 3 == 0) || t.beta != (n % 2 == 0))
    raise(ErrorKind::Internal, "sextic prefactor for n=" + std::to_string(n));
  return t.F;
}

IntPoly f_quartic_at(int n, const Integer& D) { return f_quartic(n).substitute(IntPoly::x(), IntPoly::constant(D)); }
IntPoly g_quartic_at(int n, const Integer& D) { return g_quartic(n).substitute(IntPoly::x(), IntPoly::constant(D)); }
IntPoly f_sextic_at(int n, const Integer& A) { return f_sextic(n).substitute(IntPoly::x(), IntPoly::constant(A)); }

PsiPoly psi_from_quartic(int n, const Integer& D) {
  IntPoly v = f_quartic(n).substitute(IntPoly::monomial(1, 2), IntPoly::constant(D));
  if (n % 2 == 0) return {v * Integer(2), 1};
  return {v, 0};
}

PsiPoly psi_from_sextic(int n, const Integer& A) {
  IntPoly z = IntPoly(std::vector<Integer>{A, 0, 0, 1});
  IntPoly v = f_sextic(n).substitute(z, IntPoly::constant(A));
  if (n % 3 == 0) v = v * IntPoly::x();
  if (n % 2 == 0) return {v * Integer(2), 1};
  return {v, 0};
}

}  // namespace cmt
