#include "cmt/factor.hpp"

#include <algorithm>
#include <bitset>
#include <numeric>

#include "cmt/errors.hpp"
#include "cmt/modp.hpp"

namespace cmt {

namespace {

using modp::Poly;

bool poly_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
  return false;
}

bool try_exact_div(const IntPoly& a, const IntPoly& b, IntPoly* q) {
  try {
    *q = poly_exact_div(a, b);
    return true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonExactDivision) throw;
    return false;
  }
}

// Coefficient vectors modulo m (nonnegative representatives).
using ZPoly = std::vector<Integer>;

ZPoly zp_trim(ZPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  for (auto& c : r) c = mod(c, m);
  return zp_trim(r);
}

ZPoly lift_poly(const Poly& a) {
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = Integer(static_cast<unsigned long>(a[i]));
  return r;
}

Poly down(const ZPoly& a, std::uint64_t q) {
  Poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod_u64(a[i], q);
  modp::trim(r);
  return r;
}

// Lift F = G*H (mod q), G and H monic, to modulus q^k; F monic modulo q^k.
void hensel_pair(const ZPoly& F, ZPoly& G, ZPoly& H, std::uint64_t q, unsigned k) {
  Poly g0 = down(G, q), h0 = down(H, q), s, t;
  Poly one = modp::xgcd(g0, h0, q, &s, &t);
  if (modp::degree(one) != 0) raise(ErrorKind::Internal, "hensel factors not coprime");
  Integer m = Integer(static_cast<unsigned long>(q));
  Integer qq = m;
  for (unsigned j = 1; j < k; ++j) {
    Integer m_next = m * qq;
    ZPoly gh = zp_mul(G, H, m_next);
    ZPoly e(std::max(F.size(), gh.size()));
    for (size_t i = 0; i < e.size(); ++i) {
      Integer d = (i < F.size() ? F[i] : Integer(0)) - (i < gh.size() ? gh[i] : Integer(0));
      d = mod(d, m_next);
      if (!mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t())) raise(ErrorKind::Internal, "hensel invariant");
      mpz_divexact(e[i].get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    }
    Poly ee = down(e, q);
    Poly quo, r;
    modp::divrem(modp::mul(ee, t, q), g0, q, &quo, &r);
    Poly dh = modp::add(modp::mul(ee, s, q), modp::mul(quo, h0, q), q);
    ZPoly dG = lift_poly(r), dH = lift_poly(dh);
    if (G.size() < dG.size()) G.resize(dG.size());
    for (size_t i = 0; i < dG.size(); ++i) G[i] = mod(G[i] + m * dG[i], m_next);
    if (H.size() < dH.size()) H.resize(dH.size());
    for (size_t i = 0; i < dH.size(); ++i) H[i] = mod(H[i] + m * dH[i], m_next);
    m = m_next;
  }
}

std::vector<ZPoly> hensel_all(const ZPoly& F, const std::vector<Poly>& fac, std::uint64_t q, unsigned k,
                              const Integer& M) {
  if (fac.size() == 1) return {F};
  size_t half = fac.size() / 2;
  Poly g{1}, h{1};
  for (size_t i = 0; i < half; ++i) g = modp::mul(g, fac[i], q);
  for (size_t i = half; i < fac.size(); ++i) h = modp::mul(h, fac[i], q);
  ZPoly G = lift_poly(g), H = lift_poly(h);
  hensel_pair(F, G, H, q, k);
  std::vector<Poly> left(fac.begin(), fac.begin() + half), right(fac.begin() + half, fac.end());
  auto a = hensel_all(G, left, q, k, M);
  auto b = hensel_all(H, right, q, k, M);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Integer symmetric(const Integer& c, const Integer& M) {
  Integer r = mod(c, M);
  if (2 * r > M) r -= M;
  return r;
}

// Achievable factor degrees from a modular pattern.
std::vector<bool> subset_sums(const std::vector<int>& pat, int n) {
  std::vector<bool> s(n + 1, false);
  s[0] = true;
  for (int d : pat)
    for (int i = n; i >= d; --i)
      if (s[i - d]) s[i] = true;
  return s;
}

std::vector<IntPoly> zassenhaus(const IntPoly& g, const FactorOptions& opt) {
  int n = g.degree();
  if (n <= 1) return {g};
  auto primes = good_primes(g, opt.pattern_primes);
  std::vector<bool> possible(n + 1, true);
  std::uint64_t best = 0;
  size_t best_count = SIZE_MAX;
  for (auto q : primes) {
    auto pat = modp::degree_pattern(modp::reduce(g, q), q);
    if (pat.size() == 1) return {g};
    auto s = subset_sums(pat, n);
    for (int i = 0; i <= n; ++i) possible[i] = possible[i] && s[i];
    if (pat.size() < best_count) {
      best_count = pat.size();
      best = q;
    }
  }
  bool any = false;
  for (int i = 1; i < n; ++i) any = any || possible[i];
  if (!any) return {g};

  std::uint64_t q = best;
  Poly gm = modp::reduce(g, q);
  auto fac = modp::factor_squarefree(modp::monic(gm, q), q);

  Integer lc = g.lead();
  Integer bound = 2 * abs(lc) * ipow(2, n) * norm2_bound(g);
  unsigned k = 1;
  Integer M = Integer(static_cast<unsigned long>(q));
  while (M <= bound) {
    M *= static_cast<unsigned long>(q);
    ++k;
  }
  // Monic image of g modulo M.
  Integer lcinv;
  mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), M.get_mpz_t());
  ZPoly F(g.coeffs().size());
  for (size_t i = 0; i < F.size(); ++i) F[i] = mod(g.coeffs()[i] * lcinv, M);
  auto lifted = hensel_all(F, fac, q, k, M);

  std::vector<IntPoly> out;
  IntPoly rest = g;
  std::vector<ZPoly> pool = lifted;
  for (size_t s = 1; 2 * s <= pool.size();) {
    bool found = false;
    std::vector<size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Integer l = rest.lead();
      // Constant term screen.
      Integer c0 = l;
      for (size_t i : idx) c0 = mod(c0 * (pool[i].empty() ? Integer(0) : pool[i][0]), M);
      c0 = symmetric(c0, M);
      Integer r0 = rest.coeff(0) * l;
      bool pass = (c0 == 0) ? (r0 == 0) : (r0 == 0 || mpz_divisible_p(r0.get_mpz_t(), c0.get_mpz_t()));
      if (pass) {
        ZPoly prod{mod(l, M)};
        for (size_t i : idx) prod = zp_mul(prod, pool[i], M);
        std::vector<Integer> cs(prod.size());
        for (size_t i = 0; i < prod.size(); ++i) cs[i] = symmetric(prod[i], M);
        IntPoly cand = primitive_part(IntPoly(cs));
        IntPoly quo;
        if (cand.degree() > 0 && try_exact_div(rest, cand, &quo)) {
          out.push_back(cand);
          rest = quo;
          std::vector<ZPoly> np;
          for (size_t i = 0; i < pool.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) np.push_back(pool[i]);
          pool = std::move(np);
          found = true;
          break;
        }
      }
      // Next combination.
      int pos = static_cast<int>(s) - 1;
      while (pos >= 0 && idx[pos] == pool.size() - s + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (size_t j = pos + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (rest.degree() > 0) out.push_back(primitive_part(rest));
  return out;
}

}  // namespace

std::vector<std::uint64_t> good_primes(const IntPoly& p, int count, std::uint64_t start) {
  std::vector<std::uint64_t> out;
  const auto& primes = small_primes();
  auto it = std::lower_bound(primes.begin(), primes.end(), static_cast<std::uint32_t>(start));
  int misses = 0;
  for (; it != primes.end() && static_cast<int>(out.size()) < count; ++it) {
    std::uint64_t q = *it;
    if (q == 2) continue;
    if (mod_u64(p.lead(), q) == 0) continue;
    if (!modp::is_squarefree(modp::reduce(p, q), q)) {
      if (++misses > 2000) break;
      continue;
    }
    out.push_back(q);
  }
  if (out.empty()) raise(ErrorKind::Internal, "no good prime found (polynomial not squarefree?)");
  return out;
}

PolyFactors squarefree_decomposition(const IntPoly& p) {
  PolyFactors out;
  IntPoly f = primitive_part(p);
  if (f.degree() <= 0) return out;
  IntPoly d = derivative(f);
  IntPoly b = poly_gcd(f, d);
  if (b.degree() == 0) {
    out.emplace_back(f, 1);
    return out;
  }
  IntPoly c = poly_exact_div(f, b);
  IntPoly w = poly_exact_div(d, b);
  IntPoly y = w - derivative(c);
  for (int i = 1; c.degree() > 0; ++i) {
    IntPoly a = poly_gcd(c, y);
    if (a.degree() > 0) out.emplace_back(a, i);
    c = poly_exact_div(c, a);
    y = poly_exact_div(y, a) - derivative(c);
  }
  return out;
}

bool is_squarefree_poly(const IntPoly& p) {
  if (p.degree() <= 0) return true;
  const auto& primes = small_primes();
  int tried = 0;
  for (size_t i = 1; i < primes.size() && tried < 20; ++i) {
    std::uint64_t q = primes[i];
    if (mod_u64(p.lead(), q) == 0) continue;
    ++tried;
    if (modp::is_squarefree(modp::reduce(p, q), q)) return true;
  }
  return poly_gcd(p, derivative(p)).degree() == 0;
}

PolyFactors factor_poly_q(const IntPoly& p, const FactorOptions& opt) {
  if (p.is_zero()) raise(ErrorKind::InvalidArgument, "factor of zero polynomial");
  if (p.degree() > opt.degree_cap)
    raise(ErrorKind::DegreeBudgetExceeded, "degree " + std::to_string(p.degree()) + " exceeds cap " +
                                               std::to_string(opt.degree_cap));
  PolyFactors out;
  for (auto& [part, mult] : squarefree_decomposition(p))
    for (auto& f : zassenhaus(part, opt)) out.emplace_back(normalize(f), mult);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (poly_less(a.first, b.first)) return true;
    if (poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

bool is_irreducible_q(const IntPoly& p, const FactorOptions& opt) {
  if (p.degree() <= 0) return false;
  auto f = factor_poly_q(p, opt);
  return f.size() == 1 && f[0].second == 1;
}

}  // namespace cmt
