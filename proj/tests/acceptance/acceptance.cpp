#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cmt/classgroup.hpp"
#include "cmt/divpoly.hpp"
#include "cmt/errors.hpp"
#include "cmt/families.hpp"
#include "cmt/quadratic.hpp"
#include "cmt/rank.hpp"
#include "cmt/rootno.hpp"
#include "cmt/towers.hpp"
#include "ec_oracle.hpp"

using namespace cmt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  bool known = false;  // fails only on a condition recorded as unattainable
  long checks = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
};

std::mt19937_64& rng() {
  static std::mt19937_64 g(20240915);
  return g;
}

long rand_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

std::string table_path(const std::string& name) { return std::string(CMT_DATA_DIR) + "/tables/" + name; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome divpoly_oracle() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 25; ++trial) {
    Integer D = rand_int(-50, 50), A = rand_int(-50, 50), x = rand_int(-40, 40);
    if (D == 0) D = 1;
    if (A == 0) A = -1;
    auto vq = psi_generic_values(31, -D, 0, x);
    auto vs = psi_generic_values(30, 0, A, x);
    Integer Fq = x * x * x - D * x;
    for (int n = 1; n <= 30; ++n) {
      Integer f = f_quartic(n).eval(x * x, D);
      o.check(vq[n] == (n % 2 ? f : Integer(2 * f)), "quartic f_" + std::to_string(n));
      Integer g = g_quartic(n).eval(x * x, D);
      Integer phi = n % 2 ? Integer(x * vq[n] * vq[n] - Fq * vq[n - 1] * vq[n + 1])
                          : Integer(x * Fq * vq[n] * vq[n] - vq[n - 1] * vq[n + 1]);
      o.check(phi == (n % 2 ? Integer(x * g * g) : Integer(g * g)), "quartic g_" + std::to_string(n));
      Integer s = f_sextic(n).eval(x * x * x + A, A);
      if (n % 3 == 0) s *= x;
      if (n % 2 == 0) s *= 2;
      o.check(vs[n] == s, "sextic f_" + std::to_string(n));
    }
  }
  double t = seconds_since(t0);
  o.check(t < 30, "runtime");
  std::ostringstream d;
  d << "n <= 30, 25 evaluations per family, " << o.checks - 1 << " identities, " << t << " s";
  o.detail = d.str();
  return o;
}

Outcome printed_base_cases() {
  Outcome o;
  o.check(f_quartic(3).to_string() == "3*Z^2 - 6*Z*W - W^2", "quartic f_3");
  o.check(f_quartic(4) == Integer(2) * BiHomPoly(3, {1, -5, -5, 1}), "quartic f_4");
  o.check(f_sextic(3) == Integer(3) * BiHomPoly(1, {1, 3}), "sextic f_3");
  o.check(f_sextic(4) == Integer(2) * BiHomPoly(2, {1, 18, -27}), "sextic f_4");
  o.check(g_quartic(2).to_string() == "Z + W", "g_2");
  o.check(f_quartic(1) == BiHomPoly::one() && f_quartic(2) == BiHomPoly::one(), "quartic f_1, f_2");
  o.check(f_sextic(1) == BiHomPoly::one() && f_sextic(2) == BiHomPoly::one(), "sextic f_1, f_2");
  o.detail = "f_3, f_4 (both families), g_2 = " + g_quartic(2).to_string();
  return o;
}

Outcome multiplication_law() {
  Outcome o;
  std::mt19937_64& g = rng();
  int fields = 0;
  long points = 0;
  while (fields < 20) {
    std::uint64_t q = 5 + g() % 20000;
    if (!is_prime_u64(q)) continue;
    long a4 = rand_int(-30, 30), a6 = rand_int(-30, 30);
    if (mod(4 * ipow(a4, 3) + 27 * a6 * a6, q) == 0) continue;
    ++fields;
    cmt::testing::ModCurve E{q, mod_u64(a4, q), mod_u64(a6, q)};
    std::vector<PsiPoly> psi, om;
    std::vector<IntPoly> phi;
    for (int n = 1; n <= 12; ++n) {
      psi.push_back(psi_generic(n, a4, a6));
      om.push_back(omega_generic(n, a4, a6));
      phi.push_back(phi_generic(n, a4, a6));
    }
    for (int i = 0; i < 100; ++i, ++points) {
      auto P = E.random_point(g);
      auto [x, y] = *P;
      std::vector<cmt::testing::ModCurve::Pt> multiples{P};
      for (int n = 2; n <= 12; ++n) multiples.push_back(E.plus(multiples.back(), P));
      for (int n = 1; n <= 12; ++n) {
        const auto& nP = multiples[n - 1];
        std::uint64_t s = cmt::testing::eval_psi(psi[n - 1], x, y, q);
        if (s == 0 || !nP) {
          o.check(s == 0 && !nP, "torsion point");
          continue;
        }
        std::uint64_t s2 = E.mul(s, s);
        o.check(nP->first == E.mul(cmt::testing::eval_mod(phi[n - 1], x, q), E.inv(s2)), "x(nP)");
        o.check(nP->second == E.mul(cmt::testing::eval_psi(om[n - 1], x, y, q), E.inv(E.mul(s2, s))), "y(nP)");
      }
    }
  }
  o.detail = std::to_string(fields) + " prime fields, " + std::to_string(points) + " points, n <= 12";
  return o;
}

Outcome f_Dp_structure() {
  Outcome o;
  int polys = 0;
  for (long p = 5; p <= 37; p += 4) {
    if (!is_prime(p)) continue;
    for (long D = -10; D <= 10; ++D) {
      if (D == 0 || D % p == 0) continue;
      IntPoly f = f_Dp(p, D);
      std::string tag = "p=" + std::to_string(p) + " D=" + std::to_string(D);
      o.check(f.degree() == (p - 1) / 2, tag + " degree");
      o.check(f.lead() == p, tag + " leading");
      o.check(f.coeff(0) == ipow(D, (p - 1) / 2), tag + " constant");
      ++polys;
    }
  }
  o.detail = std::to_string(polys) + " polynomials, split p <= 37, |D| <= 10";
  return o;
}

Outcome tower_degrees() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  int towers = 0, skipped_bad = 0;
  for (long p : {3, 5, 7, 13}) {
    for (long D = -20; D <= 20; ++D) {
      if (D == 0) continue;
      std::string tag = "quartic p=" + std::to_string(p) + " D=" + std::to_string(D);
      if (D % p == 0) {
        ++skipped_bad;
        continue;
      }
      auto t = build_tower_quartic(p, D);
      ++towers;
      long s = t.split ? (p - 1) / 2 : (p * p - 1) / 4;
      o.check(t.split == (p % 4 == 1), tag + " case");
      o.check(t.F.degree() == s && t.K.degree() == 2 * s && t.L.degree() == 4 * s, tag + " degrees");
      o.check(t.cert_F.irreducible && t.cert_K.irreducible && t.cert_L.irreducible, tag + " certificates");
      o.check(t.L_abs.degree() == (t.split ? 2 * (p - 1) : 2 * (p * p - 1)), tag + " absolute degree");
      o.check(t.cert_L_abs.irreducible, tag + " absolute certificate");
    }
  }
  for (long p : {5, 7, 13}) {
    for (long A = -20; A <= 20; ++A) {
      if (A == 0) continue;
      std::string tag = "sextic p=" + std::to_string(p) + " A=" + std::to_string(A);
      if (A % p == 0) {
        ++skipped_bad;
        continue;
      }
      auto t = build_tower_sextic(p, A);
      ++towers;
      long s = t.split ? (p - 1) / 3 : (p * p - 1) / 6;
      o.check(t.split == (p % 3 == 1), tag + " case");
      o.check(t.F.degree() == s && t.K.degree() == 2 * s && t.Kprime.degree() == 3 * s, tag + " degrees");
      o.check(t.cert_F.irreducible && t.cert_K.irreducible && t.cert_Kprime.irreducible, tag + " certificates");
      if (!t.split) o.check(t.L_rel.degree() == p * p - 1 && t.cert_L_rel.irreducible, tag + " relative L");
      o.check(t.L_abs.degree() == (t.split ? 2 * (p - 1) : 2 * (p * p - 1)), tag + " absolute degree");
      o.check(t.cert_L_abs.irreducible, tag + " absolute certificate");
    }
  }
  // p = 3 is a prime of bad reduction for every y^2 = x^3 + A.
  bool bad3 = false;
  try {
    build_tower_sextic(3, 1);
  } catch (const Error& e) {
    bad3 = e.kind() == ErrorKind::BadReduction;
  }
  o.check(bad3, "sextic p=3 rejected");
  double t = seconds_since(t0);
  o.check(t < 300, "runtime");
  std::ostringstream d;
  d << towers << " towers, " << skipped_bad << " bad-reduction parameters skipped, sextic p=3 excluded, " << t
    << " s";
  o.detail = d.str();
  return o;
}

Outcome h_tilde_window() {
  Outcome o;
  int polys = 0;
  for (long p = 7; p <= 31; p += 6) {
    if (!is_prime(p)) continue;
    auto [a, b] = eisenstein_ab(p);
    Integer s = a * a + b * b;
    for (long A = -10; A <= 10; ++A) {
      if (A == 0 || A % p == 0) continue;
      IntPoly h = h_tilde_Ap(p, A);
      long t = h.degree();
      std::string tag = "p=" + std::to_string(p) + " A=" + std::to_string(A);
      o.check(is_even_poly(h), tag + " even powers");
      o.check(t == s - 1 || t == s - 2, tag + " t_p");
      o.check(3 * t >= 2 * (p - 1) && t < p - 1, tag + " window");
      ++polys;
    }
  }
  o.detail = std::to_string(polys) + " polynomials, split p <= 31, |A| <= 10";
  return o;
}

Outcome table_omegas() {
  Outcome o;
  for (const char* w : {"ED", "EA", "CN", "CS"})
    for (const auto& e : load_expected(table_path(std::string(w) + "_expected.csv")))
      o.check(family_omega(e.family, e.parameter) == e.omega,
              std::string(w) + " " + e.parameter.get_str());
  o.detail = std::to_string(o.checks) + " omega values";
  return o;
}

Outcome table_ranks() {
  Outcome o;
  long rows = 0, mismatched = 0, contradicted = 0, unexplained = 0;
  std::string notes;
  for (const char* w : {"ED", "EA", "CN", "CS"}) {
    auto exp = load_expected(table_path(std::string(w) + "_expected.csv"));
    auto data = load_table(table_path(std::string(w) + ".csv"));
    auto diff = reproduce_table_parallel(exp, data);
    for (const auto& r : diff.rows) {
      ++rows;
      o.check(r.omega == r.expected.omega, std::string(w) + " omega");
      if (r.match) continue;
      ++mismatched;
      if (r.contradicted) {
        ++contradicted;
        notes += std::string(notes.empty() ? "" : "; ") + w + " " + r.expected.parameter.get_str() + " printed " +
                 r.expected.rank + ", computed " + r.rank + " (" + r.note + ")";
      } else {
        ++unexplained;
      }
    }
  }
  o.check(mismatched == 0, "zero diffs");
  o.known = !o.pass && unexplained == 0 && mismatched == contradicted;
  std::ostringstream d;
  d << rows - mismatched << "/" << rows << " rows match";
  if (mismatched) d << "; " << contradicted << " rows contradict other rows of the printed table: " << notes;
  if (unexplained) d << "; " << unexplained << " unexplained";
  o.detail = d.str();
  return o;
}

Outcome residue_symbols() {
  Outcome o;
  std::vector<long> gp, ep;
  for (long p = 5; p < 1000; ++p) {
    if (!is_prime(p)) continue;
    if (p % 4 == 1) {
      gp.push_back(p);
      GaussInt pi = split_prime_gauss(p);
      o.check(pi.norm() == p && gauss_is_primary(pi), "gauss normalization " + std::to_string(p));
      o.check(mod(pi.b, 2) == 0 && mod(pi.a + pi.b - 1, 4) == 0, "pi = 1 mod 2+2i at " + std::to_string(p));
    }
    if (p % 3 == 1) {
      ep.push_back(p);
      EisensteinInt pi = split_prime_eisenstein(p);
      o.check(pi.norm() == p && eisenstein_is_primary(pi), "eisenstein normalization " + std::to_string(p));
      o.check(mod(pi.a, 3) == 2 && mod(pi.b, 3) == 0, "pi = 2 mod 3 at " + std::to_string(p));
    }
  }
  long normalized = static_cast<long>(gp.size() + ep.size());
  for (int t = 0; t < 500; ++t) {
    long p = gp[rand_int(0, gp.size() - 1)];
    GaussInt pi = split_prime_gauss(p);
    Integer P = p, r = gauss_residue_root(pi);
    Integer X = rand_int(1, p - 1) + p * rand_int(-100, 100), Y = rand_int(1, p - 1) + p * rand_int(-100, 100);
    UnitPower sx = quartic_symbol(X, pi), sy = quartic_symbol(Y, pi);
    o.check(quartic_symbol(X * Y, pi) == sx * sy, "quartic multiplicativity");
    o.check(powmod(mod(X, P), (P - 1) / 4, P) == powmod(r, sx.k, P), "quartic definition");

    long q = ep[rand_int(0, ep.size() - 1)];
    EisensteinInt e = split_prime_eisenstein(q);
    Integer Q = q, z6 = mod(1 + eisenstein_residue_root(e), Q);
    Integer U = rand_int(1, q - 1) + q * rand_int(-100, 100), V = rand_int(1, q - 1) + q * rand_int(-100, 100);
    UnitPower su = sextic_symbol(U, e), sv = sextic_symbol(V, e);
    o.check(sextic_symbol(U * V, e) == su * sv, "sextic multiplicativity");
    o.check(powmod(mod(U, Q), (Q - 1) / 6, Q) == powmod(z6, su.k, Q), "sextic definition");
  }
  o.detail = "500 random cases per ring, " + std::to_string(normalized) + " split primes p <= 1000 normalized";
  return o;
}

Outcome kihara() {
  Outcome o;
  int triples = 0, singular = 0;
  while (triples < 25) {
    auto rat = [] {
      long a = 0;
      while (a == 0) a = rand_int(-12, 12);
      Rational q(a, rand_int(1, 9));
      q.canonicalize();
      return q;
    };
    Rational r = rat(), s = rat(), t = rat();
    try {
      Rational k = kihara_k(r, s, t);
      o.check(kihara_bab(r, s, t) == -k, "b(a+1)(a-1) = -k");
      ++triples;
    } catch (const Error& e) {
      o.check(e.kind() == ErrorKind::SingularParameters, "singular triple");
      ++singular;
    }
  }
  std::vector<std::pair<long, long>> mn;
  while (mn.size() < 5) mn.emplace_back(rand_int(1, 20), rand_int(1, 20));
  for (auto [m, n] : mn)
    o.check(is_rational_fourth_power(quartic_class_quotient(3, m, n)),
            "quartic class at (" + std::to_string(m) + "," + std::to_string(n) + ")");
  int primes = 0;
  for (long p = 3; p <= 100; ++p) {
    if (!is_prime(p)) continue;
    auto c = kihara_constants(p);
    o.check(mod(c.c - 2, 4) == 3, "c - 2 = 3 mod 4 at " + std::to_string(p));
    o.check(c.ell.size() % 2 == 1, "odd ell count at " + std::to_string(p));
    ++primes;
  }
  o.detail = std::to_string(triples) + " triples (" + std::to_string(singular) + " singular redrawn), 5 (m,n) for p=3, " +
             std::to_string(primes) + " primes p <= 100";
  return o;
}

Outcome sieve_and_families() {
  Outcome o;
  auto form = binary_form(3);
  auto sieve = squarefree_sieve_parallel(form, 5);
  auto brute = squarefree_bruteforce(form, 5);
  std::vector<std::pair<long, long>> frozen{{1, 5}, {2, 5}, {3, 5}, {4, 1}, {4, 5}};
  o.check(sieve.pairs == brute, "sieve = brute force");
  o.check(brute == frozen, "brute force = frozen reference");
  o.check(sieve.timeouts.empty(), "no timeouts");
  int members = 0;
  for (long p : {5, 13, 3, 7}) {
    auto fam = congruent_families(p, 20);
    o.check(fam.members.size() == 20, "member count");
    for (const auto& m : fam.members) {
      o.check(m.ok(), "member " + m.index.get_str() + " of p=" + std::to_string(p));
      ++members;
    }
  }
  o.check(congruent_D(0) == 210, "D(0)");
  o.check(congruent_f(0) == 41, "f(0)");
  o.detail = "5x5 box: " + std::to_string(sieve.pairs.size()) + " squarefree cells; " + std::to_string(members) +
             " family members; D(0) = " + congruent_D(0).get_str() + ", f(0) = " + congruent_f(0).get_str();
  return o;
}

Outcome twist_invariance() {
  Outcome o;
  int identities = 0;
  for (long p : {3, 5, 7, 11, 13}) {
    IntPoly fq1 = f_quartic_at(p, 1), gq1 = g_quartic_at(p, 1), fs1 = f_sextic_at(p, 1);
    int sq = quartic_f_degree(p), gq = quartic_g_degree(p), ss = sextic_f_degree(p);
    for (long D = -10; D <= 10; ++D) {
      if (D == 0) continue;
      std::string tag = "p=" + std::to_string(p) + " D=" + std::to_string(D);
      o.check(scale_var(f_quartic_at(p, D), D) == ipow(D, sq) * fq1, tag + " quartic f");
      o.check(scale_var(g_quartic_at(p, D), D) == ipow(D, gq) * gq1, tag + " quartic g");
      o.check(scale_var(f_sextic_at(p, D), D) == ipow(D, ss) * fs1, tag + " sextic f");
      identities += 3;
      if (D % p == 0) continue;
      if (p % 4 == 1) {
        o.check(scale_var(f_Dp(p, D), D) == ipow(D, (p - 1) / 2) * f_Dp(p, 1), tag + " f_{D,p}");
        ++identities;
      }
      if (p % 3 == 1) {
        o.check(normalize(scale_var(f_Ap(p, D), D)) == normalize(f_Ap(p, 1)), tag + " f_{A,p}");
        ++identities;
      }
    }
  }
  o.detail = std::to_string(identities) + " identities, p <= 13, 1 <= |D| <= 10";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"division-polynomial oracle equivalence", divpoly_oracle},
      {"printed base cases", printed_base_cases},
      {"multiplication law", multiplication_law},
      {"f_{D,p} leading and constant coefficients", f_Dp_structure},
      {"tower degrees and irreducibility certificates", tower_degrees},
      {"h~_{A,p} even powers and degree window", h_tilde_window},
      {"root numbers against all four tables", table_omegas},
      {"rank column reproduction", table_ranks},
      {"residue-symbol laws and normalizations", residue_symbols},
      {"Kihara identities and constants", kihara},
      {"square-free sieve and congruent families", sieve_and_families},
      {"twist-invariance identities", twist_invariance},
  };
  int failed = 0, known = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %2zu %s: %s", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    if (!o.pass && !o.first_failure.empty()) std::printf(" [first failure: %s]", o.first_failure.c_str());
    if (o.known) std::printf(" [known: recorded as unattainable]");
    std::printf(" (%.2f s)\n", seconds_since(t0));
    if (!o.pass) (o.known ? known : failed)++;
  }
  std::printf("%d passed, %d failed (%d known)\n", static_cast<int>(criteria.size()) - failed - known, failed + known,
              known);
  return failed == 0 ? 0 : 1;
}
