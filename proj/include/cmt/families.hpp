#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cmt/integer.hpp"
#include "cmt/poly.hpp"

namespace cmt {

// b(a+1)(a-1) for Kihara's u, a, b.
Rational kihara_bab(const Rational& r, const Rational& s, const Rational& t);
// The closed product; homogeneous of degree 4.
Rational kihara_k_product(const Rational& r, const Rational& s, const Rational& t);
// Closed product after checking b(a+1)(a-1) = -k. SingularParameters.
Rational kihara_k(const Rational& r, const Rational& s, const Rational& t);

struct KiharaConstants {
  Integer p;
  Integer c;                // 16p^4 + 1
  std::vector<Integer> ell;  // primes = 3 mod 4 with odd valuation in c - 2
  Integer d;                // 3 * prod ell
  Integer alpha;            // 16 p^2 d^2
};

KiharaConstants kihara_constants(const Integer& p);

struct KiharaSpecialization {
  Integer p;
  Rational t;
  Rational D_raw;  // k(2p, 1, t)
  Integer D;       // fourth-power-free
  Factorization D_factors;
  int omega = 1;
  bool identity_checked = false;  // false where u, a or b has a vanishing denominator
  KiharaConstants constants;
};

// D(t) = k(2p, 1, t) from the closed product. BadReduction unless v_p(D(t)) = 0 mod 4.
KiharaSpecialization kihara_family(const Integer& p, const Rational& t, const FactorBudget& budget = {});
// D(4cdp (m+n)/n), reduced through (c-2)^2 f(m,n) after the fourth-power class check.
KiharaSpecialization kihara_family_mn(const Integer& p, const Integer& m, const Integer& n,
                                      const FactorBudget& budget = {});

// D(4cdp t) / ((c-2)^2 f(m,n)) with t = (m+n)/n.
Rational quartic_class_quotient(const Integer& p, const Integer& m, const Integer& n);
// q in (Q*)^4.
bool is_rational_fourth_power(const Rational& q);

struct BinaryForm24 {
  Integer p;
  KiharaConstants constants;
  std::vector<BiHomPoly> factors;  // in x = Z, y = W; degrees 2,2,2,2,4,4,4,4
  BiHomPoly expanded;

  std::vector<Integer> factor_values(const Integer& x, const Integer& y) const;
  Integer eval(const Integer& x, const Integer& y) const { return expanded.eval(x, y); }
};

BinaryForm24 binary_form(const Integer& p);

struct SieveOptions {
  long max_box = 100;
  FactorBudget budget;
};

struct SieveResult {
  long box = 0;
  std::vector<std::pair<long, long>> pairs;  // lexicographic
  long cells = 0;
  long rejected_coprimality = 0;
  std::vector<std::pair<std::pair<long, long>, std::string>> timeouts;
};

// Squarefree test of f(m, n) from the factored values: each factor squarefree and pairwise coprime.
bool squarefree_at(const BinaryForm24& form, const Integer& m, const Integer& n, const FactorBudget& budget = {});

SieveResult squarefree_sieve(const BinaryForm24& form, long box, const SieveOptions& opt = {});
SieveResult squarefree_sieve_parallel(const BinaryForm24& form, long box, const SieveOptions& opt = {});

// Direct test of every cell of the expanded form; reference for the sieve.
std::vector<std::pair<long, long>> squarefree_bruteforce(const BinaryForm24& form, long box,
                                                         const FactorBudget& budget = {});

// (8k+5)(8k+6)(8k+7)
Integer congruent_D(const Integer& k);
// (2s+1)^4 + 24(2s+1)^2 + 16
Integer congruent_f(const Integer& s);

struct CongruentMember {
  Integer index;  // k for S_p, s for T_p
  Integer value;
  Integer squarefree;
  bool is_squarefree = false;
  bool coprime_to_p = false;
  bool residue_ok = false;
  bool ok() const { return is_squarefree && coprime_to_p && residue_ok; }
};

struct CongruentFamily {
  Integer p;
  char kind = 'S';  // 'S': p = 1 mod 4, 'T': p = 3 mod 4
  int residue = 2;  // expected squarefree part mod 8
  std::vector<CongruentMember> members;
};

// WrongResidueClass for p = 2.
CongruentFamily congruent_families(const Integer& p, int count);

enum class CmRing { Gauss, Eisenstein };

// ceil(8 |n| sqrt(N(P))) with N(P) = p for split p, p^2 for inert p.
Integer disc_bound(const Integer& n, const Integer& p, CmRing ring);

nlohmann::json kihara_to_json(const KiharaSpecialization& k);
nlohmann::json congruent_family_to_json(const CongruentFamily& f);
nlohmann::json sieve_to_json(const SieveResult& r);

}  // namespace cmt
