#include "cmt/families.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cmt/errors.hpp"
#include "cmt/rootno.hpp"

namespace cmt {

namespace {

Rational rpow(const Rational& x, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

void singular(const std::string& why) { raise(ErrorKind::SingularParameters, why); }

void check_odd_prime(const Integer& p) {
  if (!is_prime(p)) raise(ErrorKind::NotPrime, p.get_str() + " is not prime");
  if (p == 2) raise(ErrorKind::InvalidArgument, "p must be odd");
}

nlohmann::json int_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

// Merge factorizations of the given integers raised to the given exponents.
Factorization merge_parts(const std::vector<std::pair<Integer, unsigned>>& parts, const FactorBudget& budget) {
  std::map<Integer, unsigned> acc;
  int sign = 1;
  for (const auto& [v, e] : parts) {
    if (v == 0) raise(ErrorKind::Internal, "zero part");
    auto f = factor_int(v, budget);
    if (f.sign < 0 && e % 2) sign = -sign;
    for (const auto& [q, k] : f.factors) acc[q] += k * e;
  }
  Factorization out;
  out.sign = sign;
  for (const auto& [q, k] : acc) out.factors.emplace_back(q, k);
  return out;
}

Factorization fourth_power_free(const Factorization& f) {
  Factorization out;
  out.sign = f.sign;
  for (const auto& [q, e] : f.factors)
    if (e % 4) out.factors.emplace_back(q, e % 4);
  return out;
}

unsigned rational_valuation_mod4(const Rational& q, const Integer& p) {
  long v = static_cast<long>(valuation(q.get_num(), p)) - static_cast<long>(valuation(q.get_den(), p));
  return static_cast<unsigned>(((v % 4) + 4) % 4);
}

}  // namespace

Rational kihara_bab(const Rational& r, const Rational& s, const Rational& t) {
  if (r == 0 || s == 0 || t == 0) singular("r, s, t must be nonzero");
  Rational r4 = rpow(r, 4), s4 = rpow(s, 4), t4 = rpow(t, 4);
  if (r4 == s4) singular("r^4 = s^4");
  Rational u = r * s * (2 * t4 - r4 - s4) / (t * (r4 - s4));
  Rational r2 = r * r, s2 = s * s, t2 = t * t, u2 = u * u;
  Rational den = r2 * s2 - t2 * u2;
  if (den == 0) singular("r^2 s^2 = t^2 u^2");
  Rational a = (r4 + s4 - t4 - u2 * u2) / (2 * den);
  Rational b = (s2 * t2 - r2 * u2) * (r2 * t2 - s2 * u2) / den;
  return b * (a + 1) * (a - 1);
}

Rational kihara_k_product(const Rational& r, const Rational& s, const Rational& t) {
  if (r == 0 || s == 0 || t == 0) singular("r, s, t must be nonzero");
  Rational r2 = r * r, s2 = s * s, t2 = t * t;
  Rational r4 = r2 * r2, s4 = s2 * s2;
  if (r4 == s4) singular("r^4 = s^4");
  Rational A = r4 + s4, A2 = A * A, m = 4 * r2 * s2 * t2;
  Rational num = (A + 2 * r2 * t2) * (A - 2 * r2 * t2) * (A + 2 * s2 * t2) * (A - 2 * s2 * t2) *
                 (A2 + m * (r2 + s2 + t2)) * (A2 + m * (r2 - s2 - t2)) * (A2 - m * (r2 + s2 - t2)) *
                 (A2 - m * (r2 - s2 + t2));
  Rational den = 256 * rpow(r4 - s4, 6) * r4 * s4 * rpow(t2, 6);
  return num / den;
}

Rational kihara_k(const Rational& r, const Rational& s, const Rational& t) {
  Rational lhs = kihara_bab(r, s, t);
  Rational k = kihara_k_product(r, s, t);
  if (lhs + k != 0) raise(ErrorKind::Internal, "b(a+1)(a-1) != -k(r,s,t)");
  return k;
}

KiharaConstants kihara_constants(const Integer& p) {
  check_odd_prime(p);
  KiharaConstants k;
  k.p = p;
  k.c = 16 * ipow(p, 4) + 1;
  k.d = 3;
  for (const auto& [q, e] : factor_int(k.c - 2).factors)
    if (mod(q, 4) == 3 && e % 2 == 1) {
      k.ell.push_back(q);
      k.d *= q;
    }
  if (k.ell.size() % 2 == 0) raise(ErrorKind::InvariantViolation, "even number of primes l_i");
  k.alpha = 16 * p * p * k.d * k.d;
  return k;
}

bool is_rational_fourth_power(const Rational& q) {
  if (q <= 0) return false;
  Integer r;
  return mpz_root(r.get_mpz_t(), q.get_num_mpz_t(), 4) != 0 && mpz_root(r.get_mpz_t(), q.get_den_mpz_t(), 4) != 0;
}

KiharaSpecialization kihara_family(const Integer& p, const Rational& t, const FactorBudget& budget) {
  KiharaSpecialization out;
  out.constants = kihara_constants(p);
  out.p = p;
  out.t = t;
  Integer two_p = 2 * p;
  out.D_raw = kihara_k_product(Rational(two_p), Rational(1), t);
  if (out.D_raw == 0) singular("D(t) = 0");
  try {
    if (kihara_bab(Rational(two_p), Rational(1), t) != -out.D_raw) raise(ErrorKind::Internal, "b(a+1)(a-1) != -k");
    out.identity_checked = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularParameters) throw;
  }
  if (unsigned v = rational_valuation_mod4(out.D_raw, p))
    raise(ErrorKind::BadReduction,
          "v_p(D(t)) = " + std::to_string(v) + " mod 4 at p = " + p.get_str() + ", t = " + t.get_str());
  // k is homogeneous of degree 4: D(a/b) ~ (R^4 - S^4)^2 * (eight factors) at R = 2pb, S = b, T = a.
  Integer a = t.get_num(), b = t.get_den();
  Integer R = two_p * b, S = b, T = a;
  Integer R2 = R * R, S2 = S * S, T2 = T * T, A = R2 * R2 + S2 * S2, A2 = A * A, m = 4 * R2 * S2 * T2;
  std::vector<std::pair<Integer, unsigned>> parts{
      {R2 * R2 - S2 * S2, 2},   {A + 2 * R2 * T2, 1},          {A - 2 * R2 * T2, 1},
      {A + 2 * S2 * T2, 1},     {A - 2 * S2 * T2, 1},          {A2 + m * (R2 + S2 + T2), 1},
      {A2 + m * (R2 - S2 - T2), 1}, {A2 - m * (R2 + S2 - T2), 1}, {A2 - m * (R2 - S2 + T2), 1}};
  out.D_factors = fourth_power_free(merge_parts(parts, budget));
  out.D = out.D_factors.value();
  if (!is_rational_fourth_power(out.D_raw / Rational(out.D))) raise(ErrorKind::Internal, "fourth-power reduction");
  out.omega = root_number_quartic(out.D_factors).value;
  return out;
}

namespace {

std::vector<Integer> f_values(const KiharaConstants& k, const Integer& x, const Integer& y) {
  const Integer& p = k.p;
  Integer X2 = (x + y) * (x + y), X4 = X2 * X2, y2 = y * y, y4 = y2 * y2;
  Integer A8 = 8 * k.alpha * k.c * p * p, A2 = 2 * k.alpha * k.c;
  Integer B = 16 * k.alpha * (4 * p * p + 1) * p * p, Bm = 16 * k.alpha * (4 * p * p - 1) * p * p;
  Integer C = 16 * k.alpha * k.alpha * k.c * k.c * p * p;
  return {y2 + A8 * X2,
          y2 - A8 * X2,
          y2 + A2 * X2,
          y2 - A2 * X2,
          y4 + B * y2 * X2 + C * X4,
          y4 - B * y2 * X2 + C * X4,
          y4 + Bm * y2 * X2 - C * X4,
          y4 - Bm * y2 * X2 - C * X4};
}

}  // namespace

Rational quartic_class_quotient(const Integer& p, const Integer& m, const Integer& n) {
  if (m <= 0 || n <= 0) raise(ErrorKind::InvalidArgument, "m, n must be positive");
  auto k = kihara_constants(p);
  Rational T = Rational(4 * k.c * k.d * p * (m + n), n);
  T.canonicalize();
  Rational D = kihara_k(Rational(2 * p), Rational(1), T);
  Integer f = 1;
  for (const auto& v : f_values(k, m, n)) f *= v;
  return D / Rational((k.c - 2) * (k.c - 2) * f);
}

KiharaSpecialization kihara_family_mn(const Integer& p, const Integer& m, const Integer& n,
                                      const FactorBudget& budget) {
  Rational q = quartic_class_quotient(p, m, n);
  if (!is_rational_fourth_power(q)) raise(ErrorKind::Internal, "D(4cdpt) is not (c-2)^2 f(m,n) up to fourth powers");
  KiharaSpecialization out;
  out.constants = kihara_constants(p);
  out.p = p;
  const auto& k = out.constants;
  out.t = Rational(4 * k.c * k.d * p * (m + n), n);
  out.t.canonicalize();
  out.D_raw = kihara_k(Rational(2 * p), Rational(1), out.t);
  out.identity_checked = true;
  if (rational_valuation_mod4(out.D_raw, p) != 0)
    raise(ErrorKind::BadReduction, "v_p(D(m,n)) is not 0 mod 4");
  std::vector<std::pair<Integer, unsigned>> parts{{k.c - 2, 2}};
  for (const auto& v : f_values(k, m, n)) parts.emplace_back(v, 1);
  out.D_factors = fourth_power_free(merge_parts(parts, budget));
  out.D = out.D_factors.value();
  out.omega = root_number_quartic(out.D_factors).value;
  return out;
}

std::vector<Integer> BinaryForm24::factor_values(const Integer& x, const Integer& y) const {
  std::vector<Integer> out;
  for (const auto& f : factors) out.push_back(f.eval(x, y));
  return out;
}

BinaryForm24 binary_form(const Integer& p) {
  BinaryForm24 f;
  f.p = p;
  f.constants = kihara_constants(p);
  const auto& k = f.constants;
  BiHomPoly X = BiHomPoly::Z() + BiHomPoly::W(), Y = BiHomPoly::W();
  BiHomPoly X2 = X * X, Y2 = Y * Y, X4 = X2 * X2, Y4 = Y2 * Y2, X2Y2 = X2 * Y2;
  Integer A8 = 8 * k.alpha * k.c * p * p, A2 = 2 * k.alpha * k.c;
  Integer B = 16 * k.alpha * (4 * p * p + 1) * p * p, Bm = 16 * k.alpha * (4 * p * p - 1) * p * p;
  Integer C = 16 * k.alpha * k.alpha * k.c * k.c * p * p;
  f.factors = {Y2 + A8 * X2,         Y2 - A8 * X2,         Y2 + A2 * X2,         Y2 - A2 * X2,
               Y4 + B * X2Y2 + C * X4, Y4 - B * X2Y2 + C * X4, Y4 + Bm * X2Y2 - C * X4, Y4 - Bm * X2Y2 - C * X4};
  f.expanded = BiHomPoly::one();
  for (const auto& g : f.factors) f.expanded = f.expanded * g;
  return f;
}

bool squarefree_at(const BinaryForm24& form, const Integer& m, const Integer& n, const FactorBudget& budget) {
  auto vals = form.factor_values(m, n);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] == 0) return false;
    for (std::size_t j = 0; j < i; ++j) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), vals[i].get_mpz_t(), vals[j].get_mpz_t());
      if (g != 1) return false;
    }
  }
  for (std::uint32_t q : small_primes()) {
    if (q > 1000) break;
    Integer q2 = Integer(q) * q;
    for (const auto& v : vals)
      if (mpz_divisible_p(v.get_mpz_t(), q2.get_mpz_t())) return false;
  }
  for (const auto& v : vals)
    if (!is_squarefree(v, budget)) return false;
  return true;
}

namespace {

enum class Cell { Squarefree, Not, Coprimality, Timeout };

Cell sieve_cell(const BinaryForm24& form, long m, long n, const FactorBudget& budget, std::string* msg) {
  const auto& k = form.constants;
  Integer g, big = 2 * form.p * k.c * k.d * m, nn = n;
  mpz_gcd(g.get_mpz_t(), nn.get_mpz_t(), big.get_mpz_t());
  if (g != 1) return Cell::Coprimality;
  try {
    return squarefree_at(form, m, n, budget) ? Cell::Squarefree : Cell::Not;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::FactorizationTimeout) throw;
    *msg = e.what();
    return Cell::Timeout;
  }
}

void check_box(long box, const SieveOptions& opt) {
  if (box < 0) raise(ErrorKind::InvalidArgument, "box must be nonnegative");
  if (box > opt.max_box) raise(ErrorKind::InvalidArgument, "box " + std::to_string(box) + " above budget");
}

SieveResult collect(long box, const std::vector<Cell>& cells, const std::vector<std::string>& msgs) {
  SieveResult r;
  r.box = box;
  r.cells = box * box;
  for (long i = 0; i < r.cells; ++i) {
    long m = i / box + 1, n = i % box + 1;
    switch (cells[i]) {
      case Cell::Squarefree:
        r.pairs.emplace_back(m, n);
        break;
      case Cell::Coprimality:
        ++r.rejected_coprimality;
        break;
      case Cell::Timeout:
        r.timeouts.push_back({{m, n}, msgs[i]});
        break;
      default:
        break;
    }
  }
  return r;
}

}  // namespace

SieveResult squarefree_sieve(const BinaryForm24& form, long box, const SieveOptions& opt) {
  check_box(box, opt);
  std::vector<Cell> cells(box * box);
  std::vector<std::string> msgs(box * box);
  for (long i = 0; i < box * box; ++i) cells[i] = sieve_cell(form, i / box + 1, i % box + 1, opt.budget, &msgs[i]);
  return collect(box, cells, msgs);
}

SieveResult squarefree_sieve_parallel(const BinaryForm24& form, long box, const SieveOptions& opt) {
  check_box(box, opt);
  const long total = box * box;
  std::vector<Cell> cells(total);
  std::vector<std::string> msgs(total);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < total; ++i) cells[i] = sieve_cell(form, i / box + 1, i % box + 1, opt.budget, &msgs[i]);
  return collect(box, cells, msgs);
}

std::vector<std::pair<long, long>> squarefree_bruteforce(const BinaryForm24& form, long box,
                                                         const FactorBudget& budget) {
  std::vector<std::pair<long, long>> out;
  for (long m = 1; m <= box; ++m)
    for (long n = 1; n <= box; ++n) {
      Integer N = form.eval(m, n);
      auto vals = form.factor_values(m, n);
      Integer prod = 1;
      for (const auto& v : vals) prod *= v;
      if (prod != N) raise(ErrorKind::Internal, "factor product differs from expanded form");
      std::vector<std::pair<Integer, unsigned>> parts;
      for (const auto& v : vals) parts.emplace_back(v, 1);
      auto f = merge_parts(parts, budget);
      if (f.value() != N) raise(ErrorKind::Internal, "factorization does not reproduce f(m,n)");
      if (std::all_of(f.factors.begin(), f.factors.end(), [](const auto& qe) { return qe.second == 1; }))
        out.emplace_back(m, n);
    }
  return out;
}

Integer congruent_D(const Integer& k) { return (8 * k + 5) * (8 * k + 6) * (8 * k + 7); }

Integer congruent_f(const Integer& s) {
  Integer u = 2 * s + 1, u2 = u * u;
  return u2 * u2 + 24 * u2 + 16;
}

CongruentFamily congruent_families(const Integer& p, int count) {
  if (!is_prime(p)) raise(ErrorKind::NotPrime, p.get_str() + " is not prime");
  if (p == 2) raise(ErrorKind::WrongResidueClass, "p must be odd");
  if (count < 0) raise(ErrorKind::InvalidArgument, "count must be nonnegative");
  CongruentFamily fam;
  fam.p = p;
  fam.kind = mod(p, 4) == 1 ? 'S' : 'T';
  fam.residue = fam.kind == 'S' ? 2 : 1;
  for (int i = 0; i < count; ++i) {
    CongruentMember m;
    if (fam.kind == 'T') {
      m.index = p * i;
      m.value = congruent_f(m.index);
    } else {
      m.index = p == 5 ? Integer(5 * (i / 2) + (i % 2 == 0 ? 2 : 4)) : Integer(p * i);
      m.value = congruent_D(m.index);
    }
    m.squarefree = squarefree_part(m.value);
    m.is_squarefree = is_squarefree(m.squarefree);
    m.coprime_to_p = mod(m.squarefree, p) != 0;
    m.residue_ok = mod(m.squarefree, 8) == fam.residue;
    fam.members.push_back(m);
  }
  return fam;
}

Integer disc_bound(const Integer& n, const Integer& p, CmRing ring) {
  if (n == 0) raise(ErrorKind::InvalidArgument, "n must be nonzero");
  if (!is_prime(p)) raise(ErrorKind::NotPrime, p.get_str() + " is not prime");
  bool inert = ring == CmRing::Gauss ? mod(p, 4) == 3 : mod(p, 3) == 2;
  Integer an = abs(n);
  if (inert) return 8 * an * p;
  Integer x = 64 * an * an * p;
  Integer r = isqrt(x);
  if (r * r < x) ++r;
  return r;
}

nlohmann::json kihara_to_json(const KiharaSpecialization& k) {
  nlohmann::json ell = nlohmann::json::array();
  for (const auto& q : k.constants.ell) ell.push_back(int_json(q));
  nlohmann::json fac = nlohmann::json::array();
  for (const auto& [q, e] : k.D_factors.factors) fac.push_back({int_json(q), e});
  return {{"p", int_json(k.p)},
          {"t", k.t.get_str()},
          {"D", k.D.get_str()},
          {"D_factorization", {{"sign", k.D_factors.sign}, {"factors", fac}}},
          {"v_p_mod_4", 0},
          {"omega", k.omega},
          {"identity_checked", k.identity_checked},
          {"constants",
           {{"c", int_json(k.constants.c)},
            {"ell", ell},
            {"d", int_json(k.constants.d)},
            {"alpha", int_json(k.constants.alpha)}}}};
}

nlohmann::json congruent_family_to_json(const CongruentFamily& f) {
  nlohmann::json ms = nlohmann::json::array();
  for (const auto& m : f.members)
    ms.push_back({{"index", int_json(m.index)},
                  {"value", int_json(m.value)},
                  {"squarefree_part", int_json(m.squarefree)},
                  {"squarefree", m.is_squarefree},
                  {"coprime_to_p", m.coprime_to_p},
                  {"residue_ok", m.residue_ok}});
  return {{"p", int_json(f.p)},
          {"family", std::string(1, f.kind) + "_" + f.p.get_str()},
          {"residue_mod_8", f.residue},
          {"members", ms}};
}

nlohmann::json sieve_to_json(const SieveResult& r) {
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [m, n] : r.pairs) pairs.push_back({m, n});
  nlohmann::json to = nlohmann::json::array();
  for (const auto& [mn, msg] : r.timeouts) to.push_back({{"m", mn.first}, {"n", mn.second}, {"error", msg}});
  return {{"box", r.box},
          {"cells", r.cells},
          {"count", r.pairs.size()},
          {"pairs", pairs},
          {"rejected_coprimality", r.rejected_coprimality},
          {"timeouts", to}};
}

}  // namespace cmt
