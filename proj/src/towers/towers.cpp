#include "cmt/towers.hpp"

#include "cmt/divpoly.hpp"
#include "cmt/errors.hpp"
#include "cmt/factor.hpp"
#include "cmt/modp.hpp"
#include "cmt/resultant.hpp"

namespace cmt {

std::string base_field_name(BaseField b) {
  switch (b) {
    case BaseField::Q:
      return "Q";
    case BaseField::QI:
      return "Q(i)";
    default:
      return "Q(zeta3)";
  }
}

IntPoly norm_shift(const IntPoly& f, BaseField base, long c) {
  if (base == BaseField::Q) return f;
  const bool z3 = base == BaseField::QZeta3;
  // acc = A + B u with u^2 = -1 or u^2 = -1 - u.
  IntPoly A, B;
  IntPoly X = IntPoly::x();
  Integer C(c);
  for (int i = f.degree(); i >= 0; --i) {
    IntPoly nA = A * X + C * B;
    IntPoly nB = B * X - C * A;
    if (z3) nB += C * B;
    A = nA + IntPoly::constant(f.coeffs()[i]);
    B = std::move(nB);
  }
  if (z3) return A * A - A * B + B * B;
  return A * A + B * B;
}

namespace {

bool splits_in(std::uint64_t q, BaseField base) { return base == BaseField::QI ? q % 4 == 1 : q % 3 == 1; }

// Degrees over the quadratic base of the factors of a Q-irreducible h.
std::vector<int> split_degrees(const IntPoly& h, BaseField base, const CertifyOptions& opt, std::string* method) {
  int e = h.degree();
  if (e % 2 == 1) {
    *method = "odd-degree";
    return {e};
  }
  for (long c = 1;; ++c) {
    IntPoly N = norm_shift(h, base, c);
    if (!is_squarefree_poly(N)) continue;
    *method = "norm";
    std::vector<int> out;
    for (auto& [g, m] : factor_poly_q(N, {opt.degree_cap, 8})) out.push_back(g.degree() / 2);
    return out;
  }
}

}  // namespace

Certificate irreducibility_certificate(const IntPoly& f, BaseField base, const CertifyOptions& opt) {
  if (f.degree() < 1) raise(ErrorKind::InvalidArgument, "certificate needs positive degree");
  Certificate c;
  c.base = base;
  c.degree = f.degree();
  IntPoly g = normalize(f);
  if (base == BaseField::Q) {
    if (g.degree() > opt.degree_cap)
      raise(ErrorKind::DegreeBudgetExceeded, "degree " + std::to_string(g.degree()) + " above cap");
    auto fac = factor_poly_q(g, {opt.degree_cap, 8});
    c.method = "zassenhaus";
    for (auto& [h, m] : fac)
      for (int k = 0; k < m; ++k) c.factor_degrees.push_back(h.degree());
    c.irreducible = c.factor_degrees.size() == 1;
    return c;
  }
  if (g.degree() == 1) {
    c.irreducible = true;
    c.method = "linear";
    c.factor_degrees = {1};
    return c;
  }
  int tried = 0;
  for (std::uint64_t q = 5; tried < opt.witness_primes; q += 2) {
    if (!is_prime_u64(q) || !splits_in(q, base)) continue;
    if (mod_u64(g.lead(), q) == 0) continue;
    ++tried;
    if (modp::is_irreducible(modp::reduce(g, q), q)) {
      c.irreducible = true;
      c.method = "split-prime";
      c.witness = q;
      c.factor_degrees = {g.degree()};
      return c;
    }
  }
  if (g.degree() > opt.degree_cap) raise(ErrorKind::DegreeBudgetExceeded, "no split-prime witness and degree above cap");
  auto fac = factor_poly_q(g, {opt.degree_cap, 8});
  std::string method = "zassenhaus";
  for (auto& [h, m] : fac) {
    auto d = split_degrees(h, base, opt, &method);
    for (int k = 0; k < m; ++k) c.factor_degrees.insert(c.factor_degrees.end(), d.begin(), d.end());
  }
  c.method = method;
  c.irreducible = c.factor_degrees.size() == 1;
  return c;
}

namespace {

void check_prime(const Integer& p) {
  if (!is_prime(p)) raise(ErrorKind::NotPrime, p.get_str() + " is not prime");
}

IntPoly sq(const IntPoly& a) { return a * a; }

// psi_n on y^2 = x^3 + A as x^alpha * P(Y), Y = y.
struct SexticPsiY {
  int alpha;
  IntPoly P;
};

SexticPsiY psi_in_y(int n, const Integer& A) {
  IntPoly P = f_sextic(n).substitute(IntPoly::monomial(1, 2), IntPoly::constant(A));
  if (n % 2 == 0) P = P * IntPoly{0, 2};
  return {n % 3 == 0 ? 1 : 0, P};
}

Certificate norm_certificate(const Certificate& rel, const IntPoly& L_abs) {
  Certificate c;
  c.base = BaseField::Q;
  c.degree = L_abs.degree();
  c.method = "squarefree-norm";
  c.irreducible = rel.irreducible;
  c.witness = rel.witness;
  if (c.irreducible) c.factor_degrees = {c.degree};
  return c;
}

// Smallest c >= 1 with N(f(X - c g)) squarefree.
std::pair<IntPoly, long> squarefree_norm(const IntPoly& f, BaseField base) {
  for (long c = 1; c < 1000; ++c) {
    IntPoly N = norm_shift(f, base, c);
    if (is_squarefree_poly(N)) return {normalize(N), c};
  }
  raise(ErrorKind::Internal, "no squarefree norm shift");
}

// Res_X(P(X), (T - cX)^2 - X^3 - A) for the smallest c >= 1 giving a squarefree result.
std::pair<IntPoly, long> xy_primitive(const IntPoly& P, const Integer& A) {
  BiPoly a;
  for (const auto& co : P.coeffs()) a.push_back(IntPoly::constant(co));
  for (long c = 1; c < 1000; ++c) {
    BiPoly b{IntPoly(std::vector<Integer>{-A, 0, 1}), IntPoly(std::vector<Integer>{0, -2 * c}),
             IntPoly::constant(Integer(c * c)), IntPoly::constant(-1)};
    IntPoly R = resultant_x(a, b);
    if (R.degree() == 2 * P.degree() && is_squarefree_poly(R)) return {normalize(R), c};
  }
  raise(ErrorKind::Internal, "no primitive element y + c x");
}

}  // namespace

IntPoly f_Dp(const Integer& p, const Integer& D) {
  GaussInt pi = split_prime_gauss(p);
  int a = static_cast<int>(Integer(abs(pi.a)).get_si()), b = static_cast<int>(Integer(abs(pi.b)).get_si());
  if (a % 2 == 0 || b % 2 == 1) raise(ErrorKind::Internal, "primary generator parity");
  IntPoly X = IntPoly::x();
  IntPoly W = IntPoly::constant(D);
  auto at = [&](const BiHomPoly& h) { return h.substitute(X, W); };
  IntPoly r = Integer(4) * X * (X - W) * sq(at(g_quartic(a))) * sq(at(f_quartic(b))) +
              sq(at(g_quartic(b))) * sq(at(f_quartic(a)));
  unsigned half = static_cast<unsigned>((p.get_ui() - 1) / 2);
  if (r.degree() != static_cast<int>(half) || r.lead() != p || r.coeff(0) != ipow(D, half))
    raise(ErrorKind::Internal, "f_{D,p} shape check failed");
  return r;
}

IntPoly h_tilde_Ap(const Integer& p, const Integer& A) {
  auto [ai, bi] = eisenstein_ab(p);
  int a = static_cast<int>(ai.get_si()), b = static_cast<int>(bi.get_si());
  SexticPsiY pa = psi_in_y(a, A), pb = psi_in_y(b, A), p2a = psi_in_y(2 * a, A), p2b = psi_in_y(2 * b, A);
  int e1 = p2b.alpha + 4 * pa.alpha, e2 = p2a.alpha + 4 * pb.alpha;
  IntPoly n1 = p2b.P * sq(sq(pa.P)), n2 = p2a.P * sq(sq(pb.P));
  IntPoly x3 = IntPoly(std::vector<Integer>{-A, 0, 1});  // x^3 = Y^2 - A
  int emin = std::min(e1, e2);
  if ((e1 - emin) % 3 || (e2 - emin) % 3) raise(ErrorKind::Internal, "x-power mismatch in h~");
  n1 = n1 * poly_pow(x3, (e1 - emin) / 3);
  n2 = n2 * poly_pow(x3, (e2 - emin) / 3);
  int eden = pa.alpha + pb.alpha;
  if ((emin - eden) % 3 || emin < eden) raise(ErrorKind::Internal, "x-power mismatch in h~");
  IntPoly num = (n1 - n2) * poly_pow(x3, (emin - eden) / 3);
  IntPoly den = pa.P * pb.P;
  if ((b - a) % 2 == 0) den = den * IntPoly{0, 2};
  IntPoly h = poly_exact_div(num, den);
  int t = a * a + b * b - (b % 2 == 0 ? 1 : 2);
  long pl = p.get_si();
  if (h.degree() != t || !is_even_poly(h) || 3 * t < 2 * (pl - 1) || t >= pl - 1)
    raise(ErrorKind::Internal, "h~ degree " + std::to_string(h.degree()) + " expected " + std::to_string(t));
  return h;
}

IntPoly f_Ap(const Integer& p, const Integer& A) {
  IntPoly h = deflate2(h_tilde_Ap(p, A));
  int want = static_cast<int>((p.get_si() - 1) / 3);
  std::vector<IntPoly> hits;
  for (auto& [g, m] : factor_poly_q(h))
    if (g.degree() == want) hits.push_back(g);
  if (hits.size() != 1)
    raise(ErrorKind::FactorExtractionFailed,
          std::to_string(hits.size()) + " factors of degree " + std::to_string(want) + " in h_{A,p}");
  return hits[0];
}

FieldTowerQuartic build_tower_quartic(const Integer& p, const Integer& D, const TowerOptions& opt) {
  check_prime(p);
  if (D == 0) raise(ErrorKind::InvalidArgument, "D must be nonzero");
  if (p == 2 || mod(D, p) == 0) raise(ErrorKind::BadReduction, "p divides 2D");
  FieldTowerQuartic t;
  t.p = p;
  t.D = D;
  t.split = mod(p, 4) == 1;
  int pn = static_cast<int>(p.get_si());
  if (!t.split) {
    t.base = BaseField::QI;
    BiHomPoly f = f_quartic(pn);
    t.F = normalize(f.dehomogenize());
    IntPoly fD = f.substitute(IntPoly::x(), IntPoly::constant(D));
    t.K = normalize(inflate(fD, 2));
    t.L = normalize(inflate(fD, 4));
    if (opt.absolute) std::tie(t.L_abs, t.norm_shift) = squarefree_norm(t.L, BaseField::QI);
  } else {
    t.base = BaseField::Q;
    t.pi = split_prime_gauss(p);
    t.pi_D = pi_twisted_quartic(D, *t.pi);
    t.F = normalize(f_Dp(p, 1));
    IntPoly fD = f_Dp(p, D);
    t.K = normalize(inflate(fD, 2));
    t.L = normalize(inflate(fD, 4));
    t.L_abs = t.L;
  }
  if (opt.certify) {
    t.cert_F = irreducibility_certificate(t.F, t.base, opt.cert);
    t.cert_K = irreducibility_certificate(t.K, t.base, opt.cert);
    t.cert_L = irreducibility_certificate(t.L, t.base, opt.cert);
    if (opt.absolute) t.cert_L_abs = t.split ? t.cert_L : norm_certificate(t.cert_L, t.L_abs);
  }
  return t;
}

FieldTowerSextic build_tower_sextic(const Integer& p, const Integer& A, const TowerOptions& opt) {
  check_prime(p);
  if (A == 0) raise(ErrorKind::InvalidArgument, "A must be nonzero");
  if (p == 2 || p == 3 || mod(A, p) == 0) raise(ErrorKind::BadReduction, "p divides 6A");
  FieldTowerSextic t;
  t.p = p;
  t.A = A;
  t.split = mod(p, 3) == 1;
  int pn = static_cast<int>(p.get_si());
  IntPoly cubic = IntPoly(std::vector<Integer>{A, 0, 0, 1});
  if (!t.split) {
    t.base = BaseField::QZeta3;
    BiHomPoly f = f_sextic(pn);
    t.F = normalize(f.dehomogenize());
    t.K = normalize(f.substitute(IntPoly::monomial(1, 2), IntPoly::constant(A)));
    t.Kprime = normalize(f.substitute(cubic, IntPoly::constant(A)));
    if (opt.absolute) {
      std::tie(t.L_rel, t.primitive_c) = xy_primitive(t.Kprime, A);
      std::tie(t.L_abs, t.norm_shift) = squarefree_norm(t.L_rel, BaseField::QZeta3);
    }
  } else {
    t.base = BaseField::Q;
    t.pi = split_prime_eisenstein(p);
    t.pi_A = pi_twisted_sextic(A, *t.pi);
    t.ab = eisenstein_ab(p);
    t.h_tilde = h_tilde_Ap(p, A);
    t.t_p = t.h_tilde.degree();
    t.f_Ap = f_Ap(p, A);
    t.F = A == 1 ? t.f_Ap : f_Ap(p, 1);
    t.K = normalize(inflate(t.f_Ap, 2));
    t.Kprime = normalize(compose(t.f_Ap, cubic));
    if (opt.absolute) {
      std::tie(t.L_rel, t.primitive_c) = xy_primitive(t.Kprime, A);
      t.L_abs = t.L_rel;
    }
  }
  if (opt.certify) {
    t.cert_F = irreducibility_certificate(t.F, t.base, opt.cert);
    t.cert_K = irreducibility_certificate(t.K, t.base, opt.cert);
    t.cert_Kprime = irreducibility_certificate(t.Kprime, t.base, opt.cert);
    if (opt.absolute) {
      t.cert_L_rel = irreducibility_certificate(t.L_rel, t.base, opt.cert);
      t.cert_L_abs = t.split ? t.cert_L_rel : norm_certificate(t.cert_L_rel, t.L_abs);
    }
  }
  return t;
}

namespace {

TowerResult run_job(const TowerJob& j, const TowerOptions& opt) {
  TowerResult r;
  try {
    if (j.sextic)
      r.sextic = build_tower_sextic(j.p, j.param, opt);
    else
      r.quartic = build_tower_quartic(j.p, j.param, opt);
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace

std::vector<TowerResult> build_towers_serial(const std::vector<TowerJob>& jobs, const TowerOptions& opt) {
  std::vector<TowerResult> out;
  out.reserve(jobs.size());
  for (const auto& j : jobs) out.push_back(run_job(j, opt));
  return out;
}

std::vector<TowerResult> build_towers_parallel(const std::vector<TowerJob>& jobs, const TowerOptions& opt) {
  std::vector<TowerResult> out(jobs.size());
  const long n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[i] = run_job(jobs[i], opt);
  return out;
}

namespace {

bool proportional(const IntPoly& a, const IntPoly& b) { return normalize(a) == normalize(b); }

// M > 0 with big = small * M^k, if any.
std::optional<Integer> twist_factor(const Integer& small, const Integer& big, unsigned k) {
  if (small == 0 || !mpz_divisible_p(big.get_mpz_t(), small.get_mpz_t())) return std::nullopt;
  Integer q = big / small;
  if (q <= 0) return std::nullopt;
  Integer r;
  if (!mpz_root(r.get_mpz_t(), q.get_mpz_t(), k)) return std::nullopt;
  return r;
}

// f(cX) == c^deg g(X)
bool scales_to(const IntPoly& f, const Integer& c, const IntPoly& g) {
  return scale_var(f, c) == ipow(c, f.degree()) * g;
}

}  // namespace

bool twist_invariance_check(const FieldTowerQuartic& t1, const FieldTowerQuartic& t2, TwistRelation rel) {
  if (t1.p != t2.p || t1.split != t2.split) return false;
  switch (rel) {
    case TwistRelation::Quartic: {
      if (t1.F != t2.F) return false;
      for (const auto* t : {&t1, &t2})
        if (!scales_to(deflate2(t->K), t->D, t->F)) return false;
      return true;
    }
    case TwistRelation::Square: {
      auto M = twist_factor(t1.D, t2.D, 2);
      return M && scales_to(t2.K, *M, t1.K);
    }
    default:
      return false;
  }
}

bool twist_invariance_check(const FieldTowerSextic& t1, const FieldTowerSextic& t2, TwistRelation rel) {
  if (t1.p != t2.p || t1.split != t2.split) return false;
  switch (rel) {
    case TwistRelation::Quartic: {
      if (t1.F != t2.F) return false;
      for (const auto* t : {&t1, &t2}) {
        IntPoly base = deflate2(t->K);
        if (t->split ? !proportional(scale_var(base, t->A), t->F) : !scales_to(base, t->A, t->F)) return false;
      }
      return true;
    }
    case TwistRelation::Square: {
      auto M = twist_factor(t1.A, t2.A, 2);
      if (!M) return false;
      return t1.split ? proportional(scale_var(t2.K, *M), t1.K) : scales_to(t2.K, *M, t1.K);
    }
    case TwistRelation::Cube: {
      auto M = twist_factor(t1.A, t2.A, 3);
      if (!M) return false;
      return t1.split ? proportional(scale_var(t2.Kprime, *M), t1.Kprime) : scales_to(t2.Kprime, *M, t1.Kprime);
    }
  }
  return false;
}

namespace {

nlohmann::json int_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

nlohmann::json cert_json(const Certificate& c) {
  nlohmann::json j{{"base", base_field_name(c.base)},
                   {"degree", c.degree},
                   {"irreducible", c.irreducible},
                   {"method", c.method}};
  if (c.witness) j["witness"] = c.witness;
  if (!c.irreducible) j["factor_degrees"] = c.factor_degrees;
  return j;
}

}  // namespace

nlohmann::json poly_to_json(const IntPoly& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.get_str());
  return a;
}

nlohmann::json tower_to_json(const FieldTowerQuartic& t) {
  nlohmann::json j;
  j["family"] = "quartic";
  j["p"] = int_json(t.p);
  j["parameter"] = int_json(t.D);
  j["case"] = t.split ? "split" : "inert";
  j["base"] = base_field_name(t.base);
  if (t.pi) {
    j["pi"] = {int_json(t.pi->a), int_json(t.pi->b)};
    j["pi_D"] = {int_json(t.pi_D->a), int_json(t.pi_D->b)};
  }
  j["F"] = poly_to_json(t.F);
  j["K"] = poly_to_json(t.K);
  j["L_rel"] = poly_to_json(t.L);
  j["L_abs"] = poly_to_json(t.L_abs);
  j["degrees"] = {{"F", t.F.degree()}, {"K", t.K.degree()}, {"L_rel", t.L.degree()}, {"L_abs", t.L_abs.degree()}};
  if (!t.cert_F.method.empty())
    j["certificates"] = {{"F", cert_json(t.cert_F)},
                         {"K", cert_json(t.cert_K)},
                         {"L_rel", cert_json(t.cert_L)},
                         {"L_abs", cert_json(t.cert_L_abs)}};
  return j;
}

nlohmann::json tower_to_json(const FieldTowerSextic& t) {
  nlohmann::json j;
  j["family"] = "sextic";
  j["p"] = int_json(t.p);
  j["parameter"] = int_json(t.A);
  j["case"] = t.split ? "split" : "inert";
  j["base"] = base_field_name(t.base);
  if (t.pi) {
    j["pi"] = {int_json(t.pi->a), int_json(t.pi->b)};
    j["pi_A"] = {int_json(t.pi_A->a), int_json(t.pi_A->b)};
    j["ab"] = {int_json(t.ab->first), int_json(t.ab->second)};
    j["t_p"] = t.t_p;
    j["h_tilde"] = poly_to_json(t.h_tilde);
  }
  j["F"] = poly_to_json(t.F);
  j["K"] = poly_to_json(t.K);
  j["Kprime"] = poly_to_json(t.Kprime);
  j["L_rel"] = poly_to_json(t.L_rel);
  j["L_abs"] = poly_to_json(t.L_abs);
  j["degrees"] = {{"F", t.F.degree()},
                  {"K", t.K.degree()},
                  {"Kprime", t.Kprime.degree()},
                  {"L_rel", t.L_rel.degree()},
                  {"L_abs", t.L_abs.degree()}};
  if (!t.cert_F.method.empty())
    j["certificates"] = {{"F", cert_json(t.cert_F)},
                         {"K", cert_json(t.cert_K)},
                         {"Kprime", cert_json(t.cert_Kprime)},
                         {"L_rel", cert_json(t.cert_L_rel)},
                         {"L_abs", cert_json(t.cert_L_abs)}};
  return j;
}

}  // namespace cmt
