#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmt/poly.hpp"
#include "cmt/quadratic.hpp"

namespace cmt {

enum class BaseField { Q, QI, QZeta3 };
std::string base_field_name(BaseField b);

struct Certificate {
  BaseField base = BaseField::Q;
  int degree = 0;
  bool irreducible = false;
  std::string method;            // split-prime, zassenhaus, odd-degree, norm, squarefree-norm
  std::uint64_t witness = 0;     // prime for split-prime
  std::vector<int> factor_degrees;  // over the base, when reducible
};

struct CertifyOptions {
  int witness_primes = 400;  // split primes tried before falling back
  int degree_cap = 64;
};

Certificate irreducibility_certificate(const IntPoly& f, BaseField base, const CertifyOptions& opt = {});

// N_{K/Q} of f(X - c*g), g = i or zeta3. Degree 2 deg f.
IntPoly norm_shift(const IntPoly& f, BaseField base, long c);

struct FieldTowerQuartic {
  Integer p, D;
  bool split = false;
  std::optional<GaussInt> pi, pi_D;
  BaseField base = BaseField::QI;
  IntPoly F, K, L, L_abs;
  long norm_shift = 0;  // c used for L_abs (inert)
  Certificate cert_F, cert_K, cert_L, cert_L_abs;
};

struct FieldTowerSextic {
  Integer p, A;
  bool split = false;
  std::optional<EisensteinInt> pi, pi_A;
  std::optional<std::pair<Integer, Integer>> ab;
  BaseField base = BaseField::QZeta3;
  IntPoly h_tilde;  // split only
  int t_p = 0;
  IntPoly f_Ap;     // split only
  IntPoly F, K, Kprime, L_rel, L_abs;
  long primitive_c = 0;  // t = y + c x
  long norm_shift = 0;
  Certificate cert_F, cert_K, cert_Kprime, cert_L_rel, cert_L_abs;
};

struct TowerOptions {
  bool certify = true;
  bool absolute = true;  // build L_abs
  CertifyOptions cert;
};

// f_{D,p}(X) = 4X(X-D) g_|a|^2 f_|b|^2 + g_|b|^2 f_|a|^2 at (X, D), pi = a + ib primary.
IntPoly f_Dp(const Integer& p, const Integer& D);
// h~_{A,p}(Y) and its degree t_p.
IntPoly h_tilde_Ap(const Integer& p, const Integer& A);
// Unique irreducible factor of degree (p-1)/3 of h_{A,p}; FactorExtractionFailed otherwise.
IntPoly f_Ap(const Integer& p, const Integer& A);

FieldTowerQuartic build_tower_quartic(const Integer& p, const Integer& D, const TowerOptions& opt = {});
FieldTowerSextic build_tower_sextic(const Integer& p, const Integer& A, const TowerOptions& opt = {});

struct TowerJob {
  bool sextic = false;
  Integer p, param;
};
struct TowerResult {
  std::optional<FieldTowerQuartic> quartic;
  std::optional<FieldTowerSextic> sextic;
  std::string error;  // domain error text, empty on success
};
std::vector<TowerResult> build_towers_serial(const std::vector<TowerJob>& jobs, const TowerOptions& opt = {});
std::vector<TowerResult> build_towers_parallel(const std::vector<TowerJob>& jobs, const TowerOptions& opt = {});

enum class TwistRelation { Quartic, Square, Cube };
bool twist_invariance_check(const FieldTowerQuartic& t1, const FieldTowerQuartic& t2, TwistRelation rel);
bool twist_invariance_check(const FieldTowerSextic& t1, const FieldTowerSextic& t2, TwistRelation rel);

nlohmann::json poly_to_json(const IntPoly& p);
nlohmann::json tower_to_json(const FieldTowerQuartic& t);
nlohmann::json tower_to_json(const FieldTowerSextic& t);

}  // namespace cmt
