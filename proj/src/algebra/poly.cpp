#include "cmt/poly.hpp"

#include <algorithm>
#include <sstream>

#include "cmt/errors.hpp"

namespace cmt {

namespace {

std::string term_string(const Integer& c, int e, const std::string& var, bool first) {
  std::string out;
  Integer a = abs(c);
  if (first) {
    if (c < 0) out += "-";
  } else {
    out += c < 0 ? " - " : " + ";
  }
  bool unit = (a == 1);
  if (!unit || e == 0) out += a.get_str();
  if (e > 0) {
    if (!unit) out += "*";
    out += var;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

IntPoly::IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

IntPoly IntPoly::constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }

IntPoly IntPoly::monomial(const Integer& c, int deg) {
  std::vector<Integer> v(deg + 1);
  v[deg] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer IntPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

const Integer& IntPoly::lead() const {
  static const Integer zero = 0;
  return c_.empty() ? zero : c_.back();
}

Integer IntPoly::eval(const Integer& x) const {
  Integer r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Rational IntPoly::eval(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + Rational(*it);
  r.canonicalize();
  return r;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& o) {
  *this = poly_mul(*this, o);
  return *this;
}

IntPoly& IntPoly::operator*=(const Integer& k) {
  if (k == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= k;
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) { return poly_mul(a, b); }

std::string IntPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    out += term_string(c_[i], i, var, first);
    first = false;
  }
  return out;
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) { return a + b; }
IntPoly poly_sub(const IntPoly& a, const IntPoly& b) { return a - b; }

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Integer> r(x.size() + y.size() - 1);
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < y.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
  }
  return IntPoly(std::move(r));
}

IntPoly poly_pow(const IntPoly& a, unsigned e) {
  IntPoly r = IntPoly::constant(1), b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

IntPoly poly_exact_div(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) raise(ErrorKind::NonExactDivision, "division by zero polynomial");
  if (a.is_zero()) return IntPoly();
  int db = b.degree();
  if (a.degree() < db) raise(ErrorKind::NonExactDivision, "degree of divisor exceeds dividend");
  std::vector<Integer> r = a.coeffs();
  std::vector<Integer> q(a.degree() - db + 1);
  const Integer& lb = b.lead();
  const auto& bc = b.coeffs();
  for (int k = a.degree() - db; k >= 0; --k) {
    Integer& top = r[k + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t()))
      raise(ErrorKind::NonExactDivision, "leading coefficient does not divide");
    Integer t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (int j = 0; j <= db; ++j) mpz_submul(r[k + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
    q[k] = t;
  }
  for (int i = 0; i < db; ++i)
    if (r[i] != 0) raise(ErrorKind::NonExactDivision, "nonzero remainder");
  return IntPoly(std::move(q));
}

IntPoly poly_exact_div(const IntPoly& a, const Integer& k) {
  if (k == 0) raise(ErrorKind::NonExactDivision, "division by zero");
  std::vector<Integer> c = a.coeffs();
  for (auto& x : c) {
    if (!mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t())) raise(ErrorKind::NonExactDivision, "content");
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
  }
  return IntPoly(std::move(c));
}

void poly_pseudo_divrem(const IntPoly& a, const IntPoly& b, IntPoly* q, IntPoly* r) {
  if (b.is_zero()) raise(ErrorKind::InvalidArgument, "pseudo division by zero");
  int db = b.degree();
  if (a.degree() < db) {
    if (q) *q = IntPoly();
    if (r) *r = a;
    return;
  }
  int e = a.degree() - db + 1;
  std::vector<Integer> rem = a.coeffs();
  std::vector<Integer> quo(e);
  const Integer& lb = b.lead();
  const auto& bc = b.coeffs();
  for (int k = a.degree() - db; k >= 0; --k) {
    Integer t = rem[k + db];
    for (auto& c : rem) c *= lb;
    for (auto& c : quo) c *= lb;
    quo[k] += t;
    for (int j = 0; j <= db; ++j) mpz_submul(rem[k + j].get_mpz_t(), t.get_mpz_t(), bc[j].get_mpz_t());
  }
  rem.resize(db);
  if (q) *q = IntPoly(std::move(quo));
  if (r) *r = IntPoly(std::move(rem));
}

IntPoly poly_sqrt(const IntPoly& p) {
  if (p.is_zero()) return IntPoly();
  int d = p.degree();
  if (d % 2) raise(ErrorKind::NotASquare, "odd degree");
  if (!is_square(p.lead())) raise(ErrorKind::NotASquare, "leading coefficient not a square");
  int m = d / 2;
  std::vector<Integer> q(m + 1);
  q[m] = isqrt(p.lead());
  Integer two_lead = 2 * q[m];
  for (int k = m - 1; k >= 0; --k) {
    Integer s = p.coeff(m + k);
    for (int i = k + 1; i <= m - 1; ++i) mpz_submul(s.get_mpz_t(), q[i].get_mpz_t(), q[m + k - i].get_mpz_t());
    if (!mpz_divisible_p(s.get_mpz_t(), two_lead.get_mpz_t())) raise(ErrorKind::NotASquare, "coefficient recursion");
    mpz_divexact(q[k].get_mpz_t(), s.get_mpz_t(), two_lead.get_mpz_t());
  }
  IntPoly r(std::move(q));
  if (r * r != p) raise(ErrorKind::NotASquare, "lower coefficients disagree");
  return r;
}

Integer content(const IntPoly& p) {
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (p.lead() < 0) g = -g;
  return poly_exact_div(p, g);
}

IntPoly normalize(const IntPoly& p) { return primitive_part(p); }

IntPoly derivative(const IntPoly& p) {
  if (p.degree() < 1) return IntPoly();
  std::vector<Integer> c(p.degree());
  for (int i = 1; i <= p.degree(); ++i) c[i - 1] = p.coeffs()[i] * i;
  return IntPoly(std::move(c));
}

IntPoly compose(const IntPoly& p, const IntPoly& q) {
  IntPoly r;
  for (int i = p.degree(); i >= 0; --i) r = r * q + IntPoly::constant(p.coeffs()[i]);
  return r;
}

IntPoly inflate(const IntPoly& p, unsigned k) {
  if (p.is_zero()) return p;
  std::vector<Integer> c(p.degree() * k + 1);
  for (int i = 0; i <= p.degree(); ++i) c[i * k] = p.coeffs()[i];
  return IntPoly(std::move(c));
}

IntPoly scale_var(const IntPoly& p, const Integer& c) {
  std::vector<Integer> v = p.coeffs();
  Integer pw = 1;
  for (auto& x : v) {
    x *= pw;
    pw *= c;
  }
  return IntPoly(std::move(v));
}

IntPoly shift_var(const IntPoly& p, const Integer& c) { return compose(p, IntPoly(std::vector<Integer>{c, Integer(1)})); }

IntPoly reverse(const IntPoly& p) {
  std::vector<Integer> v = p.coeffs();
  std::reverse(v.begin(), v.end());
  return IntPoly(std::move(v));
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  Integer g;
  Integer ca = content(a), cb = content(b);
  mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  IntPoly x = primitive_part(a), y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r;
    poly_pseudo_divrem(x, y, nullptr, &r);
    x = y;
    y = r.is_zero() ? r : primitive_part(r);
  }
  return normalize(x) * g;
}

bool is_even_poly(const IntPoly& p) {
  for (int i = 1; i <= p.degree(); i += 2)
    if (p.coeffs()[i] != 0) return false;
  return true;
}

IntPoly deflate2(const IntPoly& p) {
  if (!is_even_poly(p)) raise(ErrorKind::InvalidArgument, "odd powers present");
  std::vector<Integer> c;
  for (int i = 0; i <= p.degree(); i += 2) c.push_back(p.coeffs()[i]);
  return IntPoly(std::move(c));
}

Integer norm2_bound(const IntPoly& p) {
  Integer s = 0;
  for (const auto& c : p.coeffs()) s += c * c;
  return isqrt(s) + 1;
}

BiHomPoly::BiHomPoly(int degree, std::vector<Integer> coeffs) : s_(degree), c_(std::move(coeffs)) {
  if (degree < 0 || static_cast<int>(c_.size()) != degree + 1)
    raise(ErrorKind::InvalidArgument, "BiHomPoly needs degree+1 coefficients");
}

BiHomPoly BiHomPoly::zero(int degree) { return BiHomPoly(degree, std::vector<Integer>(degree + 1)); }

BiHomPoly BiHomPoly::homogenize(const IntPoly& p, int s) {
  if (p.degree() > s) raise(ErrorKind::InvalidArgument, "degree exceeds homogenization degree");
  std::vector<Integer> c(s + 1);
  for (int i = 0; i <= p.degree(); ++i) c[s - i] = p.coeffs()[i];
  return BiHomPoly(s, std::move(c));
}

bool BiHomPoly::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Integer& x) { return x == 0; });
}

Integer BiHomPoly::eval(const Integer& z, const Integer& w) const {
  Integer r = 0, wp = 1;
  // Horner in z with powers of w attached.
  for (int j = 0; j <= s_; ++j) {
    r = r * z + c_[j] * wp;
    wp *= w;
  }
  return r;
}

Integer BiHomPoly::eval_mod(const Integer& z, const Integer& w, const Integer& m) const {
  Integer r = 0, wp = 1;
  for (int j = 0; j <= s_; ++j) {
    r = mod(r * z + c_[j] * wp, m);
    wp = mod(wp * w, m);
  }
  return r;
}

IntPoly BiHomPoly::dehomogenize() const {
  std::vector<Integer> v(s_ + 1);
  for (int j = 0; j <= s_; ++j) v[s_ - j] = c_[j];
  return IntPoly(std::move(v));
}

IntPoly BiHomPoly::substitute(const IntPoly& z, const IntPoly& w) const {
  IntPoly r, wp = IntPoly::constant(1);
  for (int j = 0; j <= s_; ++j) {
    r = r * z;
    if (c_[j] != 0) r += wp * c_[j];
    if (j < s_) wp = wp * w;
  }
  return r;
}

BiHomPoly& BiHomPoly::operator+=(const BiHomPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && s_ != o.s_) return *this = o;
  if (s_ != o.s_) raise(ErrorKind::Internal, "adding homogeneous forms of different degree");
  for (int j = 0; j <= s_; ++j) c_[j] += o.c_[j];
  return *this;
}

BiHomPoly& BiHomPoly::operator-=(const BiHomPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && s_ != o.s_) return *this = o * Integer(-1);
  if (s_ != o.s_) raise(ErrorKind::Internal, "subtracting homogeneous forms of different degree");
  for (int j = 0; j <= s_; ++j) c_[j] -= o.c_[j];
  return *this;
}

BiHomPoly& BiHomPoly::operator*=(const Integer& k) {
  for (auto& c : c_) c *= k;
  return *this;
}

BiHomPoly operator*(const BiHomPoly& a, const BiHomPoly& b) {
  std::vector<Integer> r(a.s_ + b.s_ + 1);
  for (int i = 0; i <= a.s_; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; j <= b.s_; ++j) mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
  }
  return BiHomPoly(a.s_ + b.s_, std::move(r));
}

std::string BiHomPoly::to_string() const {
  std::string out;
  bool first = true;
  for (int j = 0; j <= s_; ++j) {
    const Integer& c = c_[j];
    if (c == 0) continue;
    int ez = s_ - j, ew = j;
    Integer a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    if (ez > 0) mono += ez > 1 ? "Z^" + std::to_string(ez) : "Z";
    if (ew > 0) {
      if (!mono.empty()) mono += "*";
      mono += ew > 1 ? "W^" + std::to_string(ew) : "W";
    }
    if (mono.empty()) {
      out += a.get_str();
    } else {
      if (a != 1) out += a.get_str() + "*";
      out += mono;
    }
  }
  return first ? "0" : out;
}

BiHomPoly bihom_pow(const BiHomPoly& a, unsigned e) {
  BiHomPoly r = BiHomPoly::one(), b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

BiHomPoly bihom_exact_div(const BiHomPoly& a, const BiHomPoly& b) {
  int s = a.degree() - b.degree();
  if (a.is_zero()) return BiHomPoly::zero(std::max(s, 0));
  if (s < 0) raise(ErrorKind::NonExactDivision, "degree of homogeneous divisor exceeds dividend");
  // Work in t = W/Z: coefficient j is the t^j coefficient.
  IntPoly ta(a.coeffs()), tb(b.coeffs());
  IntPoly q = poly_exact_div(ta, tb);
  if (q.degree() > s) raise(ErrorKind::NonExactDivision, "homogeneous quotient degree");
  std::vector<Integer> c(s + 1);
  for (int j = 0; j <= q.degree(); ++j) c[j] = q.coeffs()[j];
  return BiHomPoly(s, std::move(c));
}

BiHomPoly bihom_exact_div(const BiHomPoly& a, const Integer& k) {
  std::vector<Integer> c = a.coeffs();
  for (auto& x : c) {
    if (!mpz_divisible_p(x.get_mpz_t(), k.get_mpz_t())) raise(ErrorKind::NonExactDivision, "scalar");
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
  }
  return BiHomPoly(a.degree(), std::move(c));
}

BiHomPoly bihom_sqrt(const BiHomPoly& a) {
  if (a.degree() % 2) raise(ErrorKind::NotASquare, "odd homogeneous degree");
  IntPoly r = poly_sqrt(a.dehomogenize());
  BiHomPoly out = BiHomPoly::homogenize(r, a.degree() / 2);
  if (out * out != a) raise(ErrorKind::NotASquare, "homogeneous square root");
  return out;
}

}  // namespace cmt
