#include "cmt/modp.hpp"

#include <algorithm>

#include "cmt/errors.hpp"

namespace cmt::modp {

Poly reduce(const IntPoly& p, std::uint64_t q) {
  Poly r(p.coeffs().size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = mod_u64(p.coeffs()[i], q);
  trim(r);
  return r;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly add(const Poly& a, const Poly& b, std::uint64_t q) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % q;
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t q) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + q - b[i]) % q;
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t q) {
  if (a.empty() || b.empty()) return {};
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
  }
  Poly r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint64_t>(acc[i] % q);
  trim(r);
  return r;
}

Poly scale(const Poly& a, std::uint64_t k, std::uint64_t q) {
  Poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mulmod64(a[i], k, q);
  trim(r);
  return r;
}

void divrem(const Poly& a, const Poly& b, std::uint64_t q, Poly* quo, Poly* rem) {
  if (b.empty()) raise(ErrorKind::Internal, "modp division by zero");
  Poly r = a;
  int db = degree(b);
  std::uint64_t inv = invmod64(b.back(), q);
  Poly qq;
  if (degree(r) >= db) qq.assign(degree(r) - db + 1, 0);
  for (int k = degree(r) - db; k >= 0; --k) {
    std::uint64_t t = mulmod64(r[k + db], inv, q);
    qq[k] = t;
    if (!t) continue;
    for (int j = 0; j <= db; ++j) r[k + j] = (r[k + j] + q - mulmod64(t, b[j], q)) % q;
  }
  trim(r);
  trim(qq);
  if (quo) *quo = std::move(qq);
  if (rem) *rem = std::move(r);
}

Poly rem(const Poly& a, const Poly& b, std::uint64_t q) {
  Poly r;
  divrem(a, b, q, nullptr, &r);
  return r;
}

Poly monic(const Poly& a, std::uint64_t q) {
  if (a.empty()) return a;
  return scale(a, invmod64(a.back(), q), q);
}

Poly gcd(Poly a, Poly b, std::uint64_t q) {
  while (!b.empty()) {
    Poly r = rem(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, q);
}

Poly xgcd(const Poly& a, const Poly& b, std::uint64_t q, Poly* s, Poly* t) {
  Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    Poly quo, r2;
    divrem(r0, r1, q, &quo, &r2);
    Poly s2 = sub(s0, mul(quo, s1, q), q);
    Poly t2 = sub(t0, mul(quo, t1, q), q);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) raise(ErrorKind::Internal, "xgcd of zeros");
  std::uint64_t inv = invmod64(r0.back(), q);
  if (s) *s = scale(s0, inv, q);
  if (t) *t = scale(t0, inv, q);
  return scale(r0, inv, q);
}

Poly derivative(const Poly& a, std::uint64_t q) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mulmod64(a[i], i % q, q);
  trim(r);
  return r;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t q) { return rem(mul(a, b, q), f, q); }

Poly powmod(const Poly& base, const Integer& e, const Poly& f, std::uint64_t q) {
  Poly r{1};
  r = rem(r, f, q);
  Poly b = rem(base, f, q);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = mulmod(r, r, f, q);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, f, q);
  }
  return r;
}

std::uint64_t eval(const Poly& a, std::uint64_t x, std::uint64_t q) {
  std::uint64_t r = 0;
  for (size_t i = a.size(); i-- > 0;) r = (mulmod64(r, x, q) + a[i]) % q;
  return r;
}

bool is_squarefree(const Poly& f, std::uint64_t q) {
  if (degree(f) <= 0) return true;
  Poly d = derivative(f, q);
  if (d.empty()) return false;
  return degree(gcd(f, d, q)) == 0;
}

namespace {

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// X^(q^k) mod f for k = 0..n.
std::vector<Poly> frobenius_powers(const Poly& f, int n, std::uint64_t q) {
  std::vector<Poly> out;
  Poly x{0, 1};
  x = rem(x, f, q);
  out.push_back(x);
  Integer qq(static_cast<unsigned long>(q));
  for (int k = 1; k <= n; ++k) out.push_back(powmod(out.back(), qq, f, q));
  return out;
}

}  // namespace

bool is_irreducible(const Poly& f, std::uint64_t q) {
  int n = degree(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  Poly g = monic(f, q);
  auto fr = frobenius_powers(g, n, q);
  Poly x = rem(Poly{0, 1}, g, q);
  if (fr[n] != x) return false;
  for (int r : prime_divisors(n)) {
    Poly h = sub(fr[n / r], x, q);
    if (degree(gcd(g, h, q)) != 0) return false;
  }
  return true;
}

std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f0, std::uint64_t q) {
  std::vector<std::pair<Poly, int>> out;
  Poly f = monic(f0, q);
  Poly x{0, 1};
  Poly h = rem(x, f, q);
  Integer qq(static_cast<unsigned long>(q));
  int d = 0;
  while (degree(f) >= 2 * (d + 1)) {
    ++d;
    h = powmod(h, qq, f, q);
    Poly g = gcd(f, sub(h, rem(x, f, q), q), q);
    if (degree(g) > 0) {
      out.emplace_back(g, d);
      Poly quo;
      divrem(f, g, q, &quo, nullptr);
      f = quo;
      h = rem(h, f, q);
    }
  }
  if (degree(f) > 0) out.emplace_back(f, degree(f));
  return out;
}

std::vector<Poly> equal_degree(const Poly& g, int d, std::uint64_t q, std::mt19937_64& rng) {
  int n = degree(g);
  if (n == d) return {g};
  Integer e = (ipow(Integer(static_cast<unsigned long>(q)), d) - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> dist(0, q - 1);
  for (;;) {
    Poly a(n);
    for (auto& c : a) c = dist(rng);
    trim(a);
    if (degree(a) <= 0) continue;
    Poly b = powmod(a, e, g, q);
    b = sub(b, Poly{1}, q);
    Poly h = gcd(g, b, q);
    if (degree(h) > 0 && degree(h) < n) {
      Poly quo;
      divrem(g, h, q, &quo, nullptr);
      auto l = equal_degree(h, d, q, rng);
      auto r = equal_degree(monic(quo, q), d, q, rng);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
  }
}

std::vector<Poly> factor_squarefree(const Poly& f, std::uint64_t q) {
  std::mt19937_64 rng(0x5eed ^ q);
  std::vector<Poly> out;
  for (auto& [g, d] : distinct_degree(f, q)) {
    auto parts = equal_degree(monic(g, q), d, q, rng);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<int> degree_pattern(const Poly& f, std::uint64_t q) {
  std::vector<int> out;
  for (auto& [g, d] : distinct_degree(f, q))
    for (int k = 0; k < degree(g) / d; ++k) out.push_back(d);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cmt::modp
