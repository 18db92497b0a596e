#include "cmt/integer.hpp"

#include <algorithm>
#include <map>

#include "cmt/errors.hpp"

namespace cmt {

namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;

std::vector<std::uint32_t> sieve(std::uint32_t limit) {
  std::vector<bool> comp(limit + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i) comp[j] = true;
  }
  return out;
}

bool miller_rabin(const Integer& n, unsigned base) {
  Integer d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  Integer x = powmod(Integer(base), d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
Integer rho_brent(const Integer& n, unsigned long c, std::uint64_t& budget) {
  Integer y = 2, x, q = 1, g = 1, ys;
  std::uint64_t r = 1;
  const std::uint64_t m = 128;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      std::uint64_t lim = std::min(m, r - k);
      for (std::uint64_t i = 0; i < lim; ++i) {
        y = (y * y + c) % n;
        Integer diff = x - y;
        q = q * abs(diff) % n;
      }
      if (budget < lim) return 0;
      budget -= lim;
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = (ys * ys + c) % n;
      Integer diff = x - ys;
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  if (g == n) return 0;
  return g;
}

void split_composite(const Integer& n, std::map<Integer, unsigned>& out, std::uint64_t& budget,
                     const Integer& orig) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  Integer s = isqrt(n);
  if (s * s == n) {
    split_composite(s, out, budget, orig);
    split_composite(s, out, budget, orig);
    return;
  }
  for (unsigned long c = 1;; ++c) {
    if (budget == 0) raise(ErrorKind::FactorizationTimeout, "rho budget exhausted factoring " + orig.get_str());
    Integer f = rho_brent(n, c, budget);
    if (f != 0) {
      split_composite(f, out, budget, orig);
      split_composite(n / f, out, budget, orig);
      return;
    }
    if (c > 64) raise(ErrorKind::FactorizationTimeout, "rho failed on " + n.get_str());
  }
}

}  // namespace

Integer Factorization::value() const {
  Integer v = sign;
  for (auto& [p, e] : factors) v *= ipow(p, e);
  return v;
}

unsigned Factorization::exponent(const Integer& p) const {
  for (auto& [q, e] : factors)
    if (q == p) return e;
  return 0;
}

Integer make_int(long v) { return Integer(v); }

Integer parse_int(const std::string& s) {
  Integer r;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  if (t.empty() || r.set_str(t, 10) != 0) raise(ErrorKind::ParseError, "not an integer: '" + s + "'");
  return r;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = sieve(kTrialLimit);
  return primes;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  static const unsigned bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned b : bases) {
    if (n == b) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
  }
  // The first 13 prime bases are deterministic below 3.3e24.
  static const Integer det_limit("3317044064679887385961981");
  if (n < det_limit) {
    for (unsigned b : bases)
      if (!miller_rabin(n, b)) return false;
    return true;
  }
  // GMP >= 6.2 runs Baillie-PSW first.
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

bool is_prime_u64(std::uint64_t n) { return is_prime(Integer(static_cast<unsigned long>(n))); }

Integer next_prime(const Integer& n) {
  Integer r = n + 1;
  if (r <= 2) return 2;
  if (mpz_even_p(r.get_mpz_t())) ++r;
  while (!is_prime(r)) r += 2;
  return r;
}

Factorization factor_int(const Integer& n, const FactorBudget& budget) {
  if (n == 0) raise(ErrorKind::InvalidArgument, "factor_int(0)");
  Factorization f;
  f.sign = n < 0 ? -1 : 1;
  Integer m = abs(n);
  std::map<Integer, unsigned> acc;
  for (std::uint32_t p : small_primes()) {
    if (Integer(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      acc[Integer(p)] = e;
    }
  }
  if (m > 1) {
    std::uint64_t b = budget.rho_iterations;
    split_composite(m, acc, b, n);
  }
  for (auto& [p, e] : acc) f.factors.emplace_back(p, e);
  return f;
}

Integer power_free_part(const Integer& n, unsigned k, const FactorBudget& budget) {
  Factorization f = factor_int(n, budget);
  Integer r = f.sign;
  for (auto& [p, e] : f.factors) r *= ipow(p, e % k);
  return r;
}

Integer squarefree_part(const Integer& n, const FactorBudget& budget) { return power_free_part(n, 2, budget); }

bool is_squarefree(const Integer& n, const FactorBudget& budget) {
  Factorization f = factor_int(n, budget);
  return std::all_of(f.factors.begin(), f.factors.end(), [](auto& pe) { return pe.second == 1; });
}

unsigned valuation(const Integer& n, const Integer& p) {
  if (n == 0) raise(ErrorKind::InvalidArgument, "valuation of 0");
  unsigned v = 0;
  Integer m = n;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

Integer remove_factor(const Integer& n, const Integer& p) {
  Integer m = n;
  while (m != 0 && mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()))
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
  return m;
}

Integer ipow(const Integer& b, unsigned e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Integer powmod(const Integer& b, const Integer& e, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

int jacobi(const Integer& a, const Integer& n) { return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t()); }

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod64(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, nt = 1, r = m, nr = a % m;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) raise(ErrorKind::NotCoprime, "no inverse mod " + std::to_string(m));
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::uint64_t mod_u64(const Integer& a, std::uint64_t m) {
  Integer r = mod(a, Integer(static_cast<unsigned long>(m)));
  return r.get_ui();
}

}  // namespace cmt
