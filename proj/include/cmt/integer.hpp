#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cmt {

using Integer = mpz_class;
using Rational = mpq_class;

struct Factorization {
  int sign = 1;
  std::vector<std::pair<Integer, unsigned>> factors;  // increasing primes

  Integer value() const;
  unsigned exponent(const Integer& p) const;
};

struct FactorBudget {
  std::uint64_t rho_iterations = 20'000'000;  // across all rho calls in one factor_int
};

Integer make_int(long v);
Integer parse_int(const std::string& s);  // throws ParseError

bool is_prime(const Integer& n);
bool is_prime_u64(std::uint64_t n);
Integer next_prime(const Integer& n);  // smallest prime > n

Factorization factor_int(const Integer& n, const FactorBudget& budget = {});

// n / (largest k-th power dividing n); sign kept.
Integer power_free_part(const Integer& n, unsigned k, const FactorBudget& budget = {});
Integer squarefree_part(const Integer& n, const FactorBudget& budget = {});
bool is_squarefree(const Integer& n, const FactorBudget& budget = {});

unsigned valuation(const Integer& n, const Integer& p);
Integer remove_factor(const Integer& n, const Integer& p);

Integer ipow(const Integer& b, unsigned e);
Integer powmod(const Integer& b, const Integer& e, const Integer& m);
Integer mod(const Integer& a, const Integer& m);  // in [0, m)
Integer isqrt(const Integer& n);
bool is_square(const Integer& n);
int jacobi(const Integer& a, const Integer& n);

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod64(std::uint64_t a, std::uint64_t m);
std::uint64_t mod_u64(const Integer& a, std::uint64_t m);  // in [0, m)

// Primes up to 10^6, built once.
const std::vector<std::uint32_t>& small_primes();

}  // namespace cmt
