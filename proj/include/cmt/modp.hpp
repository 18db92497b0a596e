#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "cmt/poly.hpp"

namespace cmt::modp {

// Polynomials over F_q, q an odd prime below 2^31; ascending, trimmed.
using Poly = std::vector<std::uint64_t>;

Poly reduce(const IntPoly& p, std::uint64_t q);
void trim(Poly& a);
int degree(const Poly& a);
Poly add(const Poly& a, const Poly& b, std::uint64_t q);
Poly sub(const Poly& a, const Poly& b, std::uint64_t q);
Poly mul(const Poly& a, const Poly& b, std::uint64_t q);
Poly scale(const Poly& a, std::uint64_t k, std::uint64_t q);
void divrem(const Poly& a, const Poly& b, std::uint64_t q, Poly* quo, Poly* rem);
Poly rem(const Poly& a, const Poly& b, std::uint64_t q);
Poly monic(const Poly& a, std::uint64_t q);
Poly gcd(Poly a, Poly b, std::uint64_t q);
// Returns monic g = s*a + t*b.
Poly xgcd(const Poly& a, const Poly& b, std::uint64_t q, Poly* s, Poly* t);
Poly derivative(const Poly& a, std::uint64_t q);
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t q);
Poly powmod(const Poly& base, const Integer& e, const Poly& f, std::uint64_t q);
std::uint64_t eval(const Poly& a, std::uint64_t x, std::uint64_t q);

bool is_squarefree(const Poly& f, std::uint64_t q);
// Rabin test; f of positive degree.
bool is_irreducible(const Poly& f, std::uint64_t q);
// f monic squarefree: pairs (product of all irreducible factors of degree d, d).
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f, std::uint64_t q);
// g monic, product of irreducibles of degree d.
std::vector<Poly> equal_degree(const Poly& g, int d, std::uint64_t q, std::mt19937_64& rng);
// Monic irreducible factors of a squarefree f, sorted.
std::vector<Poly> factor_squarefree(const Poly& f, std::uint64_t q);
// Degrees of irreducible factors of squarefree f, sorted.
std::vector<int> degree_pattern(const Poly& f, std::uint64_t q);

}  // namespace cmt::modp
