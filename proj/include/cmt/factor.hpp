#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cmt/poly.hpp"

namespace cmt {

struct FactorOptions {
  int degree_cap = 64;
  int pattern_primes = 8;  // primes sampled for the degree-pattern sieve
};

using PolyFactors = std::vector<std::pair<IntPoly, int>>;

// Irreducible primitive factors with positive leading coefficient, sorted by (degree, coefficients).
PolyFactors factor_poly_q(const IntPoly& p, const FactorOptions& opt = {});

// Yun decomposition of a primitive polynomial: pairs (squarefree part, multiplicity).
PolyFactors squarefree_decomposition(const IntPoly& p);

bool is_squarefree_poly(const IntPoly& p);
bool is_irreducible_q(const IntPoly& p, const FactorOptions& opt = {});

// Small odd primes q not dividing the leading coefficient with p mod q squarefree.
std::vector<std::uint64_t> good_primes(const IntPoly& p, int count, std::uint64_t start = 3);

}  // namespace cmt
