#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cmt/integer.hpp"

namespace cmt {

struct RootNumber {
  int value = 1;
  // Places in order: inf, 2, 3, then odd primes ascending. Good places are omitted.
  std::vector<std::pair<std::string, int>> local;
};

// y^2 = x^3 - D x
RootNumber root_number_quartic(const Integer& D);
// Same, from a factorization of D (exponents taken mod 4).
RootNumber root_number_quartic(const Factorization& D);
// y^2 = x^3 + A
RootNumber root_number_sextic(const Integer& A);
// y^2 = x^3 - n^2 x, n squarefree positive.
int omega_congruent(const Integer& n);

}  // namespace cmt
