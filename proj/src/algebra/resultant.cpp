#include "cmt/resultant.hpp"

namespace cmt {

Integer resultant(const IntPoly& a, const IntPoly& b) {
  return detail::subresultant<Integer>(a.coeffs(), b.coeffs());
}

IntPoly resultant_x(const BiPoly& a, const BiPoly& b) { return detail::subresultant<IntPoly>(a, b); }

}  // namespace cmt
