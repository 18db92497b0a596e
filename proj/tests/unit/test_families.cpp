#include <doctest.h>

#include "cmt/errors.hpp"
#include "cmt/families.hpp"
#include "rng.hpp"

using namespace cmt;
using cmt::testing::rand_int;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

Rational Q(long a, long b = 1) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

Rational rand_rational() {
  long a = 0;
  while (a == 0) a = rand_int(-9, 9);
  return Q(a, rand_int(1, 7));
}

}  // namespace

TEST_CASE("kihara identity") {
  CHECK(kihara_bab(2, 1, 3) + kihara_k_product(2, 1, 3) == 0);
  CHECK(kihara_k(2, 1, 3) == Q(18089076285973L, 1586874322944L));
  CHECK(kind_of([] { kihara_k(1, 1, 1); }) == ErrorKind::SingularParameters);
  CHECK(kind_of([] { kihara_k(1, -1, 2); }) == ErrorKind::SingularParameters);
  CHECK(kind_of([] { kihara_k(2, 1, 0); }) == ErrorKind::SingularParameters);
  int done = 0;
  while (done < 25) {
    Rational r = rand_rational(), s = rand_rational(), t = rand_rational();
    try {
      Rational k = kihara_k(r, s, t);
      CHECK(kihara_bab(r, s, t) == -k);
      ++done;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SingularParameters);
    }
  }
}

TEST_CASE("k is homogeneous of degree 4") {
  for (long lam : {2L, 3L, -5L}) {
    Rational L(lam);
    CHECK(kihara_k_product(2 * L, L, 3 * L) == L * L * L * L * kihara_k_product(2, 1, 3));
    CHECK(kihara_k_product(Q(1, 2) * L, 3 * L, Q(5, 3) * L) == L * L * L * L * kihara_k_product(Q(1, 2), 3, Q(5, 3)));
  }
}

TEST_CASE("kihara constants") {
  auto k = kihara_constants(3);
  CHECK(k.c == 1297);
  CHECK(k.ell == std::vector<Integer>{7});
  CHECK(k.d == 21);
  CHECK(k.alpha == 63504);
  for (long p = 3; p <= 100; ++p) {
    if (!is_prime(p)) continue;
    auto c = kihara_constants(p);
    CHECK(mod(c.c - 2, 4) == 3);
    CHECK(c.ell.size() % 2 == 1);
    Integer prod = 3;
    for (const auto& q : c.ell) {
      CHECK(mod(q, 4) == 3);
      CHECK(valuation(c.c - 2, q) % 2 == 1);
      prod *= q;
    }
    CHECK(c.d == prod);
    CHECK(c.alpha == 16 * p * p * c.d * c.d);
  }
  CHECK(kind_of([] { kihara_constants(9); }) == ErrorKind::NotPrime);
}

TEST_CASE("kihara family") {
  // t = 1 is singular for u, a, b; the closed product gives v_3(D(1)) = -3.
  CHECK(kind_of([] { kihara_family(3, 1); }) == ErrorKind::BadReduction);
  CHECK(kind_of([] { kihara_k(6, 1, 1); }) == ErrorKind::SingularParameters);
  auto s = kihara_family(3, 3);
  CHECK(s.identity_checked);
  CHECK(s.D_raw == kihara_k(6, 1, 3));
  CHECK(valuation(s.D, 3) == 0);
  CHECK(is_rational_fourth_power(s.D_raw / Rational(s.D)));
  for (const auto& [q, e] : s.D_factors.factors) CHECK(e < 4);
  CHECK(s.constants.c == 1297);
  CHECK(kind_of([] { kihara_family(3, 2); }) == ErrorKind::BadReduction);
  CHECK(kind_of([] { kihara_family(3, 0); }) == ErrorKind::SingularParameters);
}

TEST_CASE("quartic class of D(4cdpt)") {
  for (auto [m, n] : std::vector<std::pair<long, long>>{{1, 2}, {1, 1}, {2, 3}, {5, 1}, {3, 7}}) {
    auto q = quartic_class_quotient(3, m, n);
    CHECK(is_rational_fourth_power(q));
  }
  CHECK(!is_rational_fourth_power(Q(2)));
  CHECK(!is_rational_fourth_power(Q(-16)));
  CHECK(is_rational_fourth_power(Q(81, 16)));
}

TEST_CASE("binary form") {
  auto f = binary_form(3);
  REQUIRE(f.factors.size() == 8);
  std::vector<int> deg;
  for (const auto& g : f.factors) deg.push_back(g.degree());
  CHECK(deg == std::vector<int>{2, 2, 2, 2, 4, 4, 4, 4});
  CHECK(f.expanded.degree() == 24);
  CHECK(f.eval(1, 1) > 0);
  for (int i = 0; i < 20; ++i) {
    Integer x = rand_int(1, 50), y = rand_int(1, 50), lam = rand_int(-6, 6);
    CHECK(f.eval(x, y) > 0);
    CHECK(f.eval(lam * x, lam * y) == ipow(lam, 24) * f.eval(x, y));
    Integer prod = 1;
    for (const auto& v : f.factor_values(x, y)) prod *= v;
    CHECK(prod == f.eval(x, y));
  }
}

TEST_CASE("squarefree sieve") {
  auto f = binary_form(3);
  auto r = squarefree_sieve(f, 5);
  // Independent reference: each printed factor factored by a separate CAS, cross gcds checked.
  std::vector<std::pair<long, long>> frozen{{1, 5}, {2, 5}, {3, 5}, {4, 1}, {4, 5}};
  CHECK(r.pairs == frozen);
  CHECK(squarefree_bruteforce(f, 5) == frozen);
  CHECK(r.timeouts.empty());
  CHECK(r.cells == 25);
  auto k = f.constants;
  for (auto [m, n] : r.pairs) {
    Integer g, big = 2 * 3 * k.c * k.d * m, nn = n;
    mpz_gcd(g.get_mpz_t(), nn.get_mpz_t(), big.get_mpz_t());
    CHECK(g == 1);
  }
  auto par = squarefree_sieve_parallel(f, 5);
  CHECK(par.pairs == r.pairs);
  CHECK(squarefree_sieve(f, 0).pairs.empty());
  CHECK(kind_of([&] { squarefree_sieve(f, 1000); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("sieve members have root number -1 and good reduction at p") {
  for (auto [m, n] : std::vector<std::pair<long, long>>{{4, 1}, {1, 5}}) {
    auto s = kihara_family_mn(3, m, n);
    CHECK(s.omega == -1);
    CHECK(valuation(s.D, 3) == 0);
    CHECK(is_rational_fourth_power(s.D_raw / Rational(s.D)));
  }
}

TEST_CASE("congruent families") {
  CHECK(congruent_D(0) == 210);
  CHECK(congruent_f(0) == 41);
  CHECK(mod(squarefree_part(210), 8) == 2);
  CHECK(mod(Integer(41), 8) == 1);
  for (long p : {5L, 13L, 3L, 7L}) {
    auto fam = congruent_families(p, 50);
    CHECK(fam.kind == (p % 4 == 1 ? 'S' : 'T'));
    CHECK(fam.members.size() == 50);
    for (const auto& m : fam.members) CHECK_MESSAGE(m.ok(), p, " ", m.index.get_str());
  }
  auto s5 = congruent_families(5, 4);
  CHECK(s5.members[0].index == 2);
  CHECK(s5.members[1].index == 4);
  CHECK(s5.members[2].index == 7);
  CHECK(s5.members[3].index == 9);
  CHECK(congruent_families(13, 1).members[0].squarefree == 210);
  CHECK(congruent_families(3, 1).members[0].value == 41);
  CHECK(kind_of([] { congruent_families(2, 3); }) == ErrorKind::WrongResidueClass);
  CHECK(kind_of([] { congruent_families(15, 3); }) == ErrorKind::NotPrime);
}

TEST_CASE("disc bound") {
  CHECK(disc_bound(1, 5, CmRing::Gauss) == 18);
  CHECK(disc_bound(1, 3, CmRing::Gauss) == 24);
  CHECK(disc_bound(-1, 3, CmRing::Gauss) == 24);
  CHECK(disc_bound(1, 7, CmRing::Eisenstein) == 22);
  CHECK(disc_bound(1, 5, CmRing::Eisenstein) == 40);
  for (long n = 1; n < 50; ++n) {
    Integer a = disc_bound(n, 13, CmRing::Gauss), b = disc_bound(2 * n, 13, CmRing::Gauss);
    CHECK(b >= 2 * a - 1);
    CHECK(b <= 2 * a);
  }
  CHECK(kind_of([] { disc_bound(0, 5, CmRing::Gauss); }) == ErrorKind::InvalidArgument);
}
