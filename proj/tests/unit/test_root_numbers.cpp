#include <doctest.h>

#include "cmt/errors.hpp"
#include "cmt/rootno.hpp"
#include "csv_rows.hpp"
#include "rng.hpp"

using namespace cmt;
using cmt::testing::csv_rows;
using cmt::testing::rand_int;

namespace {

int product(const RootNumber& r) {
  int v = 1;
  for (auto& [place, w] : r.local) v *= w;
  return v;
}

}  // namespace

TEST_CASE("quartic examples") {
  CHECK(root_number_quartic(1).value == 1);
  CHECK(root_number_quartic(2).value == -1);
  CHECK(root_number_quartic(-3).value == -1);
  CHECK(root_number_quartic(3).value == 1);
  CHECK(root_number_quartic(25).value == -1);
}

TEST_CASE("sextic examples") {
  CHECK(root_number_sextic(1).value == 1);
  CHECK(root_number_sextic(2).value == -1);
  CHECK(root_number_sextic(-2).value == -1);
  CHECK(root_number_sextic(Integer(-432 * 36)).value == -1);
}

TEST_CASE("omega_congruent") {
  CHECK(omega_congruent(5) == -1);
  CHECK(omega_congruent(41) == 1);
  CHECK(omega_congruent(1) == 1);
  CHECK_THROWS_AS(omega_congruent(12), Error);
  CHECK_THROWS_AS(omega_congruent(0), Error);
  for (long n = 1; n <= 200; ++n) {
    if (!is_squarefree(n)) continue;
    CHECK_MESSAGE(omega_congruent(n) == root_number_quartic(Integer(n * n)).value, n);
  }
}

TEST_CASE("twist invariance") {
  for (int i = 0; i < 100; ++i) {
    Integer D = rand_int(-500, 500), M = rand_int(1, 30);
    if (D == 0) continue;
    CHECK(root_number_quartic(D).value == root_number_quartic(D * M * M * M * M).value);
    CHECK(root_number_sextic(D).value == root_number_sextic(D * ipow(M, 6)).value);
  }
}

TEST_CASE("breakdown") {
  for (long D = -300; D <= 300; ++D) {
    if (D == 0) continue;
    auto q = root_number_quartic(D);
    CHECK(q.value == product(q));
    CHECK(q.local.front().first == "inf");
    for (auto& [place, w] : q.local) {
      CHECK((w == 1 || w == -1));
      if (place != "inf" && place != "2") CHECK(D % std::stol(place) == 0);
    }
    auto s = root_number_sextic(D);
    CHECK(s.value == product(s));
    for (auto& [place, w] : s.local)
      if (place != "inf" && place != "2" && place != "3") CHECK(D % std::stol(place) == 0);
  }
}

TEST_CASE("sextic against functional-equation sign") {
  int n = 0;
  for (auto& r : csv_rows(cmt::testing::test_data_path("sextic_omega_functional_eq.csv"))) {
    CHECK_MESSAGE(root_number_sextic(Integer(r[0])).value == std::stoi(r[1]), r[0]);
    ++n;
  }
  CHECK(n == 216);
}

TEST_CASE("every table omega") {
  int n = 0;
  for (const char* fam : {"ED", "EA", "CN", "CS"}) {
    for (auto& r : csv_rows(cmt::testing::data_path(std::string("tables/") + fam + "_expected.csv"))) {
      Integer par(r[1]);
      std::string f = r[0];
      int w = f == "ED"   ? root_number_quartic(par).value
              : f == "CN" ? root_number_quartic(par * par).value
              : f == "EA" ? root_number_sextic(par).value
                          : root_number_sextic(-432 * par * par).value;
      CHECK_MESSAGE(w == std::stoi(r[2]), f, " ", r[1]);
      ++n;
    }
  }
  CHECK(n == 248);
}
