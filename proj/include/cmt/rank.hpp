#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cmt/classgroup.hpp"
#include "cmt/integer.hpp"

namespace cmt {

struct SelmerInterval {
  int lower = 0;
  int upper = 0;
  bool exact() const { return lower == upper; }
};

// Range of s_p allowed by r_p <= h, s_p <= r_p + 1 and s_p = (1 - omega)/2 mod 2.
SelmerInterval selmer_interval(int h, int omega);

// p = 1 mod 4 for ED/CN, p = 1 mod 6 for EA/CS.
bool is_split_prime(Family f, long p);

// Root number of the family member.
int family_omega(Family f, const Integer& parameter);

struct PrimeRecord {
  long p = 0;
  int h = 0;
  bool grh = false;
  bool split = false;
  SelmerInterval s;
};

enum class RankKind { Exact, Upper };

struct RankVerdict {
  Family family = Family::ED;
  Integer parameter;
  int omega = 1;
  std::vector<PrimeRecord> primes;
  RankKind kind = RankKind::Upper;
  int rank = 0;
  bool sha_finite = false;
  bool grh = false;        // every witness of the verdict is GRH-flagged
  bool input_grh = false;  // some consulted datum is GRH-flagged
  std::vector<long> witnesses;
  std::vector<std::string> justification;

  // "0", "1*", "<=2", "<=2*"
  std::string label() const;
};

RankVerdict rank_verdict(Family f, const Integer& parameter, const ClassGroupData& data, int omega);
RankVerdict rank_verdict(Family f, const Integer& parameter, const ClassGroupData& data);

nlohmann::json verdict_to_json(const RankVerdict& v);

struct Decision {
  std::string verdict;  // e.g. "congruent", "not-congruent", "inconclusive"
  RankVerdict rank;
  std::vector<std::string> consequences;
};

// Data for curve y^2 = x^3 - n^2 x, family CN.
Decision congruent_decider(const Integer& n, const ClassGroupData& data);
// Data for curve y^2 = x^3 - 432 n^2, family CS.
Decision cubesum_decider(const Integer& n, const ClassGroupData& data);

nlohmann::json decision_to_json(const Decision& d);

struct ExpectedRow {
  Family family = Family::ED;
  Integer parameter;
  int omega = 1;
  std::string rank;
};

// CSV with header family,parameter,omega,rank.
std::vector<ExpectedRow> load_expected(const std::string& path);

struct DiffRow {
  ExpectedRow expected;
  int omega = 1;
  std::string rank;
  bool match = false;
  // Another row with the same family, omega and per-prime data expects what this row computes.
  bool contradicted = false;
  std::string note;
};

struct TableDiff {
  std::vector<DiffRow> rows;
  int mismatches() const;
  int unexplained() const;  // mismatches not shown to be table contradictions
};

TableDiff reproduce_table(const std::vector<ExpectedRow>& expected, const ClassGroupData& data);
TableDiff reproduce_table_parallel(const std::vector<ExpectedRow>& expected, const ClassGroupData& data);

nlohmann::json diff_to_json(const TableDiff& d);

}  // namespace cmt
