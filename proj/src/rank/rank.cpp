#include "cmt/rank.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "cmt/errors.hpp"
#include "cmt/rootno.hpp"

namespace cmt {

SelmerInterval selmer_interval(int h, int omega) {
  if (h < 0) raise(ErrorKind::InvalidArgument, "h must be nonnegative");
  int b = omega == 1 ? 0 : 1;
  SelmerInterval s;
  s.lower = b;
  s.upper = (h + 1) % 2 == b ? h + 1 : h;
  return s;
}

bool is_split_prime(Family f, long p) { return family_is_quartic(f) ? p % 4 == 1 : p % 6 == 1; }

int family_omega(Family f, const Integer& parameter) {
  Integer a = family_curve_parameter(f, parameter);
  return family_is_quartic(f) ? root_number_quartic(a).value : root_number_sextic(a).value;
}

std::string RankVerdict::label() const {
  std::string s = (kind == RankKind::Upper ? "<=" : "") + std::to_string(rank);
  if (grh) s += "*";
  return s;
}

RankVerdict rank_verdict(Family f, const Integer& parameter, const ClassGroupData& data, int omega) {
  RankVerdict v;
  v.family = f;
  v.parameter = parameter;
  v.omega = omega;
  for (const auto& d : data) {
    if (d.family != f || d.parameter != parameter || family_bad_prime(f, parameter, d.p)) continue;
    PrimeRecord r;
    r.p = d.p;
    r.h = d.h;
    r.grh = d.grh;
    r.split = is_split_prime(f, d.p);
    r.s = selmer_interval(d.h, omega);
    v.primes.push_back(r);
    v.input_grh = v.input_grh || d.grh;
  }
  if (v.primes.empty())
    raise(ErrorKind::NoData, std::string("no class-group data for ") + family_name(f) + " " + parameter.get_str());
  std::sort(v.primes.begin(), v.primes.end(), [](const auto& a, const auto& b) { return a.p < b.p; });

  std::vector<const PrimeRecord*> zero, one;
  for (const auto& r : v.primes) {
    if (r.s.upper == 0) zero.push_back(&r);
    if (omega == -1 && r.split && r.h <= 1) one.push_back(&r);
  }
  std::vector<const PrimeRecord*> wit;
  v.justification = {"h-bound", "parity"};
  if (!zero.empty()) {
    v.kind = RankKind::Exact;
    v.rank = 0;
    v.sha_finite = true;
    v.justification.push_back("rank0-converse");
    wit = zero;
  } else if (!one.empty()) {
    v.kind = RankKind::Exact;
    v.rank = 1;
    v.sha_finite = true;
    v.justification.push_back("rank1-converse");
    wit = one;
  } else {
    v.kind = RankKind::Upper;
    v.rank = v.primes.front().s.upper;
    for (const auto& r : v.primes) v.rank = std::min(v.rank, r.s.upper);
    for (const auto& r : v.primes)
      if (r.s.upper == v.rank) wit.push_back(&r);
  }
  v.grh = true;
  for (const auto* r : wit) {
    v.witnesses.push_back(r->p);
    v.grh = v.grh && r->grh;
  }
  return v;
}

RankVerdict rank_verdict(Family f, const Integer& parameter, const ClassGroupData& data) {
  return rank_verdict(f, parameter, data, family_omega(f, parameter));
}

namespace {

nlohmann::json int_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

}  // namespace

nlohmann::json verdict_to_json(const RankVerdict& v) {
  nlohmann::json primes = nlohmann::json::array();
  for (const auto& r : v.primes) {
    nlohmann::json s = r.s.exact() ? nlohmann::json{{"exact", r.s.lower}}
                                    : nlohmann::json{{"lower", r.s.lower}, {"upper", r.s.upper}};
    primes.push_back({{"p", r.p}, {"h", r.h}, {"grh", r.grh}, {"split", r.split}, {"s_p", s}});
  }
  nlohmann::json j;
  j["family"] = family_name(v.family);
  j["parameter"] = int_json(v.parameter);
  j["omega"] = v.omega;
  j["primes"] = primes;
  j["rank"] = v.kind == RankKind::Exact ? nlohmann::json{{"exact", v.rank}} : nlohmann::json{{"upper", v.rank}};
  j["label"] = v.label();
  j["sha_finite"] = v.sha_finite ? "asserted" : "unknown";
  j["grh"] = v.grh;
  j["input_grh"] = v.input_grh;
  j["witnesses"] = v.witnesses;
  j["justification"] = v.justification;
  return j;
}

Decision congruent_decider(const Integer& n, const ClassGroupData& data) {
  int w = omega_congruent(n);
  Decision d;
  d.rank = rank_verdict(Family::CN, n, data, w);
  if (d.rank.kind == RankKind::Exact)
    d.verdict = d.rank.rank == 0 ? "not-congruent" : "congruent";
  else
    d.verdict = "inconclusive";
  if (w == 1)
    d.consequences.push_back("if " + n.get_str() +
                             " is congruent then p divides the relative class number for every good prime");
  return d;
}

Decision cubesum_decider(const Integer& n, const ClassGroupData& data) {
  if (n < 1) raise(ErrorKind::InvalidArgument, "n must be positive");
  if (power_free_part(n, 3) != n) raise(ErrorKind::NotCubefree, n.get_str() + " is not cubefree");
  Decision d;
  d.rank = rank_verdict(Family::CS, n, data);
  if (d.rank.kind == RankKind::Exact)
    d.verdict = d.rank.rank == 0 ? "not-cube-sum" : "cube-sum";
  else
    d.verdict = "inconclusive";
  if (d.rank.omega == 1)
    d.consequences.push_back("if " + n.get_str() +
                             " is a sum of two rational cubes then p divides the relative class number for every "
                             "prime coprime to 6n");
  return d;
}

nlohmann::json decision_to_json(const Decision& d) {
  nlohmann::json j{{"verdict", d.verdict}, {"rank", verdict_to_json(d.rank)}};
  if (!d.consequences.empty()) j["consequences"] = d.consequences;
  return j;
}

std::vector<ExpectedRow> load_expected(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::IoError, "cannot open " + path);
  std::vector<ExpectedRow> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != "family,parameter,omega,rank")
        raise(ErrorKind::ParseError, path + ":1: expected header family,parameter,omega,rank");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> c;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) c.push_back(cell);
    auto where = path + ":" + std::to_string(lineno);
    if (c.size() != 4) raise(ErrorKind::ParseError, where + ": expected 4 fields");
    ExpectedRow r;
    r.family = parse_family(c[0]);
    r.parameter = parse_int(c[1]);
    if (c[2] != "1" && c[2] != "-1") raise(ErrorKind::ParseError, where + ": omega must be 1 or -1");
    r.omega = std::stoi(c[2]);
    r.rank = c[3];
    out.push_back(r);
  }
  return out;
}

int TableDiff::mismatches() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.match; }));
}

int TableDiff::unexplained() const {
  return static_cast<int>(
      std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.match && !r.contradicted; }));
}

namespace {

DiffRow diff_row(const ExpectedRow& e, const ClassGroupData& data) {
  DiffRow r;
  r.expected = e;
  try {
    auto v = rank_verdict(e.family, e.parameter, data);
    r.omega = v.omega;
    r.rank = v.label();
    if (v.witnesses.size() > 1) {
      r.note = "witnesses";
      for (long p : v.witnesses) r.note += " " + std::to_string(p);
    }
  } catch (const Error& err) {
    r.omega = family_omega(e.family, e.parameter);
    r.rank = "";
    r.note = err.what();
  }
  r.match = r.omega == e.omega && r.rank == e.rank;
  return r;
}

// (omega, p:h:grh ...) for a row; rows with the same family and signature get the same verdict.
std::string signature(const ExpectedRow& e, const ClassGroupData& data) {
  std::string s = std::string(family_name(e.family)) + "|" + std::to_string(e.omega);
  for (const auto& d : select(data, e.family, e.parameter))
    s += "|" + std::to_string(d.p) + ":" + std::to_string(d.h) + (d.grh ? "*" : "");
  return s;
}

void mark_contradictions(TableDiff& diff, const ClassGroupData& data) {
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < diff.rows.size(); ++i) groups[signature(diff.rows[i].expected, data)].push_back(i);
  for (auto& row : diff.rows) {
    if (row.match || row.omega != row.expected.omega) continue;
    for (std::size_t j : groups[signature(row.expected, data)]) {
      const auto& other = diff.rows[j];
      if (other.expected.parameter == row.expected.parameter) continue;
      if (other.expected.rank == row.rank) {
        row.contradicted = true;
        row.note = "table gives " + other.expected.rank + " for " + family_name(other.expected.family) + " " +
                   other.expected.parameter.get_str() + " with identical omega and class-group data";
        break;
      }
    }
  }
}

}  // namespace

TableDiff reproduce_table(const std::vector<ExpectedRow>& expected, const ClassGroupData& data) {
  TableDiff d;
  for (const auto& e : expected) d.rows.push_back(diff_row(e, data));
  mark_contradictions(d, data);
  return d;
}

TableDiff reproduce_table_parallel(const std::vector<ExpectedRow>& expected, const ClassGroupData& data) {
  TableDiff d;
  d.rows.resize(expected.size());
  const long n = static_cast<long>(expected.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) d.rows[i] = diff_row(expected[i], data);
  mark_contradictions(d, data);
  return d;
}

nlohmann::json diff_to_json(const TableDiff& d) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : d.rows) {
    nlohmann::json j{{"family", family_name(r.expected.family)},
                     {"parameter", int_json(r.expected.parameter)},
                     {"expected", {{"omega", r.expected.omega}, {"rank", r.expected.rank}}},
                     {"computed", {{"omega", r.omega}, {"rank", r.rank}}},
                     {"match", r.match}};
    if (r.contradicted) j["table_contradiction"] = true;
    if (!r.note.empty()) j["note"] = r.note;
    rows.push_back(j);
  }
  return {{"rows", rows},
          {"total", d.rows.size()},
          {"mismatches", d.mismatches()},
          {"unexplained", d.unexplained()}};
}

}  // namespace cmt
