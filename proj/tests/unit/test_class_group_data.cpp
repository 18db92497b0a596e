#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmt/classgroup.hpp"
#include "cmt/errors.hpp"
#include "cmt/towers.hpp"
#include "csv_rows.hpp"

using namespace cmt;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

ClassGroupData parse(const std::string& body) {
  std::istringstream in("family,parameter,p,h,grh\n" + body);
  return parse_table(in);
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("cmt_cg_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& n) const { return (path / n).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string lines_of(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int count_lines(const std::string& path) {
  std::ifstream in(path);
  int n = 0;
  std::string l;
  while (std::getline(in, l)) ++n;
  return n;
}

}  // namespace

TEST_CASE("load_table examples") {
  auto d = parse("ED,17,3,2,false\n");
  REQUIRE(d.size() == 1);
  CHECK(d[0].family == Family::ED);
  CHECK(d[0].parameter == 17);
  CHECK(d[0].p == 3);
  CHECK(d[0].h == 2);
  CHECK(!d[0].grh);
  CHECK(d[0].source == DataSource::Table);

  auto e = parse("EA,-11,7,1,true\n");
  CHECK(e[0].parameter == -11);
  CHECK(e[0].h == 1);
  CHECK(e[0].grh);

  CHECK(kind_of([] { parse("ED,5,5,0,false\n"); }) == ErrorKind::InvariantViolation);
}

TEST_CASE("load_table validation") {
  CHECK(kind_of([] { parse("ED,17,3,1,false\n"); }) == ErrorKind::InvariantViolation);
  CHECK(kind_of([] { parse("CN,7,3,1,false\n"); }) == ErrorKind::InvariantViolation);
  CHECK(kind_of([] { parse("ED,17,9,0,false\n"); }) == ErrorKind::InvariantViolation);
  CHECK(kind_of([] { parse("EA,5,3,0,false\n"); }) == ErrorKind::InvariantViolation);
  CHECK(kind_of([] { parse("CS,14,7,0,false\n"); }) == ErrorKind::InvariantViolation);
  CHECK(kind_of([] { parse("ED,17,5,-1,false\n"); }) == ErrorKind::InvariantViolation);
  CHECK(kind_of([] { parse("ED,17,5,1,false\nED,17,5,1,false\n"); }) == ErrorKind::InvariantViolation);
  CHECK(kind_of([] { parse("EX,17,5,1,false\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse("ED,17,5,1\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse("ED,17,5,one,false\n"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse("ED,17,5,1,yes\n"); }) == ErrorKind::ParseError);
  std::istringstream noheader("ED,17,5,1,false\n");
  CHECK(kind_of([&] { parse_table(noheader); }) == ErrorKind::ParseError);
  try {
    parse("ED,1,3,0,false\nED,17,5,x,false\n");
  } catch (const Error& err) {
    CHECK(std::string(err.what()).find(":3:") != std::string::npos);
  }
  CHECK(parse("").empty());
}

TEST_CASE("bundled tables load and round-trip") {
  std::size_t total = 0;
  for (const char* fam : {"ED", "EA", "CN", "CS"}) {
    auto data = load_table(cmt::testing::data_path(std::string("tables/") + fam + ".csv"));
    total += data.size();
    std::stringstream s;
    write_table(s, data);
    CHECK(parse_table(s) == data);
  }
  CHECK(total == 182 + 176 + 77 + 76);
  auto ed = load_table(cmt::testing::data_path("tables/ED.csv"));
  auto d17 = select(ed, Family::ED, 17);
  REQUIRE(d17.size() == 3);
  CHECK(d17[0].p == 3);
  CHECK(d17[0].h == 2);
  CHECK(d17[2].p == 13);
  CHECK(d17[2].grh);
  CHECK(select(ed, Family::ED, 5).size() == 2);
}

TEST_CASE("protocol formatting") {
  CHECK(format_request(IntPoly({-1, 0, 0, 0, -6, 0, 0, 0, 3}), 3) == "CLGP 3 8 -1 0 0 0 -6 0 0 0 3");
  auto r = parse_response("OK 2 1");
  CHECK(r.rank == 2);
  CHECK(r.grh);
  CHECK(!parse_response("OK 0 0\r").grh);
  CHECK(kind_of([] { parse_response("ERR out of memory"); }) == ErrorKind::BackendError);
  try {
    parse_response("ERR out of memory");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("out of memory") != std::string::npos);
  }
  CHECK(kind_of([] { parse_response("OK -1 0"); }) == ErrorKind::BackendError);
  CHECK(kind_of([] { parse_response("OK 1 2"); }) == ErrorKind::BackendError);
  CHECK(kind_of([] { parse_response("OK 1"); }) == ErrorKind::BackendError);
  CHECK(kind_of([] { parse_response("YES 1 0"); }) == ErrorKind::BackendError);
}

TEST_CASE("subprocess backend") {
  TempDir tmp;
  auto answers = tmp.file("answers.txt");
  std::ofstream(answers) << "3 -1 0 0 0 -6 0 0 0 3 => OK 2 1\n"
                            "3 -1 -6 3 => OK 0 0\n"
                            "5 1 0 1 => ERR no such field\n"
                            "7 1 0 1 => OK 5 0\n"
                            "7 1 1 => OK 0 1\n";
  SubprocessBackend b(std::string(FAKE_BACKEND) + " " + answers);
  std::string detail;
  CHECK(backend_ping(b, &detail));
  CHECK(detail == "OK 0 0");

  auto d = relative_rank_from_backend(IntPoly({-1, 0, 0, 0, -6, 0, 0, 0, 3}), IntPoly({-1, -6, 3}), 3, b);
  CHECK(d.h == 2);
  CHECK(d.grh);
  CHECK(d.source == DataSource::Backend);

  auto t = build_tower_quartic(3, 1, {false, false, {}});
  auto d1 = relative_rank_from_backend(t.K, t.F, 3, b, Family::ED, 1);
  CHECK(d1.h == 0);
  CHECK(!d1.grh);

  CHECK(relative_rank_from_backend(IntPoly({1, 0, 1}), IntPoly({1, 1}), 7, b).grh);
  CHECK(kind_of([&] { b.class_rank(IntPoly({1, 0, 1}), 5); }) == ErrorKind::BackendError);
  CHECK(kind_of([&] { relative_rank_from_backend(IntPoly({1, 1}), IntPoly({1, 0, 1}), 7, b); }) ==
        ErrorKind::NegativeRelativeRank);
  CHECK(b.roundtrip("HELLO").rfind("ERR", 0) == 0);
  CHECK(kind_of([&] { b.roundtrip("DIE"); }) == ErrorKind::BackendUnavailable);
  CHECK(backend_ping(b));
}

TEST_CASE("unavailable backend") {
  SubprocessBackend b("/nonexistent/clgp-backend");
  CHECK(kind_of([&] { b.class_rank(IntPoly::x(), 3); }) == ErrorKind::BackendUnavailable);
  std::string detail;
  CHECK(!backend_ping(b, &detail));
  CHECK(!detail.empty());
}

TEST_CASE("cache put get and key") {
  TempDir tmp;
  auto path = tmp.file("cache.jsonl");
  CHECK(cache_key(IntPoly({2, 4}), 3) == cache_key(IntPoly({1, 2}), 3));
  CHECK(cache_key(IntPoly({1, 2}), 3) != cache_key(IntPoly({1, 2}), 5));
  CHECK(cache_key(IntPoly({1, 2}), 3).size() == 64);
  {
    ClassGroupCache c(path);
    CHECK(!c.get("missing"));
    c.put("k1", 3, {2, true});
    auto e = c.get("k1");
    REQUIRE(e);
    CHECK(e->rank == 2);
    CHECK(e->grh);
    c.put("k2", 5, {0, false});
  }
  ClassGroupCache again(path);
  CHECK(again.size() == 2);
  CHECK(again.get("k2")->rank == 0);
  CHECK(again.warnings().empty());
}

TEST_CASE("cache truncated tail") {
  TempDir tmp;
  auto path = tmp.file("cache.jsonl");
  {
    ClassGroupCache c(path);
    c.put("a", 3, {1, false});
    c.put("b", 3, {2, false});
  }
  std::ofstream(path, std::ios::app) << "{\"key\":\"c\",\"p\":3,\"ra";
  ClassGroupCache c(path);
  CHECK(c.size() == 2);
  CHECK(c.get("b")->rank == 2);
  CHECK(!c.get("c"));
  CHECK(c.warnings().size() == 1);
  CHECK(lines_of(path).back() == '\n');
  c.put("d", 5, {0, true});
  ClassGroupCache c2(path);
  CHECK(c2.size() == 3);
  CHECK(c2.warnings().empty());

  auto bad = tmp.file("bad.jsonl");
  std::ofstream(bad) << "garbage\n{\"key\":\"a\",\"p\":3,\"rank\":1,\"grh\":false}\n";
  CHECK(kind_of([&] { ClassGroupCache x(bad); }) == ErrorKind::IoError);
}

TEST_CASE("cached backend determinism") {
  TempDir tmp;
  auto log = tmp.file("requests.log");
  setenv("FAKE_BACKEND_LOG", log.c_str(), 1);
  auto answers = tmp.file("answers.txt");
  std::ofstream(answers) << "3 -1 0 0 0 -6 0 0 0 3 => OK 1 1\n";
  SubprocessBackend inner(std::string(FAKE_BACKEND) + " " + answers);
  ClassGroupCache cache(tmp.file("cache.jsonl"));
  CachedBackend b(inner, cache);
  IntPoly L({-1, 0, 0, 0, -6, 0, 0, 0, 3}), F({-1, -6, 3});
  auto d1 = relative_rank_from_backend(L, F, 3, b);
  auto d2 = relative_rank_from_backend(L, F, 3, b);
  CHECK(d1 == d2);
  CHECK(d1.source == DataSource::Backend);
  CHECK(d2.source == DataSource::Cache);
  CHECK(d2.grh);
  CHECK(count_lines(log) == 2);
  CHECK(count_lines(tmp.file("cache.jsonl")) == 2);
  unsetenv("FAKE_BACKEND_LOG");
}

TEST_CASE("backend env") {
  setenv("CM_BACKEND", "", 1);
  CHECK(!backend_from_env());
  setenv("CM_BACKEND", "sage clgp.sage", 1);
  CHECK(*backend_from_env() == "sage clgp.sage");
  unsetenv("CM_BACKEND");
}
