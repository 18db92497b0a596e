#pragma once

#include <cstdio>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cmt/integer.hpp"
#include "cmt/poly.hpp"

namespace cmt {

enum class Family { ED, EA, CN, CS };
enum class DataSource { Table, Backend, Cache };

const char* family_name(Family f);
Family parse_family(const std::string& s);  // ParseError
bool family_is_quartic(Family f);
// Coefficient of the Weierstrass model: D for ED, n^2 for CN, A for EA, -432 n^2 for CS.
Integer family_curve_parameter(Family f, const Integer& parameter);
// True if p is a prime of bad reduction for the family member.
bool family_bad_prime(Family f, const Integer& parameter, long p);

struct ClassGroupDatum {
  Family family = Family::ED;
  Integer parameter;
  long p = 0;
  int h = 0;
  bool grh = false;
  DataSource source = DataSource::Table;

  bool operator==(const ClassGroupDatum& o) const {
    return family == o.family && parameter == o.parameter && p == o.p && h == o.h && grh == o.grh;
  }
};

using ClassGroupData = std::vector<ClassGroupDatum>;

void validate_datum(const ClassGroupDatum& d);  // InvariantViolation
ClassGroupData parse_table(std::istream& in, const std::string& name = "<stream>");
ClassGroupData load_table(const std::string& path);
void write_table(std::ostream& out, const ClassGroupData& data);
void save_table(const std::string& path, const ClassGroupData& data);

// Per-parameter lookup: data for (family, parameter) sorted by p.
ClassGroupData select(const ClassGroupData& data, Family f, const Integer& parameter);

struct BackendResponse {
  int rank = 0;
  bool grh = false;
};

std::string format_request(const IntPoly& f, long p);
BackendResponse parse_response(const std::string& line);  // BackendError

class Backend {
 public:
  virtual ~Backend() = default;
  virtual BackendResponse class_rank(const IntPoly& f, long p) = 0;
};

// Child process speaking the CLGP line protocol on stdin/stdout.
class SubprocessBackend : public Backend {
 public:
  explicit SubprocessBackend(std::string command);
  ~SubprocessBackend() override;
  SubprocessBackend(const SubprocessBackend&) = delete;
  SubprocessBackend& operator=(const SubprocessBackend&) = delete;

  BackendResponse class_rank(const IntPoly& f, long p) override;
  std::string roundtrip(const std::string& request);
  const std::string& command() const { return command_; }

 private:
  void start();
  void stop();

  std::string command_;
  std::mutex mu_;
  int pid_ = -1;
  int to_child_ = -1;
  std::FILE* from_child_ = nullptr;
};

// Command from CM_BACKEND, if set and nonempty.
std::optional<std::string> backend_from_env();

// Sends CLGP 3 1 0 1 (the field Q) and expects rank 0.
bool backend_ping(Backend& b, std::string* detail = nullptr);

std::string cache_key(const IntPoly& f, long p);

struct CacheEntry {
  int rank = 0;
  bool grh = false;
};

// Append-only JSON-lines journal of backend answers.
class ClassGroupCache {
 public:
  explicit ClassGroupCache(std::string path);

  std::optional<CacheEntry> get(const std::string& key) const;
  void put(const std::string& key, long p, const CacheEntry& e);
  std::size_t size() const;
  // Warnings raised while reading the journal (truncated tail).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::map<std::string, CacheEntry> entries_;
  std::vector<std::string> warnings_;
};

// Backend with cache interposed; hit() reports whether the last query was answered from cache.
class CachedBackend : public Backend {
 public:
  CachedBackend(Backend& inner, ClassGroupCache& cache) : inner_(inner), cache_(cache) {}
  BackendResponse class_rank(const IntPoly& f, long p) override;
  bool hit() const { return hit_; }

 private:
  Backend& inner_;
  ClassGroupCache& cache_;
  bool hit_ = false;
};

// h = rank Cl(L)[p] - rank Cl(F)[p].
ClassGroupDatum relative_rank_from_backend(const IntPoly& L, const IntPoly& F, long p, Backend& backend,
                                           Family family = Family::ED, const Integer& parameter = 0);

}  // namespace cmt
