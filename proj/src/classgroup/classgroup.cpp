#include "cmt/classgroup.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "cmt/errors.hpp"

namespace cmt {

const char* family_name(Family f) {
  switch (f) {
    case Family::ED:
      return "ED";
    case Family::EA:
      return "EA";
    case Family::CN:
      return "CN";
    default:
      return "CS";
  }
}

Family parse_family(const std::string& s) {
  if (s == "ED") return Family::ED;
  if (s == "EA") return Family::EA;
  if (s == "CN") return Family::CN;
  if (s == "CS") return Family::CS;
  raise(ErrorKind::ParseError, "unknown family '" + s + "'");
}

bool family_is_quartic(Family f) { return f == Family::ED || f == Family::CN; }

Integer family_curve_parameter(Family f, const Integer& n) {
  switch (f) {
    case Family::ED:
    case Family::EA:
      return n;
    case Family::CN:
      return n * n;
    default:
      return Integer(-432) * n * n;
  }
}

bool family_bad_prime(Family f, const Integer& parameter, long p) {
  if (p == 2) return true;
  if (!family_is_quartic(f) && p == 3) return true;
  return mod(parameter, Integer(p)) == 0;
}

void validate_datum(const ClassGroupDatum& d) {
  auto bad = [&](const std::string& why) {
    raise(ErrorKind::InvariantViolation, std::string(family_name(d.family)) + " " + d.parameter.get_str() +
                                             " p=" + std::to_string(d.p) + ": " + why);
  };
  if (d.parameter == 0) bad("parameter must be nonzero");
  if (d.p < 2 || !is_prime_u64(static_cast<std::uint64_t>(d.p))) bad("p is not prime");
  if (d.h < 0) bad("negative h");
  if (family_bad_prime(d.family, d.parameter, d.p)) bad("bad reduction at p, entry must be absent");
  if (family_is_quartic(d.family) && d.p % 4 == 3 && d.h % 2 != 0) bad("h must be even for p = 3 mod 4");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && s[i] == ' ') ++i;
  return s.substr(i);
}

constexpr const char* kHeader = "family,parameter,p,h,grh";

}  // namespace

ClassGroupData parse_table(std::istream& in, const std::string& name) {
  ClassGroupData out;
  std::set<std::tuple<int, std::string, long>> seen;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto where = name + ":" + std::to_string(lineno);
    if (!header) {
      if (line != kHeader) raise(ErrorKind::ParseError, where + ": expected header '" + kHeader + "'");
      header = true;
      continue;
    }
    auto c = split_csv(line);
    if (c.size() != 5) raise(ErrorKind::ParseError, where + ": expected 5 fields");
    for (auto& x : c) x = trim(x);
    ClassGroupDatum d;
    d.family = [&] {
      try {
        return parse_family(c[0]);
      } catch (const Error& e) {
        raise(ErrorKind::ParseError, where + ": " + e.what());
      }
    }();
    try {
      d.parameter = parse_int(c[1]);
      std::size_t pos = 0;
      d.p = std::stol(c[2], &pos);
      if (pos != c[2].size()) throw std::invalid_argument(c[2]);
      d.h = std::stoi(c[3], &pos);
      if (pos != c[3].size()) throw std::invalid_argument(c[3]);
    } catch (const std::exception&) {
      raise(ErrorKind::ParseError, where + ": bad integer field");
    }
    if (c[4] == "true")
      d.grh = true;
    else if (c[4] != "false")
      raise(ErrorKind::ParseError, where + ": grh must be true or false");
    try {
      validate_datum(d);
    } catch (const Error& e) {
      raise(ErrorKind::InvariantViolation, where + ": " + e.what());
    }
    if (!seen.insert({static_cast<int>(d.family), d.parameter.get_str(), d.p}).second)
      raise(ErrorKind::InvariantViolation, where + ": duplicate entry");
    out.push_back(d);
  }
  if (!header) raise(ErrorKind::ParseError, name + ": missing header");
  return out;
}

ClassGroupData load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::IoError, "cannot open " + path);
  return parse_table(in, path);
}

void write_table(std::ostream& out, const ClassGroupData& data) {
  out << kHeader << "\n";
  for (const auto& d : data)
    out << family_name(d.family) << "," << d.parameter.get_str() << "," << d.p << "," << d.h << ","
        << (d.grh ? "true" : "false") << "\n";
}

void save_table(const std::string& path, const ClassGroupData& data) {
  std::ofstream out(path);
  if (!out) raise(ErrorKind::IoError, "cannot write " + path);
  write_table(out, data);
}

ClassGroupData select(const ClassGroupData& data, Family f, const Integer& parameter) {
  ClassGroupData out;
  for (const auto& d : data)
    if (d.family == f && d.parameter == parameter) out.push_back(d);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  return out;
}

std::string format_request(const IntPoly& f, long p) {
  std::ostringstream s;
  s << "CLGP " << p << " " << f.degree();
  for (const auto& c : f.coeffs()) s << " " << c.get_str();
  return s.str();
}

BackendResponse parse_response(const std::string& raw) {
  std::string line = trim(raw);
  std::istringstream s(line);
  std::string status;
  s >> status;
  if (status == "ERR") {
    std::string msg;
    std::getline(s, msg);
    raise(ErrorKind::BackendError, "backend: " + trim(msg.empty() ? msg : msg.substr(1)));
  }
  BackendResponse r;
  int grh = -1;
  std::string rest;
  if (status != "OK" || !(s >> r.rank >> grh) || (s >> rest) || (grh != 0 && grh != 1))
    raise(ErrorKind::BackendError, "malformed backend response '" + line + "'");
  if (r.rank < 0) raise(ErrorKind::BackendError, "negative rank from backend");
  r.grh = grh == 1;
  return r;
}

SubprocessBackend::SubprocessBackend(std::string command) : command_(std::move(command)) {}

SubprocessBackend::~SubprocessBackend() { stop(); }

void SubprocessBackend::start() {
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0) raise(ErrorKind::BackendUnavailable, "pipe failed");
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    raise(ErrorKind::BackendUnavailable, "pipe failed");
  }
  signal(SIGPIPE, SIG_IGN);
  pid_t pid = fork();
  if (pid < 0) raise(ErrorKind::BackendUnavailable, "fork failed");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  fcntl(in_pipe[1], F_SETFD, FD_CLOEXEC);
  fcntl(out_pipe[0], F_SETFD, FD_CLOEXEC);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = fdopen(out_pipe[0], "r");
}

void SubprocessBackend::stop() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_) std::fclose(from_child_);
  if (pid_ > 0) waitpid(pid_, nullptr, 0);
  to_child_ = -1;
  from_child_ = nullptr;
  pid_ = -1;
}

std::string SubprocessBackend::roundtrip(const std::string& request) {
  std::lock_guard<std::mutex> lock(mu_);
  if (pid_ < 0) start();
  std::string msg = request + "\n";
  std::size_t off = 0;
  while (off < msg.size()) {
    ssize_t n = write(to_child_, msg.data() + off, msg.size() - off);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      stop();
      raise(ErrorKind::BackendUnavailable, "backend '" + command_ + "' closed its input");
    }
    off += static_cast<std::size_t>(n);
  }
  std::string line;
  int ch;
  while ((ch = std::fgetc(from_child_)) != EOF && ch != '\n') line.push_back(static_cast<char>(ch));
  if (ch == EOF && line.empty()) {
    stop();
    raise(ErrorKind::BackendUnavailable, "backend '" + command_ + "' exited without answering");
  }
  return line;
}

BackendResponse SubprocessBackend::class_rank(const IntPoly& f, long p) {
  return parse_response(roundtrip(format_request(f, p)));
}

std::optional<std::string> backend_from_env() {
  const char* v = std::getenv("CM_BACKEND");
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

bool backend_ping(Backend& b, std::string* detail) {
  try {
    auto r = b.class_rank(IntPoly::x(), 3);
    if (detail) *detail = "OK " + std::to_string(r.rank) + " " + (r.grh ? "1" : "0");
    return r.rank == 0;
  } catch (const Error& e) {
    if (detail) *detail = e.what();
    return false;
  }
}

std::string cache_key(const IntPoly& f, long p) {
  std::string text;
  IntPoly g = normalize(f);
  for (const auto& c : g.coeffs()) text += c.get_str() + " ";
  text += "p=" + std::to_string(p);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

ClassGroupCache::ClassGroupCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0, good_end = 0;
  int lineno = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    bool last = nl == std::string::npos;
    std::string line = content.substr(pos, last ? std::string::npos : nl - pos);
    ++lineno;
    bool ok = !last;
    if (ok) {
      try {
        auto j = nlohmann::json::parse(line);
        entries_[j.at("key").get<std::string>()] = {j.at("rank").get<int>(), j.at("grh").get<bool>()};
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) {
      bool trailing = last || content.find_first_not_of("\n", nl + 1) == std::string::npos;
      if (!trailing)
        raise(ErrorKind::IoError, path_ + ":" + std::to_string(lineno) + ": corrupt cache record");
      warnings_.push_back(path_ + ":" + std::to_string(lineno) + ": truncated cache record dropped");
      break;
    }
    pos = nl + 1;
    good_end = pos;
  }
  if (good_end < content.size() && truncate(path_.c_str(), static_cast<off_t>(good_end)) != 0)
    raise(ErrorKind::IoError, "cannot truncate " + path_);
}

std::optional<CacheEntry> ClassGroupCache::get(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ClassGroupCache::put(const std::string& key, long p, const CacheEntry& e) {
  std::lock_guard<std::mutex> lock(mu_);
  nlohmann::json j{{"key", key}, {"p", p}, {"rank", e.rank}, {"grh", e.grh}};
  std::ofstream out(path_, std::ios::app);
  if (!out) raise(ErrorKind::IoError, "cannot append to " + path_);
  out << j.dump() << "\n";
  out.flush();
  if (!out) raise(ErrorKind::IoError, "write failed on " + path_);
  entries_[key] = e;
}

std::size_t ClassGroupCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

BackendResponse CachedBackend::class_rank(const IntPoly& f, long p) {
  std::string key = cache_key(f, p);
  if (auto e = cache_.get(key)) {
    hit_ = true;
    return {e->rank, e->grh};
  }
  hit_ = false;
  auto r = inner_.class_rank(f, p);
  cache_.put(key, p, {r.rank, r.grh});
  return r;
}

ClassGroupDatum relative_rank_from_backend(const IntPoly& L, const IntPoly& F, long p, Backend& backend,
                                           Family family, const Integer& parameter) {
  auto* cached = dynamic_cast<CachedBackend*>(&backend);
  auto rl = backend.class_rank(L, p);
  bool hit_l = cached && cached->hit();
  auto rf = backend.class_rank(F, p);
  bool hit_f = cached && cached->hit();
  if (rl.rank < rf.rank)
    raise(ErrorKind::NegativeRelativeRank, "rank Cl(L)[p] = " + std::to_string(rl.rank) +
                                               " < rank Cl(F)[p] = " + std::to_string(rf.rank));
  ClassGroupDatum d;
  d.family = family;
  d.parameter = parameter;
  d.p = p;
  d.h = rl.rank - rf.rank;
  d.grh = rl.grh || rf.grh;
  d.source = hit_l && hit_f ? DataSource::Cache : DataSource::Backend;
  return d;
}

}  // namespace cmt
