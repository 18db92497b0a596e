#include "cmt/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "cmt/classgroup.hpp"
#include "cmt/divpoly.hpp"
#include "cmt/errors.hpp"
#include "cmt/factor.hpp"
#include "cmt/families.hpp"
#include "cmt/rank.hpp"
#include "cmt/rootno.hpp"
#include "cmt/towers.hpp"

namespace cmt {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Integer arg_int(const std::string& name, const std::string& v) {
  try {
    return parse_int(v);
  } catch (const Error&) {
    throw UsageError("--" + name + ": not an integer: '" + v + "'");
  }
}

Rational arg_rational(const std::string& name, const std::string& v) {
  Rational q;
  std::string s = v;
  if (!s.empty() && s[0] == '+') s = s.substr(1);
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw UsageError("--" + name + ": not a rational: '" + v + "'");
  q.canonicalize();
  return q;
}

json int_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json bihom_json(const BiHomPoly& f) {
  json a = json::array();
  for (const auto& c : f.coeffs()) a.push_back(c.get_str());
  return a;
}

json root_json(const std::string& family, const Integer& parameter, const RootNumber& r) {
  json local = json::array();
  for (const auto& [place, w] : r.local) local.push_back({{"place", place}, {"value", w}});
  return {{"family", family}, {"parameter", int_json(parameter)}, {"value", r.value}, {"local", local}};
}

// Family tag from --family; quartic/sextic name the ED/EA curves.
Family family_tag(const std::string& s) {
  if (s == "quartic") return Family::ED;
  if (s == "sextic") return Family::EA;
  if (s == "congruent") return Family::CN;
  if (s == "cubesum") return Family::CS;
  try {
    return parse_family(s);
  } catch (const Error&) {
    throw UsageError("--family: unknown family '" + s + "'");
  }
}

IntPoly absolute_poly(const IntPoly& f, BaseField base) {
  if (base == BaseField::Q) return f;
  for (long c = 1; c < 1000; ++c) {
    IntPoly N = norm_shift(f, base, c);
    if (is_squarefree_poly(N)) return normalize(N);
  }
  raise(ErrorKind::Internal, "no squarefree norm");
}

std::vector<long> default_primes(Family f) {
  return family_is_quartic(f) ? std::vector<long>{3, 5, 13} : std::vector<long>{7, 13};
}

ClassGroupData backend_data(Family f, const Integer& parameter, const std::vector<long>& primes,
                            const ClassGroupData& have, Backend& backend) {
  ClassGroupData out;
  Integer a = family_curve_parameter(f, parameter);
  for (long p : primes) {
    if (family_bad_prime(f, parameter, p)) continue;
    bool known = false;
    for (const auto& d : have) known = known || (d.family == f && d.parameter == parameter && d.p == p);
    if (known) continue;
    TowerOptions opt;
    opt.certify = false;
    IntPoly L, F;
    if (family_is_quartic(f)) {
      auto t = build_tower_quartic(p, a, opt);
      L = t.L_abs;
      F = absolute_poly(t.F, t.base);
    } else {
      auto t = build_tower_sextic(p, a, opt);
      L = t.L_abs;
      F = absolute_poly(t.F, t.base);
    }
    auto d = relative_rank_from_backend(L, F, p, backend, f, parameter);
    validate_datum(d);
    out.push_back(d);
  }
  return out;
}

std::string table_file(Family f) { return default_table_dir() + "/" + family_name(f) + ".csv"; }

void emit(std::ostream& out, const json& j, bool tsv) {
  if (tsv)
    out << to_tsv(j);
  else
    out << j.dump(2) << "\n";
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); })) {
    std::string s;
    for (const auto& x : j) s += (s.empty() ? "" : ",") + (x.is_string() ? x.get<std::string>() : x.dump());
    out.emplace_back(prefix, s);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

}  // namespace

std::string default_table_dir() {
  if (const char* d = std::getenv("CMT_DATA_DIR"); d && *d) return std::string(d) + "/tables";
  return std::string(CMT_DEFAULT_DATA_DIR) + "/tables";
}

std::string to_tsv(const json& j) {
  std::ostringstream s;
  const json* rows = nullptr;
  if (j.is_object())
    for (const char* key : {"rows", "members", "pairs", "primes"})
      if (j.contains(key) && j[key].is_array() && !j[key].empty()) {
        rows = &j[key];
        break;
      }
  if (rows) {
    std::vector<std::string> header;
    std::vector<std::vector<std::pair<std::string, std::string>>> cells;
    for (const auto& r : *rows) {
      std::vector<std::pair<std::string, std::string>> f;
      if (r.is_array() && r.size() == 2 && rows == &j["pairs"])
        f = {{"m", r[0].dump()}, {"n", r[1].dump()}};
      else
        flatten(r.is_object() ? r : json{{"value", r}}, "", f);
      for (const auto& [k, v] : f)
        if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
      cells.push_back(f);
    }
    for (std::size_t i = 0; i < header.size(); ++i) s << (i ? "\t" : "") << header[i];
    s << "\n";
    for (const auto& f : cells) {
      std::map<std::string, std::string> m(f.begin(), f.end());
      for (std::size_t i = 0; i < header.size(); ++i) s << (i ? "\t" : "") << m[header[i]];
      s << "\n";
    }
    return s.str();
  }
  std::vector<std::pair<std::string, std::string>> f;
  flatten(j, "", f);
  for (const auto& [k, v] : f) s << k << "\t" << v << "\n";
  return s.str();
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Division fields, root numbers and Selmer rank verdicts for CM elliptic curves", "cmt"};
  app.require_subcommand(1);
  app.fallthrough();
  bool tsv = false;
  app.add_flag("--tsv", tsv, "Tab-separated output instead of JSON");

  std::string family, D, A, N, P;
  auto add_param = [&](CLI::App* s) {
    s->add_option("--D", D, "Quartic twist parameter D");
    s->add_option("--A", A, "Sextic twist parameter A");
  };

  auto* divpoly = app.add_subcommand("divpoly", "Division polynomial f_n (and g_n) for a CM family");
  divpoly->add_option("--family", family, "quartic or sextic")->required();
  int n_index = 0;
  divpoly->add_option("--n", n_index, "Index n >= 1")->required()->check(CLI::Range(1, 400));
  add_param(divpoly);

  auto* tower = app.add_subcommand("tower", "Division-field tower polynomials with certificates");
  tower->add_option("--family", family, "quartic or sextic")->required();
  tower->add_option("--p", P, "Prime p")->required();
  add_param(tower);
  bool no_certify = false, no_abs = false;
  int witness_primes = 400, degree_cap = 64;
  tower->add_flag("--no-certify", no_certify, "Skip irreducibility certificates");
  tower->add_flag("--no-abs", no_abs, "Skip the absolute polynomial over Q");
  tower->add_option("--witness-primes", witness_primes, "Split primes tried as irreducibility witnesses");
  tower->add_option("--degree-cap", degree_cap, "Largest degree factored over Q");

  auto* root = app.add_subcommand("root", "Global root number with local breakdown");
  root->add_option("--family", family, "quartic, sextic, congruent or cubesum")->required();
  add_param(root);
  root->add_option("--n", N, "n for the congruent or cube-sum curve");

  std::vector<std::string> tables;
  std::string backend_cmd, cache_path;
  std::vector<long> primes;
  auto* rank = app.add_subcommand("rank", "Rank verdict from class-group data");
  rank->add_option("--family", family, "quartic, sextic, ED, EA, CN or CS")->required();
  add_param(rank);
  rank->add_option("--n", N, "n for CN or CS");
  rank->add_option("--table", tables, "Class-group CSV (repeatable); default the bundled table");
  rank->add_option("--backend", backend_cmd, "Backend command line (default $CM_BACKEND)");
  rank->add_option("--cache", cache_path, "Backend cache file (JSON lines)");
  rank->add_option("--primes", primes, "Primes to query through the backend")->delimiter(',');

  std::string n_pos;
  auto* congruent = app.add_subcommand("congruent", "Congruent-number decision for squarefree n");
  congruent->add_option("n", n_pos, "n")->required();
  congruent->add_option("--table", tables, "Class-group CSV for family CN");
  auto* cubesum = app.add_subcommand("cubesum", "Rational cube-sum decision for cubefree n");
  cubesum->add_option("n", n_pos, "n")->required();
  cubesum->add_option("--table", tables, "Class-group CSV for family CS");

  auto* fam = app.add_subcommand("family", "Constructive families");
  fam->require_subcommand(1);
  std::string t_arg, m_arg, n_arg, ring = "gauss";
  int count = 20;
  long box = 5, max_box = 100;
  bool serial = false;
  auto* kihara = fam->add_subcommand("kihara", "Kihara rank >= 6 specialization D(t) = k(2p, 1, t)");
  kihara->add_option("--p", P, "Odd prime p")->required();
  kihara->add_option("--t", t_arg, "Rational t");
  kihara->add_option("--m", m_arg, "m for t = 4cdp (m+n)/n");
  kihara->add_option("--n", n_arg, "n for t = 4cdp (m+n)/n");
  auto* fcong = fam->add_subcommand("congruent", "Congruent-number families S_p or T_p");
  fcong->add_option("--p", P, "Odd prime p")->required();
  fcong->add_option("--count", count, "Number of members")->check(CLI::Range(0, 100000));
  auto* sieve = fam->add_subcommand("sieve", "Squarefree values of the degree-24 form");
  sieve->add_option("--p", P, "Odd prime p")->required();
  sieve->add_option("--box", box, "Box size")->check(CLI::Range(0L, 1000000L));
  sieve->add_option("--max-box", max_box, "Box budget");
  sieve->add_flag("--serial", serial, "Serial reference path");
  auto* disc = fam->add_subcommand("disc-bound", "Root-discriminant bound 8|n| sqrt(N(P))");
  disc->add_option("--n", n_arg, "n")->required();
  disc->add_option("--p", P, "Prime p")->required();
  disc->add_option("--ring", ring, "gauss or eisenstein")->check(CLI::IsMember({"gauss", "eisenstein"}));

  auto* table = app.add_subcommand("table", "Table operations");
  table->require_subcommand(1);
  std::string which, data_path, expected_path;
  auto* reproduce = table->add_subcommand("reproduce", "Row-by-row diff of computed against printed rank column");
  reproduce->add_option("--which", which, "ED, EA, CN or CS")->required()->check(CLI::IsMember({"ED", "EA", "CN", "CS"}));
  reproduce->add_option("--data", data_path, "Class-group CSV (default bundled)");
  reproduce->add_option("--expected", expected_path, "Expected CSV (default bundled)");
  reproduce->add_flag("--serial", serial, "Serial reference path");

  auto* backend = app.add_subcommand("backend", "Class-group backend");
  backend->require_subcommand(1);
  auto* ping = backend->add_subcommand("ping", "Check the backend answers the protocol");
  ping->add_option("--backend", backend_cmd, "Backend command line (default $CM_BACKEND)");

  std::vector<std::string> argv_store{"cmt"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto need = [](const std::string& v, const std::string& flag) {
    if (v.empty()) throw UsageError(flag + " is required");
    return v;
  };
  auto quartic_or_sextic = [&]() {
    if (family != "quartic" && family != "sextic") throw UsageError("--family must be quartic or sextic");
    return family == "quartic";
  };

  try {
    if (*divpoly) {
      bool q = quartic_or_sextic();
      json j{{"family", family}, {"n", n_index}};
      if (q) {
        j["f"] = bihom_json(f_quartic(n_index));
        j["g"] = bihom_json(g_quartic(n_index));
        if (!D.empty()) {
          Integer d = arg_int("D", D);
          j["D"] = int_json(d);
          j["f_at"] = poly_to_json(f_quartic_at(n_index, d));
          j["g_at"] = poly_to_json(g_quartic_at(n_index, d));
        }
      } else {
        j["f"] = bihom_json(f_sextic(n_index));
        if (!A.empty()) {
          Integer a = arg_int("A", A);
          j["A"] = int_json(a);
          j["f_at"] = poly_to_json(f_sextic_at(n_index, a));
        }
      }
      emit(out, j, tsv);
      return 0;
    }
    if (*tower) {
      bool q = quartic_or_sextic();
      Integer p = arg_int("p", P);
      TowerOptions opt;
      opt.certify = !no_certify;
      opt.absolute = !no_abs;
      opt.cert.witness_primes = witness_primes;
      opt.cert.degree_cap = degree_cap;
      if (q)
        emit(out, tower_to_json(build_tower_quartic(p, arg_int("D", need(D, "--D")), opt)), tsv);
      else
        emit(out, tower_to_json(build_tower_sextic(p, arg_int("A", need(A, "--A")), opt)), tsv);
      return 0;
    }
    if (*root) {
      if (family == "quartic") {
        Integer d = arg_int("D", need(D, "--D"));
        emit(out, root_json("quartic", d, root_number_quartic(d)), tsv);
      } else if (family == "sextic") {
        Integer a = arg_int("A", need(A, "--A"));
        emit(out, root_json("sextic", a, root_number_sextic(a)), tsv);
      } else if (family == "congruent") {
        Integer n = arg_int("n", need(N, "--n"));
        int w = omega_congruent(n);
        auto j = root_json("congruent", n, root_number_quartic(n * n));
        if (j["value"] != w) raise(ErrorKind::Internal, "omega_congruent disagrees with the local product");
        emit(out, j, tsv);
      } else if (family == "cubesum") {
        Integer n = arg_int("n", need(N, "--n"));
        emit(out, root_json("cubesum", n, root_number_sextic(Integer(-432) * n * n)), tsv);
      } else {
        throw UsageError("--family must be quartic, sextic, congruent or cubesum");
      }
      return 0;
    }
    if (*rank) {
      Family f = family_tag(family);
      Integer param = f == Family::ED   ? arg_int("D", need(D, "--D"))
                      : f == Family::EA ? arg_int("A", need(A, "--A"))
                                        : arg_int("n", need(N, "--n"));
      ClassGroupData data;
      if (tables.empty() && backend_cmd.empty() && !backend_from_env()) tables.push_back(table_file(f));
      for (const auto& path : tables) {
        auto t = load_table(path);
        data.insert(data.end(), t.begin(), t.end());
      }
      std::string cmd = backend_cmd.empty() ? backend_from_env().value_or("") : backend_cmd;
      if (!cmd.empty()) {
        SubprocessBackend sub(cmd);
        std::unique_ptr<ClassGroupCache> cache;
        std::unique_ptr<CachedBackend> cached;
        Backend* b = &sub;
        if (!cache_path.empty()) {
          cache = std::make_unique<ClassGroupCache>(cache_path);
          for (const auto& w : cache->warnings()) err << "warning: " << w << "\n";
          cached = std::make_unique<CachedBackend>(sub, *cache);
          b = cached.get();
        }
        auto extra = backend_data(f, param, primes.empty() ? default_primes(f) : primes, data, *b);
        data.insert(data.end(), extra.begin(), extra.end());
      }
      emit(out, verdict_to_json(rank_verdict(f, param, data)), tsv);
      return 0;
    }
    if (*congruent || *cubesum) {
      Family f = *congruent ? Family::CN : Family::CS;
      Integer n = arg_int("n", n_pos);
      ClassGroupData data;
      if (tables.empty()) tables.push_back(table_file(f));
      for (const auto& path : tables) {
        auto t = load_table(path);
        data.insert(data.end(), t.begin(), t.end());
      }
      auto d = f == Family::CN ? congruent_decider(n, data) : cubesum_decider(n, data);
      json j = decision_to_json(d);
      j["n"] = int_json(n);
      emit(out, j, tsv);
      return 0;
    }
    if (*kihara) {
      Integer p = arg_int("p", P);
      KiharaSpecialization s;
      if (!t_arg.empty()) {
        if (!m_arg.empty() || !n_arg.empty()) throw UsageError("give either --t or --m/--n");
        s = kihara_family(p, arg_rational("t", t_arg));
      } else {
        Integer m = arg_int("m", need(m_arg, "--m")), n = arg_int("n", need(n_arg, "--n"));
        if (m <= 0 || n <= 0) throw UsageError("--m and --n must be positive");
        s = kihara_family_mn(p, m, n);
      }
      emit(out, kihara_to_json(s), tsv);
      return 0;
    }
    if (*fcong) {
      auto fam_result = congruent_families(arg_int("p", P), count);
      emit(out, congruent_family_to_json(fam_result), tsv);
      return 0;
    }
    if (*sieve) {
      auto form = binary_form(arg_int("p", P));
      SieveOptions opt;
      opt.max_box = max_box;
      auto r = serial ? squarefree_sieve(form, box, opt) : squarefree_sieve_parallel(form, box, opt);
      json j = sieve_to_json(r);
      j["p"] = int_json(form.p);
      emit(out, j, tsv);
      return 0;
    }
    if (*disc) {
      Integer n = arg_int("n", n_arg), p = arg_int("p", P);
      CmRing r = ring == "gauss" ? CmRing::Gauss : CmRing::Eisenstein;
      emit(out, {{"n", int_json(n)}, {"p", int_json(p)}, {"ring", ring}, {"bound", int_json(disc_bound(n, p, r))}},
           tsv);
      return 0;
    }
    if (*reproduce) {
      Family f = parse_family(which);
      auto data = load_table(data_path.empty() ? table_file(f) : data_path);
      auto exp = load_expected(expected_path.empty() ? default_table_dir() + "/" + which + "_expected.csv"
                                                     : expected_path);
      auto diff = serial ? reproduce_table(exp, data) : reproduce_table_parallel(exp, data);
      json j = diff_to_json(diff);
      j["which"] = which;
      emit(out, j, tsv);
      return diff.unexplained() == 0 ? 0 : 1;
    }
    if (*ping) {
      std::string cmd = backend_cmd.empty() ? backend_from_env().value_or("") : backend_cmd;
      if (cmd.empty()) throw UsageError("no backend: pass --backend or set CM_BACKEND");
      SubprocessBackend b(cmd);
      std::string detail;
      bool ok = backend_ping(b, &detail);
      emit(out, {{"command", cmd}, {"ok", ok}, {"response", detail}}, tsv);
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace cmt
