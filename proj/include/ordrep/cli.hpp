#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ordrep/circle.hpp"
#include "ordrep/compositions.hpp"
#include "ordrep/erdosfuchs.hpp"
#include "ordrep/intset.hpp"
#include "ordrep/repcount.hpp"

namespace ordrep::cli {

namespace fs = std::filesystem;

inline constexpr int cli_schema_version = 1;

// ---------------------------------------------------------------------------
// cache: content-addressed rep tables, one JSON file per key

inline std::string sanitize_for_filename(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out;
}

inline std::string cache_key(const std::string& set_digest, const TableKind& kind, int k,
                             std::int64_t limit, CountMethod method) {
  return set_digest + "-k" + std::to_string(k) + "-" + sanitize_for_filename(kind.to_string()) +
         "-N" + std::to_string(limit) + "-" + method_name(method) + "-v" +
         std::to_string(rep_table_schema_version) + ".json";
}

inline std::optional<RepTable> cache_lookup(const std::string& dir,
                                            const std::string& set_digest, const TableKind& kind,
                                            int k, std::int64_t limit, CountMethod method,
                                            std::ostream& err = std::cerr) {
  if (dir.empty()) return std::nullopt;
  fs::path path = fs::path(dir) / cache_key(set_digest, kind, k, limit, method);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  try {
    std::ifstream in(path);
    nlohmann::json j = nlohmann::json::parse(in);
    RepTable t = rep_table_from_json(j);
    if (t.set_digest != set_digest || t.k != k || !(t.kind == kind) || t.limit != limit ||
        t.method != method)
      throw parse_error("cache entry does not match its key");
    if (t.counts.size() != static_cast<std::size_t>(limit) + 1)
      throw parse_error("cache entry has wrong length");
    return t;
  } catch (const std::exception& e) {
    err << "warning: ignoring corrupt cache entry " << path.string() << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

inline void cache_store(const std::string& dir, const RepTable& t,
                        std::ostream& err = std::cerr) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  fs::path path = fs::path(dir) / cache_key(t.set_digest, t.kind, t.k, t.limit, t.method);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) {
      err << "warning: cannot write cache entry " << path.string() << "\n";
      return;
    }
    out << rep_table_to_json(t).dump(2) << "\n";
  }
  fs::rename(tmp, path, ec);
  if (ec) err << "warning: cannot finalize cache entry " << path.string() << "\n";
}

// ---------------------------------------------------------------------------
// output plumbing

struct Output {
  std::string path;  // empty = stdout
  std::ostream* fallback = nullptr;

  template <class Fn>
  void with_stream(Fn&& fn) const {
    if (path.empty()) {
      fn(*fallback);
    } else {
      std::ofstream out(path);
      if (!out) throw parse_error("cannot open output file: " + path);
      fn(out);
    }
  }
};

inline void csv_metadata(std::ostream& out, const std::string& params,
                         const std::string& set_digest) {
  out << "# schema_version: " << cli_schema_version << "\n";
  out << "# params: " << params << "\n";
  if (!set_digest.empty()) out << "# set_digest: " << set_digest << "\n";
}

inline nlohmann::json json_metadata(const std::string& params, const std::string& set_digest) {
  nlohmann::json j;
  j["schema_version"] = cli_schema_version;
  j["params"] = params;
  if (!set_digest.empty()) j["set_digest"] = set_digest;
  return j;
}

// Parameter echo for output metadata. The output destination is not part of
// the computation, so identical computations stay byte-identical wherever
// they are written.
inline std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "-o" || a == "--output") {
      ++i;
      continue;
    }
    if (a.rfind("--output=", 0) == 0 || a.rfind("-o=", 0) == 0) continue;
    if (!s.empty()) s += ' ';
    s += a;
  }
  return s;
}

inline std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw parse_error("cannot parse number list entry: '" + tok + "'");
    }
  }
  if (out.empty()) throw parse_error("empty number list");
  return out;
}

inline std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw parse_error("cannot parse integer list entry: '" + tok + "'");
    }
  }
  if (out.empty()) throw parse_error("empty integer list");
  return out;
}

inline void write_check_report_csv(std::ostream& out, const CheckReport& rep) {
  out << "grid,lhs,rhs,ratio,verdict\n";
  char buf[64];
  for (const auto& row : rep.rows) {
    out << row.grid << ",";
    std::snprintf(buf, sizeof buf, "%.17g", row.lhs);
    out << buf << ",";
    std::snprintf(buf, sizeof buf, "%.17g", row.rhs);
    out << buf << ",";
    std::snprintf(buf, sizeof buf, "%.17g", row.ratio);
    out << buf << ",";
    out << (!row.asserted ? "report" : row.pass ? "pass" : "fail") << "\n";
  }
}

inline nlohmann::json check_report_json(const CheckReport& rep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rep.rows) {
    nlohmann::json r;
    r["grid"] = row.grid;
    r["lhs"] = row.lhs;
    r["rhs"] = row.rhs;
    r["ratio"] = row.ratio;
    r["verdict"] = !row.asserted ? "report" : row.pass ? "pass" : "fail";
    rows.push_back(std::move(r));
  }
  nlohmann::json j;
  j["check"] = rep.check;
  j["rows"] = std::move(rows);
  j["pass"] = rep.pass;
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

// ---------------------------------------------------------------------------
// the ordered-representation-function toolkit CLI
//
// exit codes: 0 success, 1 verification failure, 2 usage/parse error,
// 3 precondition violation.

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ordered representation function toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // --threads / --cache-dir may follow the subcommand

  const std::string params_echo = join_args(args);

  int threads = 1;
  app.add_option("--threads", threads, "cap on internal parallelism");

  std::string cache_dir;
  if (const char* env = std::getenv("ORDREP_CACHE_DIR")) cache_dir = env;
  app.add_option("--cache-dir", cache_dir, "rep table cache directory");

  std::string format = "csv";

  // ---- construct
  auto* c_construct = app.add_subcommand("construct", "materialize a named set family");
  std::string family;
  std::int64_t limit = 0;
  std::int64_t a0 = 0, d = 1, p = 2, fam_k = 2;
  std::string c_str = "1";
  std::uint64_t seed = 0;
  std::string out_path;
  c_construct->add_option("--family", family, "naturals|arithmetic|powers|mian_chowla|moser|bernoulli")
      ->required();
  c_construct->add_option("--limit", limit, "truncation bound")->required();
  c_construct->add_option("--a0", a0, "arithmetic: first term");
  c_construct->add_option("--d", d, "arithmetic: common difference");
  c_construct->add_option("--p", p, "powers: exponent");
  c_construct->add_option("--k", fam_k, "moser/bernoulli parameter k");
  c_construct->add_option("--C", c_str, "bernoulli density constant (rational)");
  c_construct->add_option("--seed", seed, "bernoulli seed");
  c_construct->add_option("-o,--output", out_path, "set file to write")->required();

  // ---- count
  auto* c_count = app.add_subcommand("count", "representation counts for one set");
  std::string set_path, star_str = "le", method_str = "dp";
  int arity = 2;
  c_count->add_option("--set", set_path, "set file")->required();
  c_count->add_option("--k", arity, "arity")->required();
  c_count->add_option("--star", star_str, "le|lt|full");
  c_count->add_option("--limit", limit, "count r(n) for n <= limit")->required();
  c_count->add_option("--method", method_str, "dp|gf|both");
  c_count->add_option("-o,--output", out_path, "output file (default stdout)");
  c_count->add_option("--format", format, "csv|json");

  // ---- count-form
  auto* c_form = app.add_subcommand("count-form", "linear form representation counts");
  std::string coeffs_str;
  c_form->add_option("--set", set_path, "set file")->required();
  c_form->add_option("--coeffs", coeffs_str, "comma-separated positive coefficients")->required();
  c_form->add_option("--limit", limit, "count r(n) for n <= limit")->required();
  c_form->add_option("-o,--output", out_path, "output file (default stdout)");
  c_form->add_option("--format", format, "csv|json");

  // ---- verify
  auto* c_verify = app.add_subcommand("verify", "dp vs encoding route equality");
  c_verify->add_option("--set", set_path, "set file")->required();
  c_verify->add_option("--k", arity, "arity")->required();
  c_verify->add_option("--star", star_str, "le|lt")->required();
  c_verify->add_option("--limit", limit, "verify coefficients up to limit")->required();

  // ---- error-scan
  auto* c_scan = app.add_subcommand("error-scan", "partial sums, mean squared error, statistic");
  std::string c_value = "1", fit_window;
  c_scan->add_option("--set", set_path, "set file")->required();
  c_scan->add_option("--k", arity, "arity")->required();
  c_scan->add_option("--star", star_str, "le|lt|full");
  c_scan->add_option("--c", c_value, "constant c as NUM[/DEN] or decimal");
  c_scan->add_option("--limit", limit, "scan up to limit")->required();
  c_scan->add_option("--fit", fit_window, "from:to window for |e_n| exponent fit");
  c_scan->add_option("-o,--output", out_path, "output file (default stdout)");
  c_scan->add_option("--format", format, "csv|json");

  // ---- main-identity
  auto* c_main = app.add_subcommand("main-identity", "truncated identity check");
  c_main->add_option("--set", set_path, "set file")->required();
  c_main->add_option("--k", arity, "arity")->required();
  c_main->add_option("--star", star_str, "le|lt")->required();
  c_main->add_option("--c", c_value, "constant c as NUM[/DEN] or decimal");
  c_main->add_option("--limit", limit, "check coefficients up to limit")->required();

  // ---- compositions
  auto* c_comp = app.add_subcommand("compositions", "index tuples and eps weights");
  bool grouped = false;
  c_comp->add_option("--k", arity, "composition total")->required();
  c_comp->add_option("--star", star_str, "le|lt");
  c_comp->add_flag("--grouped", grouped, "group orderings by partition");
  c_comp->add_option("-o,--output", out_path, "output file (default stdout)");
  c_comp->add_option("--format", format, "csv|json");

  // ---- circle
  auto* c_circle = app.add_subcommand("circle", "integral lemma checks");
  std::string check_name, rgrid_str = "0.8,0.9,0.95", r_single = "3/4", d_str = "1",
              seq_str = "decaying";
  std::int64_t q_nodes = 0, m_kernel = 12, dil = 1;
  int small_m = 1;
  c_circle->add_option("--check", check_name,
                       "parseval|product|nokernel|dilated|elliptic|powersum|logsum")
      ->required();
  c_circle->add_option("--set", set_path, "set file (parseval/product/nokernel/dilated)");
  c_circle->add_option("--rgrid", rgrid_str, "comma-separated radii");
  c_circle->add_option("--r", r_single, "radius as exact rational (parseval)");
  c_circle->add_option("--Q", q_nodes, "quadrature node override");
  c_circle->add_option("--M", m_kernel, "smoothing length");
  c_circle->add_option("--k", arity, "outer exponent");
  c_circle->add_option("--m", small_m, "inner exponent");
  c_circle->add_option("--i", dil, "dilation");
  c_circle->add_option("--D", d_str, "power sum constant D (rational)");
  c_circle->add_option("--seq", seq_str, "logsum sequence: zero|decaying|boundary");
  c_circle->add_option("-o,--output", out_path, "output file (default stdout)");
  c_circle->add_option("--format", format, "csv|json");

  std::vector<const char*> argv;
  argv.push_back("ordrep");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  set_max_threads(threads);
  Output output{out_path, &out};

  auto parse_star = [&](bool allow_full) {
    if (star_str == "le") return TableKind::of(Star::le);
    if (star_str == "lt") return TableKind::of(Star::lt);
    if (star_str == "full" && allow_full) return TableKind::full();
    throw parse_error("unknown star: '" + star_str + "'");
  };
  auto star_only = [&] {
    if (star_str == "le") return Star::le;
    if (star_str == "lt") return Star::lt;
    throw parse_error("star must be le or lt");
  };
  auto check_format = [&] {
    if (format != "csv" && format != "json") throw parse_error("format must be csv or json");
  };

  try {
    if (*c_construct) {
      FamilySpec spec;
      spec.limit = limit;
      spec.a0 = a0;
      spec.d = d;
      spec.p = p;
      spec.k = fam_k;
      spec.C = parse_rational(c_str);
      spec.seed = seed;
      if (family == "naturals")
        spec.family = Family::naturals;
      else if (family == "arithmetic")
        spec.family = Family::arithmetic;
      else if (family == "powers")
        spec.family = Family::powers;
      else if (family == "mian_chowla")
        spec.family = Family::mian_chowla;
      else if (family == "moser")
        spec.family = Family::moser;
      else if (family == "bernoulli")
        spec.family = Family::bernoulli;
      else
        throw parse_error("unknown family: '" + family + "'");
      IntegerSet s = construct_family(spec);
      write_set(s, out_path);
      err << "wrote " << s.size() << " elements, digest " << s.digest() << "\n";
      return 0;
    }

    if (*c_count) {
      check_format();
      IntegerSet a = from_file(set_path);
      TableKind kind = parse_star(true);
      auto compute = [&](CountMethod method) -> RepTable {
        if (auto hit = cache_lookup(cache_dir, a.digest(), kind, arity, limit, method, err))
          return *hit;
        RepTable t;
        if (kind.type == TableKind::Type::full)
          t = method == CountMethod::dp ? count_full_dp(a, arity, limit)
                                        : count_full(a, arity, limit);
        else if (method == CountMethod::dp)
          t = kind.type == TableKind::Type::le ? count_ordered_le(a, arity, limit)
                                               : count_ordered_lt(a, arity, limit);
        else
          t = count_gf(a, arity, star_only(), limit);
        cache_store(cache_dir, t, err);
        return t;
      };
      RepTable table;
      if (method_str == "dp") {
        table = compute(CountMethod::dp);
      } else if (method_str == "gf") {
        table = compute(CountMethod::gf);
      } else if (method_str == "both") {
        RepTable dp = compute(CountMethod::dp);
        RepTable gf = compute(CountMethod::gf);
        VerifyReport rep = compare_tables(dp, gf);
        if (!rep.ok) {
          err << "mismatch at n=" << rep.first_mismatch << ": dp=" << rep.lhs_value
              << " gf=" << rep.rhs_value << "\n";
          return 1;
        }
        table = dp;
      } else {
        throw parse_error("method must be dp, gf or both");
      }
      output.with_stream([&](std::ostream& os) {
        if (format == "csv") {
          csv_metadata(os, params_echo, a.digest());
          rep_table_to_csv(table, os);
        } else {
          nlohmann::json j = rep_table_to_json(table);
          j["params"] = params_echo;
          os << j.dump(2) << "\n";
        }
      });
      return 0;
    }

    if (*c_form) {
      check_format();
      IntegerSet a = from_file(set_path);
      std::vector<std::int64_t> coeffs = parse_int_list(coeffs_str);
      TableKind kind = TableKind::linear(coeffs);
      RepTable table;
      if (auto hit = cache_lookup(cache_dir, a.digest(), kind, static_cast<int>(coeffs.size()),
                                  limit, CountMethod::gf, err)) {
        table = *hit;
      } else {
        table = count_linear_form(a, coeffs, limit);
        cache_store(cache_dir, table, err);
      }
      output.with_stream([&](std::ostream& os) {
        if (format == "csv") {
          csv_metadata(os, params_echo, a.digest());
          rep_table_to_csv(table, os);
        } else {
          nlohmann::json j = rep_table_to_json(table);
          j["params"] = params_echo;
          os << j.dump(2) << "\n";
        }
      });
      return 0;
    }

    if (*c_verify) {
      IntegerSet a = from_file(set_path);
      VerifyReport rep = verify_identity(a, arity, star_only(), limit);
      if (rep.ok) {
        out << "ok: dp and gf agree on all " << (limit + 1) << " coefficients\n";
        return 0;
      }
      out << "mismatch at n=" << rep.first_mismatch << ": dp=" << rep.lhs_value
          << " gf=" << rep.rhs_value << "\n";
      return 1;
    }

    if (*c_scan) {
      check_format();
      IntegerSet a = from_file(set_path);
      TableKind kind = parse_star(true);
      Rational c = parse_rational(c_value);
      RepTable table;
      if (kind.type == TableKind::Type::full)
        table = count_full_dp(a, arity, limit);
      else
        table = kind.type == TableKind::Type::le ? count_ordered_le(a, arity, limit)
                                                 : count_ordered_lt(a, arity, limit);
      ErrorProfile sums = error_partial_sums(table, c);
      ErrorProfile mse = mean_squared_error(table, c);
      std::optional<FitResult> fit;
      if (!fit_window.empty()) {
        auto colon = fit_window.find(':');
        if (colon == std::string::npos) throw parse_error("--fit expects from:to");
        std::int64_t from = 0, to = 0;
        try {
          from = std::stoll(fit_window.substr(0, colon));
          to = std::stoll(fit_window.substr(colon + 1));
        } catch (const std::exception&) {
          throw parse_error("--fit expects integer from:to, got '" + fit_window + "'");
        }
        std::vector<double> abs_e(sums.e.size());
        for (std::size_t n = 0; n < sums.e.size(); ++n)
          abs_e[n] = std::abs(to_double(sums.e[n]));
        fit = fit_exponent(abs_e, from, to);
      }
      output.with_stream([&](std::ostream& os) {
        if (format == "csv") {
          csv_metadata(os, params_echo, a.digest());
          os << "n,e_num,e_den,E_num,E_den,ef_stat\n";
          char buf[64];
          for (std::size_t n = 0; n < sums.e.size(); ++n) {
            os << n << "," << rat_num(sums.e[n]) << "," << rat_den(sums.e[n]) << ",";
            if (n >= 1)
              os << rat_num(mse.E[n]) << "," << rat_den(mse.E[n]) << ",";
            else
              os << ",,";
            if (n >= 2) {
              std::snprintf(buf, sizeof buf, "%.17g", sums.ef_stat[n]);
              os << buf;
            }
            os << "\n";
          }
          if (fit) {
            std::snprintf(buf, sizeof buf, "%.17g", fit->alpha);
            os << "# fit_alpha: " << buf << "\n";
            std::snprintf(buf, sizeof buf, "%.17g", fit->r_squared);
            os << "# fit_r_squared: " << buf << "\n";
          }
        } else {
          nlohmann::json j = json_metadata(params_echo, a.digest());
          j["c"] = rational_to_string(c);
          j["k"] = arity;
          j["star"] = kind.to_string();
          j["limit"] = limit;
          j["e_final"] = rational_to_string(sums.e.back());
          j["tail_window"] = {{"lo", mse.tail.window_lo}, {"hi", mse.tail.window_hi}};
          j["tail_min_E"] = rational_to_string(mse.tail.min_value);
          j["tail_max_E"] = rational_to_string(mse.tail.max_value);
          double max_ef = 0;
          for (std::size_t n = 2; n < sums.ef_stat.size(); ++n)
            max_ef = std::max(max_ef, sums.ef_stat[n]);
          j["max_ef_stat"] = max_ef;
          if (fit) {
            j["fit"] = {{"alpha", fit->alpha}, {"r_squared", fit->r_squared}};
          }
          os << j.dump(2) << "\n";
        }
      });
      return 0;
    }

    if (*c_main) {
      IntegerSet a = from_file(set_path);
      Rational c = parse_rational(c_value);
      IdentityReport rep = check_main_identity(a, arity, star_only(), c, limit);
      if (rep.ok) {
        out << "ok: main identity holds for all " << (limit + 1) << " coefficients\n";
        return 0;
      }
      out << "mismatch at n=" << rep.first_mismatch << ": lhs=" << rational_to_string(rep.lhs_value)
          << " rhs=" << rational_to_string(rep.rhs_value) << "\n";
      return 1;
    }

    if (*c_comp) {
      check_format();
      Star star = star_only();
      output.with_stream([&](std::ostream& os) {
        if (format == "csv") {
          csv_metadata(os, params_echo, "");
          if (grouped) {
            os << "partition,weight_num,weight_den\n";
            for (const auto& t : group_by_partition(arity, star))
              os << parts_to_string(t.partition) << "," << rat_num(t.combined_weight) << ","
                 << rat_den(t.combined_weight) << "\n";
          } else {
            os << "parts,m,weight_num,weight_den\n";
            for (const auto& wc : enumerate_compositions(arity)) {
              Rational w = wc.weight(star);
              os << parts_to_string(wc.parts) << "," << wc.m() << "," << rat_num(w) << ","
                 << rat_den(w) << "\n";
            }
          }
        } else {
          nlohmann::json j = json_metadata(params_echo, "");
          j["k"] = arity;
          j["star"] = star_name(star);
          nlohmann::json rows = nlohmann::json::array();
          if (grouped) {
            for (const auto& t : group_by_partition(arity, star))
              rows.push_back({{"partition", parts_to_string(t.partition)},
                              {"num", rat_num(t.combined_weight).str()},
                              {"den", rat_den(t.combined_weight).str()}});
          } else {
            for (const auto& wc : enumerate_compositions(arity)) {
              Rational w = wc.weight(star);
              rows.push_back({{"parts", parts_to_string(wc.parts)},
                              {"m", wc.m()},
                              {"num", rat_num(w).str()},
                              {"den", rat_den(w).str()}});
            }
          }
          j["rows"] = std::move(rows);
          os << j.dump(2) << "\n";
        }
      });
      return 0;
    }

    if (*c_circle) {
      check_format();
      std::vector<double> grid = parse_double_list(rgrid_str);
      std::optional<std::int64_t> q_opt;
      if (q_nodes > 0) q_opt = q_nodes;
      std::optional<IntegerSet> a;
      if (!set_path.empty()) a = from_file(set_path);
      auto need_set = [&]() -> const IntegerSet& {
        if (!a) throw parse_error("this check needs --set");
        return *a;
      };
      CheckReport rep;
      if (check_name == "parseval") {
        const IntegerSet& s = need_set();
        TruncatedSeries g = TruncatedSeries::from_indicator(indicator(s, s.limit), s.limit);
        rep = check_parseval(g, parse_rational(r_single), q_opt, {2, 3, 4});
      } else if (check_name == "product") {
        const IntegerSet& s = need_set();
        rep.check = "product";
        for (double r : grid) {
          CheckReport one = check_product_inequality(s, m_kernel, arity, small_m, dil, r, q_opt);
          for (auto& row : one.rows) rep.add(row);
        }
      } else if (check_name == "nokernel") {
        rep = check_no_kernel_inequality(need_set(), arity, small_m, dil, grid);
      } else if (check_name == "dilated") {
        const IntegerSet& s = need_set();
        TruncatedSeries g = TruncatedSeries::from_indicator(indicator(s, s.limit), s.limit);
        rep = check_dilated_eval(g, dil, grid);
      } else if (check_name == "elliptic") {
        rep = check_elliptic(grid, q_opt);
      } else if (check_name == "powersum") {
        rep = check_power_sum_lower(parse_rational(d_str), arity, grid);
      } else if (check_name == "logsum") {
        LogSumSequence seq;
        if (seq_str == "zero")
          seq = LogSumSequence::zero;
        else if (seq_str == "decaying")
          seq = LogSumSequence::decaying;
        else if (seq_str == "boundary")
          seq = LogSumSequence::boundary;
        else
          throw parse_error("unknown sequence: '" + seq_str + "'");
        rep = check_log_weighted_sum(seq, grid);
      } else {
        throw parse_error("unknown check: '" + check_name + "'");
      }
      output.with_stream([&](std::ostream& os) {
        if (format == "csv") {
          csv_metadata(os, params_echo, a ? a->digest() : "");
          write_check_report_csv(os, rep);
        } else {
          nlohmann::json j = json_metadata(params_echo, a ? a->digest() : "");
          j.update(check_report_json(rep));
          os << j.dump(2) << "\n";
        }
      });
      return rep.pass ? 0 : 1;
    }
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace ordrep::cli
