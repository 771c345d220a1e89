// command-line front end: enumeration, statistics, constants, character
// sums and the verification suites
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "purecensus/census.hpp"
#include "purecensus/characters.hpp"
#include "purecensus/constants.hpp"
#include "purecensus/errors.hpp"
#include "purecensus/kummer.hpp"

using namespace purecensus;

namespace {

u128 parse_bound(const std::string& s) { return parse_u128(s); }

u64 parse_bound_u64(const std::string& s) {
  u128 v = parse_u128(s);
  if (v > U64_MAX) throw capacity_error("bound exceeds 64 bits");
  return static_cast<u64>(v);
}

// output goes to --out when given, stdout otherwise
struct OutStream {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw domain_error("cannot open output file: " + path);
      os = &file;
    }
  }
  std::ostream& get() { return *os; }
};

std::vector<u128> parse_checkpoints(const std::string& format_arg, u128 X) {
  std::vector<u128> cps;
  if (format_arg == "log") {
    for (u128 c = 100; c <= X; c *= 10) cps.push_back(c);
    if (cps.empty()) cps.push_back(X);
    return cps;
  }
  std::stringstream ss(format_arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) cps.push_back(parse_bound(item));
  }
  if (cps.empty()) throw domain_error("empty checkpoint list");
  return cps;
}

unsigned default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

int cmd_enumerate(u64 ell, const std::string& bound, const std::string& out,
                  const std::string& format, unsigned threads) {
  validate_ell(ell);
  u128 X = parse_bound(bound);
  std::vector<PureField> fields = enumerate_radical(ell, X, threads);
  OutStream o(out);
  if (format == "json")
    o.get() << fields_to_json(fields) << "\n";
  else
    write_csv(fields, o.get());
  return 0;
}

// constants for the statistics run, through the cache
struct StatsConstants {
  ConstantResult d, a, b;
  CResult c;
};

StatsConstants load_constants(u64 ell, u64 P, unsigned threads) {
  std::string dir = default_cache_dir();
  std::optional<PrimeTable> pt;
  auto table = [&]() -> const PrimeTable& {
    if (!pt) pt = sieve_primes(std::max<u64>(P, 10000));
    return *pt;
  };
  auto fetch = [&](Family f, EvalMethod m, bool conditional) {
    if (auto r = cache_load(dir, f, ell, P, m)) return *r;
    ConstantResult r = conditional ? eval_conditional(f, ell, table(), P, threads)
                                   : eval_absolute(f, ell, table(), P, threads);
    cache_store(dir, r);
    return r;
  };
  StatsConstants s{
      fetch(Family::D, EvalMethod::direct_truncation, false),
      fetch(Family::A, EvalMethod::l_decomposition, true),
      fetch(Family::B, EvalMethod::l_decomposition, true),
      CResult{},
  };
  s.c = eval_C_from(s.d);
  return s;
}

int cmd_stats(u64 ell, const std::string& bound, const std::string& cp_spec,
              const std::string& prime_bound, const std::string& out,
              const std::string& format, unsigned threads) {
  validate_ell(ell);
  u128 X = parse_bound(bound);
  u64 P = parse_bound_u64(prime_bound);
  std::vector<u128> cps = parse_checkpoints(cp_spec, X);

  StatsConstants k = load_constants(ell, P, threads);
  CountSummary summary = count_summary(ell, X, cps, threads);
  AsymptoticInputs inputs{k.a.value, k.b.value, k.c.form1};
  std::vector<ComparisonRow> rows = asymptotic_comparison(summary, inputs);

  OutStream o(out);
  if (format == "csv") {
    // plot-ready ratio table
    o.get() << "X,n_fields,r_count,r_genus_one,r_genus_avg\n";
    for (const auto& r : rows) {
      o.get() << to_string_u128(r.X) << "," << r.n_fields << "," << r.r_count
              << "," << r.r_genus_one << "," << r.r_genus_avg << "\n";
    }
    return 0;
  }
  nlohmann::json j = nlohmann::json::parse(summary_to_json(summary));
  j["P"] = P;
  j["constants"] = {{"A", k.a.value},
                    {"B", k.b.value},
                    {"C", k.c.form1},
                    {"D", k.d.value}};
  nlohmann::json jr = nlohmann::json::array();
  for (const auto& r : rows) {
    jr.push_back({{"X", static_cast<u64>(r.X)},
                  {"n_fields", r.n_fields},
                  {"r_count", r.r_count},
                  {"r_genus_one", r.r_genus_one},
                  {"r_genus_avg", r.r_genus_avg}});
  }
  j["ratios"] = jr;
  o.get() << j.dump(2) << "\n";
  return 0;
}

int cmd_constants(u64 ell, const std::string& prime_bound,
                  const std::string& out, unsigned threads) {
  validate_ell(ell);
  u64 P = parse_bound_u64(prime_bound);
  std::string dir = default_cache_dir();
  PrimeTable pt = sieve_primes(std::max<u64>(P, 10000));

  auto fetch = [&](Family f, EvalMethod m, bool conditional) {
    if (auto r = cache_load(dir, f, ell, P, m)) return *r;
    ConstantResult r = conditional ? eval_conditional(f, ell, pt, P, threads)
                                   : eval_absolute(f, ell, pt, P, threads);
    cache_store(dir, r);
    return r;
  };

  ConstantResult d = fetch(Family::D, EvalMethod::direct_truncation, false);
  ConstantResult d5 = fetch(Family::D5hat, EvalMethod::l_decomposition, false);
  ConstantResult d6 = fetch(Family::D6hat, EvalMethod::l_decomposition, false);
  ConstantResult a = fetch(Family::A, EvalMethod::l_decomposition, true);
  ConstantResult b = fetch(Family::B, EvalMethod::l_decomposition, true);
  CResult c = eval_C_from(d);

  nlohmann::json j;
  j["ell"] = ell;
  j["P"] = P;
  j["c_ell"] = c_ell(ell);
  j["families"] = nlohmann::json::array();
  for (const ConstantResult* r : {&d, &d5, &d6, &a, &b})
    j["families"].push_back(nlohmann::json::parse(result_to_json(*r)));
  j["C"] = nlohmann::json::parse(c_result_to_json(c));

  OutStream o(out);
  o.get() << j.dump(2) << "\n";
  return 0;
}

int cmd_charsums(u64 ell, const std::string& prime_bound,
                 const std::string& disc_bound, const std::string& method,
                 const std::string& out) {
  validate_ell(ell);
  u64 P = parse_bound_u64(prime_bound);
  LMethod lm;
  if (method == "closed")
    lm = LMethod::finite_closed_form;
  else if (method == "series")
    lm = LMethod::tail_accelerated_series;
  else
    throw domain_error("method must be closed or series");

  TableCheckReport rep = table_check_f_chi(ell, P);
  nlohmann::json j = nlohmann::json::parse(table_check_to_json(rep));
  j["ell"] = ell;

  auto chars = character_group(ell);
  nlohmann::json jl = nlohmann::json::array();
  for (std::size_t k = 1; k < chars.size(); ++k) {
    std::complex<double> v = L_one(chars[k], lm);
    jl.push_back({{"index", k}, {"re", v.real()}, {"im", v.imag()}});
  }
  j["L"] = jl;
  j["L_method"] = method;
  j["L_product"] = L_product(ell);

  if (!disc_bound.empty()) {
    BigIdentityReport big = big_identity_check(ell, parse_bound(disc_bound));
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : big.rows) {
      rows.push_back({{"weight", static_cast<int>(r.weight)},
                      {"lhs", to_string_i128(r.lhs)},
                      {"rhs", to_string_i128(r.rhs)},
                      {"pass", r.pass}});
    }
    j["identity"] = {{"X", to_string_u128(big.X)},
                     {"rows", rows},
                     {"pass", big.pass}};
  }

  OutStream o(out);
  o.get() << j.dump(2) << "\n";
  return 0;
}

struct Check {
  std::string name;
  std::function<bool(std::ostream&)> run;
};

bool l_methods_agree(u64 ell, std::ostream& detail) {
  auto chars = character_group(ell);
  double worst = 0.0;
  for (std::size_t k = 1; k < chars.size(); ++k) {
    std::complex<double> c = L_one(chars[k], LMethod::finite_closed_form);
    std::complex<double> s = L_one(chars[k], LMethod::tail_accelerated_series);
    worst = std::max(worst, std::abs(c - s));
  }
  detail << "max |closed - series| = " << worst;
  return worst < 1e-10;
}

std::vector<Check> build_suite(const std::string& suite, unsigned threads) {
  std::vector<Check> checks;
  auto add = [&](std::string name, std::function<bool(std::ostream&)> fn) {
    checks.push_back({std::move(name), std::move(fn)});
  };

  auto ident = [](u64 ell, u128 X) {
    return [ell, X](std::ostream& d) {
      IdentityReport r = parametrization_identity_check(ell, X);
      d << "lhs = " << to_string_i128(r.lhs) << ", rhs = " << to_string_i128(r.rhs);
      return r.pass;
    };
  };
  auto radical_vs_direct = [threads](u64 ell, u128 X) {
    return [ell, X, threads](std::ostream& d) {
      auto brute = enumerate_brute(ell, X);
      auto fast = enumerate_radical(ell, X, threads);
      d << brute.size() << " classes";
      return brute == fast;
    };
  };
  auto char_table = [](u64 ell, u64 P) {
    return [ell, P](std::ostream& d) {
      TableCheckReport r = table_check_f_chi(ell, P);
      d << r.primes_checked << " primes, " << r.mismatches.size() << " mismatches";
      return r.pass;
    };
  };
  auto char_identity = [](u64 ell, u128 X) {
    return [ell, X](std::ostream& d) {
      BigIdentityReport r = big_identity_check(ell, X);
      d << "lhs = " << to_string_i128(r.rows[0].lhs);
      return r.pass;
    };
  };
  auto dual_form = [threads](u64 ell, u64 P) {
    return [ell, P, threads](std::ostream& d) {
      CResult c = eval_C(ell, P, threads);
      d << "delta = " << c.delta;
      return c.delta <= 1e-12;
    };
  };
  auto ratios = [threads](u64 ell, u64 P) {
    return [ell, P, threads](std::ostream& d) {
      RatioReport r = derived_ratio_check(ell, P, threads);
      d << "delta_a = " << r.delta_a << ", delta_b = " << r.delta_b;
      return r.pass;
    };
  };
  auto third = [](std::vector<double> taus, u64 X, double tol) {
    return [taus, X, tol](std::ostream& d) {
      PrimeTable pt = sieve_primes(X);
      bool ok = true;
      for (double tau : taus) {
        double r = mertens_third_check(tau, pt, X);
        d << "tau=" << tau << ": " << r << "  ";
        ok = ok && std::abs(r - 1.0) < tol;
      }
      return ok;
    };
  };

  // fast: ell = 3, small bounds, well under a minute
  add("parametrization-identity ell=3 X=1e4", ident(3, 10000));
  add("parametrization-identity ell=3 X=1e6", ident(3, 1000000));
  add("radical-vs-direct ell=3 X=1e5", radical_vs_direct(3, 100000));
  add("character-table ell=3 P=1e4", char_table(3, 10000));
  add("character-identity ell=3 X=1e4", char_identity(3, 10000));
  add("dual-form-constant ell=3 P=1e5", dual_form(3, 100000));
  add("L-method-agreement ell=3",
      [](std::ostream& d) { return l_methods_agree(3, d); });
  add("third-theorem X=1e5", third({1.0}, 100000, 0.01));

  if (suite == "fast") return checks;

  // full: all three small ell, deeper bounds, well under an hour
  add("parametrization-identity ell=3 X=1e8", ident(3, 100000000));
  add("parametrization-identity ell=5 X=1e8", ident(5, 100000000));
  add("parametrization-identity ell=7 X=1e9", ident(7, 1000000000));
  add("radical-vs-direct ell=5 X=1e7", radical_vs_direct(5, 10000000));
  add("character-table ell=3 P=1e5", char_table(3, 100000));
  add("character-table ell=5 P=1e5", char_table(5, 100000));
  add("character-table ell=7 P=1e5", char_table(7, 100000));
  add("character-identity ell=3 X=1e6", char_identity(3, 1000000));
  add("character-identity ell=5 X=1e6", char_identity(5, 1000000));
  add("derived-ratios ell=3 P=1e7", ratios(3, 10000000));
  add("dual-form-constant ell=5 P=1e5", dual_form(5, 100000));
  add("dual-form-constant ell=7 P=1e5", dual_form(7, 100000));
  add("L-method-agreement ell=5",
      [](std::ostream& d) { return l_methods_agree(5, d); });
  add("L-method-agreement ell=7",
      [](std::ostream& d) { return l_methods_agree(7, d); });
  add("third-theorem X=1e6", third({1.0, 2.0, 4.0}, 1000000, 0.005));

  if (suite == "full") return checks;

  // all: adds the heavy cross-family closures
  add("derived-ratios ell=5 P=1e7", ratios(5, 10000000));
  add("derived-ratios ell=7 P=1e8", ratios(7, 100000000));
  add("character-identity ell=7 X=1e8", char_identity(7, 100000000));
  add("third-theorem X=1e8", third({1.0, 2.0, 4.0}, 100000000, 1e-4));
  add("mertens-slope X=1e8", [](std::ostream& d) {
    PrimeTable pt = sieve_primes(100000000);
    double s = mertens_slope({1}, 3, pt, 100000000);
    d << "slope = " << s << " (target 0.5)";
    return std::abs(s - 0.5) < 0.025;
  });
  return checks;
}

int cmd_verify(const std::string& suite, unsigned threads) {
  if (suite != "fast" && suite != "full" && suite != "all")
    throw domain_error("suite must be one of fast, full, all");
  std::vector<Check> checks = build_suite(suite, threads);
  std::vector<std::string> failed;
  for (const auto& c : checks) {
    std::ostringstream detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail << "threw: " << e.what();
    }
    std::cout << (ok ? "PASS  " : "FAIL  ") << c.name;
    std::string d = detail.str();
    if (!d.empty()) std::cout << "  [" << d << "]";
    std::cout << "\n";
    if (!ok) failed.push_back(c.name);
  }
  std::cout << checks.size() - failed.size() << "/" << checks.size()
            << " checks passed\n";
  if (!failed.empty()) {
    std::cerr << "failing check: " << failed.front() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"census of pure prime-degree fields and their constants"};
  app.require_subcommand(1);

  std::string ell_s = "3", disc_bound, prime_bound = "1e7", checkpoints = "log";
  std::string out, format = "csv", suite = "fast", method = "closed";
  unsigned threads = default_threads();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", threads, "worker thread cap");
    sub->add_option("--out", out, "output path (default stdout)");
  };

  CLI::App* enumerate = app.add_subcommand("enumerate", "list all field classes up to a discriminant bound");
  enumerate->add_option("--ell", ell_s, "degree (odd prime <= 31)");
  enumerate->add_option("--disc-bound", disc_bound, "absolute discriminant bound")->required();
  enumerate->add_option("--format", format, "csv or json");
  add_common(enumerate);

  CLI::App* stats = app.add_subcommand("stats", "checkpointed counts with asymptotic ratio columns");
  stats->add_option("--ell", ell_s, "degree (odd prime <= 31)");
  stats->add_option("--disc-bound", disc_bound, "absolute discriminant bound")->required();
  stats->add_option("--checkpoints", checkpoints, "comma list or 'log' for powers of 10");
  stats->add_option("--prime-bound", prime_bound, "Euler product depth for the constants (default 1e7)");
  stats->add_option("--format", format, "json or csv");
  add_common(stats);

  CLI::App* constants = app.add_subcommand("constants", "all constants for one degree");
  constants->add_option("--ell", ell_s, "degree (odd prime <= 31)");
  constants->add_option("--prime-bound", prime_bound, "Euler product depth (default 1e7)");
  add_common(constants);

  CLI::App* charsums = app.add_subcommand("charsums", "character table verification and L(1) values");
  charsums->add_option("--ell", ell_s, "degree (odd prime <= 31)");
  charsums->add_option("--prime-bound", prime_bound, "verify the local table up to this prime");
  charsums->add_option("--disc-bound", disc_bound, "also run the exact identity up to this bound");
  charsums->add_option("--method", method, "L evaluation: closed or series");
  add_common(charsums);

  CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("--suite", suite, "fast, full or all");
  verify->add_option("--threads", threads, "worker thread cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    u64 ell = 0;
    try {
      u128 v = parse_u128(ell_s);
      if (v > 31) throw domain_error("ell must be an odd prime");
      ell = static_cast<u64>(v);
    } catch (const capacity_error&) {
      throw domain_error("ell must be an odd prime");
    }
    if (threads == 0) threads = 1;

    if (enumerate->parsed())
      return cmd_enumerate(ell, disc_bound, out, format, threads);
    if (stats->parsed()) {
      if (format == "csv" && !stats->count("--format")) format = "json";
      return cmd_stats(ell, disc_bound, checkpoints, prime_bound, out, format,
                       threads);
    }
    if (constants->parsed()) return cmd_constants(ell, prime_bound, out, threads);
    if (charsums->parsed()) {
      std::string pb = charsums->count("--prime-bound") ? prime_bound : "1e4";
      return cmd_charsums(ell, pb, disc_bound, method, out);
    }
    if (verify->parsed()) return cmd_verify(suite, threads);
    return 2;
  } catch (const cross_check_error& e) {
    std::cerr << "cross-check failure: " << e.what() << "\n";
    return 4;
  } catch (const capacity_error& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 3;
  } catch (const domain_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
