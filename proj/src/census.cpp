#include "purecensus/census.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

#include "json.hpp"
#include "purecensus/errors.hpp"
#include "purecensus/numeric.hpp"

namespace purecensus {

namespace {

// ell^ell_exp * n^(ell-1) <= X, evaluated without overflow
bool disc_le(u64 ell, unsigned ell_exp, u64 n, u128 X) {
  u128 acc = 1;
  for (unsigned i = 0; i < ell_exp; ++i) {
    if (acc > X / ell) return false;
    acc *= ell;
  }
  for (u64 i = 0; i + 1 < ell; ++i) {
    if (acc > X / n) return false;
    acc *= n;
  }
  return acc <= X;
}

u64 cutoff(u64 ell, unsigned ell_exp, u128 X) {
  if (X == 0 || !disc_le(ell, ell_exp, 1, X)) return 0;
  long double y =
      powl(static_cast<long double>(X) / powl(static_cast<long double>(ell), ell_exp),
           1.0L / static_cast<long double>(ell - 1));
  u64 guess = (y >= 1.8e19L) ? U64_MAX - 2 : static_cast<u64>(y);
  if (guess < 1) guess = 1;
  while (guess > 1 && !disc_le(ell, ell_exp, guess, X)) --guess;
  while (guess < U64_MAX - 1 && disc_le(ell, ell_exp, guess + 1, X)) ++guess;
  return guess;
}

bool field_less(const PureField& x, const PureField& y) {
  if (x.disc_magnitude != y.disc_magnitude) return x.disc_magnitude < y.disc_magnitude;
  return x.canonical_a < y.canonical_a;
}

nlohmann::json json_u128(u128 v) {
  if (v <= U64_MAX) return nlohmann::json(static_cast<u64>(v));
  return nlohmann::json(to_string_u128(v));
}

// Walks every isomorphism class with |disc| <= X radical-first: squarefree
// n ascending, then the exponent odometer over generators with that radical.
// Exactly one call per class (the orbit minimum), grouped into blocks of
// consecutive n so callers can merge per-block results deterministically.
constexpr u64 N_BLOCK = 8192;

void walk_radical_fields(u64 ell, u128 X, unsigned threads,
                         const std::function<void(std::size_t, const PureField&)>& emit) {
  validate_ell(ell);
  u64 y_tame = tame_cutoff(ell, X);
  u64 y_wild = wild_cutoff(ell, X);
  if (y_tame < 2) return;

  SpfTable spf = build_spf(y_tame);
  DlogTable tab = build_dlog_table(ell);
  const u128 pow_tame = checked_pow_u128(ell, static_cast<unsigned>(ell - 2));
  const u128 pow_wild = checked_pow_u128(ell, static_cast<unsigned>(ell));

  std::size_t n_blocks = static_cast<std::size_t>((y_tame - 1 + N_BLOCK - 1) / N_BLOCK);
  run_blocks(n_blocks, threads, [&](std::size_t block) {
    u64 lo = 2 + static_cast<u64>(block) * N_BLOCK;
    u64 hi = std::min(y_tame, lo + N_BLOCK - 1);
    std::vector<u64> d;       // dlog of each prime factor, reduced mod ell
    std::vector<u64> primes;  // prime factors of n
    std::vector<u32> e;       // current exponent vector
    for (u64 n = lo; n <= hi; ++n) {
      if (!spf.is_squarefree(n)) continue;
      Factorization fn = spf.factorize(n);
      bool has_ell = (n % ell == 0);
      bool wild_in_range = (n <= y_wild);
      if (has_ell && !wild_in_range) continue;

      u32 om = omega(fn);
      u64 genus = checked_pow_u64(ell, omega_hat(fn, ell));
      u128 n_pow = checked_pow_u128(n, static_cast<unsigned>(ell - 1));
      u128 disc_tame = checked_mul_u128(pow_tame, n_pow);

      primes.clear();
      d.clear();
      for (const auto& t : fn.terms) {
        primes.push_back(t.prime);
        d.push_back(t.prime == ell ? 0 : tab.log_of(t.prime) % ell);
      }

      e.assign(om, 1);
      u64 s = 0;
      for (u64 di : d) s = (s + di) % ell;

      for (;;) {
        bool tame = !has_ell && s == 0;
        if (tame || wild_in_range) {
          // canonical iff no other orbit member is smaller
          u128 a = 1;
          for (u32 i = 0; i < om; ++i)
            for (u32 j = 0; j < e[i]; ++j) a = checked_mul_u128(a, primes[i]);
          bool canonical = true;
          for (u64 k = 2; k < ell && canonical; ++k) {
            u128 m = 1;
            for (u32 i = 0; i < om && m < a; ++i) {
              u64 ek = (u64(e[i]) * k) % ell;
              for (u64 j = 0; j < ek; ++j) m = checked_mul_u128(m, primes[i]);
            }
            if (m < a) canonical = false;
          }
          if (canonical) {
            if (a > U64_MAX) throw capacity_error("canonical generator exceeds u64");
            PureField f;
            f.ell = ell;
            f.canonical_a = static_cast<u64>(a);
            f.radical_n = n;
            f.disc_magnitude = tame ? disc_tame : checked_mul_u128(pow_wild, n_pow);
            f.wendt_tame = tame;
            f.genus = genus;
            emit(block, f);
          }
        }
        // odometer step
        u32 pos = 0;
        for (; pos < om; ++pos) {
          if (e[pos] < ell - 1) {
            ++e[pos];
            s = (s + d[pos]) % ell;
            break;
          }
          e[pos] = 1;
          s = (s + ell - ((ell - 2) * d[pos]) % ell) % ell;
        }
        if (pos == om) break;
      }
    }
  });
}

}  // namespace

BoundPair bound_pair(u64 ell, u128 X) {
  validate_ell(ell);
  double inv = 1.0 / static_cast<double>(ell - 1);
  double root = static_cast<double>(powl(static_cast<long double>(X),
                                         1.0L / static_cast<long double>(ell - 1)));
  BoundPair b;
  b.tame_bound = std::pow(static_cast<double>(ell), -1.0 + inv) * root;
  b.wild_bound = std::pow(static_cast<double>(ell), -1.0 - inv) * root;
  return b;
}

u64 tame_cutoff(u64 ell, u128 X) {
  validate_ell(ell);
  return cutoff(ell, static_cast<unsigned>(ell - 2), X);
}

u64 wild_cutoff(u64 ell, u128 X) {
  validate_ell(ell);
  return cutoff(ell, static_cast<unsigned>(ell), X);
}

RadicalTerm radical_term(u64 ell, const Factorization& fn, const DlogTable& tab) {
  validate_ell(ell);
  if (tab.modulus != ell * ell) throw domain_error("dlog table has the wrong modulus");
  for (const auto& t : fn.terms)
    if (t.exponent != 1) throw domain_error("radical_term needs a squarefree n");

  RadicalTerm r;
  r.n = fn.value();
  r.omega_n = omega(fn);
  r.omega_hat_n = omega_hat(fn, ell);
  u64 genus = checked_pow_u64(ell, r.omega_hat_n);
  u64 total = checked_pow_u64(ell - 1, r.omega_n);

  bool has_ell = false;
  std::vector<u64> d;
  for (const auto& t : fn.terms) {
    if (t.prime == ell) has_ell = true;
    d.push_back(t.prime == ell ? 0 : tab.log_of(t.prime) % ell);
  }

  u64 tame = 0;
  if (!has_ell) {
    std::vector<u32> e(r.omega_n, 1);
    u64 s = 0;
    for (u64 di : d) s = (s + di) % ell;
    for (u64 it = 0;;) {
      if (s == 0) ++tame;
      if (++it == total) break;
      u32 pos = 0;
      for (;; ++pos) {
        if (e[pos] < ell - 1) {
          ++e[pos];
          s = (s + d[pos]) % ell;
          break;
        }
        e[pos] = 1;
        s = (s + ell - ((ell - 2) * d[pos]) % ell) % ell;
      }
    }
  }

  r.tame_count = tame;
  r.wild_count = total - tame;
  bool genus_one = (r.omega_hat_n == 0);
  r.tame_genus_one = genus_one ? r.tame_count : 0;
  r.wild_genus_one = genus_one ? r.wild_count : 0;
  r.tame_genus_sum = checked_mul_u64(r.tame_count, genus);
  r.wild_genus_sum = checked_mul_u64(r.wild_count, genus);
  return r;
}

std::vector<PureField> enumerate_brute(u64 ell, u128 X) {
  validate_ell(ell);
  u64 y_tame = tame_cutoff(ell, X);
  std::vector<PureField> out;
  if (y_tame < 2) return out;
  u128 scan_max = checked_pow_u128(y_tame, static_cast<unsigned>(ell - 1));
  if (scan_max > 1000000000)
    throw capacity_error("direct scan range exceeds 10^9 generators");

  SpfTable spf = build_spf(static_cast<u64>(scan_max));
  for (u64 a = 2; a <= static_cast<u64>(scan_max); ++a) {
    Factorization fa = spf.factorize(a);
    if (!is_ell_free(fa, ell)) continue;
    PureField f = make_field(fa, ell);
    if (f.canonical_a != a) continue;  // one row per orbit
    if (f.disc_magnitude > X) continue;
    out.push_back(f);
  }
  std::sort(out.begin(), out.end(), field_less);
  return out;
}

std::vector<PureField> enumerate_radical(u64 ell, u128 X, unsigned threads) {
  u64 y_tame = tame_cutoff(ell, X);
  std::size_t n_blocks =
      y_tame < 2 ? 0 : static_cast<std::size_t>((y_tame - 1 + N_BLOCK - 1) / N_BLOCK);
  std::vector<std::vector<PureField>> slots(n_blocks);
  walk_radical_fields(ell, X, threads,
                      [&](std::size_t block, const PureField& f) { slots[block].push_back(f); });
  std::vector<PureField> out;
  for (const auto& slot : slots) out.insert(out.end(), slot.begin(), slot.end());
  std::sort(out.begin(), out.end(), field_less);
  return out;
}

IdentityReport parametrization_identity_check(u64 ell, u128 X) {
  validate_ell(ell);
  IdentityReport rep;
  rep.ell = ell;
  rep.X = X;

  // left side: direct scan over generators, congruence tested by mod_pow
  // (no dlog table anywhere on this path)
  i128 lhs = 1;
  u64 y_tame = tame_cutoff(ell, X);
  u64 y_wild = wild_cutoff(ell, X);
  if (y_tame >= 2) {
    u128 scan_max = checked_pow_u128(y_tame, static_cast<unsigned>(ell - 1));
    if (scan_max > 1000000000)
      throw capacity_error("direct scan range exceeds 10^9 generators");
    SpfTable spf = build_spf(static_cast<u64>(scan_max));
    u64 m = ell * ell;
    for (u64 a = 2; a <= static_cast<u64>(scan_max); ++a) {
      Factorization fa = spf.factorize(a);
      if (!is_ell_free(fa, ell)) continue;
      u64 n = radical(fa);
      bool tame = mod_pow(a % m, ell - 1, m) == 1;
      if (tame ? n <= y_tame : n <= y_wild) lhs += 1;
    }
  }

  // right side: radical terms via the dlog odometer
  i128 rhs = 1;
  if (y_tame >= 2) {
    SpfTable spf = build_spf(y_tame);
    DlogTable tab = build_dlog_table(ell);
    for (u64 n = 2; n <= y_tame; ++n) {
      if (!spf.is_squarefree(n)) continue;
      RadicalTerm t = radical_term(ell, spf.factorize(n), tab);
      rhs += static_cast<i128>(t.tame_count);
      if (n <= y_wild) rhs += static_cast<i128>(t.wild_count);
    }
  }

  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.pass = (lhs == rhs);
  return rep;
}

CountSummary count_summary(u64 ell, u128 X, std::vector<u128> checkpoints,
                           unsigned threads) {
  validate_ell(ell);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] > X) throw domain_error("checkpoint beyond X");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
      throw domain_error("checkpoints must be strictly ascending");
  }

  CountSummary s;
  s.ell = ell;
  s.X = X;

  u64 y_tame = tame_cutoff(ell, X);
  std::size_t n_blocks =
      y_tame < 2 ? 0 : static_cast<std::size_t>((y_tame - 1 + N_BLOCK - 1) / N_BLOCK);
  std::size_t n_cp = checkpoints.size();
  // slot i of each block: fields whose disc first fits checkpoint i;
  // slot n_cp: fields beyond every checkpoint but still <= X
  struct Cell {
    u64 fields = 0, genus_one = 0, genus_sum = 0;
  };
  std::vector<std::vector<Cell>> slots(n_blocks, std::vector<Cell>(n_cp + 1));

  walk_radical_fields(ell, X, threads, [&](std::size_t block, const PureField& f) {
    std::size_t idx = static_cast<std::size_t>(
        std::lower_bound(checkpoints.begin(), checkpoints.end(), f.disc_magnitude) -
        checkpoints.begin());
    Cell& c = slots[block][idx];
    c.fields += 1;
    if (f.genus == 1) c.genus_one += 1;
    c.genus_sum += f.genus;
  });

  std::vector<Cell> merged(n_cp + 1);
  for (const auto& slot : slots)
    for (std::size_t i = 0; i <= n_cp; ++i) {
      merged[i].fields += slot[i].fields;
      merged[i].genus_one += slot[i].genus_one;
      merged[i].genus_sum += slot[i].genus_sum;
    }

  CheckpointRow running;
  for (std::size_t i = 0; i < n_cp; ++i) {
    running.X = checkpoints[i];
    running.n_fields += merged[i].fields;
    running.n_genus_one += merged[i].genus_one;
    running.genus_sum += merged[i].genus_sum;
    s.checkpoints.push_back(running);
  }
  running.X = X;
  running.n_fields += merged[n_cp].fields;
  running.n_genus_one += merged[n_cp].genus_one;
  running.genus_sum += merged[n_cp].genus_sum;
  s.totals = running;
  return s;
}

std::vector<ComparisonRow> asymptotic_comparison(const CountSummary& summary,
                                                 const AsymptoticInputs& k) {
  std::vector<ComparisonRow> rows;
  double ell = static_cast<double>(summary.ell);
  for (const CheckpointRow& cp : summary.checkpoints) {
    ComparisonRow r;
    r.X = cp.X;
    r.n_fields = cp.n_fields;
    if (cp.n_fields > 0) {
      double x = static_cast<double>(cp.X);
      double lx = std::log(x);
      double nf = static_cast<double>(cp.n_fields);
      r.r_count = nf / (k.C * std::pow(x, 1.0 / (ell - 1.0)) * std::pow(lx, ell - 2.0));
      r.r_genus_one = (static_cast<double>(cp.n_genus_one) / nf) * k.A * lx;
      r.r_genus_avg =
          (static_cast<double>(cp.genus_sum) / nf) / (k.B * std::pow(lx, ell - 1.0));
    }
    rows.push_back(r);
  }
  return rows;
}

void write_csv(const std::vector<PureField>& fields, std::ostream& out) {
  out << "ell,canonical_a,radical,disc,wendt_tame,genus\n";
  for (const PureField& f : fields)
    out << f.ell << ',' << f.canonical_a << ',' << f.radical_n << ','
        << to_string_u128(f.disc_magnitude) << ',' << (f.wendt_tame ? 1 : 0) << ','
        << f.genus << '\n';
}

std::string fields_to_json(const std::vector<PureField>& fields) {
  nlohmann::json arr = nlohmann::json::array();
  for (const PureField& f : fields)
    arr.push_back({{"ell", f.ell},
                   {"canonical_a", f.canonical_a},
                   {"radical", f.radical_n},
                   {"disc", to_string_u128(f.disc_magnitude)},
                   {"wendt_tame", f.wendt_tame},
                   {"genus", f.genus}});
  return arr.dump(2);
}

std::string summary_to_json(const CountSummary& summary) {
  nlohmann::json j;
  j["ell"] = summary.ell;
  j["X"] = json_u128(summary.X);
  j["checkpoints"] = nlohmann::json::array();
  auto row_json = [](const CheckpointRow& r) {
    return nlohmann::json{{"X", json_u128(r.X)},
                          {"n_fields", r.n_fields},
                          {"n_genus_one", r.n_genus_one},
                          {"genus_sum", r.genus_sum}};
  };
  for (const CheckpointRow& r : summary.checkpoints) j["checkpoints"].push_back(row_json(r));
  j["totals"] = row_json(summary.totals);
  return j.dump(2);
}

}  // namespace purecensus
