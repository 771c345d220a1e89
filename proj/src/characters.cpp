#include "purecensus/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "purecensus/census.hpp"
#include "purecensus/errors.hpp"
#include "purecensus/numeric.hpp"

namespace purecensus {

namespace {

constexpr i64 I64_MAX = 9223372036854775807;

i64 narrow_i128(i128 v) {
  if (v > i128(I64_MAX) || v < -i128(I64_MAX) - 1)
    throw capacity_error("character sum exceeds i64");
  return static_cast<i64>(v);
}

i128 add_checked_i128(i128 a, i128 b) {
  i128 s = a + b;
  if ((b > 0 && s < a) || (b < 0 && s > a))
    throw capacity_error("character sum exceeds i128");
  return s;
}

// ell of a character living mod ell^2, recovered from the modulus
u64 ell_of(const DirichletCharacter& chi) {
  u64 m = chi.modulus();
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(m)));
  while (r * r > m) --r;
  while ((r + 1) * (r + 1) <= m) ++r;
  if (r * r != m) throw domain_error("character must live mod ell^2");
  validate_ell(r);
  if (chi.index() % (r - 1) != 0)
    throw domain_error("character order must divide ell");
  return r;
}

// sum_{j=1}^{ell-1} zeta^{j e}, the local value with chi(p) = zeta^e
CyclotomicInteger local_sum(u64 ell, u64 e_zeta) {
  CyclotomicInteger s(ell);
  for (u64 j = 1; j < ell; ++j) s += CyclotomicInteger::zeta_pow(ell, (j * e_zeta) % ell);
  return s;
}

}  // namespace

DirichletCharacter::DirichletCharacter(std::shared_ptr<const DlogTable> table, u64 k)
    : table_(std::move(table)) {
  if (!table_) throw domain_error("character needs a dlog table");
  k_ = k % table_->group_order;
}

u64 DirichletCharacter::order() const {
  return table_->group_order / gcd_u64(table_->group_order, k_);
}

std::optional<u64> DirichletCharacter::value_exponent(u64 a) const {
  if (!table_->is_unit(a)) return std::nullopt;
  return (k_ * table_->log_of(a)) % table_->group_order;
}

std::complex<double> DirichletCharacter::value(u64 a) const {
  auto e = value_exponent(a);
  if (!e) return 0.0;
  double arg = 2.0 * std::numbers::pi * static_cast<double>(*e) /
               static_cast<double>(table_->group_order);
  return std::polar(1.0, arg);
}

std::vector<DirichletCharacter> character_group(u64 m) {
  auto table = std::make_shared<const DlogTable>(build_dlog_table_mod(m));
  std::vector<DirichletCharacter> chars;
  chars.reserve(table->group_order);
  for (u64 k = 0; k < table->group_order; ++k) chars.emplace_back(table, k);
  return chars;
}

std::vector<DirichletCharacter> order_ell_characters(u64 ell) {
  validate_ell(ell);
  auto table = std::make_shared<const DlogTable>(build_dlog_table(ell));
  std::vector<DirichletCharacter> chars;
  chars.reserve(ell);
  for (u64 j = 0; j < ell; ++j) chars.emplace_back(table, j * (ell - 1));
  return chars;
}

CyclotomicInteger chi_zeta_value(const DirichletCharacter& chi, u64 a) {
  u64 ell = ell_of(chi);
  auto e = chi.value_exponent(a);
  if (!e) return CyclotomicInteger(ell);
  // the exponent is a multiple of ell-1, so chi(a) is an ell-th root of unity
  return CyclotomicInteger::zeta_pow(ell, *e / (ell - 1));
}

CyclotomicInteger f_chi(const Factorization& fn, const DirichletCharacter& chi) {
  u64 ell = ell_of(chi);
  for (const auto& t : fn.terms)
    if (t.exponent != 1) throw domain_error("f_chi needs a squarefree n");
  CyclotomicInteger prod = CyclotomicInteger::integer(ell, 1);
  for (const auto& t : fn.terms) {
    auto e = chi.value_exponent(t.prime);
    if (!e) return CyclotomicInteger(ell);  // chi(p) = 0 kills the product
    prod = prod * local_sum(ell, *e / (ell - 1));
  }
  return prod;
}

CyclotomicInteger f_chi(u64 n, const DirichletCharacter& chi) {
  return f_chi(factorize(n), chi);
}

CyclotomicInteger F_chi_partial(const DirichletCharacter& chi, u64 Y, Weight w) {
  u64 ell = ell_of(chi);
  if (Y == 0) return CyclotomicInteger(ell);
  u64 ellsq = ell * ell;

  // the local value is determined by p mod ell^2; certify each residue's
  // value rational once, then run the sum in plain integers
  std::vector<i64> local(ellsq, 0);
  for (u64 r = 0; r < ellsq; ++r) {
    if (r % ell == 0) continue;
    auto e = chi.value_exponent(r);
    CyclotomicInteger loc = local_sum(ell, *e / (ell - 1));
    if (!loc.is_rational())
      throw domain_error("character local value is not rational");
    local[r] = loc.rational_value();
  }

  SpfTable spf = build_spf(Y);
  i128 acc = 0;
  for (u64 n = 1; n <= Y; ++n) {
    u64 m = n;
    i128 term = 1;
    u32 ohat = 0;
    bool sqfree = true;
    while (m > 1) {
      u64 p = spf.spf[m];
      m /= p;
      if (m % p == 0) {
        sqfree = false;
        break;
      }
      term *= local[p % ellsq];
      if (p % ell == 1) ++ohat;
    }
    if (!sqfree || term == 0) continue;
    if (w == Weight::genus_one && ohat > 0) continue;
    if (w == Weight::genus_weighted)
      for (u32 i = 0; i < ohat; ++i) term *= static_cast<i64>(ell);
    acc = add_checked_i128(acc, term);
  }
  return CyclotomicInteger::integer(ell, narrow_i128(acc));
}

i128 F_partial(u64 ell, u64 Y, Weight w) {
  validate_ell(ell);
  if (Y == 0) return 0;
  SpfTable spf = build_spf(Y);
  i128 acc = 0;
  for (u64 n = 1; n <= Y; ++n) {
    u64 m = n;
    i128 term = 1;
    u32 ohat = 0;
    bool sqfree = true;
    while (m > 1) {
      u64 p = spf.spf[m];
      m /= p;
      if (m % p == 0) {
        sqfree = false;
        break;
      }
      term *= static_cast<i64>(ell - 1);
      if (p % ell == 1) ++ohat;
    }
    if (!sqfree) continue;
    if (w == Weight::genus_one && ohat > 0) continue;
    if (w == Weight::genus_weighted)
      for (u32 i = 0; i < ohat; ++i) term *= static_cast<i64>(ell);
    acc = add_checked_i128(acc, term);
  }
  return acc;
}

TableCheckReport table_check_f_chi(u64 ell, u64 prime_bound) {
  validate_ell(ell);
  TableCheckReport rep;
  rep.ell = ell;
  rep.bound = prime_bound;

  double phi = static_cast<double>(ell * (ell - 1));
  rep.expected_density = {1.0 / phi, static_cast<double>(ell - 1) / phi,
                          static_cast<double>(ell - 2) / phi,
                          static_cast<double>((ell - 1) * (ell - 2)) / phi};

  auto chars = order_ell_characters(ell);
  PrimeTable pt = sieve_primes(prime_bound);
  u64 m = ell * ell;
  i64 lm1 = static_cast<i64>(ell - 1);

  for (u64 p : pt.primes) {
    if (p == ell) continue;
    rep.primes_checked += 1;
    bool is_one = (p % ell == 1);
    bool tame = mod_pow(p % m, ell - 1, m) == 1;
    std::size_t cls = is_one ? (tame ? 0 : 1) : (tame ? 2 : 3);
    rep.class_counts[cls] += 1;

    // predicted local values by congruence class
    i64 want_plain = tame ? lm1 : -1;
    i64 want_g1 = is_one ? 0 : want_plain;
    i64 want_gw = is_one ? want_plain * static_cast<i64>(ell) : want_plain;

    for (const auto& chi : chars) {
      if (chi.is_principal()) continue;
      CyclotomicInteger v = f_chi(Factorization{{{p, 1}}}, chi);
      if (!v.is_rational()) {
        rep.mismatches.push_back({p, chi.index(), "value not rational"});
        continue;
      }
      i64 got = v.rational_value();
      if (got != want_plain) rep.mismatches.push_back({p, chi.index(), "plain"});
      if ((is_one ? 0 : got) != want_g1)
        rep.mismatches.push_back({p, chi.index(), "genus_one"});
      if (got * (is_one ? static_cast<i64>(ell) : 1) != want_gw)
        rep.mismatches.push_back({p, chi.index(), "genus_weighted"});
    }
  }
  rep.pass = rep.mismatches.empty();
  return rep;
}

std::string table_check_to_json(const TableCheckReport& report) {
  nlohmann::json j;
  j["check"] = "f_chi_table";
  j["ell"] = report.ell;
  j["bound"] = report.bound;
  j["mismatches"] = report.mismatches.size();
  j["pass"] = report.pass;
  j["primes_checked"] = report.primes_checked;
  j["class_counts"] = report.class_counts;
  j["expected_density"] = report.expected_density;
  nlohmann::json details = nlohmann::json::array();
  for (std::size_t i = 0; i < report.mismatches.size() && i < 32; ++i)
    details.push_back({{"p", report.mismatches[i].p},
                       {"chi_index", report.mismatches[i].chi_index},
                       {"what", report.mismatches[i].what}});
  j["mismatch_details"] = details;
  return j.dump(2);
}

BigIdentityReport big_identity_check(u64 ell, u128 X) {
  validate_ell(ell);
  if (checked_pow_u128(ell, static_cast<unsigned>(ell - 2)) > X)
    throw domain_error("identity requires X >= ell^(ell-2)");

  BigIdentityReport rep;
  rep.ell = ell;
  rep.X = X;

  u64 y_tame = tame_cutoff(ell, X);
  u64 y_wild = wild_cutoff(ell, X);

  std::vector<PureField> fields = enumerate_brute(ell, X);
  i128 n_fields = static_cast<i128>(fields.size());
  i128 n_genus_one = 0;
  i128 genus_sum = 0;
  for (const PureField& f : fields) {
    if (f.genus == 1) n_genus_one += 1;
    genus_sum += static_cast<i128>(f.genus);
  }

  auto chars = order_ell_characters(ell);
  const Weight weights[3] = {Weight::plain, Weight::genus_one, Weight::genus_weighted};
  const i128 counts[3] = {n_fields, n_genus_one, genus_sum};

  bool all_pass = true;
  for (int i = 0; i < 3; ++i) {
    CyclotomicInteger S(ell);
    for (const auto& chi : chars) {
      S += F_chi_partial(chi, y_tame, weights[i]);
      S -= F_chi_partial(chi, y_wild, weights[i]);
    }
    // the chi average must be a rational integer divisible by ell
    i128 avg = S.divide_exact(static_cast<i64>(ell)).rational_value();

    BigIdentityRow row;
    row.weight = weights[i];
    row.lhs = static_cast<i128>(ell - 1) * counts[i] + 1;
    row.rhs = avg + F_partial(ell, y_wild, weights[i]);
    row.pass = (row.lhs == row.rhs);
    all_pass = all_pass && row.pass;
    rep.rows[i] = row;
  }
  rep.pass = all_pass;
  return rep;
}

double mertens_partial(const std::vector<u64>& S, u64 m, const PrimeTable& pt,
                       u64 X) {
  if (m == 0) throw domain_error("modulus must be positive");
  if (pt.limit < X) throw domain_error("prime table does not reach X");
  kahan_sum acc;
  for (u64 p : pt.primes) {
    if (p > X) break;
    if (m != 1 && std::find(S.begin(), S.end(), p % m) == S.end()) continue;
    acc.add(1.0 / static_cast<double>(p));
  }
  return acc.value();
}

double mertens_partial(const std::vector<u64>& S, u64 m, u64 X) {
  if (X < 2) return 0.0;
  return mertens_partial(S, m, sieve_primes(X), X);
}

double mertens_slope(const std::vector<u64>& S, u64 m, const PrimeTable& pt,
                     u64 X) {
  if (X < 100000) throw domain_error("slope fit needs X >= 10^5");
  if (pt.limit < X) throw domain_error("prime table does not reach X");

  // half-decade grid 10^4, 10^4.5, ..., capped at X
  std::vector<u64> cps;
  for (int k = 8;; ++k) {
    u64 x = static_cast<u64>(roundl(powl(10.0L, static_cast<long double>(k) / 2.0L)));
    if (x > X) break;
    cps.push_back(x);
  }

  std::vector<double> xs, ys;
  kahan_sum acc;
  std::size_t idx = 0;
  for (u64 p : pt.primes) {
    while (idx < cps.size() && p > cps[idx]) {
      ys.push_back(acc.value());
      xs.push_back(std::log(std::log(static_cast<double>(cps[idx]))));
      ++idx;
    }
    if (idx == cps.size()) break;
    if (m != 1 && std::find(S.begin(), S.end(), p % m) == S.end()) continue;
    acc.add(1.0 / static_cast<double>(p));
  }
  while (idx < cps.size()) {
    ys.push_back(acc.value());
    xs.push_back(std::log(std::log(static_cast<double>(cps[idx]))));
    ++idx;
  }
  return fit_slope(xs, ys);
}

}  // namespace purecensus
