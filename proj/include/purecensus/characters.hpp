#pragma once

#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "purecensus/arith.hpp"
#include "purecensus/cyclotomic.hpp"
#include "purecensus/ints.hpp"

namespace purecensus {

// Weighting of the radical sums: unweighted, restricted to genus-one radicals
// (no prime factor == 1 mod ell), or weighted by the genus ell^{omega_hat}.
enum class Weight { plain, genus_one, genus_weighted };

// chi_k(u) = zeta_{phi(m)}^{k * dlog(u)}; value carried as the exponent.
// Characters share their dlog table, so copies are cheap.
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const DlogTable> table, u64 k);

  u64 modulus() const { return table_->modulus; }
  u64 group_order() const { return table_->group_order; }
  u64 index() const { return k_; }
  bool is_principal() const { return k_ == 0; }
  u64 order() const;

  // Exponent of zeta_{group_order}; nullopt when gcd(a, modulus) > 1.
  std::optional<u64> value_exponent(u64 a) const;
  std::complex<double> value(u64 a) const;  // 0 on non-units

  const DlogTable& table() const { return *table_; }

 private:
  std::shared_ptr<const DlogTable> table_;
  u64 k_;
};

// All phi(m) characters mod m (m an odd prime or its square).
std::vector<DirichletCharacter> character_group(u64 m);

// The ell characters mod ell^2 with chi^ell principal (indices k divisible
// by ell-1), principal character included.
std::vector<DirichletCharacter> order_ell_characters(u64 ell);

// chi(a) as an exact element of Z[zeta_ell]; requires chi of order dividing
// ell. Zero element when gcd(a, modulus) > 1.
CyclotomicInteger chi_zeta_value(const DirichletCharacter& chi, u64 a);

// f_chi(n) = prod over p | n of sum_{j=1}^{ell-1} chi(p)^j, exact.
// n must be squarefree.
CyclotomicInteger f_chi(u64 n, const DirichletCharacter& chi);
CyclotomicInteger f_chi(const Factorization& fn, const DirichletCharacter& chi);

// F_chi(Y) = sum over squarefree n <= Y of the weighted f_chi(n), exact.
CyclotomicInteger F_chi_partial(const DirichletCharacter& chi, u64 Y, Weight w);

// The unrestricted companion sum with f(n) = (ell-1)^{omega(n)} (does not
// vanish at multiples of ell), same weight options.
i128 F_partial(u64 ell, u64 Y, Weight w);

struct TableCheckReport {
  struct Mismatch {
    u64 p = 0;
    u64 chi_index = 0;
    std::string what;
  };
  u64 ell = 0;
  u64 bound = 0;
  std::vector<Mismatch> mismatches;
  // Classes: [p==1 & tame, p==1 & wild, p!=1 & tame, p!=1 & wild] (mod ell;
  // tame means p^{ell-1} == 1 mod ell^2).
  std::array<u64, 4> class_counts{};
  std::array<double, 4> expected_density{};  // {1, ell-1, ell-2, (ell-1)(ell-2)} / phi(ell^2)
  u64 primes_checked = 0;
  bool pass = false;
};

// Verifies, for every prime p <= bound (p != ell) and every non-principal
// order-ell character, the predicted plain, genus-one and genus-weighted
// local values, and tallies congruence-class membership.
TableCheckReport table_check_f_chi(u64 ell, u64 prime_bound);
std::string table_check_to_json(const TableCheckReport& report);

struct BigIdentityRow {
  Weight weight = Weight::plain;
  i128 lhs = 0;  // (ell-1) * weighted count + 1, by direct scan
  i128 rhs = 0;  // (1/ell) sum_chi [F_chi(Y_A) - F_chi(Y_B)] + F(Y_B)
  bool pass = false;
};

struct BigIdentityReport {
  u64 ell = 0;
  u128 X = 0;
  std::array<BigIdentityRow, 3> rows;  // plain, genus_one, genus_weighted
  bool pass = false;
};

// Exact character-sum decomposition check in cyclotomic arithmetic; the
// chi-averaged sum must be a rational integer divisible by ell (asserted)
// before comparison. Requires ell^{ell-2} <= X and brute capacity.
BigIdentityReport big_identity_check(u64 ell, u128 X);

// Sum of 1/p over primes p <= X with p mod m in S (compensated summation).
// m = 1 means all primes.
double mertens_partial(const std::vector<u64>& S, u64 m, u64 X);
double mertens_partial(const std::vector<u64>& S, u64 m, const PrimeTable& pt,
                       u64 X);

// Least-squares slope of the partial sums against log log x over half-decade
// checkpoints 10^4..X. Should approach |S|/phi(m). Requires X >= 10^5.
double mertens_slope(const std::vector<u64>& S, u64 m, const PrimeTable& pt,
                     u64 X);

}  // namespace purecensus
