#pragma once

#include <vector>

#include "purecensus/ints.hpp"

namespace purecensus {

struct Factorization {
  struct Term {
    u64 prime;
    u32 exponent;
    bool operator==(const Term&) const = default;
  };
  std::vector<Term> terms;  // primes strictly increasing, exponents >= 1

  bool operator==(const Factorization&) const = default;
  u64 value() const;  // reconstructs the integer, checked
};

struct PrimeTable {
  u64 limit = 0;
  std::vector<u64> primes;  // all primes <= limit, ascending
};

// Smallest-prime-factor table for fast repeated factorization of integers
// up to `limit`. spf[0] = spf[1] = 0.
struct SpfTable {
  u64 limit = 0;
  std::vector<u32> spf;

  Factorization factorize(u64 m) const;
  bool is_squarefree(u64 m) const;
};

// Discrete logarithms in the unit group of a prime or prime-squared modulus,
// relative to the least primitive root. dlog[u] == NOT_A_UNIT marks
// gcd(u, modulus) > 1.
struct DlogTable {
  static constexpr u32 NOT_A_UNIT = 0xFFFFFFFFu;

  u64 modulus = 0;
  u64 group_order = 0;  // phi(modulus)
  u64 generator = 0;
  std::vector<u32> dlog;  // indexed by residue, size = modulus

  bool is_unit(u64 u) const { return dlog[u % modulus] != NOT_A_UNIT; }
  u32 log_of(u64 u) const { return dlog[u % modulus]; }
};

// All primes <= limit via a segmented odd sieve. limit must be in [2, 2^40].
PrimeTable sieve_primes(u64 limit);

SpfTable build_spf(u64 limit);

// General factorization for 1 <= m <= 2^63-1: trial division by a static
// small-prime table, then deterministic Miller-Rabin plus Pollard-Brent rho
// for any large cofactor. Census-scale work always goes through SpfTable.
Factorization factorize(u64 m);

u64 radical(const Factorization& f);
u32 omega(const Factorization& f);
// Distinct primes p of f with p == 1 (mod ell).
u32 omega_hat(const Factorization& f, u64 ell);
bool is_ell_free(const Factorization& f, u64 ell);

u64 mod_pow(u64 base, u64 exp, u64 mod);
u64 gcd_u64(u64 a, u64 b);

bool is_prime_u64(u64 n);

// Throws domain_error unless ell is an odd prime in [3, 31].
void validate_ell(u64 ell);

// Dlog table mod ell^2 (the modulus used by the order-ell characters).
// Requires ell <= 10^3.
DlogTable build_dlog_table(u64 ell);
// Dlog table mod m for m an odd prime or the square of one.
DlogTable build_dlog_table_mod(u64 m);

}  // namespace purecensus
