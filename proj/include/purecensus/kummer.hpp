#pragma once

#include <utility>
#include <vector>

#include "purecensus/arith.hpp"
#include "purecensus/ints.hpp"

namespace purecensus {

// One degree-ell isomorphism class, keyed by the minimum of its orbit of
// ell-free generators.
struct PureField {
  u64 ell = 0;
  u64 canonical_a = 0;
  u64 radical_n = 0;       // rad(canonical_a)
  u128 disc_magnitude = 0;
  bool wendt_tame = false;  // a^{ell-1} == 1 (mod ell^2)
  u64 genus = 0;            // ell^{omega_hat(radical_n)}

  bool operator==(const PureField&) const = default;
};

// Strips ell-th powers: product of p^{e mod ell} over the factorization.
u64 ell_free_reduce(u64 a, u64 ell);
u64 ell_free_reduce(const Factorization& fa, u64 ell);

// The ell-1 distinct ell-free generators of the same field, ascending:
// {reduce(a^i) : i = 1..ell-1}. a must be ell-free and >= 2. Members are
// returned as u128: reduce(a^i) can pass 2^64 even when a itself is small
// (a near 10^4 with ell = 7 already does).
std::vector<u128> orbit(u64 a, u64 ell);
std::vector<u128> orbit(const Factorization& fa, u64 ell);

// min(orbit(a, ell)); always <= a, so it fits u64.
u64 canonical_rep(u64 a, u64 ell);

bool wendt_tame(u64 a, u64 ell);
bool wendt_tame(const Factorization& fa, u64 ell);

// (|disc|, tame flag). Tame: ell^{ell-2} n^{ell-1}; wild: ell^ell n^{ell-1},
// with n = rad(a). ell | a always lands wild (the congruence cannot hold).
std::pair<u128, bool> disc_magnitude(u64 a, u64 ell);
std::pair<u128, bool> disc_magnitude(const Factorization& fa, u64 ell);

u64 genus_number(u64 a, u64 ell);
u64 genus_number(const Factorization& fa, u64 ell);

PureField make_field(u64 a, u64 ell);
// Fast path when the caller already factorized a.
PureField make_field(const Factorization& fa, u64 ell);

}  // namespace purecensus
