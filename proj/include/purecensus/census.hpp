#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "purecensus/arith.hpp"
#include "purecensus/ints.hpp"
#include "purecensus/kummer.hpp"

namespace purecensus {

struct CheckpointRow {
  u128 X = 0;
  u64 n_fields = 0;     // N_ell(X)
  u64 n_genus_one = 0;  // fields with genus 1
  u64 genus_sum = 0;    // sum of genus over fields
};

struct CountSummary {
  u64 ell = 0;
  u128 X = 0;
  std::vector<CheckpointRow> checkpoints;  // ascending X, cumulative counts
  CheckpointRow totals;                    // counts at X itself
};

// Tallies over all ell-free a with rad(a) = n, split by the tame congruence.
// The genus-restricted and genus-weighted tallies are determined by n alone
// (genus depends only on the radical), but are carried explicitly.
struct RadicalTerm {
  u64 n = 0;
  u32 omega_n = 0;
  u32 omega_hat_n = 0;
  u64 tame_count = 0;
  u64 wild_count = 0;  // tame + wild = (ell-1)^omega_n
  u64 tame_genus_one = 0;
  u64 wild_genus_one = 0;
  u64 tame_genus_sum = 0;
  u64 wild_genus_sum = 0;
};

struct BoundPair {
  double tame_bound = 0.0;  // a(ell) X^{1/(ell-1)}
  double wild_bound = 0.0;  // b(ell) X^{1/(ell-1)}
};

// Real-valued radical cutoffs a(ell) X^{1/(ell-1)} and b(ell) X^{1/(ell-1)}
// with a(ell) = ell^{-1+1/(ell-1)}, b(ell) = ell^{-1-1/(ell-1)}. Loop sizing
// only; boundary decisions are re-made in exact integer arithmetic.
BoundPair bound_pair(u64 ell, u128 X);

// Largest n with ell^{ell-2} n^{ell-1} <= X (exact); 0 if none.
u64 tame_cutoff(u64 ell, u128 X);
// Largest n with ell^ell n^{ell-1} <= X (exact); 0 if none.
u64 wild_cutoff(u64 ell, u128 X);

// Odometer over all exponent vectors in {1..ell-1}^{omega(n)}; classifies
// each a by the tame congruence through dlog arithmetic mod ell^2.
// `fn` must be the factorization of a squarefree n; `tab` the table mod ell^2.
RadicalTerm radical_term(u64 ell, const Factorization& fn, const DlogTable& tab);

// Direct scan over a in [2, cutoff^{ell-1}]; requires that range <= 10^9.
// Output sorted by (disc_magnitude, canonical_a); one row per class.
std::vector<PureField> enumerate_brute(u64 ell, u128 X);

// Radical-first enumeration; identical output contract to enumerate_brute.
std::vector<PureField> enumerate_radical(u64 ell, u128 X, unsigned threads = 1);

struct IdentityReport {
  u64 ell = 0;
  u128 X = 0;
  i128 lhs = 0;  // (ell-1) N_ell(X) + 1, counted by direct scan
  i128 rhs = 0;  // 1 + sum of tame terms to the tame cutoff + wild terms to the wild cutoff
  bool pass = false;
};

// Exact two-path identity check; lhs counts generators directly, rhs sums
// radical terms. Must agree exactly for every X.
IdentityReport parametrization_identity_check(u64 ell, u128 X);

// One enumeration pass accumulating the three counters at each checkpoint
// (a field is counted at X_i iff |disc| <= X_i). Checkpoints must be
// ascending and <= X.
CountSummary count_summary(u64 ell, u128 X, std::vector<u128> checkpoints,
                           unsigned threads = 1);

struct AsymptoticInputs {
  double A = 0.0;  // genus-one proportion constant
  double B = 0.0;  // average-genus constant
  double C = 0.0;  // leading count constant
};

struct ComparisonRow {
  u128 X = 0;
  u64 n_fields = 0;
  double r_count = 0.0;      // N / (C X^{1/(ell-1)} (log X)^{ell-2})
  double r_genus_one = 0.0;  // (genus-one proportion) * A log X
  double r_genus_avg = 0.0;  // (average genus) / (B (log X)^{ell-1})
};

// Empirical/predicted ratio table; no pass/fail judgment here.
std::vector<ComparisonRow> asymptotic_comparison(const CountSummary& summary,
                                                 const AsymptoticInputs& k);

// Header `ell,canonical_a,radical,disc,wendt_tame,genus`; booleans as 0/1.
void write_csv(const std::vector<PureField>& fields, std::ostream& out);
std::string fields_to_json(const std::vector<PureField>& fields);
std::string summary_to_json(const CountSummary& summary);

}  // namespace purecensus
