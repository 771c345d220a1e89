#pragma once

#include <complex>
#include <optional>
#include <string>

#include "purecensus/arith.hpp"
#include "purecensus/characters.hpp"
#include "purecensus/ints.hpp"

namespace purecensus {

// The five Euler-product families. D-family products are absolutely
// convergent; A and B converge only conditionally and are evaluated through
// their L(1,chi) factorization.
enum class Family { D, D5hat, D6hat, A, B };

enum class EvalMethod { direct_truncation, direct_with_extrapolation, l_decomposition };

const char* family_name(Family f);
const char* method_name(EvalMethod m);

struct ConstantResult {
  Family family{};
  u64 ell = 0;
  u64 prime_bound = 0;
  EvalMethod method{};
  double value = 0.0;
  double tail_estimate = 0.0;      // estimated absolute truncation error
  double cross_check_delta = 0.0;  // relative disagreement of the two methods
};

struct Rational {
  i128 num = 0;
  i128 den = 1;  // reduced, den > 0
  double to_double() const;
};

// The displayed per-prime factor, branching on p mod ell only. Exact.
Rational local_factor(Family f, u64 ell, u64 p);
double log_local_factor(Family f, u64 ell, u64 p);

// Explicit c with |log factor| <= c / p^2 for p > ell (for A and B this
// bounds the decomposed G-factor, not the raw one).
double envelope_constant(Family f, u64 ell);

// e in  prod local = [prod_{chi != chi0 mod ell} L(1,chi)]^e * prod G_p.
int l_exponent(Family f, u64 ell);

// log of the decomposed local factor G_p (families A, B, D5hat, D6hat):
// local_factor(p) * prod_{chi != chi0}(1 - chi(p)/p)^e, absolutely
// convergent. At p = ell the character factors are empty.
double log_G_factor(Family f, u64 ell, u64 p);

enum class LMethod { finite_closed_form, tail_accelerated_series };

// L(1, chi) for non-principal chi mod ell, to absolute error <= 1e-12.
// The two methods must agree to 1e-10 (checked by the callers that need it).
std::complex<double> L_one(const DirichletCharacter& chi, LMethod method);

// prod over non-principal chi mod ell of L(1, chi); real positive.
double L_product(u64 ell);

// c(ell) = ell / (2 ell - 1).
double c_ell(u64 ell);

// Families D, D5hat, D6hat. D goes by direct truncation; the hat families
// have an unbalanced 1/p term on the p == 1 class and converge too slowly
// for raw truncation, so they go through the same L-decomposition as the
// conditional families (see README).
ConstantResult eval_absolute(Family f, u64 ell, const PrimeTable& pt, u64 P,
                             unsigned threads = 1);
ConstantResult eval_absolute(Family f, u64 ell, u64 P, unsigned threads = 1);

// Families A and B. Method of record: L-decomposition with second-order tail
// correction. Cross-checked against direct truncation at the same P; relative
// disagreement above 1e-4 is a hard error carrying both values.
ConstantResult eval_conditional(Family f, u64 ell, const PrimeTable& pt, u64 P,
                                unsigned threads = 1);
ConstantResult eval_conditional(Family f, u64 ell, u64 P, unsigned threads = 1);

struct CResult {
  u64 ell = 0;
  u64 prime_bound = 0;
  double form1 = 0.0;  // 1/(ell-1)^{ell-1} ((a-b)/ell c(ell) + b) D_ell
  double form2 = 0.0;  // closed-form prefactor times the same product
  double delta = 0.0;  // relative disagreement, must be <= 1e-12
  double tail_estimate = 0.0;
};

// Both displayed forms of the leading count constant; disagreement beyond
// 1e-12 relative is a hard error (it would mean a transcription bug).
CResult eval_C(u64 ell, const PrimeTable& pt, u64 P, unsigned threads = 1);
CResult eval_C(u64 ell, u64 P, unsigned threads = 1);
CResult eval_C_from(const ConstantResult& d_result);

struct RatioReport {
  u64 ell = 0;
  u64 P = 0;
  double a_conditional = 0.0;  // A from eval_conditional
  double a_via_d = 0.0;        // D / ((ell-1) D5hat)
  double b_conditional = 0.0;  // B from eval_conditional
  double b_via_d = 0.0;        // (ell-1)^{1-ell} D6hat / D
  double delta_a = 0.0;
  double delta_b = 0.0;
  bool pass = false;
};

// Ties the conditional evaluator to the absolutely-convergent families
// through an independent algebraic path; 1e-4 relative tolerance.
RatioReport derived_ratio_check(u64 ell, u64 P, unsigned threads = 1);

// prod_{p<=X}(1 + tau/p) divided by e^{tau gamma} (log X)^tau times the
// convergent companion product; approaches 1.
double mertens_third_check(double tau, u64 X);
double mertens_third_check(double tau, const PrimeTable& pt, u64 X);

std::string result_to_json(const ConstantResult& r);
std::string c_result_to_json(const CResult& r);

// Constants cache: one JSON file per directory, keyed by
// (family, ell, P, method). Directory resolution: $PURECENSUS_CACHE_DIR,
// else ".purecensus-cache" under the working directory.
std::string default_cache_dir();
std::optional<ConstantResult> cache_load(const std::string& dir, Family f,
                                         u64 ell, u64 P, EvalMethod method);
void cache_store(const std::string& dir, const ConstantResult& r);

}  // namespace purecensus
