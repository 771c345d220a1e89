#pragma once

#include <complex>
#include <vector>

#include "purecensus/ints.hpp"

namespace purecensus {

// Exact element of Z[zeta_ell] in the power basis {1, zeta, ..., zeta^{ell-2}},
// using zeta^{ell-1} = -(1 + zeta + ... + zeta^{ell-2}). Carries the character
// sums that must be certified integral; floating sums cannot do that.
class CyclotomicInteger {
 public:
  explicit CyclotomicInteger(u64 ell);
  static CyclotomicInteger integer(u64 ell, i64 v);
  static CyclotomicInteger zeta_pow(u64 ell, u64 j);  // zeta^j, canonicalized

  u64 ell() const { return ell_; }
  const std::vector<i64>& coefficients() const { return c_; }

  CyclotomicInteger& operator+=(const CyclotomicInteger& o);
  CyclotomicInteger& operator-=(const CyclotomicInteger& o);
  CyclotomicInteger operator+(const CyclotomicInteger& o) const;
  CyclotomicInteger operator-(const CyclotomicInteger& o) const;
  CyclotomicInteger operator*(const CyclotomicInteger& o) const;
  CyclotomicInteger operator*(i64 s) const;
  bool operator==(const CyclotomicInteger& o) const;

  bool is_zero() const;
  // Rational iff all coefficients above c_0 vanish.
  bool is_rational() const;
  i64 rational_value() const;  // domain_error if not rational

  // Divides every coefficient by d; domain_error unless exact.
  CyclotomicInteger divide_exact(i64 d) const;

  std::complex<double> to_complex() const;

 private:
  u64 ell_;
  std::vector<i64> c_;  // size ell-1
};

}  // namespace purecensus
