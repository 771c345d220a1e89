#include "purecensus/cyclotomic.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "purecensus/arith.hpp"
#include "purecensus/errors.hpp"

namespace purecensus {

namespace {

constexpr i64 I64_MAX = 9223372036854775807;

i64 narrow_i128(i128 v) {
  if (v > i128(I64_MAX) || v < -i128(I64_MAX) - 1)
    throw capacity_error("cyclotomic coefficient overflow");
  return static_cast<i64>(v);
}

}  // namespace

CyclotomicInteger::CyclotomicInteger(u64 ell) : ell_(ell) {
  validate_ell(ell);
  c_.assign(ell - 1, 0);
}

CyclotomicInteger CyclotomicInteger::integer(u64 ell, i64 v) {
  CyclotomicInteger x(ell);
  x.c_[0] = v;
  return x;
}

CyclotomicInteger CyclotomicInteger::zeta_pow(u64 ell, u64 j) {
  CyclotomicInteger x(ell);
  j %= ell;
  if (j == ell - 1) {
    for (auto& c : x.c_) c = -1;
  } else {
    x.c_[j] = 1;
  }
  return x;
}

CyclotomicInteger& CyclotomicInteger::operator+=(const CyclotomicInteger& o) {
  if (ell_ != o.ell_) throw domain_error("mixed cyclotomic orders");
  for (u64 j = 0; j < c_.size(); ++j) c_[j] = narrow_i128(i128(c_[j]) + o.c_[j]);
  return *this;
}

CyclotomicInteger& CyclotomicInteger::operator-=(const CyclotomicInteger& o) {
  if (ell_ != o.ell_) throw domain_error("mixed cyclotomic orders");
  for (u64 j = 0; j < c_.size(); ++j) c_[j] = narrow_i128(i128(c_[j]) - o.c_[j]);
  return *this;
}

CyclotomicInteger CyclotomicInteger::operator+(const CyclotomicInteger& o) const {
  CyclotomicInteger r = *this;
  r += o;
  return r;
}

CyclotomicInteger CyclotomicInteger::operator-(const CyclotomicInteger& o) const {
  CyclotomicInteger r = *this;
  r -= o;
  return r;
}

CyclotomicInteger CyclotomicInteger::operator*(const CyclotomicInteger& o) const {
  if (ell_ != o.ell_) throw domain_error("mixed cyclotomic orders");
  // bucket by exponent mod ell, then fold zeta^{ell-1} = -(1 + ... + zeta^{ell-2});
  // per bucket at most ell-1 products of i64 values, which i128 holds exactly
  std::vector<i128> bucket(ell_, 0);
  for (u64 i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (u64 j = 0; j < o.c_.size(); ++j)
      bucket[(i + j) % ell_] += i128(c_[i]) * o.c_[j];
  }
  CyclotomicInteger r(ell_);
  for (u64 j = 0; j + 1 < ell_; ++j) r.c_[j] = narrow_i128(bucket[j] - bucket[ell_ - 1]);
  return r;
}

CyclotomicInteger CyclotomicInteger::operator*(i64 s) const {
  CyclotomicInteger r(ell_);
  for (u64 j = 0; j < c_.size(); ++j) r.c_[j] = narrow_i128(i128(c_[j]) * s);
  return r;
}

bool CyclotomicInteger::operator==(const CyclotomicInteger& o) const {
  return ell_ == o.ell_ && c_ == o.c_;
}

bool CyclotomicInteger::is_zero() const {
  for (i64 c : c_)
    if (c != 0) return false;
  return true;
}

bool CyclotomicInteger::is_rational() const {
  for (u64 j = 1; j < c_.size(); ++j)
    if (c_[j] != 0) return false;
  return true;
}

i64 CyclotomicInteger::rational_value() const {
  if (!is_rational()) throw domain_error("cyclotomic value is not rational");
  return c_[0];
}

CyclotomicInteger CyclotomicInteger::divide_exact(i64 d) const {
  if (d == 0) throw domain_error("division by zero");
  CyclotomicInteger r(ell_);
  for (u64 j = 0; j < c_.size(); ++j) {
    if (c_[j] % d != 0) throw domain_error("inexact cyclotomic division");
    r.c_[j] = c_[j] / d;
  }
  return r;
}

std::complex<double> CyclotomicInteger::to_complex() const {
  std::complex<double> z = 0;
  for (u64 j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    double arg = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(ell_);
    z += static_cast<double>(c_[j]) * std::polar(1.0, arg);
  }
  return z;
}

}  // namespace purecensus
