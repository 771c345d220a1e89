#include "purecensus/kummer.hpp"

#include <algorithm>

#include "purecensus/errors.hpp"

namespace purecensus {

u64 ell_free_reduce(const Factorization& fa, u64 ell) {
  u64 v = 1;
  for (const auto& t : fa.terms) {
    u32 e = t.exponent % static_cast<u32>(ell);
    for (u32 i = 0; i < e; ++i) v = checked_mul_u64(v, t.prime);
  }
  return v;
}

u64 ell_free_reduce(u64 a, u64 ell) {
  validate_ell(ell);
  return ell_free_reduce(factorize(a), ell);
}

std::vector<u128> orbit(const Factorization& fa, u64 ell) {
  if (fa.terms.empty()) throw domain_error("orbit needs a >= 2");
  if (!is_ell_free(fa, ell)) throw domain_error("orbit needs an ell-free generator");
  std::vector<u128> members;
  members.reserve(ell - 1);
  for (u64 i = 1; i < ell; ++i) {
    u128 m = 1;
    for (const auto& t : fa.terms) {
      u64 e = (u64(t.exponent) * i) % ell;
      for (u64 j = 0; j < e; ++j) m = checked_mul_u128(m, t.prime);
    }
    members.push_back(m);
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<u128> orbit(u64 a, u64 ell) {
  validate_ell(ell);
  return orbit(factorize(a), ell);
}

u64 canonical_rep(u64 a, u64 ell) {
  // a itself sits in the orbit, so the minimum fits u64
  return static_cast<u64>(orbit(a, ell).front());
}

bool wendt_tame(const Factorization& fa, u64 ell) {
  u64 m = ell * ell;
  u64 a_mod = 1;
  for (const auto& t : fa.terms)
    a_mod = static_cast<u64>(u128(a_mod) * mod_pow(t.prime, t.exponent, m) % m);
  return mod_pow(a_mod, ell - 1, m) == 1;
}

bool wendt_tame(u64 a, u64 ell) {
  u64 m = ell * ell;
  return mod_pow(a % m, ell - 1, m) == 1;
}

std::pair<u128, bool> disc_magnitude(const Factorization& fa, u64 ell) {
  if (fa.terms.empty()) throw domain_error("disc_magnitude needs a >= 2");
  if (!is_ell_free(fa, ell)) throw domain_error("disc_magnitude needs an ell-free generator");
  bool tame = wendt_tame(fa, ell);
  u64 n = radical(fa);
  u128 d = checked_pow_u128(ell, static_cast<unsigned>(tame ? ell - 2 : ell));
  d = checked_mul_u128(d, checked_pow_u128(n, static_cast<unsigned>(ell - 1)));
  return {d, tame};
}

std::pair<u128, bool> disc_magnitude(u64 a, u64 ell) {
  validate_ell(ell);
  return disc_magnitude(factorize(a), ell);
}

u64 genus_number(const Factorization& fa, u64 ell) {
  return checked_pow_u64(ell, omega_hat(fa, ell));
}

u64 genus_number(u64 a, u64 ell) {
  validate_ell(ell);
  return genus_number(factorize(a), ell);
}

PureField make_field(const Factorization& fa, u64 ell) {
  Factorization reduced;
  for (const auto& t : fa.terms) {
    u32 e = t.exponent % static_cast<u32>(ell);
    if (e > 0) reduced.terms.push_back({t.prime, e});
  }
  if (reduced.terms.empty())
    throw domain_error("make_field needs a generator that is not an ell-th power");

  PureField f;
  f.ell = ell;
  f.canonical_a = static_cast<u64>(orbit(reduced, ell).front());
  f.radical_n = radical(reduced);
  auto [d, tame] = disc_magnitude(reduced, ell);
  f.disc_magnitude = d;
  f.wendt_tame = tame;
  f.genus = genus_number(reduced, ell);
  return f;
}

PureField make_field(u64 a, u64 ell) {
  validate_ell(ell);
  return make_field(factorize(a), ell);
}

}  // namespace purecensus
