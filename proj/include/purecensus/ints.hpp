#pragma once

#include <cstdint>
#include <string>

#include "purecensus/errors.hpp"

namespace purecensus {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr u64 U64_MAX = ~u64{0};
inline constexpr u128 U128_MAX = ~u128{0};

std::string to_string_u128(u128 v);
std::string to_string_i128(i128 v);

// Accepts plain decimal ("12345") or scientific with integral value
// ("1e7", "2.5e9"). Rejects anything that is not an exact nonnegative integer.
u128 parse_u128(const std::string& text);

inline u64 checked_mul_u64(u64 a, u64 b) {
  u128 r = u128{a} * b;
  if (r > U64_MAX) throw capacity_error("u64 multiplication overflow");
  return static_cast<u64>(r);
}

inline u128 checked_mul_u128(u128 a, u128 b) {
  if (a != 0 && b > U128_MAX / a) throw capacity_error("u128 multiplication overflow");
  return a * b;
}

inline u128 checked_pow_u128(u128 base, unsigned exp) {
  u128 r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul_u128(r, base);
  return r;
}

inline u64 checked_pow_u64(u64 base, unsigned exp) {
  u128 r = checked_pow_u128(base, exp);
  if (r > U64_MAX) throw capacity_error("u64 power overflow");
  return static_cast<u64>(r);
}

}  // namespace purecensus
