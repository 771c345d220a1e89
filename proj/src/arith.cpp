#include "purecensus/arith.hpp"

#include <algorithm>
#include <cstddef>
#include <new>
#include <numeric>

#include "purecensus/errors.hpp"

namespace purecensus {

std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string to_string_i128(i128 v) {
  if (v < 0) return "-" + to_string_u128(static_cast<u128>(-v));
  return to_string_u128(static_cast<u128>(v));
}

u128 parse_u128(const std::string& text) {
  if (text.empty()) throw domain_error("empty integer literal");
  std::size_t pos = 0;
  std::string digits;      // mantissa digits without the dot
  long frac_digits = 0;    // digits after the dot
  bool seen_digit = false;
  while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
    if (text[pos] == '.') {
      if (frac_digits > 0 || digits.find('.') != std::string::npos)
        throw domain_error("bad integer literal: " + text);
      for (++pos; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
        digits.push_back(text[pos]);
        ++frac_digits;
        seen_digit = true;
      }
      break;
    }
    digits.push_back(text[pos]);
    seen_digit = true;
    ++pos;
  }
  if (!seen_digit) throw domain_error("bad integer literal: " + text);
  long exp10 = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos == text.size()) throw domain_error("bad integer literal: " + text);
    long e = 0;
    for (; pos < text.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        throw domain_error("bad integer literal: " + text);
      e = e * 10 + (text[pos] - '0');
      if (e > 100) throw capacity_error("integer literal out of range: " + text);
    }
    exp10 = neg ? -e : e;
  }
  if (pos != text.size()) throw domain_error("bad integer literal: " + text);
  exp10 -= frac_digits;
  if (exp10 < 0) throw domain_error("integer literal has a fractional part: " + text);
  u128 v = 0;
  for (char c : digits) {
    v = checked_mul_u128(v, 10);
    u128 next = v + static_cast<u128>(c - '0');
    if (next < v) throw capacity_error("integer literal out of range: " + text);
    v = next;
  }
  for (long i = 0; i < exp10; ++i) v = checked_mul_u128(v, 10);
  return v;
}

u64 Factorization::value() const {
  u64 v = 1;
  for (const auto& t : terms)
    for (u32 i = 0; i < t.exponent; ++i) v = checked_mul_u64(v, t.prime);
  return v;
}

PrimeTable sieve_primes(u64 limit) {
  if (limit < 2 || limit > (u64(1) << 40))
    throw capacity_error("sieve limit must be in [2, 2^40]");

  // base primes up to sqrt(limit) by a plain sieve
  u64 root = 1;
  while ((root + 1) * (root + 1) <= limit) ++root;
  std::vector<u8> is_comp(root + 1, 0);
  std::vector<u64> base;
  for (u64 p = 2; p <= root; ++p) {
    if (is_comp[p]) continue;
    base.push_back(p);
    for (u64 q = p * p; q <= root; q += p) is_comp[q] = 1;
  }

  PrimeTable out;
  out.limit = limit;
  try {
    // segment over odd numbers only; 2 is handled by hand
    out.primes.push_back(2);
    constexpr u64 SEG = u64(1) << 21;
    std::vector<u8> seg;
    for (u64 lo = 3; lo <= limit; lo += 2 * SEG) {
      u64 hi = std::min(limit, lo + 2 * SEG - 2);  // odd values lo..hi
      u64 count = (hi - lo) / 2 + 1;
      seg.assign(count, 0);
      for (u64 p : base) {
        if (p == 2) continue;
        if (p * p > hi) break;
        u64 start = std::max(p * p, ((lo + p - 1) / p) * p);
        if (start % 2 == 0) start += p;
        for (u64 q = start; q <= hi; q += 2 * p) seg[(q - lo) / 2] = 1;
      }
      for (u64 i = 0; i < count; ++i)
        if (!seg[i]) out.primes.push_back(lo + 2 * i);
    }
  } catch (const std::bad_alloc&) {
    throw capacity_error("sieve limit too large for available memory");
  }
  return out;
}

SpfTable build_spf(u64 limit) {
  if (limit < 1 || limit > 0xFFFFFFFFull)
    throw capacity_error("spf table limit must be in [1, 2^32-1]");
  SpfTable t;
  t.limit = limit;
  try {
    t.spf.assign(limit + 1, 0);
  } catch (const std::bad_alloc&) {
    throw capacity_error("spf table too large for available memory");
  }
  for (u64 i = 2; i <= limit; ++i) {
    if (t.spf[i] != 0) continue;
    for (u64 j = i; j <= limit; j += i)
      if (t.spf[j] == 0) t.spf[j] = static_cast<u32>(i);
  }
  return t;
}

Factorization SpfTable::factorize(u64 m) const {
  if (m == 0) throw domain_error("cannot factorize 0");
  if (m > limit) throw capacity_error("value exceeds spf table limit");
  Factorization f;
  while (m > 1) {
    u64 p = spf[m];
    u32 e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.terms.push_back({p, e});
  }
  return f;
}

bool SpfTable::is_squarefree(u64 m) const {
  if (m == 0) throw domain_error("cannot factorize 0");
  if (m > limit) throw capacity_error("value exceeds spf table limit");
  while (m > 1) {
    u64 p = spf[m];
    m /= p;
    if (m % p == 0) return false;
  }
  return true;
}

u64 mod_pow(u64 base, u64 exp, u64 mod) {
  if (mod == 0) throw domain_error("mod_pow with modulus 0");
  u64 r = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) r = static_cast<u64>(u128(r) * base % mod);
    base = static_cast<u64>(u128(base) * base % mod);
    exp >>= 1;
  }
  return r;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

namespace {

// deterministic Miller-Rabin; the first 12 prime bases decide primality for
// every 64-bit integer
bool miller_rabin(u64 n, u64 a) {
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = mod_pow(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = static_cast<u64>(u128(x) * x % n);
    if (x == n - 1) return true;
  }
  return false;
}

u64 pollard_brent(u64 n) {
  // Brent's cycle variant; n must be odd, composite, and not a prime power
  // small enough for the callers' trial division
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1, q = 1, ys = 0;
    u64 r = 1;
    const u64 m = 128;
    auto step = [&](u64 v) { return static_cast<u64>((u128(v) * v + c) % n); };
    while (d == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && d == 1; k += m) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = static_cast<u64>(u128(q) * (x > y ? x - y : y - x) % n);
        }
        d = gcd_u64(q, n);
      }
      r <<= 1;
    }
    if (d == n) {
      // backtrack one step at a time
      do {
        ys = step(ys);
        d = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    primes.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (!miller_rabin(n, a)) return false;
  return true;
}

Factorization factorize(u64 m) {
  if (m == 0) throw domain_error("cannot factorize 0");
  if (m > u64(9223372036854775807ull))
    throw capacity_error("factorize supports values up to 2^63-1");
  static const PrimeTable small = sieve_primes(1000000);
  Factorization f;
  for (u64 p : small.primes) {
    if (p * p > m) break;
    if (m % p != 0) continue;
    u32 e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    f.terms.push_back({p, e});
  }
  if (m > 1) {
    if (m < u64(1000000000000ull) || is_prime_u64(m)) {
      // no prime factor <= 10^6, so anything below 10^12 is itself prime
      f.terms.push_back({m, 1});
    } else {
      std::vector<u64> big;
      factor_into(m, big);
      std::sort(big.begin(), big.end());
      for (std::size_t i = 0; i < big.size();) {
        std::size_t j = i;
        while (j < big.size() && big[j] == big[i]) ++j;
        f.terms.push_back({big[i], static_cast<u32>(j - i)});
        i = j;
      }
    }
  }
  std::sort(f.terms.begin(), f.terms.end(),
            [](const Factorization::Term& a, const Factorization::Term& b) {
              return a.prime < b.prime;
            });
  return f;
}

u64 radical(const Factorization& f) {
  u64 r = 1;
  for (const auto& t : f.terms) r = checked_mul_u64(r, t.prime);
  return r;
}

u32 omega(const Factorization& f) { return static_cast<u32>(f.terms.size()); }

u32 omega_hat(const Factorization& f, u64 ell) {
  u32 c = 0;
  for (const auto& t : f.terms)
    if (t.prime % ell == 1) ++c;
  return c;
}

bool is_ell_free(const Factorization& f, u64 ell) {
  for (const auto& t : f.terms)
    if (t.exponent >= ell) return false;
  return true;
}

void validate_ell(u64 ell) {
  if (ell < 3 || ell > 31 || !is_prime_u64(ell))
    throw domain_error("ell must be an odd prime");
}

namespace {

u64 least_primitive_root(u64 m, u64 phi) {
  Factorization fp = factorize(phi);
  for (u64 g = 2; g < m; ++g) {
    if (gcd_u64(g, m) != 1) continue;
    bool ok = true;
    for (const auto& t : fp.terms)
      if (mod_pow(g, phi / t.prime, m) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw domain_error("no primitive root; modulus is not a prime power");
}

}  // namespace

DlogTable build_dlog_table_mod(u64 m) {
  Factorization fm = factorize(m);
  if (fm.terms.size() != 1 || fm.terms[0].prime == 2 || fm.terms[0].exponent > 2)
    throw domain_error("dlog modulus must be an odd prime or its square");
  u64 p = fm.terms[0].prime;
  u64 phi = (fm.terms[0].exponent == 2) ? p * (p - 1) : p - 1;

  DlogTable t;
  t.modulus = m;
  t.group_order = phi;
  t.generator = least_primitive_root(m, phi);
  t.dlog.assign(m, DlogTable::NOT_A_UNIT);
  u64 x = 1;
  for (u64 k = 0; k < phi; ++k) {
    t.dlog[x] = static_cast<u32>(k);
    x = static_cast<u64>(u128(x) * t.generator % m);
  }
  return t;
}

DlogTable build_dlog_table(u64 ell) {
  if (ell > 1000) throw capacity_error("dlog table supports ell <= 10^3");
  if (ell < 3 || !is_prime_u64(ell)) throw domain_error("ell must be an odd prime");
  return build_dlog_table_mod(ell * ell);
}

}  // namespace purecensus
