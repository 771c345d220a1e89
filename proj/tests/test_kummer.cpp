#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "purecensus/errors.hpp"
#include "purecensus/kummer.hpp"

using namespace purecensus;

TEST_CASE("ell_free_reduce worked examples") {
  CHECK(ell_free_reduce(72, 3) == 9);
  CHECK(ell_free_reduce(2, 5) == 2);
  CHECK(ell_free_reduce(32, 5) == 1);
  CHECK(ell_free_reduce(7, 3) == 7);
  CHECK(ell_free_reduce(8, 3) == 1);
  CHECK(ell_free_reduce(1, 3) == 1);
}

TEST_CASE("ell_free_reduce kills ell-th power factors") {
  for (u64 a = 2; a <= 50; ++a)
    for (u64 b = 2; b <= 50; ++b)
      CHECK(ell_free_reduce(a * b * b * b, 3) == ell_free_reduce(a, 3));
}

TEST_CASE("orbit worked examples") {
  CHECK(orbit(2, 3) == std::vector<u128>{2, 4});
  CHECK(orbit(12, 3) == std::vector<u128>{12, 18});
  CHECK(orbit(2, 5) == std::vector<u128>{2, 4, 8, 16});
  CHECK_THROWS_AS(orbit(1, 3), domain_error);
  CHECK_THROWS_AS(orbit(8, 3), domain_error);  // not 3-free
}

TEST_CASE("canonical_rep worked examples") {
  CHECK(canonical_rep(4, 3) == 2);
  CHECK(canonical_rep(18, 3) == 12);
  CHECK(canonical_rep(16, 5) == 2);
  CHECK(canonical_rep(2, 3) == 2);
  // idempotent
  for (u64 a : {u64(2), u64(12), u64(100), u64(9973)})
    CHECK(canonical_rep(canonical_rep(a, 3), 3) == canonical_rep(a, 3));
}

TEST_CASE("ramification congruence at ell") {
  CHECK(wendt_tame(10, 3));
  CHECK(wendt_tame(17, 3));
  CHECK(wendt_tame(7, 5));  // 7^4 = 2401 = 96*25 + 1
  CHECK(!wendt_tame(2, 3));
  CHECK(!wendt_tame(2, 5));
  CHECK(!wendt_tame(3, 3));   // ell | a is always wild
  CHECK(!wendt_tame(15, 3));
}

TEST_CASE("discriminant magnitude worked examples") {
  using P = std::pair<u128, bool>;
  CHECK(disc_magnitude(2, 3) == P{108, false});
  CHECK(disc_magnitude(10, 3) == P{300, true});
  CHECK(disc_magnitude(3, 3) == P{243, false});
  CHECK(disc_magnitude(5, 3) == P{675, false});
  CHECK(disc_magnitude(6, 3) == P{972, false});
  CHECK(disc_magnitude(7, 3) == P{1323, false});
  CHECK(disc_magnitude(17, 3) == P{867, true});
  CHECK(disc_magnitude(19, 3) == P{1083, true});
  CHECK(disc_magnitude(26, 3) == P{2028, true});
  CHECK(disc_magnitude(2, 5) == P{50000, false});
  CHECK(disc_magnitude(7, 5) == P{300125, true});
  CHECK(disc_magnitude(2, 7) == P{52706752, false});
  CHECK_THROWS_AS(disc_magnitude(1, 3), domain_error);
}

TEST_CASE("genus number worked examples") {
  CHECK(genus_number(7, 3) == 3);
  CHECK(genus_number(2, 3) == 1);
  CHECK(genus_number(91, 3) == 9);  // 7 * 13, both primes are 1 mod 3
  CHECK(genus_number(26, 3) == 3);
  CHECK(genus_number(77, 3) == 3);
  CHECK(genus_number(7, 5) == 1);
  CHECK(genus_number(11, 5) == 5);
}

TEST_CASE("make_field worked examples") {
  PureField f = make_field(4, 3);
  CHECK(f.ell == 3);
  CHECK(f.canonical_a == 2);
  CHECK(f.radical_n == 2);
  CHECK(f.disc_magnitude == 108);
  CHECK(!f.wendt_tame);
  CHECK(f.genus == 1);

  PureField g = make_field(7, 3);
  CHECK(g.canonical_a == 7);
  CHECK(g.disc_magnitude == 1323);
  CHECK(g.genus == 3);

  PureField h = make_field(10, 3);
  CHECK(h.disc_magnitude == 300);
  CHECK(h.wendt_tame);
  CHECK(h.genus == 1);

  CHECK_THROWS_AS(make_field(1, 3), domain_error);
  CHECK_THROWS_AS(make_field(8, 3), domain_error);  // reduces to 1
}

// every generator in an orbit must describe the same field
TEST_CASE("field invariants agree across the whole orbit") {
  for (u64 ell : {3, 5, 7}) {
    for (u64 a = 2; a <= 10000; ++a) {
      Factorization fa = factorize(a);
      if (!is_ell_free(fa, ell)) continue;
      auto disc = disc_magnitude(fa, ell);
      u64 genus = genus_number(fa, ell);
      bool tame = wendt_tame(fa, ell);

      std::vector<u128> members = orbit(fa, ell);
      REQUIRE(members.size() == ell - 1);
      CHECK(std::is_sorted(members.begin(), members.end()));
      CHECK(std::set<u128>(members.begin(), members.end()).size() == ell - 1);
      CHECK(std::find(members.begin(), members.end(), u128(a)) != members.end());
      CHECK(members.front() == u128(canonical_rep(a, ell)));

      for (u64 i = 1; i < ell; ++i) {
        Factorization fm;
        for (const auto& t : fa.terms) {
          u32 e = static_cast<u32>((u64(t.exponent) * i) % ell);
          if (e > 0) fm.terms.push_back({t.prime, e});
        }
        CHECK(disc_magnitude(fm, ell) == disc);
        CHECK(genus_number(fm, ell) == genus);
        CHECK(wendt_tame(fm, ell) == tame);
      }
    }
  }
}

TEST_CASE("canonical representative is orbit-stable") {
  for (u64 a = 2; a <= 1000; ++a) {
    Factorization fa = factorize(a);
    if (!is_ell_free(fa, 3)) continue;
    for (u128 m : orbit(fa, 3))
      CHECK(canonical_rep(static_cast<u64>(m), 3) == canonical_rep(a, 3));
  }
}
