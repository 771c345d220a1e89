#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <set>

#include "json.hpp"
#include "purecensus/characters.hpp"
#include "purecensus/errors.hpp"

using namespace purecensus;
using C = CyclotomicInteger;

TEST_CASE("character basics mod 9") {
  auto chars = character_group(9);
  REQUIRE(chars.size() == 6);
  for (u64 k = 0; k < 6; ++k) CHECK(chars[k].index() == k);
  CHECK(chars[0].is_principal());
  CHECK(chars[0].order() == 1);
  CHECK(chars[1].order() == 6);
  CHECK(chars[2].order() == 3);
  CHECK(chars[3].order() == 2);

  // principal character: 1 on units, 0 elsewhere
  for (u64 u : {u64(1), u64(2), u64(4), u64(5), u64(7), u64(8)})
    CHECK(std::abs(chars[0].value(u) - std::complex<double>(1, 0)) < 1e-12);
  CHECK(std::abs(chars[0].value(3)) == 0.0);
  CHECK(!chars[0].value_exponent(6).has_value());

  // non-principal characters sum to zero over the group
  for (u64 k = 1; k < 6; ++k) {
    std::complex<double> s = 0;
    for (u64 u = 1; u < 9; ++u) s += chars[k].value(u);
    CHECK(std::abs(s) < 1e-12);
  }
}

TEST_CASE("characters are multiplicative") {
  for (u64 m : {u64(9), u64(25), u64(7)}) {
    auto chars = character_group(m);
    for (const auto& chi : chars) {
      for (u64 u = 1; u < m; ++u) {
        if (!chi.value_exponent(u)) continue;
        for (u64 v = 1; v < m; ++v) {
          if (!chi.value_exponent(v)) continue;
          u64 lhs = *chi.value_exponent((u * v) % m);
          u64 rhs = (*chi.value_exponent(u) + *chi.value_exponent(v)) % chi.group_order();
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("the ell characters with chi^ell principal") {
  for (u64 ell : {3, 5, 7}) {
    auto chars = order_ell_characters(ell);
    REQUIRE(chars.size() == ell);
    CHECK(chars[0].is_principal());
    std::set<u64> indices;
    for (const auto& chi : chars) {
      indices.insert(chi.index());
      CHECK(chi.index() % (ell - 1) == 0);
      CHECK(chi.modulus() == ell * ell);
      if (!chi.is_principal()) CHECK(chi.order() == ell);
    }
    CHECK(indices.size() == ell);
  }
}

TEST_CASE("orthogonality picks out the tame congruence class") {
  for (u64 ell : {3, 5, 7}) {
    auto chars = order_ell_characters(ell);
    u64 m = ell * ell;
    for (u64 u = 1; u < m; ++u) {
      if (u % ell == 0) continue;
      C sum(ell);
      for (const auto& chi : chars) sum += chi_zeta_value(chi, u);
      bool tame = mod_pow(u, ell - 1, m) == 1;
      CHECK(sum == C::integer(ell, tame ? static_cast<i64>(ell) : 0));
    }
  }
}

TEST_CASE("local values of f_chi") {
  auto chars = order_ell_characters(3);
  const auto& chi = chars[1];  // non-principal

  CHECK(f_chi(1, chi) == C::integer(3, 1));
  CHECK(f_chi(17, chi) == C::integer(3, 2));  // 17^2 = 289 = 1 mod 9
  CHECK(f_chi(5, chi) == C::integer(3, -1));
  CHECK(f_chi(7, chi) == C::integer(3, -1));  // 7^2 = 49 = 4 mod 9
  CHECK(f_chi(3, chi) == C::integer(3, 0));   // p = ell
  CHECK(f_chi(10, chi) == C::integer(3, 1));  // (-1) * (-1)
  CHECK_THROWS_AS(f_chi(4, chi), domain_error);

  // principal character: ell-1 at units, 0 at ell
  const auto& chi0 = chars[0];
  CHECK(f_chi(2, chi0) == C::integer(3, 2));
  CHECK(f_chi(17, chi0) == C::integer(3, 2));
  CHECK(f_chi(6, chi0) == C::integer(3, 0));
}

TEST_CASE("f_chi is multiplicative on coprime squarefree arguments") {
  for (u64 ell : {3, 5}) {
    auto chars = order_ell_characters(ell);
    const auto& chi = chars[1];
    SpfTable spf = build_spf(1000);
    for (u64 n = 1; n <= 1000; ++n) {
      if (!spf.is_squarefree(n)) continue;
      Factorization fn = spf.factorize(n);
      C prod = C::integer(ell, 1);
      for (const auto& t : fn.terms) prod = prod * f_chi(t.prime, chi);
      CHECK(f_chi(fn, chi) == prod);
    }
  }
}

TEST_CASE("partial sums of f_chi at worked values") {
  auto chars = order_ell_characters(3);
  const auto& chi0 = chars[0];
  const auto& chi = chars[1];

  CHECK(F_chi_partial(chi0, 10, Weight::plain) == C::integer(3, 11));
  CHECK(F_chi_partial(chi0, 10, Weight::genus_one) == C::integer(3, 9));
  CHECK(F_chi_partial(chi0, 10, Weight::genus_weighted) == C::integer(3, 15));

  CHECK(F_chi_partial(chi, 10, Weight::plain) == C::integer(3, -1));
  CHECK(F_chi_partial(chi, 10, Weight::genus_one) == C::integer(3, 0));
  CHECK(F_chi_partial(chi, 10, Weight::genus_weighted) == C::integer(3, -3));

  CHECK(F_chi_partial(chi, 1, Weight::plain) == C::integer(3, 1));
  CHECK(F_chi_partial(chi, 0, Weight::plain) == C::integer(3, 0));

  // both non-principal characters give the same rational sums
  CHECK(F_chi_partial(chars[2], 10, Weight::plain) == C::integer(3, -1));

  auto chars5 = order_ell_characters(5);
  CHECK(F_chi_partial(chars5[1], 20, Weight::plain) == C::integer(5, -4));
}

TEST_CASE("partial sums grow slower than Y") {
  auto chars = order_ell_characters(3);
  const auto& chi = chars[1];
  i64 f3 = F_chi_partial(chi, 1000, Weight::plain).rational_value();
  i64 f4 = F_chi_partial(chi, 10000, Weight::plain).rational_value();
  i64 f5 = F_chi_partial(chi, 100000, Weight::plain).rational_value();
  CHECK(f3 == 6);
  CHECK(f4 == 1);
  CHECK(f5 == -15);
  CHECK(std::abs(static_cast<double>(f5)) / 1e5 <
        std::abs(static_cast<double>(f3)) / 1e3);
}

TEST_CASE("unrestricted companion sums") {
  CHECK(F_partial(3, 10, Weight::plain) == 17);
  CHECK(F_partial(3, 10, Weight::genus_one) == 15);
  CHECK(F_partial(3, 10, Weight::genus_weighted) == 21);
  CHECK(F_partial(3, 0, Weight::plain) == 0);
  CHECK(F_partial(3, 1, Weight::plain) == 1);
}

TEST_CASE("local value table check") {
  TableCheckReport r = table_check_f_chi(3, 10000);
  CHECK(r.pass);
  CHECK(r.mismatches.empty());
  CHECK(r.primes_checked == 1228);  // pi(10^4) = 1229, minus p = 3
  u64 total = 0;
  for (u64 c : r.class_counts) total += c;
  CHECK(total == 1228);
  CHECK(r.expected_density[0] == doctest::Approx(1.0 / 6.0));
  CHECK(r.expected_density[1] == doctest::Approx(2.0 / 6.0));
  CHECK(r.expected_density[2] == doctest::Approx(1.0 / 6.0));
  CHECK(r.expected_density[3] == doctest::Approx(2.0 / 6.0));

  TableCheckReport r5 = table_check_f_chi(5, 10000);
  CHECK(r5.pass);
  CHECK(r5.mismatches.empty());

  auto j = nlohmann::json::parse(table_check_to_json(r));
  CHECK(j["check"] == "f_chi_table");
  CHECK(j["ell"] == 3);
  CHECK(j["bound"] == 10000);
  CHECK(j["mismatches"] == 0);
  CHECK(j["pass"] == true);
}

TEST_CASE("character decomposition of the weighted counts") {
  BigIdentityReport r = big_identity_check(3, 10000);
  CHECK(r.pass);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].lhs == 2 * 23 + 1);
  CHECK(r.rows[1].lhs == 2 * 15 + 1);
  CHECK(r.rows[2].lhs == 2 * 39 + 1);
  for (const auto& row : r.rows) {
    CHECK(row.pass);
    CHECK(row.lhs == row.rhs);
  }

  // smallest admissible X
  BigIdentityReport r0 = big_identity_check(3, 3);
  CHECK(r0.pass);

  BigIdentityReport r5 = big_identity_check(5, 1000000);
  CHECK(r5.pass);
  CHECK(r5.rows[0].lhs == 4 * 4 + 1);

  CHECK_THROWS_AS(big_identity_check(5, 100), domain_error);  // X < 5^3
}

TEST_CASE("prime reciprocal sums") {
  // 1/2 + 1/3 + 1/5 + 1/7
  CHECK(mertens_partial({}, 1, 10) ==
        doctest::Approx(1.1761904761904762).epsilon(1e-12));

  PrimeTable pt = sieve_primes(1000000);
  double all6 = mertens_partial({}, 1, pt, 1000000);
  // loglog X + M, M = 0.26149721...
  CHECK(std::abs(all6 - (std::log(std::log(1e6)) + 0.2614972128476428)) < 0.01);

  double c1 = mertens_partial({1}, 3, pt, 1000000);
  double c2 = mertens_partial({2}, 3, pt, 1000000);
  CHECK(c1 + c2 + 1.0 / 3.0 == doctest::Approx(all6).epsilon(1e-12));
  CHECK(c1 < c2);  // small-prime imbalance favors the nonresidue class

  double tame9 = mertens_partial({1, 8}, 9, pt, 1000000);
  CHECK(tame9 > 0.0);
  CHECK(tame9 < all6);
}

TEST_CASE("slope of partial sums against log log") {
  PrimeTable pt = sieve_primes(1000000);
  double s = mertens_slope({1}, 3, pt, 1000000);
  CHECK(std::abs(s - 0.5) < 0.05);
  double s9 = mertens_slope({1, 8}, 9, pt, 1000000);
  CHECK(std::abs(s9 - 1.0 / 3.0) < 0.05);
  CHECK_THROWS_AS(mertens_slope({1}, 3, pt, 20000), domain_error);
}
