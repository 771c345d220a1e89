#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "purecensus/census.hpp"
#include "purecensus/errors.hpp"

using namespace purecensus;

namespace {

// independent boundary oracle for the cutoffs, written against the
// definition only
bool disc_at_most(u64 ell, u64 base_exp, u64 n, u128 X) {
  u128 acc = 1;
  for (u64 i = 0; i < base_exp; ++i) {
    if (acc > X / ell) return false;
    acc *= ell;
  }
  if (n == 0) return acc <= X;
  for (u64 i = 0; i + 1 < ell; ++i) {
    if (acc > X / n) return false;
    acc *= n;
  }
  return acc <= X;
}

}  // namespace

TEST_CASE("real-valued radical bounds") {
  BoundPair b3 = bound_pair(3, 9);
  CHECK(b3.tame_bound == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(b3.wild_bound == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

  BoundPair b5 = bound_pair(5, 100000000);
  CHECK(b5.tame_bound == doctest::Approx(std::pow(5.0, -0.75) * 100.0).epsilon(1e-12));
  CHECK(b5.wild_bound == doctest::Approx(std::pow(5.0, -1.25) * 100.0).epsilon(1e-12));
}

TEST_CASE("integer cutoffs are exact at the boundary") {
  CHECK(tame_cutoff(3, 12) == 2);
  CHECK(tame_cutoff(3, 11) == 1);
  CHECK(tame_cutoff(3, 3) == 1);
  CHECK(tame_cutoff(3, 2) == 0);
  CHECK(tame_cutoff(3, 0) == 0);
  CHECK(wild_cutoff(3, 108) == 2);
  CHECK(wild_cutoff(3, 107) == 1);
  CHECK(wild_cutoff(3, 26) == 0);

  for (u64 n : {u64(2), u64(1825), u64(57735), u64(3037000499ull)}) {
    u128 d = u128(3) * n * n;
    CHECK(tame_cutoff(3, d) == n);
    CHECK(tame_cutoff(3, d - 1) == n - 1);
    CHECK(tame_cutoff(3, d + 1) == n);
  }
  for (u64 n : {u64(2), u64(29), u64(631)}) {
    u128 d = u128(3125) * n * n * n * n;
    CHECK(wild_cutoff(5, d) == n);
    CHECK(wild_cutoff(5, d - 1) == n - 1);
  }

  // cutoff value against the definition, across ell and magnitudes
  for (u64 ell : {3, 5, 7}) {
    for (u128 X : {u128(1), u128(1000), u128(999983), u128(1000000007),
                   u128(10000000000000000ull) * 10000}) {
      u64 yt = tame_cutoff(ell, X);
      u64 yw = wild_cutoff(ell, X);
      if (yt > 0) CHECK(disc_at_most(ell, ell - 2, yt, X));
      CHECK(!disc_at_most(ell, ell - 2, yt + 1, X));
      if (yw > 0) CHECK(disc_at_most(ell, ell, yw, X));
      CHECK(!disc_at_most(ell, ell, yw + 1, X));
      CHECK(yw <= yt);
    }
  }
}

TEST_CASE("per-radical tame/wild split") {
  DlogTable tab = build_dlog_table(3);

  RadicalTerm t2 = radical_term(3, factorize(2), tab);
  CHECK(t2.tame_count == 0);
  CHECK(t2.wild_count == 2);

  RadicalTerm t10 = radical_term(3, factorize(10), tab);
  CHECK(t10.tame_count == 2);  // 10 and 100 satisfy the congruence mod 9
  CHECK(t10.wild_count == 2);

  RadicalTerm t17 = radical_term(3, factorize(17), tab);
  CHECK(t17.tame_count == 2);
  CHECK(t17.wild_count == 0);

  // ell | n forces wild
  RadicalTerm t3 = radical_term(3, factorize(3), tab);
  CHECK(t3.tame_count == 0);
  CHECK(t3.wild_count == 2);

  RadicalTerm t1 = radical_term(3, factorize(1), tab);
  CHECK(t1.tame_count == 1);
  CHECK(t1.wild_count == 0);

  // genus bookkeeping: n = 7 has one prime that is 1 mod 3
  RadicalTerm t7 = radical_term(3, factorize(7), tab);
  CHECK(t7.omega_hat_n == 1);
  CHECK(t7.tame_count == 0);
  CHECK(t7.wild_count == 2);
  CHECK(t7.wild_genus_one == 0);
  CHECK(t7.wild_genus_sum == 6);

  CHECK_THROWS_AS(radical_term(3, factorize(4), tab), domain_error);
}

TEST_CASE("tame count closed form") {
  // for squarefree n coprime to ell:
  //   tame = ((ell-1)^omega + (ell-1) * prod_p f1(p)) / ell,
  // f1(p) = ell-1 if p satisfies the congruence mod ell^2, else -1
  for (u64 ell : {3, 5, 7}) {
    DlogTable tab = build_dlog_table(ell);
    SpfTable spf = build_spf(2000);
    for (u64 n = 1; n <= 2000; ++n) {
      if (!spf.is_squarefree(n) || n % ell == 0) continue;
      Factorization fn = spf.factorize(n);
      i64 pw = 1, prod = 1;
      for (const auto& t : fn.terms) {
        pw *= static_cast<i64>(ell - 1);
        prod *= (mod_pow(t.prime, ell - 1, ell * ell) == 1) ? static_cast<i64>(ell - 1) : -1;
      }
      i64 expected = (pw + static_cast<i64>(ell - 1) * prod) / static_cast<i64>(ell);
      RadicalTerm rt = radical_term(ell, fn, tab);
      CHECK(static_cast<i64>(rt.tame_count) == expected);
      CHECK(rt.tame_count + rt.wild_count == static_cast<u64>(pw));
    }
  }
}

TEST_CASE("direct enumeration on tiny bounds") {
  CHECK(enumerate_brute(3, 50).empty());
  CHECK(enumerate_brute(3, 107).empty());

  auto one = enumerate_brute(3, 108);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == PureField{3, 2, 2, 108, false, 1});

  auto three = enumerate_brute(3, 300);
  REQUIRE(three.size() == 3);
  CHECK(three[0] == PureField{3, 2, 2, 108, false, 1});
  CHECK(three[1] == PureField{3, 3, 3, 243, false, 1});
  CHECK(three[2] == PureField{3, 10, 10, 300, true, 1});

  auto five0 = enumerate_brute(5, 49999);
  CHECK(five0.empty());
  auto five1 = enumerate_brute(5, 50000);
  REQUIRE(five1.size() == 1);
  CHECK(five1[0] == PureField{5, 2, 2, 50000, false, 1});

  auto seven = enumerate_brute(7, 100000000);
  REQUIRE(seven.size() == 1);
  CHECK(seven[0] == PureField{7, 2, 2, 52706752, false, 1});
}

TEST_CASE("direct scan range cap") {
  CHECK_THROWS_AS(enumerate_brute(3, u128(4) * 1000000000 * 1000000000),
                  capacity_error);
}

TEST_CASE("radical-first enumeration matches the direct scan") {
  for (u128 X : {u128(0), u128(107), u128(108), u128(10000), u128(100000)})
    CHECK(enumerate_radical(3, X) == enumerate_brute(3, X));
  CHECK(enumerate_radical(5, 1000000) == enumerate_brute(5, 1000000));
  CHECK(enumerate_radical(7, 100000000) == enumerate_brute(7, 100000000));
}

TEST_CASE("census counts at fixed checkpoints") {
  CountSummary s3 = count_summary(3, 1000000, {10000, 100000, 1000000});
  REQUIRE(s3.checkpoints.size() == 3);
  CHECK(s3.checkpoints[0].n_fields == 23);
  CHECK(s3.checkpoints[0].n_genus_one == 15);
  CHECK(s3.checkpoints[0].genus_sum == 39);
  CHECK(s3.checkpoints[1].n_fields == 92);
  CHECK(s3.checkpoints[1].n_genus_one == 48);
  CHECK(s3.checkpoints[1].genus_sum == 192);
  CHECK(s3.checkpoints[2].n_fields == 337);
  CHECK(s3.checkpoints[2].n_genus_one == 153);
  CHECK(s3.checkpoints[2].genus_sum == 843);
  CHECK(s3.totals.n_fields == 337);

  CountSummary s5 = count_summary(5, 100000000, {1000000, 10000000, 100000000});
  CHECK(s5.checkpoints[0].n_fields == 4);
  CHECK(s5.checkpoints[0].n_genus_one == 4);
  CHECK(s5.checkpoints[0].genus_sum == 4);
  CHECK(s5.checkpoints[1].n_fields == 8);
  CHECK(s5.checkpoints[1].n_genus_one == 8);
  CHECK(s5.checkpoints[1].genus_sum == 8);
  CHECK(s5.checkpoints[2].n_fields == 16);
  CHECK(s5.checkpoints[2].n_genus_one == 14);
  CHECK(s5.checkpoints[2].genus_sum == 24);

  CountSummary s7 = count_summary(7, 1000000000, {});
  CHECK(s7.totals.n_fields == 3);
  CHECK(s7.totals.n_genus_one == 3);
  CHECK(s7.totals.genus_sum == 3);

  CHECK_THROWS_AS(count_summary(3, 100, {200}), domain_error);
  CHECK_THROWS_AS(count_summary(3, 100, {50, 30}), domain_error);
}

TEST_CASE("generator-count identity in exact arithmetic") {
  for (u128 X : {u128(1), u128(100), u128(1000), u128(10000), u128(1000000)}) {
    IdentityReport r = parametrization_identity_check(3, X);
    CHECK(r.pass);
    CHECK(r.lhs == r.rhs);
  }
  IdentityReport r1 = parametrization_identity_check(3, 1);
  CHECK(r1.lhs == 1);
  CHECK(r1.rhs == 1);

  for (u128 X : {u128(1), u128(10000), u128(1000000)})
    CHECK(parametrization_identity_check(5, X).pass);
  CHECK(parametrization_identity_check(7, 100000000).pass);
}

TEST_CASE("worker count does not change results") {
  auto f1 = enumerate_radical(3, 1000000, 1);
  auto f3 = enumerate_radical(3, 1000000, 3);
  auto f8 = enumerate_radical(3, 1000000, 8);
  CHECK(f1 == f3);
  CHECK(f1 == f8);

  CountSummary a = count_summary(3, 1000000, {10000, 100000, 1000000}, 1);
  CountSummary b = count_summary(3, 1000000, {10000, 100000, 1000000}, 4);
  REQUIRE(a.checkpoints.size() == b.checkpoints.size());
  for (size_t i = 0; i < a.checkpoints.size(); ++i) {
    CHECK(a.checkpoints[i].n_fields == b.checkpoints[i].n_fields);
    CHECK(a.checkpoints[i].n_genus_one == b.checkpoints[i].n_genus_one);
    CHECK(a.checkpoints[i].genus_sum == b.checkpoints[i].genus_sum);
  }
}

TEST_CASE("csv output") {
  std::ostringstream os;
  write_csv(enumerate_brute(3, 300), os);
  CHECK(os.str() ==
        "ell,canonical_a,radical,disc,wendt_tame,genus\n"
        "3,2,2,108,0,1\n"
        "3,3,3,243,0,1\n"
        "3,10,10,300,1,1\n");

  std::ostringstream empty;
  write_csv({}, empty);
  CHECK(empty.str() == "ell,canonical_a,radical,disc,wendt_tame,genus\n");
}

TEST_CASE("json output") {
  auto fields = enumerate_brute(3, 300);
  auto j = nlohmann::json::parse(fields_to_json(fields));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 3);
  CHECK(j[0]["ell"] == 3);
  CHECK(j[0]["canonical_a"] == 2);
  CHECK(j[0]["disc"] == "108");
  CHECK(j[0]["wendt_tame"] == false);
  CHECK(j[2]["wendt_tame"] == true);

  CountSummary s = count_summary(3, 10000, {100, 10000});
  auto js = nlohmann::json::parse(summary_to_json(s));
  CHECK(js["ell"] == 3);
  CHECK(js["X"] == 10000);
  REQUIRE(js["checkpoints"].size() == 2);
  CHECK(js["checkpoints"][0]["X"] == 100);
  CHECK(js["checkpoints"][0]["n_fields"] == 0);
  CHECK(js["checkpoints"][1]["n_fields"] == 23);
  CHECK(js["checkpoints"][1]["n_genus_one"] == 15);
  CHECK(js["checkpoints"][1]["genus_sum"] == 39);
  CHECK(js["totals"]["n_fields"] == 23);
}

TEST_CASE("ratio table against hand-computed rows") {
  CountSummary s = count_summary(3, 10000, {100, 10000});
  AsymptoticInputs k{1.0, 1.0, 1.0};
  auto rows = asymptotic_comparison(s, k);
  REQUIRE(rows.size() == 2);

  // empty checkpoint: every ratio is zero
  CHECK(rows[0].n_fields == 0);
  CHECK(rows[0].r_count == 0.0);
  CHECK(rows[0].r_genus_one == 0.0);
  CHECK(rows[0].r_genus_avg == 0.0);

  double lx = std::log(10000.0);
  CHECK(rows[1].r_count == doctest::Approx(23.0 / (100.0 * lx)).epsilon(1e-10));
  CHECK(rows[1].r_genus_one == doctest::Approx((15.0 / 23.0) * lx).epsilon(1e-10));
  CHECK(rows[1].r_genus_avg ==
        doctest::Approx((39.0 / 23.0) / (lx * lx)).epsilon(1e-10));
}
