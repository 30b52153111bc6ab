#include <catch2/catch_amalgamated.hpp>

#include "crs/totients.hpp"

using namespace crs;

TEST_CASE("brute_s counts unit pairs", "[totients]") {
  REQUIRE(brute_s(15) == 3);  // m in {2, 8, 14}
  REQUIRE(brute_s(7) == 5);
  REQUIRE(brute_s(9) == 3);
  REQUIRE(brute_s(2) == 0);
  REQUIRE(brute_s(14) == 0);  // even: m, m-1 can't both be odd
}

TEST_CASE("schemmel_s closed form", "[totients]") {
  REQUIRE(schemmel_s(1) == 1);
  REQUIRE(schemmel_s(7) == 5);
  REQUIRE(schemmel_s(15) == 3);
  REQUIRE(schemmel_s(9) == 3);
  REQUIRE(schemmel_s(14) == 0);
  for (u64 n = 3; n <= 1500; n += 2) {
    REQUIRE(schemmel_s(n) == brute_s(n));
  }
}

TEST_CASE("brute_t counts half-shifted unit pairs", "[totients]") {
  REQUIRE(brute_t(2) == 0);
  REQUIRE(brute_t(4) == 1);
  REQUIRE(brute_t(14) == 2);  // m in {3, 11}
  REQUIRE(brute_t(15) == 0);
}

TEST_CASE("t_closed_form cases", "[totients]") {
  REQUIRE(t_closed_form(2).is_exact);
  REQUIRE(t_closed_form(2).value == 0);
  REQUIRE(t_closed_form(4).value == 1);
  REQUIRE(t_closed_form(1024).value == 256);  // 2^10 -> 2^8

  // Twice a prime.
  REQUIRE(t_closed_form(14).value == 2);   // 7 = 3 mod 4
  REQUIRE(t_closed_form(26).value == 6);   // 13 = 1 mod 4

  // Odd prime power: exact (s(n)-1)/2.
  REQUIRE(t_closed_form(9).is_exact);
  REQUIRE(t_closed_form(9).value == 1);
  REQUIRE(t_closed_form(9).value == brute_t(9));

  // Several odd primes: interval only.
  TEstimate const e15 = t_closed_form(15);
  REQUIRE_FALSE(e15.is_exact);
  REQUIRE(e15.contains(brute_t(15)));

  REQUIRE_THROWS_AS(t_closed_form(1), std::invalid_argument);
}

TEST_CASE("t_closed_form brackets the brute count", "[totients]") {
  for (u64 n = 2; n <= 1500; ++n) {
    TEstimate const est = t_closed_form(n);
    u64 const bt = brute_t(n);
    REQUIRE(est.contains(bt));
    if (est.is_exact) {
      REQUIRE(est.value == bt);
    }
  }
}

TEST_CASE("def_set_counts on 15", "[totients]") {
  DefSetCounts const c3 = def_set_counts(15, 3);
  REQUIRE(c3.e == 2);
  REQUIRE(c3.d == 2);
  REQUIRE(c3.f == 4);

  DefSetCounts const c5 = def_set_counts(15, 5);
  REQUIRE(c5.e == 1);
  REQUIRE(c5.d == 2);
  REQUIRE(c5.f == 3);

  REQUIRE_THROWS_AS(def_set_counts(14, 7), std::invalid_argument);
  REQUIRE_THROWS_AS(def_set_counts(15, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(def_set_counts(15, 7), NotDivisorError);
}

TEST_CASE("def_set count laws on a sweep", "[totients]") {
  for (u64 n = 3; n <= 1200; n += 2) {
    for (auto const& [p, e] : factorize(n)) {
      (void)e;
      DefSetCounts const c = def_set_counts(n, p);
      REQUIRE(c.e == (n - p) / (2 * p));
      REQUIRE((c.d == (n - p) / (2 * p) || c.d == (n + p) / (2 * p)));
      REQUIRE((c.f == n / p || c.f == n / p - 1));
      REQUIRE(c.f == c.d + c.e);
    }
  }
}

TEST_CASE("totient_report rows", "[totients]") {
  TotientReport const r14 = totient_report(14);
  REQUIRE(r14.match);
  REQUIRE(r14.s_value == 0);
  REQUIRE(r14.t.is_exact);
  REQUIRE(r14.t.value == 2);
  REQUIRE(r14.brute_t_count == 2);

  TotientReport const r15 = totient_report(15);
  REQUIRE(r15.match);
  REQUIRE(r15.s_value == 3);

  TotientReport const r4 = totient_report(4);
  REQUIRE(r4.match);
  REQUIRE(r4.t.value == 1);

  REQUIRE_THROWS_AS(totient_report(1), std::invalid_argument);
  REQUIRE_THROWS_AS(totient_report(1'000'001), std::invalid_argument);
}
