#include <doctest.h>

#include "egyfrac/errors.hpp"
#include "egyfrac/factor_sieve.hpp"
#include "oracles.hpp"

using namespace egyfrac;

TEST_CASE("spf examples") {
  const FactorTable t = build_table(10);
  CHECK(t.spf(10) == 2);
  CHECK(t.spf(9) == 3);
  CHECK(t.spf(7) == 7);
  CHECK(t.is_prime(7));
  CHECK_FALSE(t.is_prime(9));
  CHECK(t.primes() == std::vector<std::uint32_t>{2, 3, 5, 7});
}

TEST_CASE("factorize, omega, exact prime powers, largest prime") {
  const FactorTable t(400);
  CHECK(t.factorize(12) == Factorization{{2, 2}, {3, 1}});
  CHECK(t.factorize(7) == Factorization{{7, 1}});
  CHECK(t.factorize(360) == Factorization{{2, 3}, {3, 2}, {5, 1}});
  CHECK(t.omega(12) == 2);
  CHECK(t.omega(2) == 1);
  CHECK(t.exact_prime_powers(12) == IntSet{3, 4});
  CHECK(t.exact_prime_powers(8) == IntSet{8});
  CHECK(t.exact_prime_powers(360) == IntSet{5, 8, 9});
  CHECK(t.largest_prime(12) == 3);
  CHECK(t.largest_prime(7) == 7);
  CHECK(t.largest_prime(100) == 5);
  CHECK(t.is_prime_power(9));
  CHECK_FALSE(t.is_prime_power(12));
  CHECK_FALSE(t.is_prime_power(1));
}

TEST_CASE("omega of a primorial") {
  const FactorTable t(30030);
  CHECK(t.omega(30030) == 6);
}

TEST_CASE("error kinds") {
  const FactorTable t(100);
  CHECK_THROWS_AS(t.factorize(1), DomainError);
  CHECK_THROWS_AS(t.omega(0), DomainError);
  CHECK_THROWS_AS(t.largest_prime(1), DomainError);
  CHECK_THROWS_AS(t.factorize(101), RangeError);
  CHECK_THROWS_AS(FactorTable(1), DomainError);
  CHECK_THROWS_AS(FactorTable(1'000'000, 1024), ResourceError);
}

TEST_CASE("sieve agrees with trial division up to 10^4") {
  const FactorTable t(10'000);
  for (std::uint64_t n = 2; n <= 10'000; ++n) {
    const auto expect = oracle::factorize(n);
    const auto got = t.factorize(n);
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].prime == expect[i].first);
      CHECK(got[i].exponent == expect[i].second);
    }
    CHECK(t.is_prime(n) == oracle::is_prime(n));
    CHECK(t.spf(n) == expect.front().first);
    // Product of exact prime powers is n; one per distinct prime.
    const IntSet pp = t.exact_prime_powers(n);
    std::uint64_t prod = 1;
    for (auto q : pp) prod *= q;
    CHECK(prod == n);
    CHECK(pp.size() == t.omega(n));
    CHECK(factorize_trial(n) == got);
  }
}
