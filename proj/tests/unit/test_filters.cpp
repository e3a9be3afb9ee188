#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "egyfrac/errors.hpp"
#include "egyfrac/filters.hpp"
#include "oracles.hpp"

using namespace egyfrac;

namespace {
const FactorTable& table() {
  static const FactorTable t(200'000);
  return t;
}

bool brute_pair(std::uint64_t n, double y, double z) {
  for (std::uint64_t d1 = 1; d1 <= n; ++d1) {
    if (n % d1 || static_cast<double>(d1) < y) continue;
    for (std::uint64_t d2 = 4 * d1; d2 <= n && static_cast<double>(d2) <= z; ++d2) {
      if (n % d2 == 0) return true;
    }
  }
  return false;
}
}  // namespace

TEST_CASE("smoothness examples") {
  const auto& t = table();
  CHECK(passes_smoothness(12, 4, t));
  CHECK_FALSE(passes_smoothness(12, 3, t));
  CHECK_FALSE(passes_smoothness(17, 16, t));
  CHECK_THROWS_AS(passes_smoothness(1, 4, t), DomainError);
}

TEST_CASE("divisor pair examples") {
  const auto& t = table();
  CHECK(has_divisor_pair(20, 1, 5, t));
  CHECK_FALSE(has_divisor_pair(7, 1, 5, t));
  CHECK(has_divisor_pair(36, 2, 12, t));
  CHECK(has_divisor_pair(1, 0.5, 10, t) == false);
}

TEST_CASE("omega window examples") {
  const auto& t = table();
  CHECK(omega_in_range(12, 1, 2, t));
  CHECK_FALSE(omega_in_range(8, 2, 3, t));
  CHECK(omega_in_range(30, 3, 3, t));
  CHECK_THROWS_AS(omega_in_range(1, 0, 3, t), DomainError);
}

TEST_CASE("divisor pair agrees with brute force") {
  const auto& t = table();
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::uint64_t> nd(1, 3000);
  std::uniform_real_distribution<double> yd(1, 20);
  for (int i = 0; i < 2000; ++i) {
    const auto n = nd(rng);
    const double y = yd(rng);
    const double z = y * 4 + yd(rng) * 5;
    CHECK(has_divisor_pair(n, y, z, t) == brute_pair(n, y, z));
  }
}

TEST_CASE("filter spec validation and composition") {
  FilterSpec s;
  s.smooth_bound = 10;
  s.y = 1;
  s.z = 8;
  s.omega_lo = 2;
  s.omega_hi = 3;
  s.validate();
  const auto& t = table();
  const IntSet out = filter_set(IntSet::interval(2, 100), s, t);
  for (auto n : out) CHECK(passes_filters(n, s, t));
  for (std::uint64_t n = 2; n <= 100; ++n) {
    const bool want = passes_smoothness(n, 10, t) && has_divisor_pair(n, 1, 8, t) &&
                      omega_in_range(n, 2, 3, t);
    CHECK(out.contains(n) == want);
  }
  FilterSpec bad = s;
  bad.y = 9;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = s;
  bad.omega_lo = 4;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = s;
  bad.smooth_bound = 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  const FilterSpec p = FilterSpec::asymptotic_preset(1e12);
  CHECK(p.omega_lo < p.omega_hi);
  CHECK(p.y == 1);
  CHECK(asymptotic_window_start(1e12) < 1e12);
}

TEST_CASE("sieve_survivors examples") {
  const auto& t = table();
  CHECK(sieve_survivors(1, 10, 2, 3, t) == IntSet{1, 5, 7});
  CHECK(sieve_survivors(1, 10, 5, 5, t) == IntSet{1, 2, 3, 4, 6, 7, 8, 9});
  CHECK(sieve_survivors(2, 2, 3, 7, t) == IntSet{2});
  CHECK_THROWS_AS(sieve_survivors(1, 300'000, 2, 3, t), RangeError);
}

TEST_CASE("sieve_survivors matches trial division and is monotone in [y,z]") {
  const auto& t = table();
  for (auto [y, z] : {std::pair{2.0, 3.0}, {3.0, 13.0}, {5.5, 30.0}, {2.0, 50.0}}) {
    const IntSet s = sieve_survivors(1, 3000, y, z, t);
    for (std::uint64_t n = 1; n <= 3000; ++n) {
      bool hit = false;
      for (auto [p, e] : oracle::factorize(n)) {
        hit |= static_cast<double>(p) >= y && static_cast<double>(p) <= z;
      }
      CHECK(s.contains(n) == !hit);
    }
    CHECK(sieve_survivors(1, 3000, y, z + 10, t).is_subset_of(s));
    CHECK(sieve_survivors(1, 3000, std::max(2.0, y - 1), z, t).is_subset_of(s));
  }
}

TEST_CASE("two_prime_pair_set examples") {
  const auto& t = table();
  CHECK(two_prime_pair_set(100, 2, 11, t) == IntSet{22, 44, 66, 88});
  CHECK(two_prime_pair_set(10, 2, 3, t).empty());
  CHECK(two_prime_pair_set(30, 2, 9, t).empty());
}

TEST_CASE("two_prime_pair_set matches the definition") {
  const auto& t = table();
  const IntSet s = two_prime_pair_set(5000, 2, 60, t);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    std::vector<std::uint64_t> ps;
    for (auto [p, e] : oracle::factorize(n)) {
      if (p >= 2 && p <= 60) ps.push_back(p);
    }
    bool want = false;
    for (auto a : ps) {
      for (auto b : ps) want |= 4 * a < b;
    }
    CHECK(s.contains(n) == want);
  }
}

TEST_CASE("Mertens sums and products") {
  const auto& t = table();
  CHECK(mertens_q_sum(2, t).to_string() == "1/2");
  CHECK(mertens_q_sum(1, t).to_string() == "0/1");
  CHECK(mertens_q_sum(10, t).to_string() == "4189/2520");
  CHECK(mertens_product(2, t).to_string() == "2/1");
  CHECK(mertens_product(3, t).to_string() == "3/1");
  // 2 * 3/2 * 5/4 * 7/6
  CHECK(mertens_product(10, t).to_string() == "35/8");
  CHECK_THROWS_AS(mertens_q_sum(300'000, t), RangeError);
  CHECK_THROWS_AS(mertens_product(300'000, t), RangeError);

  mpq_class s = 0, p = 1;
  for (std::uint64_t q = 2; q <= 3000; ++q) {
    const auto f = oracle::factorize(q);
    if (f.size() == 1) s += mpq_class(1, q);
    if (oracle::is_prime(q)) p *= mpq_class(q, q - 1);
  }
  s.canonicalize();
  p.canonicalize();
  CHECK(mertens_q_sum(3000, t).raw() == s);
  CHECK(mertens_product(3000, t).raw() == p);
}

TEST_CASE("sieve density report") {
  const FactorTable t(20'000);
  const SieveDensityReport r = sieve_density(10'000, 3, 20, t);
  std::uint64_t c = 0;
  for (std::uint64_t n = 10'000; n < 20'000; ++n) {
    bool ok = true;
    for (auto [p, e] : oracle::factorize(n)) ok &= !(p >= 3 && p <= 20);
    c += ok;
  }
  CHECK(r.count == c);
  CHECK(r.ratio == doctest::Approx(static_cast<double>(c) / 10'000));
  CHECK(r.bound == doctest::Approx(std::log(3.0) / std::log(20.0)));
  CHECK(r.constant == doctest::Approx(r.ratio / r.bound));
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j.at("X_count") == c);
  CHECK(j.contains("ratio"));
  CHECK(j.contains("bound"));
}
