#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "egyfrac/errors.hpp"
#include "egyfrac/fourier.hpp"
#include "egyfrac/subset_solver.hpp"
#include "oracles.hpp"

using namespace egyfrac;

namespace {

bool in(const std::vector<std::int64_t>& v, std::int64_t h) {
  return std::find(v.begin(), v.end(), h) != v.end();
}

// A subset of [m, 60] built from divisors of 55440 with R(A) in
// [2/k - 1/m, 2/k) and k | lcm(A), or nothing if the greedy fill misses.
std::optional<IntSet> major_arc_instance(std::mt19937_64& rng, std::uint64_t k, std::uint64_t m) {
  std::vector<std::uint64_t> pool;
  for (std::uint64_t n = m; n <= 60; ++n) {
    if (55440 % n == 0) pool.push_back(n);
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  const Rational cap(2, static_cast<std::int64_t>(k));
  std::vector<std::uint64_t> chosen;
  Rational r;
  for (auto n : pool) {
    if (r + Rational::reciprocal_of(n) < cap) {
      chosen.push_back(n);
      r += Rational::reciprocal_of(n);
    }
  }
  const IntSet a(std::move(chosen));
  if (r < cap - Rational(1, static_cast<std::int64_t>(m))) return std::nullopt;
  if (lcm_set(a) % k != 0) return std::nullopt;
  return a;
}

}  // namespace

TEST_CASE("fourier_count examples") {
  CHECK(fourier_count(IntSet{2, 3, 6}, 1).rounded == 2);
  CHECK(fourier_count(IntSet{2, 3}, 1).rounded == 1);
  const FourierCount e = fourier_count(IntSet{}, 1);
  CHECK(e.rounded == 1);
  CHECK(e.value == 1.0);
  CHECK(fourier_count(IntSet{2}, 2).rounded == 2);
}

TEST_CASE("fourier_count limits") {
  CHECK_THROWS_AS(fourier_count(IntSet::interval(2, 40), 1), ResourceError);
  FourierOptions small;
  small.lcm_bound = 5;
  CHECK_THROWS_AS(fourier_count(IntSet{2, 3}, 1, small), ResourceError);
  CHECK_THROWS_AS(fourier_count(IntSet::interval(1, 53), 1), ResourceError);
  CHECK_THROWS_AS(fourier_count(IntSet{2}, 0), DomainError);
}

TEST_CASE("fourier_count matches the direct sum and the exact count") {
  std::mt19937_64 rng(404);
  int done = 0;
  while (done < 80) {
    const oracle::Vec v = oracle::random_set(rng, 2, 40, 10);
    if (oracle::lcm(v) > 20'000) continue;
    const std::uint64_t k = 1 + done % 3;
    const FourierCount f = fourier_count(IntSet(v), k);
    const auto direct = oracle::fourier(v, k);
    CHECK(f.value == doctest::Approx(static_cast<double>(direct.real())).epsilon(1e-9));
    CHECK(std::fabs(f.imag) <= 1e-6 * std::ldexp(1.0, static_cast<int>(v.size())));
    CHECK(f.rounded == static_cast<std::int64_t>(oracle::count_integral(v, k)));
    ++done;
  }
}

TEST_CASE("cosine_weight examples") {
  CHECK(cosine_weight(IntSet{2, 3, 7}, 1, 0) == 1.0);
  CHECK(cosine_weight(IntSet{}, 3, 17) == 1.0);
  CHECK(cosine_weight(IntSet{2}, 1, 1) == 0.0);
  CHECK(cosine_weight(IntSet{3}, 1, 1) == doctest::Approx(0.5).epsilon(1e-15));
  // Large h is reduced in integers before any division.
  CHECK(cosine_weight(IntSet{3}, 1, 3'000'000'000'001LL) ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("cosine_weight symmetry and bound") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> hd(-100'000, 100'000);
  for (int i = 0; i < 2000; ++i) {
    const IntSet b(oracle::random_set(rng, 1, 200, 12));
    const std::uint64_t k = 1 + rng() % 5;
    const std::int64_t h = hd(rng);
    const double w = cosine_weight(b, k, h);
    CHECK(w >= 0.0);
    CHECK(w <= 1.0);
    CHECK(w == cosine_weight(b, k, -h));
    CHECK(w <= cosine_weight_bound(b, k, h) + 1e-12);
  }
}

TEST_CASE("arc_classify examples") {
  const ArcDiagnostics d = arc_classify(IntSet{2, 3, 6}, 1, 2);
  CHECK(d.l == 6);
  CHECK(d.major_hs == std::vector<std::int64_t>{-1, 1});
  CHECK(d.minor_hs == std::vector<std::int64_t>{-2, 2, 3});
  CHECK(d.rounded == 2);

  const ArcDiagnostics two = arc_classify(IntSet{2}, 1, 2);
  CHECK(two.major_hs == std::vector<std::int64_t>{1});
  CHECK(two.minor_hs.empty());

  const ArcDiagnostics zero = arc_classify(IntSet{2, 3, 6}, 1, 0);
  CHECK(zero.major_hs.empty());
  CHECK(zero.minor_hs.size() == 5);
  CHECK_THROWS_AS(arc_classify(IntSet{2}, 1, -1), DomainError);
}

TEST_CASE("arc diagnostics invariants") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i) {
    const oracle::Vec v = oracle::random_set(rng, 2, 30, 8);
    if (oracle::lcm(v) > 50'000) continue;
    const IntSet a(v);
    const std::uint64_t k = 1 + rng() % 3;
    const double radius = static_cast<double>(rng() % 12);
    const ArcDiagnostics d = arc_classify(a, k, radius);
    const auto l = static_cast<std::int64_t>(d.l);
    CHECK(d.major_hs.size() + d.minor_hs.size() + 1 == d.l);
    double minor_w = 0;
    for (std::int64_t h = d.h_first; h <= l / 2; ++h) {
      const double w = d.weight(h);
      CHECK(w >= 0.0);
      CHECK(w <= 1.0);
      CHECK(w == doctest::Approx(cosine_weight(a, k, h)).epsilon(1e-12));
      if (-h >= d.h_first) CHECK(d.weight(-h) == w);
      if (h == 0) continue;
      bool near = false;
      for (std::int64_t t = -static_cast<std::int64_t>(k); t <= static_cast<std::int64_t>(k); ++t) {
        const long double dist = std::fabs(static_cast<long double>(h) -
                                           static_cast<long double>(t) * l / k);
        near |= dist <= radius / (2.0L * k);
      }
      CHECK(in(d.major_hs, h) == near);
      CHECK(in(d.minor_hs, h) == !near);
      if (!near) minor_w += w;
    }
    CHECK(d.minor_weight_sum == doctest::Approx(minor_w));
    CHECK(d.zero_contribution == doctest::Approx(std::ldexp(1.0, static_cast<int>(v.size())) /
                                                 static_cast<double>(d.l)));
    CHECK(d.zero_contribution + d.major_contribution + d.minor_contribution ==
          doctest::Approx(d.fourier_value));
    CHECK(d.rounded == static_cast<std::int64_t>(oracle::count_integral(v, k)));
    CHECK_THROWS_AS(d.weight(l), RangeError);
  }
}

TEST_CASE("major arcs contribute nonnegatively in the hypothesis window") {
  std::mt19937_64 rng(42);
  int checked = 0;
  for (int tries = 0; tries < 2000 && checked < 30; ++tries) {
    const std::uint64_t k = 1 + tries % 3;
    const std::uint64_t m = 3 + rng() % 8;
    const auto a = major_arc_instance(rng, k, m);
    if (!a) continue;
    const ArcDiagnostics d = arc_classify(*a, k, static_cast<double>(m));
    CHECK(d.major_contribution >= -1e-9 * std::ldexp(1.0, static_cast<int>(a->size())));
    ++checked;
  }
  CHECK(checked == 30);
}

TEST_CASE("diagnostics JSON is capped") {
  const ArcDiagnostics d = arc_classify(IntSet{2, 3, 5, 7}, 1, 3);
  const auto full = nlohmann::json::parse(d.to_json());
  CHECK(full.at("weights").size() == 210);
  CHECK(full.at("weights_truncated") == false);
  const auto capped = nlohmann::json::parse(d.to_json(10));
  CHECK(capped.at("weights").size() == 10);
  CHECK(capped.at("weights_truncated") == true);
  CHECK(capped.at("weights_rest").at("count") == 200);
  CHECK(capped.at("major_count") == d.major_hs.size());
}

TEST_CASE("centred intervals") {
  const Interval odd = centred_interval(10, 5);
  CHECK(odd.start == 8);
  CHECK(odd.last() == 12);
  const Interval even = centred_interval(10, 4);
  CHECK(even.start == 8);
  CHECK(even.last() == 11);
  CHECK_THROWS_AS(centred_interval(0, 0), DomainError);
}

TEST_CASE("interval_coverage examples") {
  const FactorTable t(1000);
  const IntervalReport a = interval_coverage(IntSet{2, 3, 6}, {6, 1}, 1, 6, t);
  CHECK(a.nondividing_count == 0);
  CHECK(a.d_set == IntSet{2, 3});
  CHECK(a.common_x == 6);
  CHECK(a.alternative_b());

  const IntervalReport b = interval_coverage(IntSet{2, 3, 6}, {7, 1}, 1, 6, t);
  CHECK(b.nondividing_count == 3);
  CHECK(b.alternative_a(6, 2));

  const IntervalReport c = interval_coverage(IntSet{4}, {4, 4}, 1, 4, t);
  CHECK(c.nondividing_count == 0);
  CHECK(c.d_set == IntSet{4});
  CHECK(c.common_x == 4);

  const auto j = nlohmann::json::parse(a.to_json());
  CHECK(j.at("D_I") == nlohmann::json::array({2, 3}));
  CHECK(j.at("common_x") == 6);
}

TEST_CASE("interval_coverage agrees with direct counting, negative starts included") {
  const FactorTable t(1000);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 300; ++i) {
    const IntSet a(oracle::random_set(rng, 2, 120, 15));
    const std::int64_t start = static_cast<std::int64_t>(rng() % 400) - 200;
    const std::uint64_t len = 1 + rng() % 30;
    const double eta = 0.5 + static_cast<double>(rng() % 4) / 2;
    const double m = 2 + static_cast<double>(rng() % 40);
    const IntervalReport r = interval_coverage(a, {start, len}, eta, m, t);
    auto divides_some = [&](std::uint64_t n) {
      for (std::int64_t x = start; x < start + static_cast<std::int64_t>(len); ++x) {
        if (x % static_cast<std::int64_t>(n) == 0) return true;
      }
      return false;
    };
    std::uint64_t miss = 0;
    for (auto n : a) miss += !divides_some(n);
    CHECK(r.nondividing_count == miss);
    for (auto q : r.d_set) {
      std::uint64_t c = 0;
      for (auto n : a) {
        if (n % q == 0 && std::gcd(q, n / q) == 1 && !divides_some(n)) ++c;
      }
      CHECK(static_cast<double>(c) < eta * m / static_cast<double>(q));
    }
    std::optional<std::int64_t> first;
    for (std::int64_t x = start; x < start + static_cast<std::int64_t>(len) && !first; ++x) {
      bool all = true;
      for (auto q : r.d_set) all &= x % static_cast<std::int64_t>(q) == 0;
      if (all) first = x;
    }
    CHECK(r.common_x == first);
  }
}
