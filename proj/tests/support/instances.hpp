#pragma once

// Random instance generators shared by the unit and acceptance suites.

#include <algorithm>
#include <optional>
#include <set>
#include <random>
#include <vector>

#include "egyfrac/factor_sieve.hpp"
#include "egyfrac/int_set.hpp"
#include "egyfrac/pruning.hpp"

namespace instances {

struct Window {
  egyfrac::IntSet a;
  egyfrac::Rational alpha;
  egyfrac::Rational theta;
  std::uint64_t m = 1;
};

/// theta = 0: any set in [M, hi] with alpha somewhere in (0, R(A)].
inline Window trim_window(std::mt19937_64& rng, std::uint64_t hi) {
  using namespace egyfrac;
  Window w;
  w.m = 2 + rng() % 40;
  std::vector<std::uint64_t> v;
  const std::size_t want = 1 + rng() % 60;
  for (std::size_t i = 0; i < want; ++i) v.push_back(w.m + rng() % (hi - w.m + 1));
  w.a = IntSet(std::move(v));
  const Rational r = recip_sum(w.a);
  w.alpha = r * Rational(static_cast<std::int64_t>(1 + rng() % 100), 100);
  return w;
}

/// theta > 0: every integer in [M, hi] whose exact prime powers are all at
/// most M theta, with alpha drawn where the window loop cannot run dry.
/// Returns nothing when no such alpha exists.
inline std::optional<Window> floor_window(std::mt19937_64& rng, std::uint64_t hi,
                                          const egyfrac::FactorTable& t) {
  using namespace egyfrac;
  // Elements have all prime powers <= Mθ, so R(A) grows only with the
  // smoothness cap; below Mθ = 32 no α satisfies the bound further down
  // for elements up to 2*10^6.
  static const std::int64_t kThetaDen[] = {160, 320};
  static const std::int64_t kCap[] = {32, 40, 48};
  Window w;
  const std::int64_t den = kThetaDen[rng() % 2];
  w.theta = Rational(1, den);
  const std::uint64_t cap = static_cast<std::uint64_t>(kCap[rng() % 3]);
  w.m = static_cast<std::uint64_t>(den) * cap;
  // Every n in [M, hi] built from prime powers <= cap, one per prime.
  std::vector<std::vector<std::uint64_t>> choices;
  for (std::uint64_t p = 2; p <= cap; ++p) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= p; ++d) prime &= p % d != 0;
    if (!prime) continue;
    std::vector<std::uint64_t> c;
    for (std::uint64_t q = p; q <= cap; q *= p) c.push_back(q);
    choices.push_back(std::move(c));
  }
  std::vector<std::uint64_t> v;
  auto build = [&](auto&& self, std::size_t i, std::uint64_t n) -> void {
    if (i == choices.size()) {
      if (n >= w.m) v.push_back(n);
      return;
    }
    self(self, i + 1, n);
    for (auto q : choices[i]) {
      if (n > hi / q) break;
      self(self, i + 1, n * q);
    }
  };
  build(build, 0, 1);
  std::sort(v.begin(), v.end());
  w.a = IntSet(std::move(v));
  // With S = sum of 1/q over Q_A the mass-loss bound gives
  // R(prune(D, 2θ)) > R(D) - 2θS, so any α in [2θS, R(A) - 2θS] keeps B'
  // nonempty and survives the initial 2θ prune.
  std::set<std::uint64_t> qs;
  for (auto n : w.a) {
    for (auto q : t.exact_prime_powers(n)) qs.insert(q);
  }
  Rational s;
  for (auto q : qs) s += Rational(1, static_cast<std::int64_t>(q));
  const Rational lo = Rational(2) * w.theta * s;
  const Rational hi_alpha = recip_sum(w.a) - lo;
  if (hi_alpha < lo) return std::nullopt;
  w.alpha = lo + (hi_alpha - lo) * Rational(static_cast<std::int64_t>(rng() % 101), 100);
  return w;
}

}  // namespace instances
