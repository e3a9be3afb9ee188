#pragma once

#include <cstdint>
#include <string>

#include "egyfrac/factor_sieve.hpp"
#include "egyfrac/int_set.hpp"
#include "egyfrac/rational.hpp"

namespace egyfrac {

/// Thresholds for the three arithmetic regularity conditions: smoothness
/// (every exact prime power <= smooth_bound), a divisor pair y <= d1,
/// 4 d1 <= d2 <= z, and omega(n) in [omega_lo, omega_hi].
struct FilterSpec {
  double smooth_bound = 2;
  double y = 1;
  double z = 1;
  double omega_lo = 0;
  double omega_hi = 0;

  /// Throws DomainError unless 1 <= y <= z, omega_lo <= omega_hi and
  /// smooth_bound >= 2.
  void validate() const;

  /// The asymptotic choices at scale N, natural logarithms throughout:
  /// smooth_bound = N^{1 - 6/loglog N}, y = 1, z = (log N)^{1/500},
  /// omega window [0.99 loglog N, 2 loglog N].
  static FilterSpec asymptotic_preset(double n);
};

/// Lower end N^{1 - 1/loglog N} of the window the elements are drawn from.
double asymptotic_window_start(double n);

bool passes_smoothness(std::uint64_t n, double bound, const FactorTable& t);
bool has_divisor_pair(std::uint64_t n, double y, double z, const FactorTable& t);
bool omega_in_range(std::uint64_t n, double lo, double hi, const FactorTable& t);
/// Conjunction of the three conditions above.
bool passes_filters(std::uint64_t n, const FilterSpec& spec, const FactorTable& t);
IntSet filter_set(const IntSet& a, const FilterSpec& spec, const FactorTable& t);

/// Integers in [lo, hi] with no prime factor in the closed range [y, z].
IntSet sieve_survivors(std::uint64_t lo, std::uint64_t hi, double y, double z,
                       const FactorTable& t);

/// Integers in [1, hi] divisible by distinct primes p1, p2 in [y, z] with
/// 4 p1 < p2.
IntSet two_prime_pair_set(std::uint64_t hi, double y, double z,
                          const FactorTable& t);

/// Exact sum of 1/q over prime powers q <= X.
Rational mertens_q_sum(std::uint64_t x, const FactorTable& t);
/// Exact product of (1 - 1/p)^{-1} over primes p <= X.
Rational mertens_product(std::uint64_t x, const FactorTable& t);

/// Survivor density of [N, 2N) against the log y / log z envelope.
struct SieveDensityReport {
  std::uint64_t n = 0;
  double y = 0;
  double z = 0;
  std::uint64_t count = 0;  // |X cap [N, 2N)|
  double ratio = 0;         // count / N
  double bound = 0;         // log y / log z
  double constant = 0;      // ratio / bound
  std::string to_json() const;
};

SieveDensityReport sieve_density(std::uint64_t n, double y, double z,
                                 const FactorTable& t);

}  // namespace egyfrac
