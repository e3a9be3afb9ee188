#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "egyfrac/int_set.hpp"

namespace egyfrac {

/// One (prime, exponent) pair of a factorization.
struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  std::uint64_t value() const;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with primes strictly increasing.
using Factorization = std::vector<PrimePower>;

/// Smallest-prime-factor table for 2..bound, built by a linear sieve.
/// Immutable after construction; queries are safe from any thread.
class FactorTable {
 public:
  /// Default cap on the table size in bytes (512 MiB).
  static constexpr std::uint64_t kDefaultMemoryBudget = 512ull << 20;

  explicit FactorTable(std::uint64_t bound,
                       std::uint64_t memory_budget = kDefaultMemoryBudget);

  std::uint64_t bound() const { return bound_; }
  std::uint32_t spf(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  Factorization factorize(std::uint64_t n) const;
  unsigned omega(std::uint64_t n) const;
  /// {p^r : p^r || n}, one entry per distinct prime.
  IntSet exact_prime_powers(std::uint64_t n) const;
  std::uint64_t largest_prime(std::uint64_t n) const;
  /// q >= 2 of the form p^r.
  bool is_prime_power(std::uint64_t q) const;

 private:
  void check(std::uint64_t n) const;

  std::uint64_t bound_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

FactorTable build_table(std::uint64_t bound,
                        std::uint64_t memory_budget = FactorTable::kDefaultMemoryBudget);

/// Trial-division factorization for values beyond any table; used by the
/// solver prefilter on arbitrary input sets.
Factorization factorize_trial(std::uint64_t n);

}  // namespace egyfrac
