#include "egyfrac/factor_sieve.hpp"

#include <string>

#include "egyfrac/errors.hpp"

namespace egyfrac {

std::uint64_t PrimePower::value() const {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < exponent; ++i) v *= prime;
  return v;
}

FactorTable::FactorTable(std::uint64_t bound, std::uint64_t memory_budget)
    : bound_(bound) {
  if (bound < 2) throw DomainError("factor table bound must be >= 2");
  if (bound >= (1ull << 32)) {
    throw ResourceError("factor table bound must fit in 32 bits");
  }
  if ((bound + 1) * sizeof(std::uint32_t) > memory_budget) {
    throw ResourceError("factor table for bound " + std::to_string(bound) +
                        " exceeds memory budget of " +
                        std::to_string(memory_budget) + " bytes");
  }
  spf_.assign(bound + 1, 0);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes_) {
      const std::uint64_t m = i * p;
      if (p > spf_[i] || m > bound) break;
      spf_[m] = p;
    }
  }
}

void FactorTable::check(std::uint64_t n) const {
  if (n < 2) throw DomainError("expected n >= 2, got " + std::to_string(n));
  if (n > bound_) {
    throw RangeError(std::to_string(n) + " exceeds factor table bound " +
                     std::to_string(bound_));
  }
}

std::uint32_t FactorTable::spf(std::uint64_t n) const {
  check(n);
  return spf_[n];
}

bool FactorTable::is_prime(std::uint64_t n) const {
  if (n < 2) return false;
  check(n);
  return spf_[n] == n;
}

Factorization FactorTable::factorize(std::uint64_t n) const {
  check(n);
  Factorization f;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    unsigned r = 0;
    while (n % p == 0) {
      n /= p;
      ++r;
    }
    f.push_back({p, r});
  }
  return f;
}

unsigned FactorTable::omega(std::uint64_t n) const {
  check(n);
  unsigned count = 0;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    while (n % p == 0) n /= p;
    ++count;
  }
  return count;
}

IntSet FactorTable::exact_prime_powers(std::uint64_t n) const {
  std::vector<std::uint64_t> out;
  for (const auto& pp : factorize(n)) out.push_back(pp.value());
  return IntSet(std::move(out));
}

std::uint64_t FactorTable::largest_prime(std::uint64_t n) const {
  check(n);
  std::uint64_t last = 0;
  while (n > 1) {
    last = spf_[n];
    n /= last;
  }
  return last;
}

bool FactorTable::is_prime_power(std::uint64_t q) const {
  if (q < 2) return false;
  check(q);
  const std::uint32_t p = spf_[q];
  while (q % p == 0) q /= p;
  return q == 1;
}

FactorTable build_table(std::uint64_t bound, std::uint64_t memory_budget) {
  return FactorTable(bound, memory_budget);
}

Factorization factorize_trial(std::uint64_t n) {
  if (n < 2) throw DomainError("expected n >= 2, got " + std::to_string(n));
  Factorization f;
  for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    unsigned r = 0;
    while (n % p == 0) {
      n /= p;
      ++r;
    }
    f.push_back({p, r});
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

}  // namespace egyfrac
