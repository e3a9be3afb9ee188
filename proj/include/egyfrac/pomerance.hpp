#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "egyfrac/factor_sieve.hpp"
#include "egyfrac/int_set.hpp"
#include "egyfrac/rational.hpp"

namespace egyfrac {

struct PomeranceReport {
  std::uint64_t n = 0;
  double c = 1;
  IntSet set;
  Rational recip;
  std::optional<bool> verified_free;  // unset until verify_solution_free ran
  std::uint64_t verify_budget = 0;
};

/// {2 <= n <= N : p ln p > C n, p the largest prime factor of n}.
/// RangeError if N exceeds the table, DomainError if N < 2 or C <= 0.
PomeranceReport pomerance_set(std::uint64_t n, double c, const FactorTable& t);

/// True when no subset of A has reciprocal sum 1. InconclusiveError if the
/// search runs out of budget first.
bool verify_solution_free(const IntSet& a, std::uint64_t budget);

/// R(pomerance_set(N, C)) for each N.
std::vector<std::pair<std::uint64_t, Rational>> lambda_lower_curve(
    std::span<const std::uint64_t> ns, double c, const FactorTable& t);

}  // namespace egyfrac
