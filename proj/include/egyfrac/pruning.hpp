#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "egyfrac/factor_sieve.hpp"
#include "egyfrac/int_set.hpp"
#include "egyfrac/rational.hpp"

namespace egyfrac {

/// Audit log of a pruning run.
struct PruneTrace {
  std::vector<std::uint64_t> removed_qs;       // in removal order
  std::vector<std::uint64_t> removed_elements; // in removal order
  IntSet final;
  Rational r_initial;
  Rational r_final;

  /// {"final", "r_final", "r_initial", "removed_elements", "removed_qs"}.
  std::string to_json() const;
};

/// Repeatedly removes A_q for the smallest q in Q_A with R(A;q) < theta
/// until no such q is left. The result B has R(B;q) >= theta on all of Q_B.
PruneTrace prune_ppower(const IntSet& a, const Rational& theta, const FactorTable& t);

/// Trims A to R(B) in [alpha - 1/M, alpha) one element at a time, keeping
/// R(B;q) >= theta for q in Q_B. A is first pruned with 2 theta; then, while
/// R(D) >= alpha, the smallest element of prune_ppower(D, 2 theta) leaves D.
///
/// Requires R(A) >= alpha, elements in [M, t.bound] and, for theta > 0,
/// q <= M theta on Q_A (DomainError otherwise). InfeasibleError when the
/// 2 theta pruning leaves nothing while R(D) >= alpha, or drops R below alpha
/// before the loop starts.
PruneTrace prune_to_window(const IntSet& a, const Rational& alpha, const Rational& theta,
                           std::uint64_t m, const FactorTable& t);

}  // namespace egyfrac
