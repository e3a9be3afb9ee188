#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "egyfrac/factor_sieve.hpp"
#include "egyfrac/int_set.hpp"
#include "egyfrac/rational.hpp"

namespace egyfrac {

/// A_q for every prime power q in Q_A, built once from a base set.
struct Decomposition {
  IntSet base;
  std::map<std::uint64_t, IntSet> parts;  // q -> A_q, every A_q nonempty
  IntSet qset;                            // Q_A

  /// R(A;q); zero when q is not in Q_A.
  Rational rec_sum_q(std::uint64_t q) const;
  /// JSON {"base": [...], "parts": {"q": [...]}, "qset": [...]}, keys sorted.
  std::string to_json() const;
};

Decomposition decompose(const IntSet& a, const FactorTable& t);

/// {n in A : q | n and gcd(q, n/q) = 1}.
IntSet subset_Aq(const IntSet& a, std::uint64_t q, const FactorTable& t);

/// Q_A: union of the exact prime powers of the elements.
IntSet ppowers_in_set(const IntSet& a, const FactorTable& t);

/// R(A;q) = sum over A_q of q/n.
Rational rec_sum_q(const IntSet& a, std::uint64_t q, const FactorTable& t);

/// Strips from n/q every exact prime power p^r <= y and returns the product
/// d of those left, so that qd | n, gcd(qd, n/qd) = 1 and every exact prime
/// power of d exceeds y.
std::uint64_t smooth_cofactor(std::uint64_t n, std::uint64_t q, double y,
                              const FactorTable& t);

/// Sum of 1/q over prime powers q dividing gcd(n1, n2).
Rational gcd_ppower_recip_sum(std::uint64_t n1, std::uint64_t n2,
                              const FactorTable& t);

/// Sum of 1/q over q in Q_A.
Rational qsum_check(const IntSet& a, const FactorTable& t);

/// (1 - 2 eps) e^{-1} log log N, the right-hand side the Q_A reciprocal sum
/// is compared against. Reported only; at small N it need not hold.
double qsum_lower_bound(double eps, double n);

}  // namespace egyfrac
