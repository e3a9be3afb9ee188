#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "egyfrac/int_set.hpp"
#include "egyfrac/rational.hpp"

namespace egyfrac {

enum class Strategy { dfs_bnb, meet_middle, residue_dp, auto_select };

std::string_view strategy_name(Strategy s);
Strategy parse_strategy(std::string_view name);

struct SolverConfig {
  Strategy strategy = Strategy::auto_select;
  /// Upper bound on search nodes (DFS nodes, enumerated half-sums or DP
  /// cells, depending on the strategy).
  std::uint64_t node_budget = 2'000'000'000;
  /// Sequential traversal; the witness is then the lexicographically
  /// smallest qualifying subset under ascending element order.
  bool deterministic = true;
  /// Worker count for DFS fan-out; ignored when deterministic.
  unsigned threads = 1;
  /// Drop elements that no solution can contain because of a p-adic
  /// obstruction before searching. Never changes the answer.
  bool padic_prefilter = true;
  /// Largest target*lcm for which the exact-sum DP is allowed.
  std::uint64_t dp_bound = 10'000'000;

  void validate() const;
};

enum class SolveStatus { found, exhausted_none, budget_exceeded };

std::string_view status_name(SolveStatus s);

struct SolverResult {
  SolveStatus status = SolveStatus::exhausted_none;
  std::optional<IntSet> witness;
  std::uint64_t nodes_explored = 0;
  Strategy strategy_used = Strategy::auto_select;

  /// {"nodes": .., "status": .., "strategy": .., "witness": [..] | null}
  std::string to_json() const;
};

/// Removes elements of A that lie in no S with R(S) = target, using the
/// obstruction: for a prime p with p^e || L = lcm(A), the members of S with
/// p^e | n must have weights L/n summing to target*L modulo p. Iterated to a
/// fixpoint. Returns nullopt when the obstruction rules out every S.
/// The result is a superset of the union of all solutions.
std::optional<IntSet> padic_reduce(const IntSet& a, const Rational& target);

/// Searches A for a subset S with R(S) = target. Budget exhaustion is
/// reported through the status, not thrown.
SolverResult find_subset(const IntSet& a, const Rational& target,
                         const SolverConfig& cfg = {});

struct CountConfig {
  Strategy strategy = Strategy::auto_select;
  /// Largest |A| for the enumeration strategies.
  std::size_t exhaustive_bound = 24;
  /// Largest lcm (and target*lcm) for the DP strategy.
  std::uint64_t dp_bound = 10'000'000;
  bool padic_prefilter = true;
};

/// Number of S subset of A with R(S) = target, exactly.
BigInt count_subsets(const IntSet& a, const Rational& target,
                     const CountConfig& cfg = {});

/// F(A): number of S subset of A (including the empty set) with k R(S) an
/// integer. DP over residues of k L/n modulo L = lcm(A) when L is within
/// dp_bound, enumeration otherwise.
BigInt count_integral(const IntSet& a, std::uint64_t k,
                      const CountConfig& cfg = {});

struct SolutionPart {
  IntSet set;
  std::uint64_t d = 1;  // R(set) = 1/d
};

/// If some d occurs at least d times among the parts, the union of the first
/// d parts carrying it (smallest such d wins). Parts must be pairwise
/// disjoint with R(set) = 1/d; otherwise DomainError naming the index.
std::optional<IntSet> combine_solutions(std::span<const SolutionPart> parts);

struct LambdaConfig {
  std::uint64_t exhaustive_bound = 30;
};

struct LambdaResult {
  Rational value;
  IntSet witness;  // lexicographically smallest maximiser
  std::uint64_t nodes = 0;
};

/// Maximum R(A) over A subset of {1..N} with no subset summing to 1.
/// {1} is itself a solution, so 1 never belongs to A.
LambdaResult lambda_exact(std::uint64_t n, const LambdaConfig& cfg = {});

}  // namespace egyfrac
